#ifndef RRG_ERRORS_HPP
#define RRG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rrg {

// Error taxonomy. Each class maps to one CLI exit code (see tools/).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed caller data: parse failures, loops/duplicate edges, out-of-range
// vertex ids, bad flag combinations.
struct BadInputError : Error {
    using Error::Error;
};

// A documented precondition of an operation was violated.
struct ContractError : Error {
    using Error::Error;
};

// Instance is valid but outside the hard resource budget of an exact
// algorithm (enumeration size guards, pattern size guards).
struct CapabilityError : Error {
    using Error::Error;
};

// The requested probability space does not exist (e.g. dn odd).
struct ModelError : Error {
    using Error::Error;
};

// A sampler could not construct a valid starting state within its retry
// budget, or the constraint set is infeasible.
struct ConstructionError : Error {
    using Error::Error;
};

// Conditioning class is empty; the conditional probability is undefined.
struct UndefinedProbabilityError : Error {
    using Error::Error;
};

// Filesystem failures, annotated with the offending path.
struct IoError : Error {
    using Error::Error;
};

} // namespace rrg

#endif
