#ifndef RRG_EXPERIMENTS_HPP
#define RRG_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rrg/report.hpp"

namespace rrg {

enum class ExperimentKind {
    ErrorScaling,        // refined vs baseline edge-probability error on an oracle grid
    TriangleNormality,   // triangle-count moments and normality gates
    SwitchingValidation, // switching ratio vs oracle + component-count averages
    MomentProfile,       // factorial moments against powers of the mean
    HoleCensus           // hole counts and triangle bounds on sampled tuples
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ErrorScaling;
    std::vector<std::pair<int, int>> grid; // (n, d) points; empty = kind default
    long long samples = 0;                 // 0 = kind default
    uint64_t seed = 0;
    int k_max = 3;             // moment-profile order cap
    int tuple_size = 20;       // hole-census tuple size
    long long tuples = 10000;  // hole-census tuple (and graph) count
    std::string format = "csv";
    std::string out_path; // empty: caller decides what to do with the report

    void validate() const;
    std::string canonical() const; // deterministic string hashed into metadata
};

// Kind defaults (grid, sample counts) with everything else zeroed.
ExperimentConfig default_config(ExperimentKind kind);

// Parse a JSON config document; missing fields fall back to kind defaults.
ExperimentConfig config_from_json_text(const std::string& text);

StatReport run_error_scaling(const ExperimentConfig& cfg);
StatReport run_triangle_normality(const ExperimentConfig& cfg);
StatReport run_switching_validation(const ExperimentConfig& cfg);
StatReport run_moment_profile(const ExperimentConfig& cfg);
StatReport run_hole_census(const ExperimentConfig& cfg);

// Dispatch on cfg.kind.
StatReport run_experiment(const ExperimentConfig& cfg);

} // namespace rrg

#endif
