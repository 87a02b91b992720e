#ifndef RRG_SAMPLER_HPP
#define RRG_SAMPLER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rrg/estimates.hpp"
#include "rrg/graph.hpp"

namespace rrg {

enum class SampleMethod {
    ExactRejection,     // uniform pairing + simplicity rejection: exactly uniform
    IncrementalPairing, // loop/multi-edge avoidance during construction
    EdgeSwapMcmc        // incremental start + double-edge-swap chain
};

std::string to_string(SampleMethod m);
SampleMethod parse_method(const std::string& name);

struct SamplerConfig {
    int n = 0;
    int d = 0;
    SampleMethod method = SampleMethod::EdgeSwapMcmc;
    uint64_t seed = 0;
    long long burn_in = -1;  // swaps before the first sample; -1 = 20 * |E|
    long long thinning = -1; // swaps between samples; -1 = 5 * |E|
    long long samples = 2000;

    void validate() const; // throws BadInputError / ModelError
};

// One d-regular graph on [n]. Deterministic in (cfg.seed, stream); distinct
// streams give independent samples. Exact-rejection is exactly uniform; the
// other two methods are approximately uniform (bias vanishing for d = o(n)).
SimpleGraph sample_regular(const SamplerConfig& cfg, uint64_t stream = 0);

// A member of the class {G : H1 subset of G, H2 disjoint from G} with the
// given degrees: greedy placement, rotation repair, then a double-edge-swap
// chain that never removes an H1 edge nor creates an H2 edge (lazy chain, so
// the stationary distribution is uniform over the class). cfg supplies seed,
// burn-in and sample counts; the degree sequence supplies the size.
SimpleGraph conditional_sample(const ConditioningPair& ctx, const DegreeSequence& dseq,
                               const SamplerConfig& cfg, uint64_t stream = 0);

// Exact per-graph switching counts. The closed forms
//   f = Mt - 2*(du + dv) + 2 - X_u - X_v + X_uv
//   b = du * dv - Y_1 - Y_2
// (residual quantities with H1 removed) hold as identities; the scan checks
// them against the explicit pair lists.
struct SwitchingCounts {
    long long f = 0;
    long long b = 0;
    long long X_u = 0;
    long long X_v = 0;
    long long X_uv = 0;
    long long Y_1 = 0;
    long long Y_2 = 0;
};

struct SwitchingScan {
    SwitchingCounts counts;
    std::vector<std::pair<int, int>> pairs; // valid ordered (x, y), lex order
};

// Valid forward moves for g with uv present: ordered (x, y), xy an edge of
// g outside H1, {x,y} disjoint from {u,v}, ux and vy absent from g and H2.
SwitchingScan forward_switchings(const SimpleGraph& g, int u, int v,
                                 const ConditioningPair& ctx);

// Valid backward moves for g with uv absent: ordered (x, y), xu and yv edges
// of g outside H1, x != y, xy absent from g and H2.
SwitchingScan backward_switchings(const SimpleGraph& g, int u, int v,
                                  const ConditioningPair& ctx);

enum class SwitchDirection { Forward, Backward };

// Forward: replace uv, xy by ux, vy. Backward: replace xu, yv by uv, xy.
// Degree sequence is preserved; membership of uv flips.
SimpleGraph apply_switching(const SimpleGraph& g, int u, int v, int x, int y,
                            SwitchDirection direction);

// Monte Carlo estimate of E b / (E f + E b): f averaged over the uv-present
// class, b over the uv-absent class, cfg.samples chains per side.
struct SwitchingEstimate {
    ProbEstimate estimate;
    double std_error = 0.0; // delta-method standard error
    double mean_f = 0.0;
    double mean_b = 0.0;
    double var_f = 0.0; // sample variances of per-graph counts
    double var_b = 0.0;
    long long samples_per_side = 0;
};

SwitchingEstimate switching_ratio_estimate(const ConditioningPair& ctx,
                                           const DegreeSequence& dseq, int u, int v,
                                           const SamplerConfig& cfg);

} // namespace rrg

#endif
