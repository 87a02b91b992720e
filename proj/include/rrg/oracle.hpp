#ifndef RRG_ORACLE_HPP
#define RRG_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rrg/estimates.hpp"
#include "rrg/graph.hpp"
#include "rrg/rational.hpp"

namespace rrg {

// Lightweight adjacency view handed to enumeration visitors; valid only for
// the duration of the visit. Vertex count is capped at 12 by the budget
// guard, so adjacency fits in 16-bit masks.
struct EnumGraphView {
    int n = 0;
    const uint16_t* adj = nullptr;

    bool has_edge(int u, int v) const { return adj[u] >> v & 1; }
    long long triangle_count() const;
    SimpleGraph to_graph() const;
};

using EnumVisitor = std::function<void(const EnumGraphView&)>;

// Mergeable accumulator contract for parallel enumeration: the class is
// partitioned by the first vertex's neighborhood, each branch runs on its own
// clone, and clones merge back in branch order — results are independent of
// the worker count.
class EnumAccumulator {
  public:
    virtual ~EnumAccumulator() = default;
    virtual void visit(const EnumGraphView& g) = 0;
    virtual std::unique_ptr<EnumAccumulator> clone_empty() const = 0;
    virtual void merge_from(EnumAccumulator& other) = 0;
};

// True when (n, d) is inside the exhaustive-enumeration budget.
bool enumeration_in_budget(int n, int d);

// Visits every labeled simple d-regular graph on [n] exactly once, in a
// deterministic order (recursive lowest-vertex completion with feasibility
// pruning). Returns the total. Budget-guarded.
uint64_t enumerate_regular(int n, int d, const EnumVisitor& visit = nullptr);

// Same class, processed through a mergeable accumulator with the parallel
// branch partition. Returns the total.
uint64_t enumerate_regular_reduce(int n, int d, EnumAccumulator& acc);

// Independent second counting strategy: pairing-model enumeration matching
// the lowest free point first, partner points grouped by vertex with
// multiplicity weights. The weighted leaf total equals N * (d!)^n exactly;
// divisibility is asserted and the quotient N returned. Tighter budget than
// enumerate_regular.
uint64_t pairing_model_count(int n, int d);

// Materialized class for tiny (n, d); guarded by enumeration budget plus a
// hard cap on the class size.
struct GraphClassIndex {
    int n = 0;
    int d = 0;
    uint64_t total = 0;
    std::vector<SimpleGraph> graphs;
};
GraphClassIndex materialize_class(int n, int d, uint64_t max_graphs = 200000);

// Exact P(uv in G | H1 present, H2 absent) over the labeled class.
Rat exact_conditional_edge_prob(int n, int d, const ConditioningPair& ctx, int u, int v);

// Exact conditional class size and hit count (exposed for experiments that
// need several contexts in one place).
struct ConditionalCounts {
    uint64_t class_size = 0;
    uint64_t edge_hits = 0;
};
ConditionalCounts exact_conditional_counts(int n, int d, const ConditioningPair& ctx,
                                           int u, int v);

// Exact probability that every edge of f is present given the conditioning.
Rat exact_subgraph_prob(int n, int d, const ConditioningPair& ctx, const SimpleGraph& f);

// Exact distribution of the number of subgraph copies of a pattern.
class CountDistribution {
  public:
    CountDistribution() = default;
    CountDistribution(std::map<long long, uint64_t> counts, uint64_t total);

    const std::map<long long, Rat>& pmf() const { return pmf_; }
    uint64_t support_size() const { return pmf_.size(); }
    Rat mean() const;
    Rat variance() const;
    Rat factorial_moment(int k) const;

    // Synthetic distribution helper (tests): point mass at value.
    static CountDistribution point_mass(long long value);

  private:
    std::map<long long, Rat> pmf_;
};

CountDistribution exact_count_distribution(int n, int d, const Pattern& p);

// E(Z)_k for k = 1..k_max.
std::vector<Rat> factorial_moments(const CountDistribution& dist, int k_max);

// ---- optional advisory on-disk cache of class statistics ----
struct ClassStats {
    int n = 0;
    int d = 0;
    uint64_t total = 0;
    std::map<long long, uint64_t> triangle_counts; // triangle count -> #graphs
};
ClassStats compute_class_stats(int n, int d);
std::optional<ClassStats> oracle_cache_load(const std::string& dir, int n, int d);
void oracle_cache_store(const std::string& dir, const ClassStats& stats);

} // namespace rrg

#endif
