#ifndef RRG_ESTIMATES_HPP
#define RRG_ESTIMATES_HPP

#include <string>
#include <utility>
#include <vector>

#include "rrg/graph.hpp"
#include "rrg/rational.hpp"

namespace rrg {

// Conditioning event: every edge of h1 present, every edge of h2 absent.
struct ConditioningPair {
    SimpleGraph h1;
    SimpleGraph h2;

    ConditioningPair() = default;
    ConditioningPair(SimpleGraph h1_, SimpleGraph h2_); // validates disjointness

    static ConditioningPair empty(int n);
    int n() const { return h1.n(); }
    bool is_empty() const { return h1.m() == 0 && h2.m() == 0; }
    SimpleGraph union_graph() const; // h1 ∪ h2 (edge union)
};

// A probability estimate together with which formula produced it and the
// symbolic order of its relative error. Values may marginally exceed 1 at
// small n (asymptotic formulas); they are never negative.
struct ProbEstimate {
    double value = 0.0;
    std::string source;      // e.g. "baseline", "refined-regular"
    std::string error_order; // e.g. "Dmax^2/M"
};

// Ordered pairs (x,y) with xy in H1 ∪ H2, xu and yv both outside H1 ∪ H2,
// and {x,y} disjoint from {u,v}.
struct WPairSet {
    std::vector<std::pair<int, int>> pairs;
};

// Local correction term for the regular-case refined estimate: exact integer
//   -d - 2|H| - (d-1)(deg_H(u)+deg_H(v)) + deg_H(u) deg_H(v)
//   + sum_{x in N_H(u)} deg_H(x) + sum_{y in N_H(v)} deg_H(y).
long long phi(const SimpleGraph& h, int u, int v, int d);

// First-order simplification of phi: -2|H| - d(1 + deg_H(u) + deg_H(v)).
long long phi_approx(const SimpleGraph& h, int u, int v, int d);

// First-order conditional edge probability for a general degree sequence:
//   (d_u - deg_{H1}(u))(d_v - deg_{H1}(v)) / (M - 2|H1|).
ProbEstimate cond_edge_prob_baseline(const ConditioningPair& ctx,
                                     const DegreeSequence& dseq, int u, int v);

// Second-order conditional edge probability in the regular case with a
// present-only conditioning graph h:
//   (d̃_u d̃_v / dn) (1 - phi_h(uv)/dn).
ProbEstimate cond_edge_prob_refined_regular(const SimpleGraph& h, int u, int v,
                                            int d, int n);

// Second-order conditional edge probability, general degree sequence and
// two-sided conditioning (h1 present, h2 absent).
ProbEstimate cond_edge_prob_refined_general(const ConditioningPair& ctx,
                                            const DegreeSequence& dseq, int u, int v);

// The correction term of the general estimate, exact rational.
Rat bar_phi(const ConditioningPair& ctx, const DegreeSequence& dseq, int u, int v);

// The pair set entering the general estimate's middle factor.
WPairSet build_w_set(const ConditioningPair& ctx, int u, int v);

// Estimate of P(every edge of h present) in the regular model: chained
// product of cond_edge_prob_refined_regular over h's edges in lexicographic
// order, conditioning on the previously added edges.
ProbEstimate joint_subgraph_prob(const SimpleGraph& h, int d, int n);

// Closed-form cycle appearance probability:
//   ((d-1)/n)^ell (1 - sum phi_i / dn)
// with the per-edge correction sequence phi_1 = -d, phi_2 = -2d,
// phi_i = -2d - 2(i-3) - 1 for 3 <= i <= ell-1, phi_ell = -3d + 3 - 2(ell-3).
ProbEstimate lambda_cycle(int ell, int d, int n);

// Sum of the per-edge corrections above (exposed for regression tests).
long long lambda_cycle_phi_sum(int ell, int d);

// Expected number of copies: (n)_t / aut(p) * lambda, where lambda is the
// cycle closed form for cycle patterns and the edge-chained product otherwise.
ProbEstimate mu_pattern(const Pattern& p, int d, int n);

// Two-term triangle-count variance approximation, with the four grouped
// contributions (vertex-disjoint pairs / one shared vertex / one shared edge
// plus opposite vertices / identical pairs) exposed for testing.
struct TriangleVariance {
    double value = 0.0;    // case_d - (d-1)^4 (d-2) (n-1)_3 / (2 d n^4)
    double case_a = 0.0;   // disjoint pairs main term
    double case_b = 0.0;   // shared-vertex main term (negative)
    double case_c = 0.0;   // shared-edge main term
    double case_d = 0.0;   // diagonal term (n)_3/6 * lambda-level
    ProbEstimate estimate; // value + provenance
};
TriangleVariance sigma2_triangle(int d, int n);

// Smallness ratios the variance approximation needs at concrete (d, n),
// each with a pass flag under the given threshold.
struct HypothesisRatio {
    std::string name;
    double ratio = 0.0;
    bool pass = false;
};
struct VarianceHypothesesReport {
    std::vector<HypothesisRatio> ratios;
    bool all_pass = false;
    double threshold = 0.1;
};
VarianceHypothesesReport variance_hypotheses(const Pattern& p, int d, int n,
                                             double threshold = 0.1);

// Certified upper band for P(F present | H present): the chained estimate for
// F with error order 1/n + |H|/dn + d^2/n^2.
ProbEstimate cond_joint_upper_bound(const SimpleGraph& f, const SimpleGraph& h,
                                    int d, int n);

} // namespace rrg

#endif
