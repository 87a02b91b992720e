#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "rrg/errors.hpp"
#include "rrg/estimates.hpp"
#include "rrg/graph.hpp"
#include "rrg/oracle.hpp"
#include "rrg/rational.hpp"

using namespace rrg;

namespace {

ConditioningPair present_only(int n, const std::vector<Edge>& h1_edges) {
    return ConditioningPair(build_graph(n, h1_edges), build_graph(n, {}));
}

} // namespace

TEST_CASE("conditioning pairs validate their two edge sets") {
    ConditioningPair ok(build_graph(6, {{0, 1}}), build_graph(6, {{2, 3}}));
    CHECK(ok.n() == 6);
    CHECK_FALSE(ok.is_empty());
    CHECK(ok.union_graph().m() == 2);
    CHECK(ConditioningPair::empty(5).is_empty());
    // Same edge present and absent is contradictory input.
    CHECK_THROWS_AS(ConditioningPair(build_graph(6, {{0, 1}}), build_graph(6, {{0, 1}})),
                    BadInputError);
    // Mismatched vertex sets.
    CHECK_THROWS_AS(ConditioningPair(build_graph(6, {}), build_graph(5, {})),
                    BadInputError);
}

TEST_CASE("phi matches hand-expanded values on tiny conditioning graphs") {
    // Empty conditioning graph: only the -d term survives.
    CHECK(phi(build_graph(8, {}), 0, 1, 5) == -5);
    // One edge at u (u=0 joined to 2): -d - 2 - (d-1) + 0 + 1 + 0 = -2d - 2 + 1 + ... expands to -8 at d=4.
    CHECK(phi(build_graph(8, {{0, 2}}), 0, 1, 4) == -8);
    // Path u-w-v through w=2 at d=7: -7 - 4 - 6*2 + 1 + 2 + 2 = -18.
    CHECK(phi(build_graph(8, {{0, 2}, {2, 1}}), 0, 1, 7) == -18);
}

TEST_CASE("phi_approx keeps only the degree-weighted first-order terms") {
    CHECK(phi_approx(build_graph(8, {}), 0, 1, 5) == -5);
    CHECK(phi_approx(build_graph(8, {{0, 2}}), 0, 1, 4) == -10); // -2 - 4*(1+1)
    CHECK(phi_approx(build_graph(8, {{0, 2}, {2, 1}}), 0, 1, 7) == -25); // -4 - 7*3
}

TEST_CASE("phi is symmetric in the two endpoints") {
    SimpleGraph h = build_graph(9, {{0, 2}, {2, 3}, {3, 1}, {4, 5}});
    for (int d = 3; d <= 6; ++d) {
        CHECK(phi(h, 0, 1, d) == phi(h, 1, 0, d));
        CHECK(phi_approx(h, 0, 1, d) == phi_approx(h, 1, 0, d));
    }
}

TEST_CASE("phi enforces its preconditions") {
    SimpleGraph h = build_graph(6, {{0, 1}});
    CHECK_THROWS_AS(phi(h, 0, 1, 3), ContractError);  // uv inside h
    CHECK_THROWS_AS(phi(h, 2, 2, 3), BadInputError);  // u == v
    CHECK_THROWS_AS(phi(build_graph(6, {{0, 2}, {0, 3}, {0, 4}}), 0, 1, 2),
                    ContractError); // conditioning degree exceeds d
}

TEST_CASE("first-order conditional edge probability matches its closed form") {
    DegreeSequence reg = DegreeSequence::regular(8, 3);

    ProbEstimate empty_ctx = cond_edge_prob_baseline(ConditioningPair::empty(8), reg, 0, 1);
    CHECK(empty_ctx.value == 9.0 / 24.0);
    CHECK(empty_ctx.source == "baseline");
    CHECK(empty_ctx.error_order == "Dmax^2/M");

    // One disjoint conditioning edge shrinks the denominator to M - 2. The
    // value travels through an exact rational whose double conversion
    // truncates, so the comparison allows one ulp.
    ProbEstimate disjoint = cond_edge_prob_baseline(present_only(8, {{2, 3}}), reg, 0, 1);
    CHECK(disjoint.value == doctest::Approx(9.0 / 22.0).epsilon(1e-15));

    // Saturated endpoint: all of u's degree used by the conditioning graph.
    ProbEstimate sat = cond_edge_prob_baseline(
        present_only(8, {{0, 2}, {0, 3}, {0, 4}}), reg, 0, 1);
    CHECK(sat.value == 0.0);

    // The conditioned edge must not itself be constrained.
    CHECK_THROWS_AS(cond_edge_prob_baseline(present_only(8, {{0, 1}}), reg, 0, 1),
                    ContractError);
}

TEST_CASE("second-order regular estimate applies the local correction factor") {
    // Empty conditioning, d=3, n=8: (9/24) * (1 + 3/24) = 27/64.
    ProbEstimate p = cond_edge_prob_refined_regular(build_graph(8, {}), 0, 1, 3, 8);
    CHECK(p.value == 27.0 / 64.0);
    CHECK(p.source == "refined-regular");

    // Saturated endpoint short-circuits to zero.
    SimpleGraph star = build_graph(8, {{0, 2}, {0, 3}, {0, 4}});
    CHECK(cond_edge_prob_refined_regular(star, 0, 1, 3, 8).value == 0.0);

    CHECK_THROWS_AS(cond_edge_prob_refined_regular(build_graph(8, {{0, 1}}), 0, 1, 3, 8),
                    ContractError);
    CHECK_THROWS_AS(cond_edge_prob_refined_regular(build_graph(8, {}), 0, 1, 3, 3),
                    BadInputError); // d >= n
    CHECK_THROWS_AS(cond_edge_prob_refined_regular(build_graph(5, {}), 0, 1, 3, 5),
                    ModelError); // dn odd
}

TEST_CASE("general correction term reduces to -d^2 for empty regular conditioning") {
    for (int d = 3; d <= 6; ++d) {
        int n = 2 * d + 4;
        DegreeSequence reg = DegreeSequence::regular(n, d);
        CHECK(bar_phi(ConditioningPair::empty(n), reg, 0, 1) ==
              rat(-static_cast<long>(d) * d));
    }
    // Degree-1 sequence on 4 vertices: -2*2 + 2 + 1 - 0 = -1.
    DegreeSequence ones({1, 1, 1, 1});
    CHECK(bar_phi(ConditioningPair::empty(4), ones, 0, 1) == rat(-1));
}

TEST_CASE("correction pair set enumerates ordered pairs with the exclusion rules") {
    // Empty conditioning: nothing to pair.
    CHECK(build_w_set(ConditioningPair::empty(8), 0, 1).pairs.empty());

    // One edge disjoint from {u, v}: both orientations qualify.
    WPairSet disjoint = build_w_set(present_only(8, {{2, 3}}), 0, 1);
    std::vector<std::pair<int, int>> expect_disjoint = {{2, 3}, {3, 2}};
    CHECK(disjoint.pairs == expect_disjoint);

    // An edge incident to u is excluded entirely.
    CHECK(build_w_set(present_only(8, {{0, 2}}), 0, 1).pairs.empty());

    // Mixed: (2,3) survives only as (3,2) because 2 is adjacent to u.
    WPairSet mixed = build_w_set(present_only(8, {{2, 3}, {0, 2}}), 0, 1);
    std::vector<std::pair<int, int>> expect_mixed = {{3, 2}};
    CHECK(mixed.pairs == expect_mixed);

    // Absent edges participate in the pair set through the union graph.
    ConditioningPair absent(build_graph(8, {}), build_graph(8, {{4, 5}}));
    CHECK(build_w_set(absent, 0, 1).pairs.size() == 2);
}

TEST_CASE("general and regular second-order estimates agree to the cubic term") {
    // With empty conditioning the two formulas differ by exactly
    // d^2 (d-1) / n^3 (expanding both products), so pin that gap.
    for (int d = 3; d <= 5; ++d) {
        for (int n : {16, 32, 64}) {
            DegreeSequence reg = DegreeSequence::regular(n, d);
            double general =
                cond_edge_prob_refined_general(ConditioningPair::empty(n), reg, 0, 1).value;
            double regular =
                cond_edge_prob_refined_regular(build_graph(n, {}), 0, 1, d, n).value;
            double gap = static_cast<double>(d) * d * (d - 1) / std::pow(n, 3);
            CHECK(std::abs(general - regular + gap) < 1e-12);
        }
    }
}

TEST_CASE("general estimate degrades gracefully at saturated endpoints") {
    DegreeSequence reg = DegreeSequence::regular(8, 3);
    SimpleGraph star = build_graph(8, {{0, 2}, {0, 3}, {0, 4}});
    ProbEstimate p =
        cond_edge_prob_refined_general(ConditioningPair(star, build_graph(8, {})), reg, 0, 1);
    CHECK(p.value == 0.0);
    CHECK(p.source == "refined-general");
}

TEST_CASE("edge-chained joint probability multiplies conditional steps") {
    // Single edge: the chain is one empty-conditioning step.
    for (int d = 3; d <= 5; ++d) {
        for (int n : {16, 50}) {
            double single = joint_subgraph_prob(build_graph(n, {{0, 1}}), d, n).value;
            double step = cond_edge_prob_refined_regular(build_graph(n, {}), 0, 1, d, n).value;
            CHECK(single == step);
            // Against the exact marginal d/(n-1) the error is O(1/n^2).
            double truth = static_cast<double>(d) / (n - 1);
            CHECK(std::abs(single / truth - 1.0) <= 2.0 * d * d / (static_cast<double>(n) * n));
        }
    }
    // Max degree above d: an impossible subgraph has probability zero.
    CHECK(joint_subgraph_prob(build_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), 3, 6).value == 0.0);
}

TEST_CASE("chained joint probability is invariant under relabeling disjoint edges") {
    // Two vertex-disjoint edges under two different labelings: the chain
    // sees the same step structure, so the values agree exactly.
    double a = joint_subgraph_prob(build_graph(12, {{0, 1}, {2, 3}}), 3, 12).value;
    double b = joint_subgraph_prob(build_graph(12, {{0, 2}, {1, 3}}), 3, 12).value;
    double c = joint_subgraph_prob(build_graph(12, {{4, 7}, {5, 11}}), 3, 12).value;
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("chained triangle probability tracks the oracle at (8,3)") {
    // Exhaustive truth: P(triangle on {0,1,2}) = 121/3871.
    Rat exact = exact_subgraph_prob(8, 3, ConditioningPair::empty(8),
                                    build_graph(8, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK(exact == rat(121, 3871));
    double chained = joint_subgraph_prob(build_graph(8, {{0, 1}, {1, 2}, {0, 2}}), 3, 8).value;
    // Asymptotic formula at n=8: generous but strict relative band.
    CHECK(std::abs(chained / to_double(exact) - 1.0) < 0.25);
}

TEST_CASE("per-edge cycle corrections follow the closed-form sequence") {
    // Build the cycle edge by edge in path order and compare each local
    // correction value with the closed forms:
    //   phi_1 = -d, phi_2 = -2d, phi_i = -2d - 2(i-3) - 1, phi_ell = -3d + 3 - 2(ell-3).
    for (int ell = 3; ell <= 7; ++ell) {
        for (int d = 3; d <= 10; ++d) {
            std::vector<Edge> path_order;
            for (int i = 0; i + 1 < ell; ++i) path_order.push_back({i, i + 1});
            path_order.push_back({0, ell - 1});
            long long total = 0;
            for (int i = 1; i <= ell; ++i) {
                std::vector<Edge> prefix(path_order.begin(), path_order.begin() + (i - 1));
                SimpleGraph cond = build_graph(ell, prefix);
                auto [a, b] = path_order[static_cast<size_t>(i - 1)];
                long long got = phi(cond, a, b, d);
                long long want = 0;
                if (i == 1)
                    want = -d;
                else if (i == ell)
                    want = -3LL * d + 3 - 2 * (ell - 3);
                else if (i == 2)
                    want = -2LL * d;
                else
                    want = -2LL * d - 2 * (i - 3) - 1;
                CHECK(got == want);
                total += got;
            }
            CHECK(total == lambda_cycle_phi_sum(ell, d));
        }
    }
}

TEST_CASE("cycle correction sums match hand-computed values at d=3") {
    CHECK(lambda_cycle_phi_sum(3, 3) == -15);
    CHECK(lambda_cycle_phi_sum(4, 3) == -24);
    CHECK(lambda_cycle_phi_sum(5, 3) == -35);
    CHECK(lambda_cycle_phi_sum(6, 3) == -48);
    CHECK(lambda_cycle_phi_sum(7, 3) == -63);
    CHECK_THROWS_AS(lambda_cycle_phi_sum(2, 3), BadInputError);
}

TEST_CASE("cycle probability closed form evaluates exactly") {
    // (2/8)^3 * (1 + 15/24) = 0.025390625 at (ell=3, d=3, n=8).
    ProbEstimate lam = lambda_cycle(3, 3, 8);
    CHECK(lam.value == 0.025390625);
    CHECK(lam.source == "cycle-closed-form");
    CHECK_THROWS_AS(lambda_cycle(3, 1, 8), BadInputError);
}

TEST_CASE("pattern expectation is copies times appearance probability") {
    // Triangle count expectation at (8,3): 56 * 0.025390625 = 1.421875.
    ProbEstimate mu = mu_pattern(Pattern::cycle(3), 3, 8);
    CHECK(mu.value == 1.421875);
    double copies = to_double(rat(falling(8, 3), Int(6L)));
    CHECK(mu.value == copies * lambda_cycle(3, 3, 8).value);

    // Compare against the exhaustive mean E Z = 968/553 at (8,3); the
    // asymptotic formula carries O(1/n) error at n=8.
    Rat exact_mean = exact_count_distribution(8, 3, Pattern::cycle(3)).mean();
    CHECK(exact_mean == rat(968, 553));
    CHECK(std::abs(mu.value / to_double(exact_mean) - 1.0) < 0.25);

    // Non-cycle patterns go through the edge chain.
    ProbEstimate k4 = mu_pattern(Pattern::clique(4), 5, 100);
    double k4_copies = to_double(rat(falling(100, 4), Int(24L)));
    CHECK(k4.value == k4_copies * joint_subgraph_prob(Pattern::clique(4).graph, 5, 100).value);

    // Pattern degree above d: expectation zero.
    CHECK(mu_pattern(Pattern::clique(5), 3, 100).value == 0.0);
    CHECK_THROWS_AS(mu_pattern(Pattern::clique(4), 3, 3), BadInputError);
}

TEST_CASE("triangle variance approximation stays near the mean in the sparse regime") {
    // The diagonal term equals the pattern expectation (same correction).
    TriangleVariance tv = sigma2_triangle(5, 100000);
    double mu = mu_pattern(Pattern::cycle(3), 5, 100000).value;
    CHECK(std::abs(tv.case_d / mu - 1.0) < 1e-12);

    // Variance-to-mean ratio approaches 1 from below as n grows at fixed d.
    double prev = 0.0;
    std::vector<std::pair<int, double>> pinned = {
        {1000, 0.992860}, {10000, 0.999281}, {100000, 0.999928}, {1000000, 0.999993}};
    for (auto [n, expect] : pinned) {
        TriangleVariance v = sigma2_triangle(5, n);
        double ratio = v.value / mu_pattern(Pattern::cycle(3), 5, n).value;
        CHECK(std::abs(ratio - expect) < 1e-5);
        CHECK(ratio > prev);
        prev = ratio;
    }
    CHECK(std::abs(prev - 1.0) < 0.02);

    // Denser point used by the scaled experiment: ratio inside [0.9, 1.1].
    TriangleVariance dense = sigma2_triangle(20, 2000);
    CHECK(std::abs(dense.value - 1115.5569) < 1e-3);
    double dense_ratio = dense.value / mu_pattern(Pattern::cycle(3), 20, 2000).value;
    CHECK(dense_ratio > 0.9);
    CHECK(dense_ratio < 1.1);

    CHECK_THROWS_AS(sigma2_triangle(1, 100), BadInputError);
}

TEST_CASE("variance smallness ratios pass and fail where expected") {
    // Sparse triangle regime: every ratio is tiny.
    VarianceHypothesesReport c3 = variance_hypotheses(Pattern::cycle(3), 31, 1000000);
    CHECK(c3.all_pass);
    REQUIRE(c3.ratios.size() == 4); // two global ratios + j = 1, 2
    CHECK(c3.ratios[0].name == "d^(h-1)/n^(h-t+1)");
    CHECK(c3.ratios[1].name == "d^(h+2)/n^(h-t+2)");
    CHECK(c3.ratios[2].name == "mu^(1-1/h)/n^(t*rho(1))");

    // Dense 4-clique regime at small n: the degree-power ratios blow up.
    VarianceHypothesesReport k4 = variance_hypotheses(Pattern::clique(4), 251, 10000);
    CHECK_FALSE(k4.all_pass);
    REQUIRE(k4.ratios.size() == 7);
    CHECK_FALSE(k4.ratios[0].pass); // 251^5 / 10^12 ~ 1
    CHECK_FALSE(k4.ratios[1].pass);

    // The hypotheses only apply to strictly balanced patterns.
    Pattern two_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(variance_hypotheses(two_edges, 3, 100), ContractError);
}

TEST_CASE("joint upper band covers the oracle conditional at (10,3)") {
    SimpleGraph target = build_graph(10, {{3, 4}, {4, 5}, {3, 5}});
    SimpleGraph cond = build_graph(10, {{0, 1}, {1, 2}, {0, 2}});

    Rat exact = exact_subgraph_prob(10, 3, present_only(10, cond.edges()), target);
    CHECK(exact == rat(369, 11030));

    ProbEstimate band = cond_joint_upper_bound(target, cond, 3, 10);
    // Conservative constant: at this scale the chained estimate times 10
    // dominates the exact conditional probability.
    CHECK(to_double(exact) <= 10.0 * band.value);
    CHECK(band.value > 0.0);

    // Overlapping target and conditioning edges violate the contract.
    CHECK_THROWS_AS(cond_joint_upper_bound(target, target, 3, 10), ContractError);
    // A target with degree above d is impossible: bound collapses to zero.
    CHECK(cond_joint_upper_bound(build_graph(10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}),
                                 build_graph(10, {}), 3, 10)
              .value == 0.0);
}
