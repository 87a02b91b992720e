#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rrg/errors.hpp"
#include "rrg/rng.hpp"
#include "rrg/stats.hpp"

using namespace rrg;

namespace {

// Standard normal draws via Box-Muller. next_unit() can return exactly zero,
// so the log argument uses the complementary value.
std::vector<double> normal_draws(uint64_t seed, int count) {
    SplitRng rng(seed, 0);
    std::vector<double> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        double u1 = 1.0 - rng.next_unit();
        double u2 = rng.next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        out.push_back(r * std::cos(2.0 * M_PI * u2));
        if (static_cast<int>(out.size()) < count)
            out.push_back(r * std::sin(2.0 * M_PI * u2));
    }
    return out;
}

} // namespace

TEST_CASE("mean and sample variance") {
    CHECK(mean({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5));
    CHECK(mean({7.0}) == doctest::Approx(7.0));
    CHECK_THROWS_AS(mean({}), BadInputError);

    CHECK(sample_variance({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(5.0 / 3.0));
    CHECK(sample_variance({42.0}) == 0.0);
    CHECK(sample_variance({}) == 0.0);
}

TEST_CASE("skewness of symmetric and skewed samples") {
    CHECK(skewness({1.0, 2.0, 3.0}) == doctest::Approx(0.0).epsilon(1e-12));
    // {0, 0, 1}: m2 = 2/9, m3 = 2/27, skew = (2/27) / (2/9)^1.5 = 1/sqrt(2).
    CHECK(skewness({0.0, 0.0, 1.0}) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK_THROWS_AS(skewness({1.0, 2.0}), BadInputError);
    CHECK_THROWS_AS(skewness({3.0, 3.0, 3.0}), BadInputError);
}

TEST_CASE("standard normal CDF") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
    for (double z : {0.3, 1.0, 2.5})
        CHECK(normal_cdf(z) + normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(normal_cdf(-1.0) < normal_cdf(0.0));
    CHECK(normal_cdf(0.0) < normal_cdf(1.0));
}

TEST_CASE("upper regularized incomplete gamma") {
    CHECK(regularized_gamma_q(2.5, 0.0) == 1.0);
    // Q(1, x) = exp(-x).
    for (double x : {0.1, 1.0, 3.0, 10.0})
        CHECK(regularized_gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    // Q(1/2, x) = erfc(sqrt(x)).
    for (double x : {0.2, 1.0, 4.0})
        CHECK(regularized_gamma_q(0.5, x) ==
              doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-10));
    CHECK(regularized_gamma_q(3.0, 1.0) > regularized_gamma_q(3.0, 2.0));
    CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), BadInputError);
    CHECK_THROWS_AS(regularized_gamma_q(1.0, -0.5), BadInputError);
}

TEST_CASE("chi-square upper tail probability") {
    // The 5% critical value with one degree of freedom.
    CHECK(chi_square_upper_p(3.841, 1) == doctest::Approx(0.05).epsilon(1e-3));
    // Two degrees of freedom: p = exp(-x/2) exactly.
    for (double x : {0.5, 2.0, 7.0})
        CHECK(chi_square_upper_p(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-12));
    CHECK(chi_square_upper_p(0.0, 5) == 1.0);
    CHECK_THROWS_AS(chi_square_upper_p(1.0, 0), BadInputError);
    CHECK_THROWS_AS(chi_square_upper_p(-1.0, 3), BadInputError);
}

TEST_CASE("Anderson-Darling separates normal from non-normal samples") {
    // Seed pinned to a comfortably non-marginal draw (p = 0.64); p-values
    // were checked to be near-uniform across 400 seeds.
    std::vector<double> normal = normal_draws(125, 500);
    AndersonDarlingResult on_normal = anderson_darling_normal(normal);
    CHECK(on_normal.p_value > 0.05);

    // Centered exponential draws: heavily right-skewed, must be rejected.
    std::vector<double> expo;
    SplitRng rng(123, 1);
    for (int i = 0; i < 500; ++i)
        expo.push_back(-std::log(1.0 - rng.next_unit()) - 1.0);
    AndersonDarlingResult on_expo = anderson_darling_normal(expo);
    CHECK(on_expo.p_value < 0.01);

    // Standardized uniform draws: wrong tails, also rejected at 5%.
    std::vector<double> unif;
    SplitRng rng2(123, 2);
    for (int i = 0; i < 500; ++i)
        unif.push_back((rng2.next_unit() - 0.5) * std::sqrt(12.0));
    AndersonDarlingResult on_unif = anderson_darling_normal(unif);
    CHECK(on_unif.p_value < 0.05);

    CHECK(on_normal.p_value > on_expo.p_value);
    CHECK(on_normal.a_squared < on_expo.a_squared);
    CHECK_THROWS_AS(anderson_darling_normal({1.0}), BadInputError);
}
