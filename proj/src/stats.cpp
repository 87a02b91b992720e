#include "rrg/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rrg/errors.hpp"

namespace rrg {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw BadInputError("mean of an empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mu = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return ss / static_cast<double>(xs.size() - 1);
}

double skewness(const std::vector<double>& xs) {
    if (xs.size() < 3) throw BadInputError("skewness needs at least 3 observations");
    double mu = mean(xs);
    double m2 = 0.0, m3 = 0.0;
    for (double x : xs) {
        double c = x - mu;
        m2 += c * c;
        m3 += c * c * c;
    }
    double n = static_cast<double>(xs.size());
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0) throw BadInputError("skewness undefined for a constant sample");
    return m3 / std::pow(m2, 1.5);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0) throw BadInputError("gamma shape must be positive");
    if (x < 0.0) throw BadInputError("gamma argument must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi_square_upper_p(double stat, int df) {
    if (df < 1) throw BadInputError("need df >= 1");
    if (stat < 0.0) throw BadInputError("chi-square statistic must be nonnegative");
    return regularized_gamma_q(0.5 * df, 0.5 * stat);
}

namespace {

// P(A^2 < z) in the n -> infinity limit.
double adinf(double z) {
    if (z <= 0.0) return 0.0;
    if (z < 2.0)
        return std::exp(-1.2337141 / z) / std::sqrt(z) *
               (2.00012 +
                (0.247105 -
                 (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) *
                    z);
    return std::exp(
        -std::exp(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z));
}

// Finite-n correction to adinf.
double errfix(int n, double x) {
    if (x > 0.8)
        return (-130.2137 +
                (745.2337 - (1705.091 - (1950.646 - (1116.360 - 255.7844 * x) * x) * x) * x) * x) /
               n;
    double c = 0.01265 + 0.1757 / n;
    if (x < c) {
        double t = x / c;
        t = std::sqrt(t) * (1.0 - t) * (49.0 * t - 102.0);
        return t * (0.0037 / (static_cast<double>(n) * n) + 0.00078 / n + 0.00006) / n;
    }
    double t = (x - c) / (0.8 - c);
    t = -0.00022633 +
        (6.54034 - (14.6538 - (14.458 - (8.259 - 1.91864 * t) * t) * t) * t) * t;
    return t * (0.04213 + 0.01365 / n) / n;
}

} // namespace

AndersonDarlingResult anderson_darling_normal(std::vector<double> standardized) {
    const size_t n = standardized.size();
    if (n < 2) throw BadInputError("need at least 2 observations");
    std::sort(standardized.begin(), standardized.end());
    double a2 = -static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
        double lo = normal_cdf(standardized[i]);
        double hi = normal_cdf(standardized[n - 1 - i]);
        lo = std::min(std::max(lo, 1e-300), 1.0 - 1e-16);
        hi = std::min(std::max(hi, 1e-300), 1.0 - 1e-16);
        a2 -= (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n) *
              (std::log(lo) + std::log1p(-hi));
    }
    AndersonDarlingResult out;
    out.a_squared = a2;
    double cdf = adinf(a2) + errfix(static_cast<int>(n), adinf(a2));
    cdf = std::min(std::max(cdf, 0.0), 1.0);
    out.p_value = 1.0 - cdf;
    return out;
}

} // namespace rrg
