#ifndef RRG_STATS_HPP
#define RRG_STATS_HPP

#include <vector>

namespace rrg {

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs); // n-1 denominator
double skewness(const std::vector<double>& xs);        // m3 / m2^(3/2)

double normal_cdf(double z);

// Upper-tail regularized incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
double chi_square_upper_p(double stat, int df);

// Anderson-Darling test of a sample against the standard normal (the null
// fully specified: the caller standardizes with its own theoretical mean and
// scale). p-value per the Marsaglia-Marsaglia evaluation of the
// Anderson-Darling distribution with finite-n correction.
struct AndersonDarlingResult {
    double a_squared = 0.0;
    double p_value = 0.0;
};
AndersonDarlingResult anderson_darling_normal(std::vector<double> standardized);

} // namespace rrg

#endif
