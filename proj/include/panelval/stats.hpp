#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace panelval::stats {

// Shared result shape for the hypothesis tests in this kernel. `statistic`
// holds the test's headline value (rho, t, U, ...); one-tailed p is reported
// in the direction of the observed effect.
struct TestResult {
    double statistic = 0.0;
    double p_one = 1.0;
    double p_two = 1.0;
    double df = 0.0;
    std::size_t n = 0;
    int direction = 0; // sign of the observed effect
};

struct MeanTestResult : TestResult {
    double mean = 0.0;
    double sd = 0.0;   // sample sd, n-1 denominator
    double icir = 0.0; // mean / sd
};

struct OlsResult {
    double alpha = 0.0;
    double beta = 0.0;
    double se_alpha = 0.0;
    double t_alpha = 0.0;
    double p_alpha = 0.0; // two-tailed
    double r2 = 0.0;
    std::size_t n = 0;
};

struct PercentileResult {
    double percentile = 0.0; // 100 * (1 - p_upper)
    double p_upper = 0.0;    // fraction of null samples >= actual (ties count)
};

double mean(std::span<const double> values);
double sample_sd(std::span<const double> values); // n-1 denominator

// Linear-interpolation quantile on a sorted copy (numpy default convention).
double quantile(std::span<const double> values, double q);

// Ranks in [1, n]; tied values share the mean of their covered positions.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman rank correlation; p from the t approximation
// t = rho * sqrt((n-2) / (1-rho^2)) with n-2 degrees of freedom.
TestResult spearman(std::span<const double> x, std::span<const double> y);

// Closed-form tail of the Spearman t approximation for a given (rho, n);
// lets published correlations be checked without reconstructing data.
TestResult spearman_p_from_rho(double rho, std::size_t n);

// One-sample t-test of mean zero: t = (mean/sd) * sqrt(n).
MeanTestResult one_sample_t(std::span<const double> values);

enum class Alternative { greater, less };

// Mann-Whitney U with average-rank ties. Exact enumeration over all
// C(n+m, n) group assignments when n+m <= kMannWhitneyExactLimit; otherwise
// normal approximation with continuity correction and tie-adjusted variance.
inline constexpr std::size_t kMannWhitneyExactLimit = 12;
TestResult mann_whitney_one_sided(std::span<const double> a, std::span<const double> b,
                                  Alternative alternative);

// Simple least squares y = alpha + beta * x with the intercept t-test.
OlsResult ols_simple(std::span<const double> x, std::span<const double> y);

// Empirical upper-tail p against a null sample with ties counted as >=,
// i.e. p = (1/K) * #{k : null_k >= actual}, no +1 smoothing.
PercentileResult empirical_percentile(std::span<const double> null_samples, double actual);

// P(T >= t) for Student-t with df degrees of freedom, via the regularized
// incomplete beta function.
double student_t_tail(double t, double df);

// Upper-tail quantile: the t with student_t_tail(t, df) == p_upper.
double student_t_quantile(double p_upper, double df);

double normal_cdf(double z);

} // namespace panelval::stats
