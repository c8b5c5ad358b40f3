#include "panelval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "panelval/error.hpp"

namespace panelval::stats {

namespace {

double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the regularized incomplete beta (modified Lentz).
double ibeta_cf(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double f = d;
    for (int m = 1; m <= 100000; ++m) {
        const double dm = m;
        // even term
        double numer = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        f *= c * d;
        // odd term
        numer = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < eps) break;
    }
    return f;
}

double regularized_ibeta(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * ibeta_cf(x, a, b) / a;
    }
    return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(a, b)) *
                     ibeta_cf(1.0 - x, b, a) / b;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw ComputeError("ConstantInput: correlation undefined for constant sequence");
    }
    return sxy / std::sqrt(sxx * syy);
}

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

struct RankSums {
    double u_a = 0.0;       // U statistic of group a
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
};

RankSums pooled_u(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = average_ranks(pooled);

    RankSums s;
    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];
    s.u_a = rank_sum_a - static_cast<double>(a.size()) * (a.size() + 1) / 2.0;

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        s.tie_term += t * t * t - t;
        i = j;
    }
    return s;
}

// Exact Mann-Whitney tail: iterate all C(n+m, n) group-a index subsets.
void exact_mw_tails(std::span<const double> a, std::span<const double> b, double u_obs,
                    double& p_greater, double& p_less) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = average_ranks(pooled);
    const std::size_t n = a.size();
    const std::size_t total = pooled.size();
    const double offset = static_cast<double>(n) * (n + 1) / 2.0;

    std::vector<std::size_t> comb(n);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    std::size_t count_ge = 0, count_le = 0, count_all = 0;
    constexpr double tol = 1e-9; // ranks are exact multiples of 0.5
    for (;;) {
        double rank_sum = 0.0;
        for (std::size_t idx : comb) rank_sum += ranks[idx];
        const double u = rank_sum - offset;
        if (u >= u_obs - tol) ++count_ge;
        if (u <= u_obs + tol) ++count_le;
        ++count_all;
        // next combination in lexicographic order
        std::size_t k = n;
        while (k > 0 && comb[k - 1] == total - n + k - 1) --k;
        if (k == 0) break;
        ++comb[k - 1];
        for (std::size_t j = k; j < n; ++j) comb[j] = comb[j - 1] + 1;
    }
    p_greater = static_cast<double>(count_ge) / static_cast<double>(count_all);
    p_less = static_cast<double>(count_le) / static_cast<double>(count_all);
}

} // namespace

double mean(std::span<const double> values) {
    if (values.empty()) throw ComputeError("EmptyInput: mean of empty sequence");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw ComputeError("EmptyInput: sample sd needs n >= 2");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) throw ComputeError("EmptyInput: quantile of empty sequence");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (q <= 0.0) return sorted.front();
    if (q >= 1.0) return sorted.back();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) throw ComputeError("EmptyInput: ranks of empty sequence");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

TestResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ComputeError("LengthMismatch: spearman requires equal-length sequences");
    }
    if (x.size() < 3) throw ComputeError("EmptyInput: spearman requires n >= 3");
    if (is_constant(x) || is_constant(y)) {
        throw ComputeError("ConstantInput: spearman undefined for constant sequence");
    }
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double rho = pearson(rx, ry);
    return spearman_p_from_rho(rho, x.size());
}

TestResult spearman_p_from_rho(double rho, std::size_t n) {
    TestResult r;
    r.statistic = rho;
    r.n = n;
    r.df = static_cast<double>(n) - 2.0;
    r.direction = static_cast<int>(sign_of(rho));
    const double denom = 1.0 - rho * rho;
    if (denom <= 0.0) {
        r.p_one = 0.0;
        r.p_two = 0.0;
        return r;
    }
    const double t = rho * std::sqrt(r.df / denom);
    const double tail = student_t_tail(std::fabs(t), r.df);
    r.p_one = tail;
    r.p_two = std::min(1.0, 2.0 * tail);
    return r;
}

MeanTestResult one_sample_t(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw ComputeError("EmptyInput: one-sample t requires n >= 2");
    MeanTestResult r;
    r.n = n;
    r.df = static_cast<double>(n) - 1.0;
    r.mean = mean(values);
    r.sd = sample_sd(values);
    if (r.sd <= 0.0) throw ComputeError("ZeroVariance: ICIR undefined for constant series");
    r.icir = r.mean / r.sd;
    r.statistic = r.icir * std::sqrt(static_cast<double>(n));
    r.direction = static_cast<int>(sign_of(r.mean));
    const double tail = student_t_tail(std::fabs(r.statistic), r.df);
    // one-tailed p in the direction of the observed mean
    r.p_one = tail;
    r.p_two = std::min(1.0, 2.0 * tail);
    return r;
}

TestResult mann_whitney_one_sided(std::span<const double> a, std::span<const double> b,
                                  Alternative alternative) {
    if (a.empty() || b.empty()) {
        throw ComputeError("EmptyInput: mann-whitney requires both samples non-empty");
    }
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    const RankSums s = pooled_u(a, b);

    TestResult r;
    r.statistic = s.u_a;
    r.n = a.size() + b.size();
    const double mu = n * m / 2.0;
    r.direction = static_cast<int>(sign_of(s.u_a - mu));

    double p_greater = 0.0, p_less = 0.0;
    if (a.size() + b.size() <= kMannWhitneyExactLimit) {
        exact_mw_tails(a, b, s.u_a, p_greater, p_less);
    } else {
        const double total = n + m;
        double var = n * m / 12.0 *
                     ((total + 1.0) - s.tie_term / (total * (total - 1.0)));
        if (var <= 0.0) {
            // all pooled values tied: U is degenerate at its mean
            p_greater = 1.0;
            p_less = 1.0;
        } else {
            const double sd = std::sqrt(var);
            p_greater = 1.0 - normal_cdf((s.u_a - mu - 0.5) / sd);
            p_less = normal_cdf((s.u_a - mu + 0.5) / sd);
        }
    }
    r.p_one = alternative == Alternative::greater ? p_greater : p_less;
    r.p_two = std::min(1.0, 2.0 * std::min(p_greater, p_less));
    return r;
}

OlsResult ols_simple(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ComputeError("LengthMismatch: ols requires equal-length sequences");
    }
    const std::size_t n = x.size();
    if (n < 3) throw ComputeError("EmptyInput: ols requires n >= 3");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0) throw ComputeError("DegenerateX: ols regressor has zero variance");

    OlsResult r;
    r.n = n;
    r.beta = sxy / sxx;
    r.alpha = my - r.beta * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (r.alpha + r.beta * x[i]);
        ssr += e * e;
    }
    const double df = static_cast<double>(n) - 2.0;
    const double s2 = ssr / df;
    r.se_alpha = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
    r.t_alpha = r.se_alpha > 0.0 ? r.alpha / r.se_alpha
                                 : std::numeric_limits<double>::infinity() * sign_of(r.alpha);
    r.p_alpha = r.se_alpha > 0.0
                    ? std::min(1.0, 2.0 * student_t_tail(std::fabs(r.t_alpha), df))
                    : 0.0;
    r.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return r;
}

PercentileResult empirical_percentile(std::span<const double> null_samples, double actual) {
    if (null_samples.empty()) {
        throw ComputeError("EmptyInput: empirical percentile needs K >= 1 null samples");
    }
    std::size_t count_ge = 0;
    for (double v : null_samples) {
        if (v >= actual) ++count_ge;
    }
    PercentileResult r;
    r.p_upper = static_cast<double>(count_ge) / static_cast<double>(null_samples.size());
    r.percentile = 100.0 * (1.0 - r.p_upper);
    return r;
}

double student_t_tail(double t, double df) {
    if (df < 1.0) throw ComputeError("student_t_tail requires df >= 1");
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    if (t < 0.0) return 1.0 - student_t_tail(-t, df);
    const double x = df / (df + t * t);
    return 0.5 * regularized_ibeta(x, df / 2.0, 0.5);
}

double student_t_quantile(double p_upper, double df) {
    if (p_upper <= 0.0 || p_upper >= 1.0) {
        throw ComputeError("student_t_quantile requires 0 < p < 1");
    }
    if (p_upper == 0.5) return 0.0;
    if (p_upper > 0.5) return -student_t_quantile(1.0 - p_upper, df);
    double lo = 0.0, hi = 1.0;
    while (student_t_tail(hi, df) > p_upper) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_tail(mid, df) > p_upper) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace panelval::stats
