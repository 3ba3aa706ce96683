#include "crgen/binomial_tails.hpp"

#include <cmath>

namespace crgen {

double binary_entropy(double x) {
    if (std::isnan(x) || x < 0.0 || x > 1.0)
        throw domain_error("binary_entropy: x must lie in [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double log_binomial(int64_t n, int64_t k) {
    if (k < 0 || k > n) throw domain_error("log_binomial: k outside [0,n]");
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial_cdf_exact(int n, double p, int r) {
    if (n < 0 || n > 64) throw domain_error("binomial_cdf_exact: n must lie in [0,64]");
    if (r < 0 || r > n) throw domain_error("binomial_cdf_exact: r outside [0,n]");
    if (!(p >= 0.0 && p <= 1.0)) throw domain_error("binomial_cdf_exact: p outside [0,1]");
    if (p == 0.0) return 1.0;
    if (p == 1.0) return r == n ? 1.0 : 0.0;

    // pmf recurrence from i=0 upward; stable because successive terms differ
    // by a bounded factor.
    long double term = std::pow(static_cast<long double>(1.0 - p), n);
    long double sum = term;
    const long double odds = static_cast<long double>(p) / (1.0 - p);
    for (int i = 1; i <= r; ++i) {
        term *= odds * static_cast<long double>(n - i + 1) / i;
        sum += term;
    }
    return static_cast<double>(std::min<long double>(sum, 1.0L));
}

double binomial_pmf(int64_t n, double p, int64_t r) {
    if (r < 0 || r > n) throw domain_error("binomial_pmf: r outside [0,n]");
    if (!(p >= 0.0 && p <= 1.0)) throw domain_error("binomial_pmf: p outside [0,1]");
    if (p == 0.0) return r == 0 ? 1.0 : 0.0;
    if (p == 1.0) return r == n ? 1.0 : 0.0;
    const double lg = log_binomial(n, r) + r * std::log(p) + (n - r) * std::log1p(-p);
    return std::exp(lg);
}

double binomial_tail_half(int64_t n, int64_t r) {
    if (r < 0) return 0.0;
    if (r >= n) return 1.0;
    // Sum pmf terms from the boundary downward; the largest term comes last,
    // so accumulate in ascending order of magnitude.
    long double sum = 0.0L;
    const double ln_half = std::log(0.5);
    for (int64_t i = 0; i <= r; ++i)
        sum += std::exp(static_cast<long double>(log_binomial(n, i) + n * ln_half));
    return static_cast<double>(std::min<long double>(sum, 1.0L));
}

std::vector<std::vector<double>> correlated_weight_pmf(int n, double rho) {
    if (std::fabs(rho) > 1.0) throw domain_error("correlated_weight_pmf: |rho| must be <= 1");
    if (n < 1) throw domain_error("correlated_weight_pmf: n must be positive");
    if (n > 24)
        throw resource_limit_error("correlated_weight_pmf: n > 24 exceeds the exhaustive cutoff");

    // Per-coordinate joint pmf of (x_i, y_i) for DSBS(rho).
    const double p_same = (1.0 + rho) / 4.0;  // (0,0) and (1,1)
    const double p_diff = (1.0 - rho) / 4.0;  // (0,1) and (1,0)

    std::vector<std::vector<double>> pmf(n + 1, std::vector<double>(n + 1, 0.0));
    pmf[0][0] = 1.0;
    for (int coord = 0; coord < n; ++coord) {
        std::vector<std::vector<double>> next(n + 1, std::vector<double>(n + 1, 0.0));
        for (int r2 = 0; r2 <= coord; ++r2) {
            for (int r3 = 0; r3 <= coord; ++r3) {
                const double m = pmf[r2][r3];
                if (m == 0.0) continue;
                next[r2][r3] += m * p_same;
                next[r2 + 1][r3 + 1] += m * p_same;
                next[r2][r3 + 1] += m * p_diff;
                next[r2 + 1][r3] += m * p_diff;
            }
        }
        pmf.swap(next);
    }
    return pmf;
}

PsiParams::PsiParams(int n_, double theta_, double t_, double t2_)
    : n(n_), theta(theta_), t(t_), t2(t2_) {
    if (n < 1) throw domain_error("PsiParams: n must be positive");
    if (!(theta >= 0.0 && theta < 1.0)) throw domain_error("PsiParams: theta must lie in [0,1)");
    if (t < 0.0 || t2 < 0.0) throw domain_error("PsiParams: t, t2 must be nonnegative");

    const double sqn = std::sqrt(static_cast<double>(n));
    m_plus = static_cast<int64_t>(std::floor(n * (1.0 + theta) / 2.0));
    m_minus = n - m_plus;
    w = static_cast<int64_t>(std::floor(n / 2.0 - t2 * sqn / 2.0));
    a_max = static_cast<int64_t>(std::floor(n * (1.0 + theta) / 4.0 - (t + t2) * sqn / 4.0));
    if (a_max < 0) throw domain_error("PsiParams: a_max is negative; configuration rejected");
    if (w < 0) throw domain_error("PsiParams: weight bound is negative; configuration rejected");
}

double psi(const PsiParams& params, int64_t a) {
    if (a < 0 || a > params.a_max) throw domain_error("psi: a outside [0, a_max]");
    if (a > params.m_plus || params.w - a < 0 || params.w - a > params.m_minus)
        throw domain_error("psi: binomial arguments invalid for this configuration");
    const double lg = log_binomial(params.m_plus, a) +
                      log_binomial(params.m_minus, params.w - a) -
                      log_binomial(params.n, params.w);
    return std::exp(lg);
}

BiasedPointMass biased_point_mass_lb(int64_t m, double eps, double alpha, double constant) {
    if (m < 1) throw domain_error("biased_point_mass_lb: m must be positive");
    if (!(eps > 0.0 && eps <= 0.5)) throw domain_error("biased_point_mass_lb: eps must lie in (0,0.5]");
    const double point = (eps + alpha) * m;
    const int64_t r = static_cast<int64_t>(std::floor(point));
    if (r < 0 || r > m)
        throw domain_error("biased_point_mass_lb: (eps+alpha)*m outside [0,m]");

    BiasedPointMass out;
    out.lower_bound = (constant / std::sqrt(static_cast<double>(m))) *
                      std::exp(-m * alpha * alpha / (2.0 * eps * (1.0 - eps)));
    out.exact = binomial_pmf(m, eps, r);
    out.asymptotic_regime = std::fabs(alpha) * std::fabs(alpha) * std::fabs(alpha) * m < 0.5;
    return out;
}

}  // namespace crgen
