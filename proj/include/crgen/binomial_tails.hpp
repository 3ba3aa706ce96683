#pragma once

#include <cstdint>
#include <vector>

#include "crgen/errors.hpp"

namespace crgen {

// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x), h(0) = h(1) = 0.
double binary_entropy(double x);

// ln C(n, k) via lgamma; valid for any 0 <= k <= n.
double log_binomial(int64_t n, int64_t k);

// Exact Pr[Bin(n,p) <= r] for n <= 64, by stable pmf recurrence.
double binomial_cdf_exact(int n, double p, int r);

// Pr[Bin(n,p) = r] in log space; usable for large n.
double binomial_pmf(int64_t n, double p, int64_t r);

// Pr[Bin(n,1/2) <= r] by log-space summation; usable for n in the thousands.
double binomial_tail_half(int64_t n, int64_t r);

// Exact joint pmf of (wt(X), wt(Y)) for (X,Y) ~ DSBS(rho)^{tensor n}, n <= 24.
// Entry [r2][r3] is Pr[wt(X) = r2, wt(Y) = r3].
std::vector<std::vector<double>> correlated_weight_pmf(int n, double rho);

// Parameters of the hypergeometric-style ratio psi(a). All real quantities
// are rounded down to integers once, here, and reused everywhere.
struct PsiParams {
    int n;
    double theta;
    double t;
    double t2;

    // Derived integers (rounding rule: floor, applied once).
    int64_t m_plus;   // floor(n(1+theta)/2)
    int64_t m_minus;  // n - m_plus
    int64_t w;        // floor(n/2 - t2*sqrt(n)/2)
    int64_t a_max;    // floor(n(1+theta)/4 - (t+t2)*sqrt(n)/4)

    PsiParams(int n_, double theta_, double t_, double t2_);
};

// psi(a) = C(m_plus, a) * C(m_minus, w - a) / C(n, w), in log space.
double psi(const PsiParams& params, int64_t a);

struct BiasedPointMass {
    double lower_bound;       // (constant/sqrt(m)) * exp(-m a^2 / (2 eps (1-eps)))
    double exact;             // exact binomial point mass at the rounded point
    bool asymptotic_regime;   // alpha^3 * m small enough for the bound to be meaningful
};

// Point-mass lower bound for Bin(m, eps) at (eps+alpha)*m, with the
// suppressed constant supplied explicitly by the caller.
BiasedPointMass biased_point_mass_lb(int64_t m, double eps, double alpha,
                                     double constant = 0.1);

}  // namespace crgen
