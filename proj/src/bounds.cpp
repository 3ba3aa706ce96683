#include "crgen/bounds.hpp"

#include <cmath>
#include <string>

#include "crgen/binomial_tails.hpp"

namespace crgen {

double nu_correlated(const CrBoundQuery& query) {
    if (!(query.eps > 0.0 && query.eps <= 0.5))
        throw domain_error("nu_correlated: eps must lie in (0,0.5]");
    if (!(query.eps_prime > 0.0 && query.eps_prime <= 0.5))
        throw domain_error("nu_correlated: eps_prime must lie in (0,0.5]");
    if (!(query.alpha > 0.0 && query.alpha <= 1.0))
        throw domain_error("nu_correlated: alpha must lie in (0,1]");

    const double h = binary_entropy(query.eps_prime);
    const double cap = 4.0 * query.eps * (1.0 - query.eps) * query.alpha;
    if (h > cap)
        throw out_of_regime_error("nu_correlated: h(eps') = " + std::to_string(h) +
                                  " exceeds 4*eps*(1-eps)*alpha = " + std::to_string(cap));

    const double root = std::sqrt(1.0 - h / query.alpha);
    const double diff = root - (1.0 - 2.0 * query.eps);
    return query.alpha * diff * diff / (4.0 * query.eps * (1.0 - query.eps));
}

double nu_list(double eps, int k, uint64_t b) {
    if (!(eps > 0.0 && eps <= 0.5)) throw domain_error("nu_list: eps must lie in (0,0.5]");
    if (k < 1) throw domain_error("nu_list: k must be positive");
    if (b < 1) throw domain_error("nu_list: b must be positive");

    const double ratio = std::log2(static_cast<double>(b)) / k;
    const double cap = 4.0 * eps * (1.0 - eps);
    if (ratio > cap)
        throw out_of_regime_error("nu_list: log2(b)/k = " + std::to_string(ratio) +
                                  " exceeds 4*eps*(1-eps) = " + std::to_string(cap));

    const double diff = std::sqrt(1.0 - ratio) - (1.0 - 2.0 * eps);
    return diff * diff / (4.0 * eps * (1.0 - eps));
}

double interactive_lb(double eps, int k, uint64_t b, double gamma, double slack) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw domain_error("interactive_lb: gamma must lie in (0,1]");
    const double nu = nu_list(eps, k, b);
    return k * nu / 2.0 - 1.5 * std::log2(1.0 / gamma) - slack;
}

double chernoff_achievability(double eps_prime, double delta, int k) {
    if (!(delta > 0.0 && delta < eps_prime))
        throw domain_error("chernoff_achievability: need 0 < delta < eps_prime");
    if (k < 1) throw domain_error("chernoff_achievability: k must be positive");
    const double gap = eps_prime - delta;
    return 1.0 - std::exp(-gap * gap * k);
}

LshExponents lsh_exponents(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw domain_error("lsh_exponents: rho must lie in [0,1]");
    LshExponents out;
    out.f0 = std::log2(2.0 / (1.0 + rho));
    out.fcr = (1.0 - rho) / (1.0 + rho);
    return out;
}

double rho_bar(double p1, double p2) {
    if (!(p2 > 0.0 && p2 < p1 && p1 < 1.0))
        throw domain_error("rho_bar: need 0 < p2 < p1 < 1");
    return std::log(1.0 / p1) / std::log(1.0 / p2);
}

}  // namespace crgen
