#pragma once

#include <cstdint>

#include "crgen/errors.hpp"

namespace crgen {

// Converse query for correlated randomness generation over DSBS(1-2*eps).
// All logs are base 2.
struct CrBoundQuery {
    double eps = 0.25;        // source noise, in (0, 0.5]
    double eps_prime = 0.01;  // target radius fraction, in (0, 0.5]
    double alpha = 1.0;       // min-entropy rate, in (0, 1]
    int k = 1;                // key length
    double gamma_target = 1.0;
    uint64_t list_size = 1;   // list variant only
};

// nu = alpha * [sqrt(1 - h(eps')/alpha) - (1-2eps)]^2 / (4 eps (1-eps));
// success gamma > 2^(-nu k) is impossible. Valid when h(eps') <= 4 eps (1-eps) alpha.
double nu_correlated(const CrBoundQuery& query);

// List variant: nu = [sqrt(1 - log2(b)/k) - (1-2eps)]^2 / (4 eps (1-eps)).
double nu_list(double eps, int k, uint64_t b);

// Interactive lower bound in bits:
//   k * nu_list / 2 - (3/2) log2(1/gamma) - slack.
// The O(1) slack is reported as an explicit parameter, never absorbed.
double interactive_lb(double eps, int k, uint64_t b, double gamma, double slack = 0.0);

// Achievable agreement of the trivial prefix scheme over DSBS(1-2(eps'-delta)):
// gamma = 1 - exp(-(eps'-delta)^2 * k).
double chernoff_achievability(double eps_prime, double delta, int k);

struct LshExponents {
    double f0;   // trivial scheme: log2(2/(1+rho))
    double fcr;  // common-randomness scheme: (1-rho)/(1+rho)
};

LshExponents lsh_exponents(double rho);

// rho-bar = log(1/p1)/log(1/p2) for collision probabilities 0 < p2 < p1 < 1.
double rho_bar(double p1, double p2);

}  // namespace crgen
