#pragma once

#include <cmath>

#include "crgen/errors.hpp"

namespace crgen {

// Beyond |t| = kQTailSaturation the tail probability is not representable at
// full precision; q_tail saturates to 0/1 there and q_tail_saturated reports it.
inline constexpr double kQTailSaturation = 38.0;

// Standard normal density.
double normal_pdf(double t);

// Q(t) = Pr[N(0,1) > t].
double q_tail(double t);

bool q_tail_saturated(double t);

// ln Q(t), finite for all t (no underflow, usable far past saturation).
double log_q_tail(double t);

// Inverse of q_tail on (0,1).
double q_inverse(double p);

// Inverse Mills ratio lambda(t) = pdf(t)/Q(t), t >= 0.
double mills_ratio(double t);

// L(t, phi; rho) = Pr[X > t, Y > phi*t] for (X,Y) ~ BGS(rho).
double orthant_probability(double t, double phi, double rho);

// Pr[Sign(X) != Sign(Y)] = arccos(rho)/pi for (X,Y) ~ BGS(rho).
double sheppard_disagreement(double rho);

// The (t, phi, rho, delta) tuple of the one-way template, with the defining
// relation phi = rho + delta*sqrt(1-rho^2) checked at construction.
struct TailParams {
    double t;
    double phi;
    double rho;
    double delta;

    TailParams(double t_, double phi_, double rho_, double delta_);
};

}  // namespace crgen
