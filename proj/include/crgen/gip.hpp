#pragma once

#include <cstdint>
#include <vector>

#include "crgen/errors.hpp"

namespace crgen {

// A GapInnerProduct instance: distinguish <u,v> >= r from <u,v> <= s.
struct GipInstance {
    std::vector<double> u;
    std::vector<double> v;
    double r = 0.0;
    double s = 0.0;
    double delta = 0.1;  // error budget

    void validate() const;
};

// Padding reduction to r = 0: both vectors gain ceil(n*r) coordinates of
// opposite sign so that <u',v'> = (<u,v> - r)/(1+r) while norms stay 1.
// Requires r >= 0 (negate Alice's vector first when r < 0).
GipInstance pad_reduce(const GipInstance& instance);

struct SketchBits {
    std::vector<uint8_t> bits;
    int t = 0;
};

// Hyperplane-rounding sketch: bit i = sign of <vector, draw_i> mapped to
// {0,1}. The draws are that party's halves of t independent correlated
// Gaussian vectors.
SketchBits sketch(const std::vector<double>& vector,
                  const std::vector<std::vector<double>>& draws);

enum class GipDecision { Yes, No };

// Referee rule: YES iff the normalized Hamming distance is at most the
// midpoint fraction 1/2 + (arccos(gamma)/pi - 1/2)/2, gamma < 0.
GipDecision referee_decide(const SketchBits& a, const SketchBits& b, double gamma);

// Repetitions for error budget delta at gap gamma: ceil(C*ln(1/delta)/gamma^2).
int sketch_repetitions(double delta, double gamma, double constant);

// Default constant in t = C*log(1/delta)/gamma^2, calibrated once so the
// delta = 0.1 regime passes with margin.
inline constexpr double kDefaultSketchConstant = 24.0;

struct GipResult {
    GipDecision decision = GipDecision::No;
    long bits_communicated = 0;
    int t = 0;
};

// Full zero-communication protocol: pad-reduce, draw correlated Gaussians
// (directly from BGS(rho), or CLT-derived from DSBS when clt_block > 0),
// sketch both sides, and let the referee decide. bits_communicated = 2t.
GipResult solve_gip(const GipInstance& instance, double rho, uint64_t seed,
                    double sketch_constant = kDefaultSketchConstant,
                    int clt_block = 0);

}  // namespace crgen
