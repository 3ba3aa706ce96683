#pragma once

#include <cstdint>
#include <vector>

#include "crgen/errors.hpp"
#include "crgen/packed_bits.hpp"

namespace crgen {

enum class Domain { Binary, Real };

enum class SourceKind { Dsbs, Bgs, DerivedGaussian };

// Which joint distribution the parties sample from, and its correlation.
struct CorrelationSource {
    SourceKind kind = SourceKind::Dsbs;
    double rho = 0.0;
    int clt_block = 1;  // DerivedGaussian only: binary samples averaged per output

    void validate() const;
};

// One draw of (X^n, Y^n). Binary samples live in packed bits with the {0,1}
// representation; the +/-1 mapping b -> 1-2b is applied only where
// correlations or projections are computed.
struct SamplePair {
    Domain domain = Domain::Binary;
    size_t n = 0;
    PackedBits bx, by;               // binary
    std::vector<double> rx, ry;      // real
};

SamplePair sample_dsbs(double rho, size_t n, uint64_t seed, uint64_t stream = 0);
SamplePair sample_bgs(double rho, size_t n, uint64_t seed, uint64_t stream = 0);

// CLT reduction: each output coordinate is the normalized sum of `block`
// fresh +/-1-mapped DSBS samples divided by sqrt(block).
SamplePair derive_gaussian(const CorrelationSource& src, int block, size_t n,
                           uint64_t seed, uint64_t stream = 0);

// Dispatch on source kind.
SamplePair draw_sample(const CorrelationSource& src, size_t n, uint64_t seed,
                       uint64_t stream = 0);

// Empirical correlation of a sample pair (binary samples mapped to +/-1).
double empirical_correlation(const SamplePair& sp);

}  // namespace crgen
