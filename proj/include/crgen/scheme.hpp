#pragma once

#include <cstdint>
#include <optional>

#include "crgen/codebooks.hpp"
#include "crgen/errors.hpp"
#include "crgen/sources.hpp"

namespace crgen {

// All scalars of the one-way template with their defining relations:
//   Q(t) = 2^-k / 4,  phi = rho + delta*sqrt(1-rho^2),  s = phi*t,
//   c >= ceil((1-phi^2)(k+2)) when communicating, c = 0 for zero-comm,
//   r = floor(n/2 - t*sqrt(n)/2), r' = floor(n/2 - phi*t*sqrt(n)/2).
struct SchemeParams {
    int k = 0;
    size_t n = 0;
    double rho = 0.0;
    double delta = 0.0;
    double phi = 0.0;
    double t = 0.0;
    double s = 0.0;
    int c = 0;
    bool zero_comm = false;
    Domain codebook_domain = Domain::Real;
    long r = 0;        // binary families only
    long r_prime = 0;  // binary families only
};

// Default cap on key length; brute-force decode scans all 2^k codewords.
// Overridable via the CRGEN_MAX_K environment variable.
int max_key_bits();

SchemeParams derive_params(const Codebook& codebook, double rho, double delta,
                           bool zero_comm);

// The transmitted color, or the auxiliary diamond symbol. Either way the
// message occupies c+1 bits on the wire.
struct Message {
    bool diamond = false;
    uint32_t color = 0;
};

struct RunOutcome {
    uint64_t alice_key = 0;
    uint64_t bob_key = 0;
    Message message;
    bool alice_fell_back = false;
    bool bob_fell_back = false;
    bool agreed = false;
};

// Uniform k-bit fallback key. Euclidean inputs: sign bits of the first k
// coordinates; binary inputs: the first k raw bits. Alice and Bob use the
// identical mapping on their own halves.
uint64_t fallback_key(const SamplePair& sample, int k, bool alice_side);

struct AliceResult {
    uint64_t key = 0;
    Message message;
    bool fell_back = false;
};

AliceResult alice_encode(const SchemeParams& params, const Codebook& codebook,
                         const Coloring& coloring, const SamplePair& sample);

struct BobResult {
    uint64_t key = 0;
    bool fell_back = false;
};

BobResult bob_decode(const SchemeParams& params, const Codebook& codebook,
                     const Coloring& coloring, const SamplePair& sample,
                     const Message& received);

RunOutcome run_single(const SchemeParams& params, const Codebook& codebook,
                      const Coloring& coloring, const SamplePair& sample);

struct KeySplit {
    uint64_t public_prefix = 0;  // c bits
    uint64_t secret_suffix = 0;  // k - c bits
    int c = 0;
    int k = 0;
};

// Requires a coloring built with the prefix convention (codewords of one
// class share a common c-bit encoding prefix).
KeySplit secret_key_split(uint64_t key, const Coloring& coloring,
                          const SchemeParams& params);

}  // namespace crgen
