#include "crgen/scheme.hpp"

#include <cmath>
#include <cstdlib>

#include "crgen/gaussian_tails.hpp"

namespace crgen {

int max_key_bits() {
    if (const char* env = std::getenv("CRGEN_MAX_K")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 22;
}

SchemeParams derive_params(const Codebook& codebook, double rho, double delta,
                           bool zero_comm) {
    if (!(rho > 0.0 && rho < 1.0))
        throw domain_error("derive_params: rho must lie in (0,1)");
    const double delta_max = std::sqrt((1.0 - rho) / (1.0 + rho));

    SchemeParams p;
    p.k = codebook.key_bits();
    p.n = codebook.dimension();
    p.rho = rho;
    p.zero_comm = zero_comm;
    p.codebook_domain = codebook.domain();

    if (p.k > max_key_bits())
        throw resource_limit_error("derive_params: k exceeds the brute-force decode guard");

    if (zero_comm) {
        p.phi = 1.0;
        p.delta = delta_max;
        p.c = 0;
    } else {
        if (delta < 0.0 || delta > delta_max * (1.0 + 1e-12))
            throw domain_error("derive_params: delta outside [0, sqrt((1-rho)/(1+rho))]");
        p.delta = delta;
        p.phi = rho + delta * std::sqrt(1.0 - rho * rho);
        p.c = static_cast<int>(std::ceil((1.0 - p.phi * p.phi) * (p.k + 2)));
        if (p.c > p.k) p.c = p.k;  // a color per codeword is always enough
    }

    p.t = q_inverse(std::exp2(-static_cast<double>(p.k)) / 4.0);
    if (codebook.domain() == Domain::Binary) {
        // Cap t so the Hamming radius stays nonnegative.
        const double sqn = std::sqrt(static_cast<double>(p.n));
        if (p.t > sqn) p.t = sqn;
        p.r = static_cast<long>(std::floor(p.n / 2.0 - p.t * sqn / 2.0));
        p.r_prime = static_cast<long>(std::floor(p.n / 2.0 - p.phi * p.t * sqn / 2.0));
    }
    p.s = p.phi * p.t;
    return p;
}

uint64_t fallback_key(const SamplePair& sample, int k, bool alice_side) {
    if (static_cast<size_t>(k) > sample.n)
        throw domain_error("fallback_key: n < k");
    if (sample.domain == Domain::Binary)
        return (alice_side ? sample.bx : sample.by).prefix_bits(k);
    const std::vector<double>& v = alice_side ? sample.rx : sample.ry;
    uint64_t key = 0;
    for (int i = 0; i < k; ++i)
        if (v[i] > 0.0) key |= uint64_t{1} << i;
    return key;
}

namespace {

// Scans `indices` (or the whole codebook when nullptr) for codewords whose
// statistic exceeds the threshold; strict ">" for projections, "<= radius"
// for distances; keeping both comparisons strict/nonstrict this way is what
// makes the two parties' accept regions nest.
struct ScanResult {
    int hits = 0;
    uint64_t unique_index = 0;
};

ScanResult scan(const Codebook& codebook, const SamplePair& sample, bool alice_side,
                double threshold, long radius, const std::vector<uint64_t>* indices) {
    ScanResult res;
    const uint64_t total = indices ? indices->size() : codebook.size();
    if (codebook.domain() == Domain::Binary) {
        const PackedBits& x = alice_side ? sample.bx : sample.by;
        for (uint64_t j = 0; j < total; ++j) {
            const uint64_t idx = indices ? (*indices)[j] : j;
            if (static_cast<long>(codebook.correlate_binary(idx, x)) <= radius) {
                if (++res.hits > 1) return res;
                res.unique_index = idx;
            }
        }
    } else {
        const std::vector<double>& x = alice_side ? sample.rx : sample.ry;
        for (uint64_t j = 0; j < total; ++j) {
            const uint64_t idx = indices ? (*indices)[j] : j;
            if (codebook.correlate_real(idx, x) > threshold) {
                if (++res.hits > 1) return res;
                res.unique_index = idx;
            }
        }
    }
    return res;
}

}  // namespace

AliceResult alice_encode(const SchemeParams& params, const Codebook& codebook,
                         const Coloring& coloring, const SamplePair& sample) {
    if (sample.n != params.n) throw domain_error("alice_encode: dimension mismatch");

    const ScanResult res =
        scan(codebook, sample, /*alice_side=*/true, params.t, params.r, nullptr);

    AliceResult out;
    if (res.hits == 1) {
        out.key = res.unique_index;
        out.message.diamond = params.zero_comm;  // zero-comm: everything is diamond
        out.message.color = params.zero_comm ? Coloring::kDiamond
                                             : coloring.color_of(res.unique_index);
    } else {
        out.key = fallback_key(sample, params.k, /*alice_side=*/true);
        out.message.diamond = true;
        out.message.color = Coloring::kDiamond;
        out.fell_back = true;
    }
    return out;
}

BobResult bob_decode(const SchemeParams& params, const Codebook& codebook,
                     const Coloring& coloring, const SamplePair& sample,
                     const Message& received) {
    if (sample.n != params.n) throw domain_error("bob_decode: dimension mismatch");

    BobResult out;
    const std::vector<uint64_t>* indices = nullptr;
    if (received.diamond) {
        if (!params.zero_comm) {
            // One-way mode: diamond routes straight to fallback.
            out.key = fallback_key(sample, params.k, /*alice_side=*/false);
            out.fell_back = true;
            return out;
        }
        // Zero-comm convention: all codewords are colored diamond, scan all.
    } else {
        if (received.color >= coloring.num_colors())
            throw protocol_error("bob_decode: unknown color value");
        indices = &coloring.classes[received.color];
    }

    const ScanResult res =
        scan(codebook, sample, /*alice_side=*/false, params.s, params.r_prime, indices);
    if (res.hits == 1) {
        out.key = res.unique_index;
    } else {
        out.key = fallback_key(sample, params.k, /*alice_side=*/false);
        out.fell_back = true;
    }
    return out;
}

RunOutcome run_single(const SchemeParams& params, const Codebook& codebook,
                      const Coloring& coloring, const SamplePair& sample) {
    const AliceResult a = alice_encode(params, codebook, coloring, sample);
    const BobResult b = bob_decode(params, codebook, coloring, sample, a.message);
    RunOutcome out;
    out.alice_key = a.key;
    out.bob_key = b.key;
    out.message = a.message;
    out.alice_fell_back = a.fell_back;
    out.bob_fell_back = b.fell_back;
    out.agreed = a.key == b.key;
    return out;
}

KeySplit secret_key_split(uint64_t key, const Coloring& coloring,
                          const SchemeParams& params) {
    if (!coloring.prefix_convention)
        throw config_error("secret_key_split: coloring lacks the prefix convention");
    const int c = coloring.c;
    const int k = params.k;
    if (c > k) throw config_error("secret_key_split: c exceeds k");
    KeySplit out;
    out.c = c;
    out.k = k;
    out.public_prefix = c == 0 ? 0 : key >> (k - c);
    out.secret_suffix = (k - c) == 64 ? key : key & ((uint64_t{1} << (k - c)) - 1);
    return out;
}

}  // namespace crgen
