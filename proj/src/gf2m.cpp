#include "crgen/gf2m.hpp"

namespace crgen {

namespace {

// Primitive polynomials over GF(2), index = m. Bitmask includes the x^m term.
constexpr uint32_t kPrimitivePoly[21] = {
    0,
    0x3,      // m=1:  x + 1
    0x7,      // m=2:  x^2 + x + 1
    0xB,      // m=3:  x^3 + x + 1
    0x13,     // m=4:  x^4 + x + 1
    0x25,     // m=5:  x^5 + x^2 + 1
    0x43,     // m=6:  x^6 + x + 1
    0x89,     // m=7:  x^7 + x^3 + 1
    0x11D,    // m=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // m=9:  x^9 + x^4 + 1
    0x409,    // m=10: x^10 + x^3 + 1
    0x805,    // m=11: x^11 + x^2 + 1
    0x1053,   // m=12: x^12 + x^6 + x^4 + x + 1
    0x201B,   // m=13: x^13 + x^4 + x^3 + x + 1
    0x4443,   // m=14: x^14 + x^10 + x^6 + x + 1
    0x8003,   // m=15: x^15 + x + 1
    0x1100B,  // m=16: x^16 + x^12 + x^3 + x + 1
    0x20009,  // m=17: x^17 + x^3 + 1
    0x40081,  // m=18: x^18 + x^7 + 1
    0x80027,  // m=19: x^19 + x^5 + x^2 + x + 1
    0x100009  // m=20: x^20 + x^3 + 1
};

}  // namespace

GF2m::GF2m(int m) : m_(m) {
    if (m < 1 || m > 20)
        throw config_error("GF2m: no primitive polynomial tabulated for this m");
    poly_ = kPrimitivePoly[m];

    if (m_ <= 16) {
        const uint32_t ord = order();
        exp_.resize(2 * ord);
        log_.assign(field_size(), 0);
        uint32_t x = 1;
        for (uint32_t i = 0; i < ord; ++i) {
            exp_[i] = x;
            log_[x] = i;
            x = mul_slow(x, 2);  // multiply by the primitive element
        }
        if (x != 1) throw config_error("GF2m: polynomial is not primitive");
        for (uint32_t i = 0; i < ord; ++i) exp_[ord + i] = exp_[i];
    }
}

uint32_t GF2m::mul_slow(uint32_t a, uint32_t b) const {
    uint64_t acc = 0;
    uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    // Reduce modulo poly_.
    for (int bit = 2 * m_ - 1; bit >= m_; --bit)
        if (acc >> bit & 1) acc ^= static_cast<uint64_t>(poly_) << (bit - m_);
    return static_cast<uint32_t>(acc);
}

uint32_t GF2m::mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return mul_slow(a, b);
}

uint32_t GF2m::pow(uint32_t a, uint64_t e) const {
    uint32_t result = 1;
    uint32_t base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

int GF2m::trace(uint32_t a) const {
    uint32_t acc = 0;
    uint32_t x = a;
    for (int i = 0; i < m_; ++i) {
        acc ^= x;
        x = mul(x, x);
    }
    // The trace lands in GF(2), so acc is 0 or 1.
    return static_cast<int>(acc & 1);
}

}  // namespace crgen
