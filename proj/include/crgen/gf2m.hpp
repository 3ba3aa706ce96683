#pragma once

#include <cstdint>
#include <vector>

#include "crgen/errors.hpp"

namespace crgen {

// Arithmetic in GF(2^m) with a fixed primitive polynomial per m <= 20.
// Log/antilog tables are built for m <= 16; larger fields use shift-and-xor
// multiplication.
class GF2m {
  public:
    explicit GF2m(int m);

    int m() const { return m_; }
    uint32_t field_size() const { return 1u << m_; }
    uint32_t order() const { return field_size() - 1; }

    static uint32_t add(uint32_t a, uint32_t b) { return a ^ b; }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

    // Trace into GF(2): Tr(a) = a + a^2 + a^4 + ... + a^(2^(m-1)).
    int trace(uint32_t a) const;

  private:
    uint32_t mul_slow(uint32_t a, uint32_t b) const;

    int m_;
    uint32_t poly_;  // reduction polynomial including the x^m term
    std::vector<uint32_t> exp_, log_;
};

}  // namespace crgen
