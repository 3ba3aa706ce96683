#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "crgen/errors.hpp"

namespace crgen {

// Bit vector packed into 64-bit words. Hamming-distance loops dominate the
// cost of the binary scheme, so distances are computed word-wise.
class PackedBits {
  public:
    PackedBits() = default;
    explicit PackedBits(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set(size_t i, bool v) {
        const uint64_t mask = 1ULL << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

    size_t weight() const {
        size_t w = 0;
        for (uint64_t word : words_) w += std::popcount(word);
        return w;
    }

    static size_t distance(const PackedBits& a, const PackedBits& b) {
        if (a.n_ != b.n_) throw domain_error("PackedBits::distance: length mismatch");
        size_t d = 0;
        for (size_t i = 0; i < a.words_.size(); ++i)
            d += std::popcount(a.words_[i] ^ b.words_[i]);
        return d;
    }

    void xor_with(const PackedBits& other) {
        if (n_ != other.n_) throw domain_error("PackedBits::xor_with: length mismatch");
        for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    }

    bool operator==(const PackedBits& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    // Low-order bits as an integer; used for fallback keys.
    uint64_t prefix_bits(int k) const {
        uint64_t v = 0;
        for (int i = 0; i < k; ++i) v |= static_cast<uint64_t>(get(i)) << i;
        return v;
    }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace crgen
