#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "crgen/errors.hpp"
#include "crgen/gf2m.hpp"
#include "crgen/packed_bits.hpp"
#include "crgen/sources.hpp"

namespace crgen {

enum class CodebookFamily { StandardBasis, TaoCharacter, DualBch };

// A family of codewords in dimension n, indexed by integers in [0, size).
// Euclidean families expose inner products; the binary family exposes
// Hamming distances (the caller compares against a radius instead of a
// threshold).
class Codebook {
  public:
    virtual ~Codebook() = default;

    virtual CodebookFamily family() const = 0;
    virtual Domain domain() const = 0;
    virtual size_t dimension() const = 0;
    virtual uint64_t size() const = 0;
    virtual int key_bits() const = 0;

    // Euclidean families: <v_index, x>. Throws for binary families.
    virtual double correlate_real(uint64_t index, const std::vector<double>& x) const;

    // Binary families: Hamming distance Delta(v_index, x). Throws otherwise.
    virtual size_t correlate_binary(uint64_t index, const PackedBits& x) const;

    // Codeword materialization, mainly for tests and invariant checks.
    virtual std::vector<double> codeword_real(uint64_t index) const;
    virtual PackedBits codeword_bits(uint64_t index) const;

    // Replayable descriptor: family name and parameters as "key=value" pairs.
    virtual std::vector<std::pair<std::string, std::string>> descriptor() const = 0;
};

// The 2^k standard basis vectors of R^(2^k).
class BasisCodebook final : public Codebook {
  public:
    explicit BasisCodebook(int k);

    CodebookFamily family() const override { return CodebookFamily::StandardBasis; }
    Domain domain() const override { return Domain::Real; }
    size_t dimension() const override { return n_; }
    uint64_t size() const override { return n_; }
    int key_bits() const override { return k_; }

    double correlate_real(uint64_t index, const std::vector<double>& x) const override;
    std::vector<double> codeword_real(uint64_t index) const override;
    std::vector<std::pair<std::string, std::string>> descriptor() const override;

  private:
    int k_;
    size_t n_;
};

// Near-orthogonal unit vectors from degree-d character sums over F_p,
// realized as real vectors of dimension 2p.
class TaoCodebook final : public Codebook {
  public:
    TaoCodebook(uint32_t p, int d);

    CodebookFamily family() const override { return CodebookFamily::TaoCharacter; }
    Domain domain() const override { return Domain::Real; }
    size_t dimension() const override { return 2 * static_cast<size_t>(p_); }
    uint64_t size() const override { return size_; }
    int key_bits() const override { return key_bits_; }

    double correlate_real(uint64_t index, const std::vector<double>& x) const override;
    std::vector<double> codeword_real(uint64_t index) const override;
    std::vector<std::pair<std::string, std::string>> descriptor() const override;

    uint32_t p() const { return p_; }
    int d() const { return d_; }

    // Exact pairwise inner product via the difference character sum; the
    // value depends only on the coefficient difference a - b (mod p).
    double inner_product(uint64_t a, uint64_t b) const;

    // Re((1/p) * sum_x omega^(c_d x^d + ... + c_1 x)) for a coefficient tuple.
    double character_sum(const std::vector<uint32_t>& coeffs) const;

  private:
    std::vector<uint32_t> index_digits(uint64_t index) const;

    uint32_t p_;
    int d_;
    uint64_t size_;
    int key_bits_;
    std::vector<double> cache_;  // codeword vectors, row-major; empty if too large
};

// Binary dual-BCH codewords: trace evaluations of odd-exponent polynomials
// a_1 x + a_2 x^3 + ... + a_d x^(2d-1) over GF(2^m)^*.
class DualBchCodebook final : public Codebook {
  public:
    // gamma > 0 keeps the lexicographically first 2^k' indices with
    // k' = d*m - ceil(log2(gamma*n)); gamma == 0 keeps the full code.
    DualBchCodebook(int m, int d, double gamma);

    CodebookFamily family() const override { return CodebookFamily::DualBch; }
    Domain domain() const override { return Domain::Binary; }
    size_t dimension() const override { return n_; }
    uint64_t size() const override { return size_; }
    int key_bits() const override { return key_bits_; }

    size_t correlate_binary(uint64_t index, const PackedBits& x) const override;
    PackedBits codeword_bits(uint64_t index) const override;
    std::vector<std::pair<std::string, std::string>> descriptor() const override;

    int m() const { return field_.m(); }
    int d() const { return d_; }
    double gamma() const { return gamma_; }

  private:
    PackedBits build_codeword(uint64_t index) const;

    GF2m field_;
    int d_;
    double gamma_;
    size_t n_;
    uint64_t size_;
    int key_bits_;
    std::vector<std::vector<uint32_t>> powers_;  // powers_[j][x-1] = x^(2j+1)
    std::vector<PackedBits> cache_;              // empty if too large
};

std::unique_ptr<Codebook> basis_codebook(int k);
std::unique_ptr<Codebook> tao_codebook(uint32_t p, int d);
std::unique_ptr<Codebook> dual_bch_codebook(int m, int d, double gamma);

// Balanced partition of codeword indices into 2^c classes. The auxiliary
// color (diamond) is never assigned to a codeword.
struct Coloring {
    static constexpr uint32_t kDiamond = 0xFFFFFFFFu;

    int c = 0;
    bool prefix_convention = false;
    std::vector<uint32_t> assignment;             // index -> color
    std::vector<std::vector<uint64_t>> classes;   // color -> indices

    uint64_t num_colors() const { return 1ull << c; }
    uint32_t color_of(uint64_t index) const { return assignment[index]; }
};

// Seeded permutation assigned round-robin; every class has size at most
// |C| * 2^-c + 1.
Coloring balanced_coloring(uint64_t codebook_size, int c, uint64_t seed);

// Color = top c bits of the index, so codewords of one class share a c-bit
// encoding prefix (required by the secret-key split).
Coloring prefix_coloring(int k, int c);

}  // namespace crgen
