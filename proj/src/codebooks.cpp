#include "crgen/codebooks.hpp"

#include <cmath>
#include <numbers>

#include "crgen/rng.hpp"

namespace crgen {

double Codebook::correlate_real(uint64_t, const std::vector<double>&) const {
    throw domain_error("correlate_real: codebook is not Euclidean");
}

size_t Codebook::correlate_binary(uint64_t, const PackedBits&) const {
    throw domain_error("correlate_binary: codebook is not binary");
}

std::vector<double> Codebook::codeword_real(uint64_t) const {
    throw domain_error("codeword_real: codebook is not Euclidean");
}

PackedBits Codebook::codeword_bits(uint64_t) const {
    throw domain_error("codeword_bits: codebook is not binary");
}

// ---------------------------------------------------------------- basis

BasisCodebook::BasisCodebook(int k) : k_(k) {
    if (k < 1) throw domain_error("BasisCodebook: k must be positive");
    if (k > 24) throw resource_limit_error("BasisCodebook: k > 24 exceeds the memory guard");
    n_ = size_t{1} << k;
}

double BasisCodebook::correlate_real(uint64_t index, const std::vector<double>& x) const {
    if (x.size() != n_) throw domain_error("BasisCodebook::correlate_real: dimension mismatch");
    if (index >= n_) throw domain_error("BasisCodebook::correlate_real: index out of range");
    return x[index];
}

std::vector<double> BasisCodebook::codeword_real(uint64_t index) const {
    if (index >= n_) throw domain_error("BasisCodebook::codeword_real: index out of range");
    std::vector<double> v(n_, 0.0);
    v[index] = 1.0;
    return v;
}

std::vector<std::pair<std::string, std::string>> BasisCodebook::descriptor() const {
    return {{"family", "basis"}, {"k", std::to_string(k_)}};
}

// ------------------------------------------------------------------ tao

namespace {

bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace

TaoCodebook::TaoCodebook(uint32_t p, int d) : p_(p), d_(d) {
    if (!is_prime(p)) throw domain_error("TaoCodebook: p must be prime");
    if (d < 1) throw domain_error("TaoCodebook: d must be positive");
    if (static_cast<uint32_t>(d) >= p) throw domain_error("TaoCodebook: requires d < p");

    size_ = 1;
    for (int j = 0; j < d; ++j) {
        if (size_ > (uint64_t{1} << 40) / p)
            throw resource_limit_error("TaoCodebook: p^d too large");
        size_ *= p;
    }
    key_bits_ = 0;
    while ((uint64_t{1} << key_bits_) < size_) ++key_bits_;

    // Precompute the real codeword vectors when they fit comfortably.
    const uint64_t doubles = size_ * 2 * static_cast<uint64_t>(p_);
    if (doubles <= (uint64_t{1} << 23)) {
        cache_.resize(doubles);
        for (uint64_t a = 0; a < size_; ++a) {
            const std::vector<double> v = codeword_real(a);
            std::copy(v.begin(), v.end(), cache_.begin() + a * 2 * p_);
        }
    }
}

std::vector<uint32_t> TaoCodebook::index_digits(uint64_t index) const {
    std::vector<uint32_t> digits(d_);
    for (int j = 0; j < d_; ++j) {
        digits[j] = static_cast<uint32_t>(index % p_);  // digits[j] = a_{j+1}
        index /= p_;
    }
    return digits;
}

std::vector<double> TaoCodebook::codeword_real(uint64_t index) const {
    if (index >= size_) throw domain_error("TaoCodebook::codeword_real: index out of range");
    const std::vector<uint32_t> a = index_digits(index);
    const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p_));
    std::vector<double> v(2 * p_);
    for (uint32_t x = 0; x < p_; ++x) {
        // f(x) = a_d x^d + ... + a_1 x  (mod p), Horner from the top; no
        // constant term, hence the trailing multiply by x.
        uint64_t f = 0;
        for (int j = d_ - 1; j >= 0; --j) f = (f * x + a[j]) % p_;
        f = (f * x) % p_;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(f) / p_;
        v[2 * x] = inv_sqrt_p * std::cos(angle);
        v[2 * x + 1] = inv_sqrt_p * std::sin(angle);
    }
    return v;
}

double TaoCodebook::correlate_real(uint64_t index, const std::vector<double>& x) const {
    if (x.size() != dimension())
        throw domain_error("TaoCodebook::correlate_real: dimension mismatch");
    if (index >= size_) throw domain_error("TaoCodebook::correlate_real: index out of range");
    if (!cache_.empty()) {
        const double* v = cache_.data() + index * dimension();
        double acc = 0.0;
        for (size_t i = 0; i < x.size(); ++i) acc += v[i] * x[i];
        return acc;
    }
    const std::vector<double> v = codeword_real(index);
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += v[i] * x[i];
    return acc;
}

double TaoCodebook::character_sum(const std::vector<uint32_t>& coeffs) const {
    double re = 0.0;
    for (uint32_t x = 0; x < p_; ++x) {
        uint64_t f = 0;
        for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
            f = (f * x + coeffs[j]) % p_;
        f = (f * x) % p_;
        re += std::cos(2.0 * std::numbers::pi * static_cast<double>(f) / p_);
    }
    return re / p_;
}

double TaoCodebook::inner_product(uint64_t a, uint64_t b) const {
    // <v_a, v_b> = Re((1/p) sum_x omega^(f_a(x) - f_b(x))); the exponent is
    // the character polynomial of the digitwise difference a - b (mod p).
    std::vector<uint32_t> da = index_digits(a);
    const std::vector<uint32_t> db = index_digits(b);
    for (int j = 0; j < d_; ++j) da[j] = (da[j] + p_ - db[j]) % p_;
    return character_sum(da);
}

std::vector<std::pair<std::string, std::string>> TaoCodebook::descriptor() const {
    return {{"family", "tao"}, {"p", std::to_string(p_)}, {"d", std::to_string(d_)}};
}

// ------------------------------------------------------------- dual-BCH

DualBchCodebook::DualBchCodebook(int m, int d, double gamma)
    : field_(m), d_(d), gamma_(gamma) {
    if (d < 1) throw domain_error("DualBchCodebook: d must be positive");
    if (m > 20) throw resource_limit_error("DualBchCodebook: m > 20 unsupported");
    n_ = field_.order();

    const int k_full = d * m;
    if (k_full > 40) throw resource_limit_error("DualBchCodebook: d*m too large");
    int kp = k_full;
    if (gamma > 0.0) {
        const int drop = static_cast<int>(std::ceil(std::log2(gamma * static_cast<double>(n_))));
        kp = k_full - drop;
        if (kp < 1)
            throw domain_error("DualBchCodebook: subset size 2^k/(gamma*n) is below 2");
    } else if (gamma < 0.0) {
        throw domain_error("DualBchCodebook: gamma must be nonnegative");
    }
    key_bits_ = kp;
    size_ = uint64_t{1} << kp;

    // powers_[j][x-1] = x^(2j+1) for j = 0..d-1.
    powers_.assign(d_, std::vector<uint32_t>(n_));
    for (uint32_t x = 1; x <= n_; ++x) {
        const uint32_t x2 = field_.mul(x, x);
        uint32_t cur = x;
        for (int j = 0; j < d_; ++j) {
            powers_[j][x - 1] = cur;
            cur = field_.mul(cur, x2);
        }
    }

    const uint64_t bits = size_ * static_cast<uint64_t>(n_);
    if (bits <= (uint64_t{1} << 28)) {
        cache_.reserve(size_);
        for (uint64_t a = 0; a < size_; ++a) cache_.push_back(build_codeword(a));
    }
}

PackedBits DualBchCodebook::build_codeword(uint64_t index) const {
    PackedBits cw(n_);
    const uint32_t mask = field_.field_size() - 1;
    for (size_t pos = 0; pos < n_; ++pos) {
        uint32_t acc = 0;
        uint64_t idx = index;
        for (int j = 0; j < d_; ++j) {
            const uint32_t aj = static_cast<uint32_t>(idx & mask);
            idx >>= field_.m();
            if (aj) acc ^= field_.mul(aj, powers_[j][pos]);
        }
        if (field_.trace(acc)) cw.set(pos, true);
    }
    return cw;
}

PackedBits DualBchCodebook::codeword_bits(uint64_t index) const {
    if (index >= size_) throw domain_error("DualBchCodebook::codeword_bits: index out of range");
    if (!cache_.empty()) return cache_[index];
    return build_codeword(index);
}

size_t DualBchCodebook::correlate_binary(uint64_t index, const PackedBits& x) const {
    if (x.size() != n_) throw domain_error("DualBchCodebook::correlate_binary: dimension mismatch");
    if (index >= size_) throw domain_error("DualBchCodebook::correlate_binary: index out of range");
    if (!cache_.empty()) return PackedBits::distance(cache_[index], x);
    return PackedBits::distance(build_codeword(index), x);
}

std::vector<std::pair<std::string, std::string>> DualBchCodebook::descriptor() const {
    return {{"family", "dual-bch"},
            {"m", std::to_string(field_.m())},
            {"d", std::to_string(d_)},
            {"gamma", std::to_string(gamma_)}};
}

std::unique_ptr<Codebook> basis_codebook(int k) {
    return std::make_unique<BasisCodebook>(k);
}

std::unique_ptr<Codebook> tao_codebook(uint32_t p, int d) {
    return std::make_unique<TaoCodebook>(p, d);
}

std::unique_ptr<Codebook> dual_bch_codebook(int m, int d, double gamma) {
    return std::make_unique<DualBchCodebook>(m, d, gamma);
}

// -------------------------------------------------------------- coloring

Coloring balanced_coloring(uint64_t codebook_size, int c, uint64_t seed) {
    if (c < 0) throw domain_error("balanced_coloring: c must be nonnegative");
    if (codebook_size == 0) throw domain_error("balanced_coloring: empty codebook");
    if (c >= 64 || (uint64_t{1} << c) > codebook_size)
        throw domain_error("balanced_coloring: 2^c exceeds the codebook size");

    std::vector<uint64_t> perm(codebook_size);
    for (uint64_t i = 0; i < codebook_size; ++i) perm[i] = i;
    Xoshiro256pp rng(seed, /*stream=*/0x434F4C4FULL);
    for (uint64_t i = codebook_size - 1; i > 0; --i) {
        const uint64_t j = rng.below(i + 1);
        std::swap(perm[i], perm[j]);
    }

    Coloring col;
    col.c = c;
    col.assignment.assign(codebook_size, 0);
    col.classes.assign(uint64_t{1} << c, {});
    const uint64_t num_colors = uint64_t{1} << c;
    for (uint64_t i = 0; i < codebook_size; ++i) {
        const uint32_t color = static_cast<uint32_t>(i % num_colors);
        col.assignment[perm[i]] = color;
        col.classes[color].push_back(perm[i]);
    }
    return col;
}

Coloring prefix_coloring(int k, int c) {
    if (c < 0 || c > k) throw domain_error("prefix_coloring: c must lie in [0,k]");
    const uint64_t size = uint64_t{1} << k;
    Coloring col;
    col.c = c;
    col.prefix_convention = true;
    col.assignment.assign(size, 0);
    col.classes.assign(uint64_t{1} << c, {});
    for (uint64_t i = 0; i < size; ++i) {
        const uint32_t color = static_cast<uint32_t>(i >> (k - c));
        col.assignment[i] = color;
        col.classes[color].push_back(i);
    }
    return col;
}

}  // namespace crgen
