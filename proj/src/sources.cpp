#include "crgen/sources.hpp"

#include <cmath>

#include "crgen/rng.hpp"

namespace crgen {

void CorrelationSource::validate() const {
    if (std::isnan(rho) || std::fabs(rho) > 1.0)
        throw domain_error("CorrelationSource: |rho| must be <= 1");
    if (kind == SourceKind::DerivedGaussian && clt_block < 1)
        throw domain_error("CorrelationSource: clt_block must be >= 1");
}

SamplePair sample_dsbs(double rho, size_t n, uint64_t seed, uint64_t stream) {
    if (std::isnan(rho) || std::fabs(rho) > 1.0)
        throw domain_error("sample_dsbs: |rho| must be <= 1");
    if (n < 1) throw domain_error("sample_dsbs: n must be positive");

    SamplePair sp;
    sp.domain = Domain::Binary;
    sp.n = n;
    sp.bx = PackedBits(n);
    sp.by = PackedBits(n);

    Xoshiro256pp rng(seed, stream);
    const double flip_p = (1.0 - rho) / 2.0;
    auto& xw = sp.bx.words();
    const size_t nwords = xw.size();
    for (size_t w = 0; w < nwords; ++w) xw[w] = rng.next();
    // Zero the tail bits of the last word so weight/distance stay exact.
    if (n & 63) xw[nwords - 1] &= (1ULL << (n & 63)) - 1;

    sp.by = sp.bx;
    if (flip_p == 0.0) return sp;
    if (flip_p == 1.0) {
        for (size_t i = 0; i < n; ++i) sp.by.flip(i);
        return sp;
    }
    for (size_t i = 0; i < n; ++i)
        if (rng.bernoulli(flip_p)) sp.by.flip(i);
    return sp;
}

SamplePair sample_bgs(double rho, size_t n, uint64_t seed, uint64_t stream) {
    if (std::isnan(rho) || std::fabs(rho) > 1.0)
        throw domain_error("sample_bgs: |rho| must be <= 1");
    if (n < 1) throw domain_error("sample_bgs: n must be positive");

    SamplePair sp;
    sp.domain = Domain::Real;
    sp.n = n;
    sp.rx.resize(n);
    sp.ry.resize(n);

    Xoshiro256pp rng(seed, stream);
    const double tail = std::sqrt(1.0 - rho * rho);
    for (size_t i = 0; i < n; ++i) {
        const double x = rng.normal();
        const double z = rng.normal();
        sp.rx[i] = x;
        sp.ry[i] = rho * x + tail * z;
    }
    return sp;
}

SamplePair derive_gaussian(const CorrelationSource& src, int block, size_t n,
                           uint64_t seed, uint64_t stream) {
    src.validate();
    if (src.kind != SourceKind::Dsbs)
        throw domain_error("derive_gaussian: source kind must be DSBS");
    if (block < 1) throw domain_error("derive_gaussian: block must be >= 1");
    if (n < 1) throw domain_error("derive_gaussian: n must be positive");

    SamplePair sp;
    sp.domain = Domain::Real;
    sp.n = n;
    sp.rx.resize(n);
    sp.ry.resize(n);

    Xoshiro256pp rng(seed, stream);
    const double flip_p = (1.0 - src.rho) / 2.0;
    const double norm = 1.0 / std::sqrt(static_cast<double>(block));
    for (size_t i = 0; i < n; ++i) {
        long sx = 0, sy = 0;
        for (int j = 0; j < block; ++j) {
            const int xb = rng.next() >> 63 ? 1 : 0;
            const int yb = rng.bernoulli(flip_p) ? 1 - xb : xb;
            sx += 1 - 2 * xb;  // {0,1} -> {+1,-1}
            sy += 1 - 2 * yb;
        }
        sp.rx[i] = sx * norm;
        sp.ry[i] = sy * norm;
    }
    return sp;
}

SamplePair draw_sample(const CorrelationSource& src, size_t n, uint64_t seed,
                       uint64_t stream) {
    src.validate();
    switch (src.kind) {
        case SourceKind::Dsbs:
            return sample_dsbs(src.rho, n, seed, stream);
        case SourceKind::Bgs:
            return sample_bgs(src.rho, n, seed, stream);
        case SourceKind::DerivedGaussian: {
            CorrelationSource base{SourceKind::Dsbs, src.rho, 1};
            return derive_gaussian(base, src.clt_block, n, seed, stream);
        }
    }
    throw domain_error("draw_sample: unknown source kind");
}

double empirical_correlation(const SamplePair& sp) {
    double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < sp.n; ++i) {
        double x, y;
        if (sp.domain == Domain::Binary) {
            x = sp.bx.get(i) ? -1.0 : 1.0;
            y = sp.by.get(i) ? -1.0 : 1.0;
        } else {
            x = sp.rx[i];
            y = sp.ry[i];
        }
        sxy += x * y;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
    }
    const double n = static_cast<double>(sp.n);
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    if (vx <= 0.0 || vy <= 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

}  // namespace crgen
