#include "crgen/gip.hpp"

#include <cmath>

#include "crgen/rng.hpp"
#include "crgen/sources.hpp"

namespace crgen {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

void GipInstance::validate() const {
    if (u.size() != v.size() || u.empty())
        throw domain_error("GipInstance: u and v must have equal positive length");
    if (!(s < r) || r > 1.0 || s < -1.0)
        throw domain_error("GipInstance: need -1 <= s < r <= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("GipInstance: delta must lie in (0,1)");
    if (std::fabs(norm(u) - 1.0) > 1e-10 || std::fabs(norm(v) - 1.0) > 1e-10)
        throw domain_error("GipInstance: u and v must be unit vectors");
}

GipInstance pad_reduce(const GipInstance& instance) {
    instance.validate();
    if (instance.r < 0.0)
        throw domain_error("pad_reduce: requires r >= 0; negate Alice's vector first");
    if (instance.r == 0.0) return instance;

    const size_t n = instance.u.size();
    const double r = instance.r;
    const size_t N = static_cast<size_t>(std::ceil(n * (1.0 + r)));
    const size_t pad = N - n;

    // Original coordinates shrink by 1/sqrt(1+r); the padding carries the
    // remaining r/(1+r) of the mass with opposite signs on the two sides,
    // so <u',v'> = (<u,v> - r)/(1+r) exactly and norms stay exactly 1.
    const double scale = 1.0 / std::sqrt(1.0 + r);
    const double w = std::sqrt(r / ((1.0 + r) * static_cast<double>(pad)));

    GipInstance out;
    out.r = 0.0;
    out.s = (instance.s - r) / (1.0 + r);
    out.delta = instance.delta;
    out.u.resize(N);
    out.v.resize(N);
    for (size_t i = 0; i < n; ++i) {
        out.u[i] = instance.u[i] * scale;
        out.v[i] = instance.v[i] * scale;
    }
    for (size_t i = n; i < N; ++i) {
        out.u[i] = w;
        out.v[i] = -w;
    }
    return out;
}

SketchBits sketch(const std::vector<double>& vector,
                  const std::vector<std::vector<double>>& draws) {
    SketchBits out;
    out.t = static_cast<int>(draws.size());
    out.bits.resize(draws.size());
    for (size_t i = 0; i < draws.size(); ++i) {
        if (draws[i].size() != vector.size())
            throw domain_error("sketch: draw dimension mismatch");
        out.bits[i] = dot(vector, draws[i]) > 0.0 ? 1 : 0;
    }
    return out;
}

GipDecision referee_decide(const SketchBits& a, const SketchBits& b, double gamma) {
    if (a.t != b.t || a.bits.size() != b.bits.size())
        throw protocol_error("referee_decide: sketch length mismatch");
    if (!(gamma < 0.0)) throw domain_error("referee_decide: gamma must be negative");
    if (a.t == 0) throw protocol_error("referee_decide: empty sketches");

    long dist = 0;
    for (size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i] != b.bits[i]) ++dist;
    const double frac = static_cast<double>(dist) / static_cast<double>(a.t);
    const double threshold = 0.5 + (std::acos(gamma) / M_PI - 0.5) / 2.0;
    return frac <= threshold ? GipDecision::Yes : GipDecision::No;
}

int sketch_repetitions(double delta, double gamma, double constant) {
    if (!(delta > 0.0 && delta < 1.0))
        throw domain_error("sketch_repetitions: delta must lie in (0,1)");
    if (gamma == 0.0) throw domain_error("sketch_repetitions: gamma must be nonzero");
    return static_cast<int>(
        std::ceil(constant * std::log(1.0 / delta) / (gamma * gamma)));
}

GipResult solve_gip(const GipInstance& instance, double rho, uint64_t seed,
                    double sketch_constant, int clt_block) {
    instance.validate();
    if (!(rho > 0.0 && rho <= 1.0))
        throw domain_error("solve_gip: rho must lie in (0,1]");

    // Normalize to r >= 0: Alice negates her vector, which maps
    // <u,v> in [r,1] to [-1,-r] and swaps the two promise regions.
    GipInstance work = instance;
    bool flipped = false;
    if (work.r < 0.0) {
        for (double& x : work.u) x = -x;
        const double old_r = work.r, old_s = work.s;
        work.r = -old_s;
        work.s = -old_r;
        flipped = true;
    }

    const GipInstance reduced = pad_reduce(work);
    const double gamma = rho * reduced.s;  // < 0 by construction
    const int t = sketch_repetitions(reduced.delta, gamma, sketch_constant);
    const size_t dim = reduced.u.size();

    std::vector<std::vector<double>> alice_draws(t), bob_draws(t);
    for (int i = 0; i < t; ++i) {
        SamplePair sp;
        if (clt_block > 0) {
            CorrelationSource base{SourceKind::Dsbs, rho, 1};
            sp = derive_gaussian(base, clt_block, dim, seed, static_cast<uint64_t>(i));
        } else {
            sp = sample_bgs(rho, dim, seed, static_cast<uint64_t>(i));
        }
        alice_draws[i] = std::move(sp.rx);
        bob_draws[i] = std::move(sp.ry);
    }

    const SketchBits a = sketch(reduced.u, alice_draws);
    const SketchBits b = sketch(reduced.v, bob_draws);
    GipDecision decision = referee_decide(a, b, gamma);
    if (flipped)
        decision = decision == GipDecision::Yes ? GipDecision::No : GipDecision::Yes;

    GipResult out;
    out.decision = decision;
    out.t = t;
    out.bits_communicated = 2L * t;
    return out;
}

}  // namespace crgen
