#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "crgen/gaussian_tails.hpp"
#include "crgen/gip.hpp"
#include "crgen/rng.hpp"
#include "crgen/sources.hpp"

using namespace crgen;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Unit vectors u, v with <u,v> exactly g (up to rounding).
GipInstance instance_with_ip(size_t dim, double g, double r, double s, double delta,
                             Xoshiro256pp& rng) {
    std::vector<double> u(dim), w(dim);
    for (size_t i = 0; i < dim; ++i) {
        u[i] = rng.normal();
        w[i] = rng.normal();
    }
    double nu = std::sqrt(dot(u, u));
    for (double& x : u) x /= nu;
    const double uw = dot(u, w);
    for (size_t i = 0; i < dim; ++i) w[i] -= uw * u[i];
    const double nw = std::sqrt(dot(w, w));
    for (double& x : w) x /= nw;

    GipInstance inst;
    inst.u = u;
    inst.v.resize(dim);
    const double c = std::sqrt(std::max(0.0, 1.0 - g * g));
    for (size_t i = 0; i < dim; ++i) inst.v[i] = g * u[i] + c * w[i];
    inst.r = r;
    inst.s = s;
    inst.delta = delta;
    return inst;
}

}  // namespace

TEST_CASE("GipInstance validation") {
    Xoshiro256pp rng(1, 0);
    auto inst = instance_with_ip(16, 0.3, 0.3, -0.2, 0.1, rng);
    CHECK_NOTHROW(inst.validate());

    auto bad = inst;
    bad.u[0] *= 2.0;  // breaks unit norm
    CHECK_THROWS_AS(bad.validate(), domain_error);

    bad = inst;
    bad.s = bad.r;  // needs s < r
    CHECK_THROWS_AS(bad.validate(), domain_error);

    bad = inst;
    bad.delta = 0.0;
    CHECK_THROWS_AS(bad.validate(), domain_error);
}

TEST_CASE("pad_reduce affine identity and exact norms") {
    Xoshiro256pp rng(2, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const double r = 0.05 + 0.9 * rng.uniform01();
        const double s = -0.9 + (r - 0.05) * rng.uniform01();
        const double g = s + (r - s) * rng.uniform01();
        const size_t dim = 8 + rng.below(56);
        auto inst = instance_with_ip(dim, g, r, s, 0.1, rng);
        const auto red = pad_reduce(inst);
        CHECK(red.r == 0.0);
        CHECK(red.s == doctest::Approx((s - r) / (1.0 + r)).epsilon(1e-12));
        CHECK(std::sqrt(dot(red.u, red.u)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::sqrt(dot(red.v, red.v)) == doctest::Approx(1.0).epsilon(1e-12));
        const double ip = dot(inst.u, inst.v);
        CHECK(dot(red.u, red.v) ==
              doctest::Approx((ip - r) / (1.0 + r)).epsilon(1e-9));
    }
}

TEST_CASE("pad_reduce rejects negative r, r = 0 is the identity") {
    Xoshiro256pp rng(3, 0);
    auto inst = instance_with_ip(16, -0.3, -0.1, -0.5, 0.1, rng);
    CHECK_THROWS_AS(pad_reduce(inst), domain_error);

    auto zero = instance_with_ip(16, -0.2, 0.0, -0.5, 0.1, rng);
    const auto red = pad_reduce(zero);
    CHECK(red.u == zero.u);
    CHECK(red.s == zero.s);
}

TEST_CASE("sketch bits are hyperplane signs") {
    std::vector<double> v{1.0, 0.0};
    std::vector<std::vector<double>> draws{{0.5, 3.0}, {-0.5, 3.0}, {2.0, -1.0}};
    const auto bits = sketch(v, draws);
    CHECK(bits.t == 3);
    CHECK(bits.bits == std::vector<uint8_t>{1, 0, 1});
    CHECK_THROWS_AS(sketch(v, {{1.0, 2.0, 3.0}}), domain_error);
}

TEST_CASE("referee_decide endpoints") {
    SketchBits a, b;
    a.t = b.t = 100;
    a.bits.assign(100, 1);
    b.bits = a.bits;
    CHECK(referee_decide(a, b, -0.5) == GipDecision::Yes);  // distance 0
    for (auto& bit : b.bits) bit ^= 1;
    CHECK(referee_decide(a, b, -0.5) == GipDecision::No);  // distance 1

    // the midpoint threshold separates the two promise rates
    const double gamma = -0.5;
    const double yes_rate = std::acos(0.0) / M_PI;    // reduced YES has ip >= 0
    const double no_rate = std::acos(gamma) / M_PI;   // reduced NO sits at gamma
    const double threshold = 0.5 + (std::acos(gamma) / M_PI - 0.5) / 2.0;
    CHECK(yes_rate < threshold);
    CHECK(threshold < no_rate);

    SketchBits c;
    c.t = 99;
    c.bits.assign(99, 0);
    CHECK_THROWS_AS(referee_decide(a, c, -0.5), protocol_error);
    CHECK_THROWS_AS(referee_decide(a, b, 0.5), domain_error);
}

TEST_CASE("sketch_repetitions formula") {
    CHECK(sketch_repetitions(0.1, -0.5, 8.0) ==
          static_cast<int>(std::ceil(8.0 * std::log(10.0) / 0.25)));
    CHECK(sketch_repetitions(0.01, -0.5, 8.0) > sketch_repetitions(0.1, -0.5, 8.0));
    CHECK_THROWS_AS(sketch_repetitions(0.0, -0.5, 8.0), domain_error);
    CHECK_THROWS_AS(sketch_repetitions(0.1, 0.0, 8.0), domain_error);
}

TEST_CASE("solve_gip separates clear instances") {
    Xoshiro256pp rng(4, 0);
    int yes_ok = 0, no_ok = 0;
    const int trials = 40;
    for (int i = 0; i < trials; ++i) {
        auto yes = instance_with_ip(32, 0.5, 0.5, -0.5, 0.1, rng);
        if (solve_gip(yes, 1.0, 1000 + i).decision == GipDecision::Yes) ++yes_ok;
        auto no = instance_with_ip(32, -0.5, 0.5, -0.5, 0.1, rng);
        if (solve_gip(no, 1.0, 2000 + i).decision == GipDecision::No) ++no_ok;
    }
    CHECK(yes_ok >= 38);
    CHECK(no_ok >= 38);
}

TEST_CASE("solve_gip handles negative r by flipping the promise") {
    Xoshiro256pp rng(5, 0);
    int yes_ok = 0, no_ok = 0;
    const int trials = 30;
    for (int i = 0; i < trials; ++i) {
        auto yes = instance_with_ip(32, -0.1, -0.1, -0.7, 0.1, rng);
        if (solve_gip(yes, 0.9, 3000 + i).decision == GipDecision::Yes) ++yes_ok;
        auto no = instance_with_ip(32, -0.7, -0.1, -0.7, 0.1, rng);
        if (solve_gip(no, 0.9, 4000 + i).decision == GipDecision::No) ++no_ok;
    }
    CHECK(yes_ok >= 27);
    CHECK(no_ok >= 27);
}

TEST_CASE("solve_gip reports bits = 2t") {
    Xoshiro256pp rng(6, 0);
    auto inst = instance_with_ip(16, 0.3, 0.3, -0.3, 0.2, rng);
    const auto res = solve_gip(inst, 0.8, 42);
    const double gamma = 0.8 * (-0.3 - 0.3) / 1.3;
    CHECK(res.t == sketch_repetitions(0.2, gamma, kDefaultSketchConstant));
    CHECK(res.bits_communicated == 2L * res.t);
}

TEST_CASE("per-repetition disagreement follows the arccos law") {
    // sign sketches of rho-correlated Gaussians at inner product eta disagree
    // with rate arccos(rho * eta) / pi
    const double rho = 0.8, eta = -0.4;
    Xoshiro256pp rng(7, 0);
    auto inst = instance_with_ip(24, eta, 0.5, -0.5, 0.1, rng);
    const int reps = 20000;
    int diff = 0;
    for (int i = 0; i < reps; ++i) {
        const auto sp = sample_bgs(rho, 24, 555, i);
        const int ba = dot(inst.u, sp.rx) > 0.0 ? 1 : 0;
        const int bb = dot(inst.v, sp.ry) > 0.0 ? 1 : 0;
        diff += ba != bb;
    }
    const double q = sheppard_disagreement(rho * eta);
    const double sigma = std::sqrt(q * (1.0 - q) / reps);
    CHECK(std::fabs(diff / double(reps) - q) < 4.0 * sigma);
}
