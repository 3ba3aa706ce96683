#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crgen/binomial_tails.hpp"
#include "crgen/bounds.hpp"

using namespace crgen;

TEST_CASE("nu_correlated reference value") {
    CrBoundQuery q;
    q.eps = 0.25;
    q.eps_prime = 0.01;
    q.alpha = 1.0;
    CHECK(nu_correlated(q) == doctest::Approx(0.2806054656745039).epsilon(1e-13));

    // independent long-double recomputation
    const long double ep = 0.01L;
    const long double h =
        -ep * std::log2(ep) - (1.0L - ep) * std::log2(1.0L - ep);
    const long double root = std::sqrt(1.0L - h);
    const long double diff = root - 0.5L;
    const long double nu = diff * diff / 0.75L;
    CHECK(nu_correlated(q) == doctest::Approx(static_cast<double>(nu)).epsilon(1e-14));

    // alpha scales the bracket through h/alpha and the outer factor
    q.alpha = 0.8;
    const double root8 = std::sqrt(1.0 - static_cast<double>(h) / 0.8);
    const double expect = 0.8 * (root8 - 0.5) * (root8 - 0.5) / 0.75;
    CHECK(nu_correlated(q) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("nu_correlated regime and domain checks") {
    CrBoundQuery q;
    q.eps = 0.05;        // 4*eps*(1-eps) = 0.19
    q.eps_prime = 0.45;  // h(0.45) ~ 0.9928 > 0.19
    q.alpha = 1.0;
    CHECK_THROWS_AS(nu_correlated(q), out_of_regime_error);

    q.eps_prime = 0.01;
    q.alpha = 0.2;  // cap 0.038 < h(0.01) ~ 0.081
    CHECK_THROWS_AS(nu_correlated(q), out_of_regime_error);

    q = CrBoundQuery{};
    q.eps = 0.0;
    CHECK_THROWS_AS(nu_correlated(q), domain_error);
    q = CrBoundQuery{};
    q.eps_prime = 0.6;
    CHECK_THROWS_AS(nu_correlated(q), domain_error);
    q = CrBoundQuery{};
    q.alpha = 1.5;
    CHECK_THROWS_AS(nu_correlated(q), domain_error);
}

TEST_CASE("nu_list reduces to eps/(1-eps) at b = 1") {
    for (double eps : {0.1, 0.25, 0.4, 0.5})
        CHECK(nu_list(eps, 10, 1) == doctest::Approx(eps / (1.0 - eps)).epsilon(1e-14));

    // larger lists only weaken the exponent
    CHECK(nu_list(0.25, 20, 4) < nu_list(0.25, 20, 2));
    CHECK(nu_list(0.25, 20, 2) < nu_list(0.25, 20, 1));

    // explicit value: eps = 0.25, k = 8, b = 4 -> ratio = 1/4
    const double diff = std::sqrt(0.75) - 0.5;
    CHECK(nu_list(0.25, 8, 4) == doctest::Approx(diff * diff / 0.75).epsilon(1e-14));

    CHECK_THROWS_AS(nu_list(0.25, 2, 1u << 3), out_of_regime_error);  // ratio 1.5
    CHECK_THROWS_AS(nu_list(0.0, 10, 1), domain_error);
    CHECK_THROWS_AS(nu_list(0.25, 0, 1), domain_error);
    CHECK_THROWS_AS(nu_list(0.25, 10, 0), domain_error);
}

TEST_CASE("interactive_lb formula") {
    const double nu = nu_list(0.25, 100, 2);
    CHECK(interactive_lb(0.25, 100, 2, 0.5) ==
          doctest::Approx(100 * nu / 2.0 - 1.5).epsilon(1e-12));
    CHECK(interactive_lb(0.25, 100, 2, 0.5, 3.0) ==
          doctest::Approx(100 * nu / 2.0 - 4.5).epsilon(1e-12));
    // gamma = 1 drops the log term entirely
    CHECK(interactive_lb(0.25, 100, 2, 1.0) == doctest::Approx(50.0 * nu).epsilon(1e-12));
    CHECK_THROWS_AS(interactive_lb(0.25, 100, 2, 0.0), domain_error);
    CHECK_THROWS_AS(interactive_lb(0.25, 100, 2, 1.5), domain_error);
}

TEST_CASE("chernoff_achievability limits and exact-tail consistency") {
    CHECK(chernoff_achievability(0.1, 0.05, 100) ==
          doctest::Approx(1.0 - std::exp(-0.0025 * 100)).epsilon(1e-14));
    // grows with k toward 1
    CHECK(chernoff_achievability(0.1, 0.05, 10) < chernoff_achievability(0.1, 0.05, 100));
    CHECK(chernoff_achievability(0.1, 0.05, 100000) == doctest::Approx(1.0).epsilon(1e-8));

    // the bound never exceeds the exact binomial probability it estimates:
    // Pr[Bin(k, delta) <= floor(eps' k)] >= 1 - exp(-(eps'-delta)^2 k)
    for (int k : {20, 40, 64}) {
        for (double delta : {0.02, 0.05}) {
            const double eps_prime = 0.1;
            const double exact = binomial_cdf_exact(
                k, delta, static_cast<long>(std::floor(eps_prime * k)));
            CHECK(exact >= chernoff_achievability(eps_prime, delta, k) - 1e-12);
        }
    }

    CHECK_THROWS_AS(chernoff_achievability(0.1, 0.1, 100), domain_error);
    CHECK_THROWS_AS(chernoff_achievability(0.1, 0.0, 100), domain_error);
    CHECK_THROWS_AS(chernoff_achievability(0.1, 0.05, 0), domain_error);
}

TEST_CASE("lsh_exponents") {
    const auto e = lsh_exponents(0.5);
    CHECK(e.f0 == doctest::Approx(0.41503749927884376).epsilon(1e-14));
    CHECK(e.fcr == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // shared randomness always helps: fcr < f0 on (0,1)
    for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const auto x = lsh_exponents(rho);
        CHECK(x.fcr < x.f0);
    }
    const auto zero = lsh_exponents(0.0);
    CHECK(zero.f0 == 1.0);
    CHECK(zero.fcr == 1.0);
    const auto one = lsh_exponents(1.0);
    CHECK(one.f0 == 0.0);
    CHECK(one.fcr == 0.0);
    CHECK_THROWS_AS(lsh_exponents(-0.1), domain_error);
    CHECK_THROWS_AS(lsh_exponents(1.1), domain_error);
}

TEST_CASE("rho_bar") {
    CHECK(rho_bar(0.8, 0.3) == doctest::Approx(0.1853393619128634).epsilon(1e-14));
    CHECK(rho_bar(0.5, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
    // always in (0,1) on the valid domain
    CHECK(rho_bar(0.9, 0.1) > 0.0);
    CHECK(rho_bar(0.9, 0.1) < 1.0);
    CHECK_THROWS_AS(rho_bar(0.3, 0.8), domain_error);  // p1 < p2
    CHECK_THROWS_AS(rho_bar(0.8, 0.0), domain_error);
    CHECK_THROWS_AS(rho_bar(1.0, 0.5), domain_error);
}
