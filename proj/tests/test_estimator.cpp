#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crgen/codebooks.hpp"
#include "crgen/estimator.hpp"
#include "crgen/scheme.hpp"

using namespace crgen;

TEST_CASE("wilson_interval reference values") {
    double lo, hi;
    // 50/100 at 95%: classic Wilson bounds
    wilson_interval(50, 100, lo, hi);
    CHECK(lo == doctest::Approx(0.40383).epsilon(1e-4));
    CHECK(hi == doctest::Approx(0.59617).epsilon(1e-4));
    // 0 successes still yields a positive upper bound
    wilson_interval(0, 100, lo, hi);
    CHECK(lo == 0.0);
    CHECK(hi > 0.0);
    CHECK(hi == doctest::Approx(0.0370).epsilon(1e-2));
    // interval contains the point estimate
    for (uint64_t s : {1ull, 17ull, 99ull}) {
        wilson_interval(s, 100, lo, hi);
        const double p = s / 100.0;
        CHECK(lo <= p);
        CHECK(hi >= p);
    }
    CHECK_THROWS_AS(wilson_interval(1, 0, lo, hi), domain_error);
}

TEST_CASE("config_digest distinguishes configurations") {
    const auto d1 = config_digest({{"a", "1"}, {"b", "2"}});
    const auto d2 = config_digest({{"a", "1"}, {"b", "3"}});
    const auto d3 = config_digest({{"a", "12"}, {"b", ""}});
    CHECK(d1.size() == 16);
    CHECK(d1 != d2);
    CHECK(d1 != d3);
    CHECK(d1 == config_digest({{"a", "1"}, {"b", "2"}}));  // stable
}

TEST_CASE("exponent_slope on an exact line") {
    std::vector<EstimateReport> reports;
    for (int k : {4, 6, 8, 10}) {
        EstimateReport r;
        r.k = k;
        r.trials = 1000000;
        r.agreement = std::exp2(-k / 3.0);
        r.agree_count = static_cast<uint64_t>(r.agreement * r.trials);
        reports.push_back(r);
    }
    const auto fit = exponent_slope(reports);
    CHECK(fit.slope == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
    CHECK(fit.stderr_ < 0.01);

    reports.resize(2);
    CHECK_THROWS_AS(exponent_slope(reports), domain_error);  // < 3 points

    reports.push_back(reports.back());
    reports.push_back(reports.back());
    reports.back().agree_count = 0;
    CHECK_THROWS_AS(exponent_slope(reports), resource_limit_error);
}

TEST_CASE("run_trials on the degenerate rho = 1 source") {
    BasisCodebook cb(6);
    const auto params = derive_params(cb, 0.999, 0.0, true);
    const auto col = prefix_coloring(params.k, 0);
    CorrelationSource src{SourceKind::Bgs, 1.0, 1};
    RunOptions opts;
    opts.trials = 2000;
    opts.seed = 3;
    opts.allow_rare = true;
    const auto rep = run_trials(params, cb, col, src, opts);
    CHECK(rep.agreement == 1.0);
    CHECK(rep.agree_count == 2000);
    CHECK(rep.comm_bits == params.c + 1);
    CHECK(rep.wilson_lo <= 1.0);
    CHECK(rep.wilson_hi == 1.0);
    CHECK_FALSE(rep.config_digest.empty());
}

TEST_CASE("run_trials is bit-identical across worker counts") {
    BasisCodebook cb(6);
    const auto params = derive_params(cb, 0.5, 0.0, true);
    const auto col = prefix_coloring(params.k, 0);
    CorrelationSource src{SourceKind::Bgs, 0.5, 1};

    RunOptions opts;
    opts.trials = 4000;
    opts.seed = 11;
    opts.allow_rare = true;

    opts.workers = 1;
    const auto r1 = run_trials(params, cb, col, src, opts);
    opts.workers = 4;
    const auto r4 = run_trials(params, cb, col, src, opts);
    opts.workers = 7;
    const auto r7 = run_trials(params, cb, col, src, opts);

    CHECK(r1.agree_count == r4.agree_count);
    CHECK(r1.agree_count == r7.agree_count);
    CHECK(r1.codeword_agree_count == r4.codeword_agree_count);
    CHECK(r1.max_output_freq == r4.max_output_freq);
    CHECK(r1.config_digest == r4.config_digest);
}

TEST_CASE("rare-regime guard") {
    BasisCodebook cb(16);
    const auto params = derive_params(cb, 0.5, 0.0, true);  // delta^2 k ~ 5.3
    const auto col = prefix_coloring(params.k, 0);
    CorrelationSource src{SourceKind::Bgs, 0.5, 1};
    RunOptions opts;
    opts.trials = 100;  // expected successes way below 25
    CHECK_THROWS_AS(run_trials(params, cb, col, src, opts), resource_limit_error);
    opts.allow_rare = true;
    opts.trials = 10;
    CHECK_NOTHROW(run_trials(params, cb, col, src, opts));
}

TEST_CASE("source/codebook domain mismatch is a config error") {
    BasisCodebook cb(6);
    const auto params = derive_params(cb, 0.5, 0.0, true);
    const auto col = prefix_coloring(params.k, 0);
    CorrelationSource src{SourceKind::Dsbs, 0.5, 1};
    RunOptions opts;
    opts.trials = 100;
    opts.allow_rare = true;
    CHECK_THROWS_AS(run_trials(params, cb, col, src, opts), config_error);
}
