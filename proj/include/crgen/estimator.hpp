#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crgen/codebooks.hpp"
#include "crgen/scheme.hpp"
#include "crgen/sources.hpp"

namespace crgen {

// Aggregated Monte Carlo statistics for one configuration.
struct EstimateReport {
    uint64_t trials = 0;
    uint64_t agree_count = 0;
    double agreement = 0.0;
    // Agreement via a common decoded codeword only (neither side fell back);
    // this is the quantity the agreement-rate analysis speaks about, free of
    // the 2^-k accidental-collision floor of the fallback keys.
    uint64_t codeword_agree_count = 0;
    double codeword_agreement = 0.0;
    double wilson_lo = 0.0;   // 95% Wilson interval
    double wilson_hi = 0.0;
    double max_output_freq = 0.0;  // over Alice's keys; 0 if not tracked
    int comm_bits = 0;             // always c+1
    double wallclock_s = 0.0;
    int k = 0;
    std::string config_digest;
};

struct RunOptions {
    uint64_t trials = 1000;
    uint64_t seed = 1;
    int workers = 1;
    bool allow_rare = false;    // skip the expected-successes guard
    bool track_outputs = true;  // histogram Alice's keys (k <= 20 only)
};

// Wilson score interval at 95% confidence.
void wilson_interval(uint64_t successes, uint64_t trials, double& lo, double& hi);

// Seeded parallel Monte Carlo over independent trials; trial i draws from
// stream id i, so reports are bit-identical for any worker count.
EstimateReport run_trials(const SchemeParams& params, const Codebook& codebook,
                          const Coloring& coloring, const CorrelationSource& source,
                          const RunOptions& options);

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

// Inverse-variance weighted least-squares slope of log2(agreement) vs k.
SlopeFit exponent_slope(const std::vector<EstimateReport>& reports);

// FNV-1a digest of a canonical key=value listing; embedded in reports so
// every output row is attributable to the configuration that produced it.
std::string config_digest(const std::vector<std::pair<std::string, std::string>>& fields);

}  // namespace crgen
