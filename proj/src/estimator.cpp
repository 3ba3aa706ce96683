#include "crgen/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace crgen {

void wilson_interval(uint64_t successes, uint64_t trials, double& lo, double& hi) {
    if (trials == 0) throw domain_error("wilson_interval: trials must be positive");
    const double z = 1.959963984540054;  // 95%
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // pin the degenerate endpoints exactly (the algebra cancels to 0/1 there
    // but floating point leaves dust)
    lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    hi = successes == trials ? 1.0 : std::min(1.0, center + half);
}

std::string config_digest(const std::vector<std::pair<std::string, std::string>>& fields) {
    uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001B3ULL;
        }
        h ^= 0x1F;
        h *= 0x100000001B3ULL;
    };
    for (const auto& [key, value] : fields) {
        mix(key);
        mix(value);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

EstimateReport run_trials(const SchemeParams& params, const Codebook& codebook,
                          const Coloring& coloring, const CorrelationSource& source,
                          const RunOptions& options) {
    if (options.trials < 1) throw domain_error("run_trials: trials must be >= 1");
    source.validate();

    const Domain sample_domain =
        source.kind == SourceKind::Dsbs ? Domain::Binary : Domain::Real;
    if (sample_domain != codebook.domain())
        throw config_error("run_trials: source domain does not match the codebook");

    // Expected-successes guard: the scheme's zero-comm rate 2^(-delta^2 k)
    // is the pessimistic proxy for how rare agreement can get.
    if (!options.allow_rare) {
        const double predicted =
            std::exp2(-params.delta * params.delta * static_cast<double>(params.k));
        if (static_cast<double>(options.trials) * predicted < 25.0)
            throw resource_limit_error(
                "run_trials: expected successes < 25; pass allow_rare to override");
    }

    const bool track = options.track_outputs && params.k <= 20;
    const int workers = std::max(1, options.workers);

    struct WorkerAccum {
        uint64_t agree = 0;
        uint64_t codeword_agree = 0;
        std::vector<uint64_t> key_counts;
    };
    std::vector<WorkerAccum> accums(workers);
    if (track)
        for (auto& a : accums) a.key_counts.assign(uint64_t{1} << params.k, 0);

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::exception_ptr> worker_errors(workers);
    auto work = [&](int w) {
        try {
            WorkerAccum& acc = accums[w];
            for (uint64_t trial = w; trial < options.trials; trial += workers) {
                const SamplePair sp = draw_sample(source, params.n, options.seed, trial);
                const RunOutcome out = run_single(params, codebook, coloring, sp);
                if (out.agreed) {
                    ++acc.agree;
                    if (!out.alice_fell_back && !out.bob_fell_back)
                        ++acc.codeword_agree;
                }
                if (track) ++acc.key_counts[out.alice_key];
            }
        } catch (...) {
            worker_errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& th : threads) th.join();
    }
    for (const auto& err : worker_errors)
        if (err) std::rethrow_exception(err);
    const auto t1 = std::chrono::steady_clock::now();

    // Order-independent merge: integer success counts.
    uint64_t agree = 0, codeword_agree = 0;
    for (const auto& a : accums) {
        agree += a.agree;
        codeword_agree += a.codeword_agree;
    }
    uint64_t max_count = 0;
    if (track) {
        const uint64_t cells = uint64_t{1} << params.k;
        for (uint64_t i = 0; i < cells; ++i) {
            uint64_t c = 0;
            for (const auto& a : accums) c += a.key_counts[i];
            if (c > max_count) max_count = c;
        }
    }

    EstimateReport rep;
    rep.trials = options.trials;
    rep.agree_count = agree;
    rep.agreement = static_cast<double>(agree) / static_cast<double>(options.trials);
    rep.codeword_agree_count = codeword_agree;
    rep.codeword_agreement =
        static_cast<double>(codeword_agree) / static_cast<double>(options.trials);
    wilson_interval(agree, options.trials, rep.wilson_lo, rep.wilson_hi);
    rep.max_output_freq =
        track ? static_cast<double>(max_count) / static_cast<double>(options.trials) : 0.0;
    rep.comm_bits = params.c + 1;
    rep.wallclock_s = std::chrono::duration<double>(t1 - t0).count();
    rep.k = params.k;

    auto fields = codebook.descriptor();
    fields.emplace_back("rho", std::to_string(source.rho));
    fields.emplace_back("delta", std::to_string(params.delta));
    fields.emplace_back("zero_comm", params.zero_comm ? "1" : "0");
    fields.emplace_back("trials", std::to_string(options.trials));
    fields.emplace_back("seed", std::to_string(options.seed));
    rep.config_digest = config_digest(fields);
    return rep;
}

SlopeFit exponent_slope(const std::vector<EstimateReport>& reports) {
    if (reports.size() < 3)
        throw domain_error("exponent_slope: need at least 3 distinct k values");

    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (const auto& rep : reports) {
        if (rep.agree_count == 0)
            throw resource_limit_error(
                "exponent_slope: zero agreement at k=" + std::to_string(rep.k) +
                "; increase trials");
        const double p = rep.agreement;
        const double y = std::log2(p);
        const double x = static_cast<double>(rep.k);
        // Delta method: Var(log2 p-hat) = (1-p) / (trials * p * ln^2 2).
        const double var = (1.0 - p) / (static_cast<double>(rep.trials) * p *
                                        (M_LN2 * M_LN2));
        const double w = var > 0.0 ? 1.0 / var : 1e18;
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
    }
    const double denom = sw * swxx - swx * swx;
    if (denom <= 0.0) throw domain_error("exponent_slope: degenerate k values");
    SlopeFit fit;
    fit.slope = (sw * swxy - swx * swy) / denom;
    fit.stderr_ = std::sqrt(sw / denom);
    return fit;
}

}  // namespace crgen
