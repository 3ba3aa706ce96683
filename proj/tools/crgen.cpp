// crgen: command-line front door for the correlated-randomness toolkit.
//
// Subcommands: simulate, sweep, tails, sketch, bounds, lsh.
// Exit codes: 0 success, 2 configuration error, 3 out-of-regime / resource
// guard refusal.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crgen/bounds.hpp"
#include "crgen/codebooks.hpp"
#include "crgen/estimator.hpp"
#include "crgen/gaussian_tails.hpp"
#include "crgen/gip.hpp"
#include "crgen/rng.hpp"
#include "crgen/scheme.hpp"
#include "crgen/sources.hpp"

using nlohmann::json;

namespace {

struct CodebookSpec {
    std::string family = "basis";
    int k = 8;
    uint32_t p = 17;
    int d = 2;
    int m = 5;
    double gamma = 0.0;

    std::unique_ptr<crgen::Codebook> build() const {
        if (family == "basis") return crgen::basis_codebook(k);
        if (family == "tao") return crgen::tao_codebook(p, d);
        if (family == "dual-bch") return crgen::dual_bch_codebook(m, d, gamma);
        throw crgen::config_error("unknown codebook family: " + family);
    }
};

struct SourceSpec {
    std::string kind = "dsbs";
    double rho = 0.5;
    int clt_block = 64;

    crgen::CorrelationSource build() const {
        crgen::CorrelationSource src;
        if (kind == "dsbs")
            src.kind = crgen::SourceKind::Dsbs;
        else if (kind == "bgs")
            src.kind = crgen::SourceKind::Bgs;
        else if (kind == "derived")
            src.kind = crgen::SourceKind::DerivedGaussian;
        else
            throw crgen::config_error("unknown source kind: " + kind);
        src.rho = rho;
        src.clt_block = clt_block;
        src.validate();
        return src;
    }
};

void add_codebook_flags(CLI::App* cmd, CodebookSpec& spec) {
    cmd->add_option("--codebook", spec.family, "basis | tao | dual-bch")
        ->check(CLI::IsMember({"basis", "tao", "dual-bch"}));
    cmd->add_option("--k", spec.k, "key bits (basis)");
    cmd->add_option("--p", spec.p, "field prime (tao)");
    cmd->add_option("--d", spec.d, "polynomial degree (tao / dual-bch)");
    cmd->add_option("--m", spec.m, "field extension degree (dual-bch)");
    cmd->add_option("--gamma", spec.gamma, "subcode rate parameter (dual-bch)");
}

void add_source_flags(CLI::App* cmd, SourceSpec& spec) {
    cmd->add_option("--source", spec.kind, "dsbs | bgs | derived")
        ->check(CLI::IsMember({"dsbs", "bgs", "derived"}));
    cmd->add_option("--rho", spec.rho, "source correlation");
    cmd->add_option("--clt-block", spec.clt_block,
                    "binary draws per Gaussian coordinate (derived)");
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw crgen::config_error("cannot open output file: " + out_path);
    out << doc.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw crgen::config_error("cannot open output file: " + out_path);
    out << text;
}

json report_to_json(const crgen::EstimateReport& rep) {
    return json{{"k", rep.k},
                {"trials", rep.trials},
                {"agree_count", rep.agree_count},
                {"agreement", rep.agreement},
                {"codeword_agreement", rep.codeword_agreement},
                {"wilson_lo", rep.wilson_lo},
                {"wilson_hi", rep.wilson_hi},
                {"max_output_freq", rep.max_output_freq},
                {"comm_bits", rep.comm_bits},
                {"wallclock_s", rep.wallclock_s},
                {"config_digest", rep.config_digest}};
}

crgen::Coloring make_coloring(const std::string& convention,
                              const crgen::Codebook& codebook,
                              const crgen::SchemeParams& params, uint64_t seed) {
    if (convention == "prefix") return crgen::prefix_coloring(params.k, params.c);
    if (convention == "balanced")
        return crgen::balanced_coloring(codebook.size(), params.c, seed);
    throw crgen::config_error("unknown coloring convention: " + convention);
}

// Random GIP instance pair with a prescribed inner product: v is g*u plus an
// orthogonal unit completion scaled to keep |v| = 1.
crgen::GipInstance make_gip_instance(size_t dim, double g, double r, double s,
                                     double delta, crgen::Xoshiro256pp& rng) {
    std::vector<double> u(dim), w(dim);
    for (size_t i = 0; i < dim; ++i) {
        u[i] = rng.normal();
        w[i] = rng.normal();
    }
    double nu = 0.0;
    for (double x : u) nu += x * x;
    nu = std::sqrt(nu);
    for (double& x : u) x /= nu;
    double uw = 0.0;
    for (size_t i = 0; i < dim; ++i) uw += u[i] * w[i];
    for (size_t i = 0; i < dim; ++i) w[i] -= uw * u[i];
    double nw = 0.0;
    for (double x : w) nw += x * x;
    nw = std::sqrt(nw);
    for (double& x : w) x /= nw;

    crgen::GipInstance inst;
    inst.u = u;
    inst.v.resize(dim);
    const double c = std::sqrt(std::max(0.0, 1.0 - g * g));
    for (size_t i = 0; i < dim; ++i) inst.v[i] = g * u[i] + c * w[i];
    inst.r = r;
    inst.s = s;
    inst.delta = delta;
    return inst;
}

std::vector<double> parse_grid(const std::string& text) {
    // "start:stop:step" inclusive grid.
    double start, stop, step;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0.0)
        throw crgen::config_error("grid must be start:stop:step with step > 0: " + text);
    std::vector<double> out;
    for (double t = start; t <= stop + step * 1e-9; t += step) out.push_back(t);
    return out;
}

int run_app(int argc, char** argv) {
    CLI::App app{"correlated-randomness generation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string out_path;
    app.add_option("--out", out_path, "output file (default stdout)")->configurable(true);

    // --- simulate ------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "single-configuration Monte Carlo");
    CodebookSpec sim_cb;
    SourceSpec sim_src;
    crgen::RunOptions sim_opts;
    double sim_delta = 0.25;
    bool sim_zero_comm = false;
    std::string sim_coloring = "prefix";
    add_codebook_flags(simulate, sim_cb);
    add_source_flags(simulate, sim_src);
    simulate->add_option("--delta", sim_delta, "threshold slack delta");
    simulate->add_flag("--zero-comm", sim_zero_comm, "zero-communication variant");
    simulate->add_option("--coloring", sim_coloring, "prefix | balanced")
        ->check(CLI::IsMember({"prefix", "balanced"}));
    simulate->add_option("--trials", sim_opts.trials);
    simulate->add_option("--seed", sim_opts.seed);
    simulate->add_option("--workers", sim_opts.workers);
    simulate->add_flag("--allow-rare", sim_opts.allow_rare,
                       "skip the expected-successes guard");

    // --- sweep ---------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "agreement vs key length, with slope fit");
    SourceSpec swp_src;
    crgen::RunOptions swp_opts;
    double swp_delta = 0.25;
    bool swp_zero_comm = false;
    std::vector<int> swp_ks{6, 7, 8, 9, 10};
    add_source_flags(sweep, swp_src);
    sweep->add_option("--k-list", swp_ks, "key lengths (basis codebook)");
    sweep->add_option("--delta", swp_delta);
    sweep->add_flag("--zero-comm", swp_zero_comm);
    sweep->add_option("--trials", swp_opts.trials);
    sweep->add_option("--seed", swp_opts.seed);
    sweep->add_option("--workers", swp_opts.workers);
    sweep->add_flag("--allow-rare", swp_opts.allow_rare);

    // --- tails ---------------------------------------------------------
    auto* tails = app.add_subcommand("tails", "Gaussian tail / orthant grid");
    std::string tails_grid = "0:5:0.1";
    double tails_rho = 0.5, tails_phi = 0.7;
    tails->add_option("--grid-t", tails_grid, "start:stop:step");
    tails->add_option("--rho", tails_rho);
    tails->add_option("--phi", tails_phi);

    // --- sketch --------------------------------------------------------
    auto* sketch_cmd = app.add_subcommand("sketch", "GapInnerProduct sign-sketch batch");
    double sk_rho = 1.0, sk_r = 0.1, sk_s = -0.4, sk_delta = 0.1;
    size_t sk_dim = 64;
    int sk_instances = 100, sk_clt_block = 0;
    uint64_t sk_seed = 1;
    double sk_constant = crgen::kDefaultSketchConstant;
    sketch_cmd->add_option("--rho", sk_rho, "shared randomness correlation");
    sketch_cmd->add_option("--r", sk_r);
    sketch_cmd->add_option("--s", sk_s);
    sketch_cmd->add_option("--delta", sk_delta);
    sketch_cmd->add_option("--dim", sk_dim);
    sketch_cmd->add_option("--instances", sk_instances, "instances per promise arm");
    sketch_cmd->add_option("--clt-block", sk_clt_block,
                           "derive Gaussians from binary draws when > 0");
    sketch_cmd->add_option("--seed", sk_seed);
    sketch_cmd->add_option("--sketch-constant", sk_constant);

    // --- bounds --------------------------------------------------------
    auto* bounds_cmd = app.add_subcommand("bounds", "converse / achievability evaluators");
    bool want_nu = false, want_nu_list = false, want_interactive = false,
         want_chernoff = false;
    crgen::CrBoundQuery query;
    uint64_t bd_b = 2;
    double bd_gamma = 0.5, bd_slack = 0.0, bd_delta = 0.001;
    bounds_cmd->add_flag("--nu", want_nu, "correlated-source converse exponent");
    bounds_cmd->add_flag("--nu-list", want_nu_list, "list-decoding variant");
    bounds_cmd->add_flag("--interactive", want_interactive,
                         "interactive communication lower bound");
    bounds_cmd->add_flag("--chernoff", want_chernoff, "prefix-scheme achievability");
    bounds_cmd->add_option("--eps", query.eps);
    bounds_cmd->add_option("--eps-prime", query.eps_prime);
    bounds_cmd->add_option("--alpha", query.alpha);
    bounds_cmd->add_option("--k", query.k);
    bounds_cmd->add_option("--b", bd_b, "list size");
    bounds_cmd->add_option("--gamma", bd_gamma, "target success probability");
    bounds_cmd->add_option("--slack", bd_slack);
    bounds_cmd->add_option("--delta", bd_delta, "noise margin (chernoff)");

    // --- lsh -----------------------------------------------------------
    auto* lsh_cmd = app.add_subcommand("lsh", "hashing exponents");
    double lsh_rho = 0.5, lsh_p1 = 0.0, lsh_p2 = 0.0;
    lsh_cmd->add_option("--rho", lsh_rho);
    lsh_cmd->add_option("--p1", lsh_p1, "near collision probability");
    lsh_cmd->add_option("--p2", lsh_p2, "far collision probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems are configuration errors
    }

    if (*simulate) {
        auto codebook = sim_cb.build();
        const auto source = sim_src.build();
        const auto params =
            crgen::derive_params(*codebook, source.rho, sim_delta, sim_zero_comm);
        const auto coloring =
            make_coloring(sim_coloring, *codebook, params, sim_opts.seed);
        const auto rep =
            crgen::run_trials(params, *codebook, coloring, source, sim_opts);
        json doc = report_to_json(rep);
        doc["n"] = params.n;
        doc["c"] = params.c;
        doc["t"] = params.t;
        doc["phi"] = params.phi;
        emit(doc, out_path);
        return 0;
    }

    if (*sweep) {
        const auto source = swp_src.build();
        std::vector<crgen::EstimateReport> reports;
        std::ostringstream csv;
        csv << "k,n,c,trials,agreement,codeword_agreement,wilson_lo,wilson_hi,"
               "comm_bits,config_digest\n";
        for (int k : swp_ks) {
            auto codebook = crgen::basis_codebook(k);
            const auto params =
                crgen::derive_params(*codebook, source.rho, swp_delta, swp_zero_comm);
            const auto coloring = crgen::prefix_coloring(params.k, params.c);
            const auto rep =
                crgen::run_trials(params, *codebook, coloring, source, swp_opts);
            reports.push_back(rep);
            csv << k << ',' << params.n << ',' << params.c << ',' << rep.trials << ','
                << rep.agreement << ',' << rep.codeword_agreement << ','
                << rep.wilson_lo << ',' << rep.wilson_hi << ','
                << rep.comm_bits << ',' << rep.config_digest << '\n';
        }
        if (reports.size() >= 4) {
            const auto fit = crgen::exponent_slope(reports);
            csv << "# slope=" << fit.slope << " stderr=" << fit.stderr_ << '\n';
        }
        emit_text(csv.str(), out_path);
        return 0;
    }

    if (*tails) {
        std::ostringstream csv;
        csv << "t,q_tail,mills_ratio,orthant\n";
        for (double t : parse_grid(tails_grid)) {
            csv << t << ',' << crgen::q_tail(t) << ','
                << (t >= 0.0 ? crgen::mills_ratio(t)
                             : crgen::normal_pdf(t) / crgen::q_tail(t))
                << ',' << crgen::orthant_probability(t, tails_phi, tails_rho) << '\n';
        }
        emit_text(csv.str(), out_path);
        return 0;
    }

    if (*sketch_cmd) {
        crgen::Xoshiro256pp gen(sk_seed, 0xA11CE);
        int yes_hits = 0, no_hits = 0;
        long bits = 0;
        int t_used = 0;
        for (int i = 0; i < sk_instances; ++i) {
            auto inst =
                make_gip_instance(sk_dim, sk_r, sk_r, sk_s, sk_delta, gen);
            auto res = crgen::solve_gip(inst, sk_rho, sk_seed + 1000003ull * i,
                                        sk_constant, sk_clt_block);
            if (res.decision == crgen::GipDecision::Yes) ++yes_hits;
            bits = res.bits_communicated;
            t_used = res.t;

            inst = make_gip_instance(sk_dim, sk_s, sk_r, sk_s, sk_delta, gen);
            res = crgen::solve_gip(inst, sk_rho, sk_seed + 1000003ull * i + 17,
                                   sk_constant, sk_clt_block);
            if (res.decision == crgen::GipDecision::No) ++no_hits;
        }
        json doc{{"instances_per_arm", sk_instances},
                 {"completeness", static_cast<double>(yes_hits) / sk_instances},
                 {"soundness", static_cast<double>(no_hits) / sk_instances},
                 {"t", t_used},
                 {"bits_communicated", bits},
                 {"config_digest",
                  crgen::config_digest({{"rho", std::to_string(sk_rho)},
                                        {"r", std::to_string(sk_r)},
                                        {"s", std::to_string(sk_s)},
                                        {"delta", std::to_string(sk_delta)},
                                        {"dim", std::to_string(sk_dim)},
                                        {"seed", std::to_string(sk_seed)}})}};
        emit(doc, out_path);
        return 0;
    }

    if (*bounds_cmd) {
        json doc;
        if (want_nu) doc["nu"] = crgen::nu_correlated(query);
        if (want_nu_list) doc["nu_list"] = crgen::nu_list(query.eps, query.k, bd_b);
        if (want_interactive)
            doc["interactive_lb"] =
                crgen::interactive_lb(query.eps, query.k, bd_b, bd_gamma, bd_slack);
        if (want_chernoff)
            doc["chernoff_agreement"] =
                crgen::chernoff_achievability(query.eps_prime, bd_delta, query.k);
        if (doc.empty())
            throw crgen::config_error(
                "bounds: pick at least one of --nu --nu-list --interactive --chernoff");
        emit(doc, out_path);
        return 0;
    }

    if (*lsh_cmd) {
        json doc;
        const auto exps = crgen::lsh_exponents(lsh_rho);
        doc["rho"] = lsh_rho;
        doc["f0"] = exps.f0;
        doc["fcr"] = exps.fcr;
        doc["ratio"] = exps.fcr / exps.f0;
        if (lsh_p1 > 0.0 && lsh_p2 > 0.0)
            doc["rho_bar"] = crgen::rho_bar(lsh_p1, lsh_p2);
        emit(doc, out_path);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const crgen::out_of_regime_error& e) {
        std::cerr << "out of regime: " << e.what() << "\n";
        return 3;
    } catch (const crgen::resource_limit_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const crgen::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
