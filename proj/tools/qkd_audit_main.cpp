// qkd-audit: security-accounting tables and desk-scale BB84 simulation.
//
// Subcommands: threshold, rates, audit-code, simulate, sweep,
// counterexample, markov, distance. Output is JSON (default) or CSV with a
// header row; QKD_AUDIT_FORMAT sets the default, --format overrides.
// Exit codes: 0 success, 2 flag error, 3 domain error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkd/breach.hpp"
#include "qkd/distance.hpp"
#include "qkd/entropy.hpp"
#include "qkd/gf2.hpp"
#include "qkd/markov.hpp"
#include "qkd/pipeline.hpp"
#include "qkd/report_io.hpp"
#include "qkd/rng.hpp"

namespace {

using nlohmann::ordered_json;

struct OutputOpts {
    std::string format;
    int precision = 6;
    std::string path;
};

std::string default_format() {
    const char* env = std::getenv("QKD_AUDIT_FORMAT");
    if (env != nullptr) {
        const std::string v = env;
        if (v == "csv" || v == "json") return v;
    }
    return "json";
}

const CLI::Validator RateSpec(
    [](std::string& s) -> std::string {
        if (s == "shannon") return {};
        try {
            std::size_t used = 0;
            (void)std::stod(s, &used);
            if (used != s.size()) return "expected a number or 'shannon'";
        } catch (...) {
            return "expected a number or 'shannon'";
        }
        return {};
    },
    "RATE");

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
    opts.format = default_format();
    cmd->add_option("--format", opts.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--precision", opts.precision, "Significant digits for numbers")
        ->check(CLI::Range(1, 17))
        ->default_val(6);
    cmd->add_option("--output", opts.path, "Write the report to a file instead of stdout");
}

void emit(const ordered_json& j, const OutputOpts& opts) {
    const std::string text =
        opts.format == "csv" ? qkd::to_csv(j) : qkd::to_json_line(j);
    if (opts.path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream out(opts.path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + opts.path);
        out << text;
    }
}

double q6(double v, const OutputOpts& o) { return qkd::quantize_sig(v, o.precision); }

// ---------------------------------------------------------------------------
// threshold
// ---------------------------------------------------------------------------

ordered_json run_threshold(const std::string& rate_str, const OutputOpts& o) {
    ordered_json j;
    if (rate_str == "shannon") {
        const qkd::QberThreshold t = qkd::threshold_qber_shannon();
        j["mode"] = "shannon";
        j["qber_max"] = q6(t.qber_max, o);
        j["h_bound"] = q6(t.h_bound, o);
        j["unconstrained"] = t.unconstrained;
        j["region_empty"] = false;
    } else {
        const double r = std::stod(rate_str);
        const qkd::QberThreshold t = qkd::threshold_qber_fixed(qkd::CodeRate(r));
        j["mode"] = "fixed";
        j["code_rate"] = q6(r, o);
        j["qber_max"] = q6(t.qber_max, o);
        j["h_bound"] = q6(t.h_bound, o);
        j["unconstrained"] = t.unconstrained;
        j["region_empty"] = false;
    }
    return j;
}

// ---------------------------------------------------------------------------
// rates
// ---------------------------------------------------------------------------

std::vector<double> qber_grid(double start, double end, double step) {
    if (!(step > 0.0) || end < start)
        throw std::invalid_argument("qber grid: need start <= end and step > 0");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double q = start + step * i;
        if (q > end + 1e-12) break;
        grid.push_back(q);
    }
    if (grid.empty()) throw std::invalid_argument("qber grid: empty");
    return grid;
}

ordered_json run_rates(std::int64_t sifted_len, double q_start, double q_end, double q_step,
                       const std::string& rate_str, double f, double mu, const OutputOpts& o) {
    ordered_json rows = ordered_json::array();
    for (double q : qber_grid(q_start, q_end, q_step)) {
        const qkd::Qber qber(q);
        const double r =
            rate_str == "shannon" ? 1.0 - qkd::binary_entropy(q) : std::stod(rate_str);
        rows.push_back(qkd::rate_report_json(
            qkd::make_rate_report(sifted_len, qber, f, mu, qkd::CodeRate(r)), o.precision));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// audit-code
// ---------------------------------------------------------------------------

ordered_json run_audit_code(std::int64_t n_total, std::int64_t k_info, double operating_qber,
                            const OutputOpts& o) {
    if (k_info > n_total)
        throw std::invalid_argument(
            "audit-code: k_info exceeds n_total; the information length must come "
            "second (did the two get swapped?)");
    if (k_info <= 0 || n_total <= 0)
        throw std::invalid_argument("audit-code: lengths must be positive");
    const double rate = static_cast<double>(k_info) / static_cast<double>(n_total);
    const double bound = 8.0 - 7.0 / rate;
    const bool region_empty = bound <= 0.0;

    ordered_json j;
    j["n_total"] = n_total;
    j["k_info"] = k_info;
    j["code_rate"] = q6(rate, o);
    j["h_bound"] = q6(bound, o);
    j["region_empty"] = region_empty;
    double qber_max = 0.0;
    if (!region_empty)
        qber_max = bound >= 1.0 ? 0.5 : qkd::binary_entropy_inverse(bound);
    j["qber_max"] = q6(qber_max, o);
    j["operating_qber"] = q6(operating_qber, o);
    const bool feasible =
        !region_empty && qkd::net_key_feasible(qkd::Qber(operating_qber), qkd::CodeRate(rate));
    j["verdict"] = feasible ? "FEASIBLE" : "INFEASIBLE";
    return j;
}

// ---------------------------------------------------------------------------
// simulate / sweep
// ---------------------------------------------------------------------------

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(text.substr(pos));
            break;
        }
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

qkd::EccMode parse_mode(const std::string& text) {
    if (text == "padded") return qkd::EccMode::padded;
    if (text == "syndrome") return qkd::EccMode::syndrome;
    throw std::invalid_argument("ecc mode: expected padded or syndrome");
}

// ---------------------------------------------------------------------------
// counterexample
// ---------------------------------------------------------------------------

qkd::Pac parse_pac(const std::string& text, std::size_t k_info) {
    if (text == "identity") return qkd::Pac::identity();
    if (text.rfind("toeplitz:", 0) == 0) {
        std::size_t n_out = 0;
        unsigned long long seed = 0;
        if (std::sscanf(text.c_str(), "toeplitz:%zu:%llu", &n_out, &seed) != 2)
            throw std::invalid_argument("pac: expected toeplitz:<n_out>:<seed>");
        qkd::Prng rng(seed);
        return qkd::Pac::toeplitz(qkd::make_toeplitz(k_info, n_out, rng));
    }
    throw std::invalid_argument("pac: expected identity or toeplitz:<n_out>:<seed>");
}

ordered_json run_counterexample(const std::string& code_str, const std::string& pac_str,
                                bool with_baseline, const OutputOpts& o) {
    const qkd::CodeSpec spec = qkd::CodeSpec::parse(code_str);
    qkd::LinearCode code;
    switch (spec.kind) {
        case qkd::CodeSpec::Kind::hamming74: code = qkd::hamming74(); break;
        case qkd::CodeSpec::Kind::repetition: code = qkd::repetition_code(spec.n); break;
        case qkd::CodeSpec::Kind::random:
            code = qkd::random_code(spec.n, spec.k, spec.seed);
            break;
        default:
            throw std::invalid_argument("counterexample: the synthetic ideal code has no codebook");
    }
    const qkd::Pac pac = parse_pac(pac_str, code.k_info);
    const qkd::BreachEnsemble ensemble = qkd::build_breach_ensemble(code);
    const qkd::GuessingChain chain = qkd::guessing_chain(ensemble, pac);

    std::size_t g_min = ensemble.groups.front().size(), g_max = g_min;
    for (const auto& g : ensemble.groups) {
        g_min = std::min(g_min, g.size());
        g_max = std::max(g_max, g.size());
    }

    ordered_json j;
    j["code"] = spec.to_string();
    j["n_total"] = code.n_total;
    j["k_info"] = code.k_info;
    j["pac"] = pac_str;
    j["group_count"] = ensemble.groups.size();
    j["group_size_min"] = g_min;
    j["group_size_max"] = g_max;
    j["p1_s"] = q6(chain.p1_s, o);
    j["p1_l"] = q6(chain.p1_l, o);
    j["p1_k"] = q6(chain.p1_k, o);
    j["breach_gap"] = q6(chain.p1_l - chain.p1_s, o);
    // Two candidate scalings for the sifted-key guessing floor; the
    // enumerated value matches the per-coset one.
    j["p1_s_coset_scaling"] = q6(std::ldexp(1.0, -static_cast<int>(code.n_total - code.k_info)), o);
    j["p1_s_codeword_scaling"] = q6(std::ldexp(1.0, -static_cast<int>(code.k_info)), o);
    if (with_baseline) {
        const qkd::GuessingChain base = qkd::baseline_chain(ensemble, pac);
        j["baseline_p1_s"] = q6(base.p1_s, o);
        j["baseline_p1_l"] = q6(base.p1_l, o);
        j["baseline_p1_k"] = q6(base.p1_k, o);
    }
    return j;
}

// ---------------------------------------------------------------------------
// markov
// ---------------------------------------------------------------------------

ordered_json run_markov(double eps, bool use_double, std::optional<double> sigma,
                        std::optional<double> sigma2, const OutputOpts& o) {
    ordered_json j;
    j["epsilon"] = q6(eps, o);
    if (!use_double) {
        j["mode"] = "single";
        if (sigma) {
            j["sigma"] = q6(*sigma, o);
            j["failure_prob"] = q6(qkd::failure_single(eps, *sigma), o);
            j["analytic_optimum"] = q6(2.0 * std::sqrt(eps), o);
        } else {
            const qkd::CascadeResult r = qkd::optimize_single(eps);
            j["sigma"] = q6(r.sigma_values[0], o);
            j["failure_prob"] = q6(r.failure_prob, o);
            j["analytic_optimum"] = q6(r.analytic_optimum, o);
        }
    } else {
        j["mode"] = "double";
        if (sigma && sigma2) {
            j["sigma1"] = q6(*sigma, o);
            j["sigma2"] = q6(*sigma2, o);
            j["failure_prob"] = q6(qkd::failure_double(eps, *sigma, *sigma2), o);
            j["analytic_optimum"] = q6(3.0 * std::cbrt(eps), o);
        } else {
            const qkd::CascadeResult r = qkd::optimize_double(eps);
            j["sigma1"] = q6(r.sigma_values[0], o);
            j["sigma2"] = q6(r.sigma_values[1], o);
            j["failure_prob"] = q6(r.failure_prob, o);
            j["analytic_optimum"] = q6(r.analytic_optimum, o);
        }
    }
    return j;
}

// ---------------------------------------------------------------------------
// distance
// ---------------------------------------------------------------------------

ordered_json run_distance(std::size_t n, double eps, const OutputOpts& o) {
    const qkd::Distribution p = qkd::skewed_pair(n, eps);
    const qkd::Distribution u = qkd::Distribution::uniform(n);
    const double v = qkd::variational_distance(p, u);
    const double guess = qkd::guessing_prob(p);
    ordered_json j;
    j["n"] = n;
    j["epsilon"] = q6(eps, o);
    j["v"] = q6(v, o);
    j["guessing"] = q6(guess, o);
    j["guessing_bound"] = q6(1.0 / static_cast<double>(n) + v, o);
    j["gap"] = q6(1.0 / static_cast<double>(n) + v - guess, o);
    j["operational_guarantee"] = q6(qkd::operational_guarantee(v, n), o);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Security accounting and desk-scale BB84 simulation for QKD key rates"};
    app.set_version_flag("--version", "qkd-audit 1.0.0");
    app.require_subcommand(1);

    // threshold ------------------------------------------------------------
    OutputOpts th_opts;
    std::string th_rate = "shannon";
    auto* th = app.add_subcommand("threshold", "Maximum QBER with a positive net key");
    th->add_option("--rate", th_rate, "Code rate, or 'shannon' for r = 1 - h(Q)")->required()->check(RateSpec);
    add_output_opts(th, th_opts);
    th->callback([&] { emit(run_threshold(th_rate, th_opts), th_opts); });

    // rates ------------------------------------------------------------------
    OutputOpts ra_opts;
    std::int64_t ra_sifted = 10000;
    double ra_start = 0.0, ra_end = 0.1, ra_step = 0.01, ra_f = 1.1, ra_mu = 0.0;
    std::string ra_rate = "shannon";
    auto* ra = app.add_subcommand("rates", "Leak and key-length table over a QBER grid");
    ra->add_option("--sifted-len", ra_sifted, "Sifted key length |S|")->required();
    ra->add_option("--qber-start", ra_start, "First QBER")->required();
    ra->add_option("--qber-end", ra_end, "Last QBER")->required();
    ra->add_option("--qber-step", ra_step, "Grid step")->required();
    ra->add_option("--rate", ra_rate, "Code rate, or 'shannon'")->default_val("shannon")->check(RateSpec);
    ra->add_option("--f", ra_f, "Reconciliation efficiency factor")->default_val(1.1);
    ra->add_option("--mu", ra_mu, "Finite-size QBER allowance")->default_val(0.0);
    add_output_opts(ra, ra_opts);
    ra->callback([&] {
        emit(run_rates(ra_sifted, ra_start, ra_end, ra_step, ra_rate, ra_f, ra_mu, ra_opts),
             ra_opts);
    });

    // audit-code -------------------------------------------------------------
    OutputOpts au_opts;
    std::int64_t au_n = 0, au_k = 0;
    double au_q = 0.01;
    auto* au = app.add_subcommand("audit-code", "Feasibility audit of an (n, k) code");
    au->add_option("--n-total", au_n, "Block length n (total bits)")->required();
    au->add_option("--k-info", au_k, "Information length k (must not exceed n)")->required();
    au->add_option("--operating-qber", au_q, "QBER the code is meant to run at")->default_val(0.01);
    add_output_opts(au, au_opts);
    au->callback([&] { emit(run_audit_code(au_n, au_k, au_q, au_opts), au_opts); });

    // simulate -----------------------------------------------------------------
    OutputOpts si_opts;
    qkd::ProtocolConfig si_cfg;
    std::string si_code = "hamming74", si_mode = "padded";
    auto* si = app.add_subcommand("simulate", "One end-to-end BB84 run with a secret-bit ledger");
    si->add_option("--raw-len", si_cfg.raw_len, "Transmitted qubits")->required();
    si->add_option("--qber", si_cfg.qber, "Channel flip probability")->required();
    si->add_option("--check-fraction", si_cfg.check_fraction, "Sifted fraction spent on the QBER estimate")
        ->default_val(0.25);
    si->add_option("--code", si_code,
                   "hamming74 | repetition<N> | random:<n>:<k>:<seed> | ideal")
        ->default_val("hamming74");
    si->add_option("--mode", si_mode, "padded | syndrome")->default_val("padded")->check(CLI::IsMember({"padded", "syndrome"}));
    si->add_option("--mu", si_cfg.mu, "Finite-size QBER allowance")->default_val(0.0);
    si->add_option("--seed", si_cfg.rng_seed, "Run seed")->default_val(1);
    add_output_opts(si, si_opts);
    si->callback([&] {
        si_cfg.code = qkd::CodeSpec::parse(si_code);
        si_cfg.ecc_mode = parse_mode(si_mode);
        emit(qkd::protocol_report_json(qkd::run_protocol(si_cfg), si_opts.precision), si_opts);
    });

    // sweep ---------------------------------------------------------------------
    OutputOpts sw_opts;
    qkd::SweepSpec sw_spec;
    double sw_start = 0.0, sw_end = 0.05, sw_step = 0.01;
    std::string sw_codes = "hamming74", sw_modes = "padded";
    auto* sw = app.add_subcommand("sweep", "Protocol grid over qber x code x mode");
    sw->add_option("--raw-len", sw_spec.raw_len, "Transmitted qubits per run")->required();
    sw->add_option("--qber-start", sw_start, "First QBER")->required();
    sw->add_option("--qber-end", sw_end, "Last QBER")->required();
    sw->add_option("--qber-step", sw_step, "Grid step")->required();
    sw->add_option("--codes", sw_codes, "Comma-separated code specs")->default_val("hamming74");
    sw->add_option("--modes", sw_modes, "Comma-separated ecc modes")->default_val("padded");
    sw->add_option("--check-fraction", sw_spec.check_fraction, "Check fraction per run")
        ->default_val(0.25);
    sw->add_option("--mu", sw_spec.mu, "Finite-size QBER allowance")->default_val(0.0);
    sw->add_option("--seed", sw_spec.base_seed, "Base seed; run i uses a seed derived from it")
        ->default_val(1);
    add_output_opts(sw, sw_opts);
    sw->callback([&] {
        sw_spec.qbers = qber_grid(sw_start, sw_end, sw_step);
        sw_spec.codes.clear();
        for (const std::string& c : split_list(sw_codes))
            sw_spec.codes.push_back(qkd::CodeSpec::parse(c));
        sw_spec.modes.clear();
        for (const std::string& m : split_list(sw_modes)) sw_spec.modes.push_back(parse_mode(m));
        ordered_json rows = ordered_json::array();
        for (const auto& rep : qkd::sweep(sw_spec))
            rows.push_back(qkd::protocol_report_json(rep, sw_opts.precision));
        emit(rows, sw_opts);
    });

    // counterexample -------------------------------------------------------------
    OutputOpts ce_opts;
    std::string ce_code = "repetition3", ce_pac = "identity";
    bool ce_baseline = false;
    auto* ce = app.add_subcommand(
        "counterexample", "Decoding-region observation that pins the corrected key exactly");
    ce->add_option("--code", ce_code, "hamming74 | repetition<N> | random:<n>:<k>:<seed>")
        ->default_val("repetition3");
    ce->add_option("--pac", ce_pac, "identity | toeplitz:<n_out>:<seed>")->default_val("identity");
    ce->add_flag("--baseline", ce_baseline, "Also print the observation-independent control chain");
    add_output_opts(ce, ce_opts);
    ce->callback([&] { emit(run_counterexample(ce_code, ce_pac, ce_baseline, ce_opts), ce_opts); });

    // markov ------------------------------------------------------------------------
    OutputOpts mk_opts;
    double mk_eps = 1e-6;
    bool mk_double = false, mk_single = false;
    std::optional<double> mk_sigma, mk_sigma2;
    double mk_sigma_v = 0.0, mk_sigma1_v = 0.0, mk_sigma2_v = 0.0;
    auto* mk = app.add_subcommand("markov", "Failure probability of one or two guarantee layers");
    mk->add_option("--epsilon", mk_eps, "Average-distance level")->required();
    mk->add_flag("--double", mk_double, "Two independent layers");
    mk->add_flag("--single", mk_single, "One layer (default)");
    auto* mk_s = mk->add_option("--sigma", mk_sigma_v, "Evaluate at this threshold instead of optimizing");
    auto* mk_s1 = mk->add_option("--sigma1", mk_sigma1_v, "First threshold (double mode)");
    auto* mk_s2 = mk->add_option("--sigma2", mk_sigma2_v, "Second threshold (double mode)");
    add_output_opts(mk, mk_opts);
    mk->callback([&] {
        if (mk_double && mk_single)
            throw CLI::ValidationError("markov", "--single and --double are exclusive");
        if (mk_s->count()) mk_sigma = mk_sigma_v;
        if (mk_s1->count()) mk_sigma = mk_sigma1_v;
        if (mk_s2->count()) mk_sigma2 = mk_sigma2_v;
        emit(run_markov(mk_eps, mk_double, mk_sigma, mk_sigma2, mk_opts), mk_opts);
    });

    // distance ---------------------------------------------------------------------
    OutputOpts di_opts;
    std::size_t di_n = 4;
    double di_eps = 0.1;
    auto* di = app.add_subcommand(
        "distance", "Skewed distribution: variational distance vs guessing probability");
    di->add_option("--n", di_n, "Even number of outcomes")->required();
    di->add_option("--epsilon", di_eps, "Skew; the distance to uniform")->required();
    add_output_opts(di, di_opts);
    di->callback([&] { emit(run_distance(di_n, di_eps, di_opts), di_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
