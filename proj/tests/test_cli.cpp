// Golden-file and contract tests for the qkd-audit binary. The binary path
// arrives via QKD_AUDIT_BIN (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "qkd/pipeline.hpp"
#include "qkd/report_io.hpp"

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

std::string binary_path() {
    const char* env = std::getenv("QKD_AUDIT_BIN");
    REQUIRE_MESSAGE(env != nullptr, "QKD_AUDIT_BIN must point at the qkd-audit binary");
    return env;
}

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "",
                  bool merge_stderr = false) {
    const std::string cmd = env_prefix + "\"" + binary_path() + "\" " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CmdResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    const int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

}  // namespace

TEST_CASE("threshold golden outputs") {
    CmdResult shannon = run_cli("threshold --rate shannon");
    CHECK(shannon.status == 0);
    CHECK(shannon.out ==
          "{\"mode\":\"shannon\",\"qber_max\":0.015026,\"h_bound\":0.112518,"
          "\"unconstrained\":false,\"region_empty\":false}\n");

    CmdResult ldpc = run_cli("threshold --rate 0.877328");
    CHECK(ldpc.status == 0);
    CHECK(ldpc.out ==
          "{\"mode\":\"fixed\",\"code_rate\":0.877328,\"qber_max\":0.00204628,"
          "\"h_bound\":0.0212281,\"unconstrained\":false,\"region_empty\":false}\n");

    CmdResult empty = run_cli("threshold --rate 0.5", "", true);
    CHECK(empty.status == 3);
    CHECK(empty.out == "error: empty feasibility region (r <= 7/8)\n");
}

TEST_CASE("audit-code golden output and swap guard") {
    CmdResult ldpc = run_cli("audit-code --n-total 8160 --k-info 7159 --operating-qber 0.01");
    CHECK(ldpc.status == 0);
    CHECK(ldpc.out ==
          "{\"n_total\":8160,\"k_info\":7159,\"code_rate\":0.877328,\"h_bound\":0.021232,"
          "\"region_empty\":false,\"qber_max\":0.00204672,\"operating_qber\":0.01,"
          "\"verdict\":\"INFEASIBLE\"}\n");

    // Rate below 7/8: infeasible for every operating point, no error.
    CmdResult ham = run_cli("audit-code --n-total 7 --k-info 4 --operating-qber 0.0001");
    CHECK(ham.status == 0);
    CHECK(ham.out.find("\"region_empty\":true") != std::string::npos);
    CHECK(ham.out.find("\"verdict\":\"INFEASIBLE\"") != std::string::npos);

    CmdResult good = run_cli("audit-code --n-total 100 --k-info 95 --operating-qber 0.001");
    CHECK(good.status == 0);
    CHECK(good.out.find("\"code_rate\":0.95") != std::string::npos);
    CHECK(good.out.find("\"h_bound\":0.631579") != std::string::npos);
    CHECK(good.out.find("\"verdict\":\"FEASIBLE\"") != std::string::npos);

    // Swapped order is refused loudly rather than misread.
    CmdResult swapped = run_cli("audit-code --n-total 7159 --k-info 8160", "", true);
    CHECK(swapped.status == 3);
    CHECK(swapped.out.find("swapped") != std::string::npos);
}

TEST_CASE("counterexample golden outputs") {
    CmdResult rep = run_cli("counterexample --code repetition3");
    CHECK(rep.status == 0);
    CHECK(rep.out ==
          "{\"code\":\"repetition3\",\"n_total\":3,\"k_info\":1,\"pac\":\"identity\","
          "\"group_count\":2,\"group_size_min\":4,\"group_size_max\":4,"
          "\"p1_s\":0.25,\"p1_l\":1.0,\"p1_k\":1.0,\"breach_gap\":0.75,"
          "\"p1_s_coset_scaling\":0.25,\"p1_s_codeword_scaling\":0.5}\n");

    CmdResult ham = run_cli("counterexample --code hamming74");
    CHECK(ham.status == 0);
    CHECK(ham.out ==
          "{\"code\":\"hamming74\",\"n_total\":7,\"k_info\":4,\"pac\":\"identity\","
          "\"group_count\":16,\"group_size_min\":8,\"group_size_max\":8,"
          "\"p1_s\":0.125,\"p1_l\":1.0,\"p1_k\":1.0,\"breach_gap\":0.875,"
          "\"p1_s_coset_scaling\":0.125,\"p1_s_codeword_scaling\":0.0625}\n");

    CmdResult base = run_cli("counterexample --code hamming74 --baseline");
    CHECK(base.status == 0);
    CHECK(base.out.find("\"baseline_p1_s\":0.0078125") != std::string::npos);
    CHECK(base.out.find("\"baseline_p1_l\":0.0625") != std::string::npos);
}

TEST_CASE("markov golden outputs") {
    CmdResult dbl = run_cli("markov --epsilon 1e-6 --double");
    CHECK(dbl.status == 0);
    CHECK(dbl.out ==
          "{\"epsilon\":1e-06,\"mode\":\"double\",\"sigma1\":0.01,\"sigma2\":0.01,"
          "\"failure_prob\":0.029701,\"analytic_optimum\":0.03}\n");

    CmdResult single = run_cli("markov --epsilon 1e-6");
    CHECK(single.status == 0);
    CHECK(single.out ==
          "{\"epsilon\":1e-06,\"mode\":\"single\",\"sigma\":0.001,"
          "\"failure_prob\":0.001999,\"analytic_optimum\":0.002}\n");

    CmdResult manual = run_cli("markov --epsilon 1e-4 --sigma 0.01");
    CHECK(manual.status == 0);
    CHECK(manual.out.find("\"failure_prob\":0.0199") != std::string::npos);
}

TEST_CASE("distance golden output") {
    CmdResult d = run_cli("distance --n 4 --epsilon 0.1");
    CHECK(d.status == 0);
    CHECK(d.out ==
          "{\"n\":4,\"epsilon\":0.1,\"v\":0.1,\"guessing\":0.3,\"guessing_bound\":0.35,"
          "\"gap\":0.05,\"operational_guarantee\":0.714159}\n");

    // Odd outcome counts are a domain error.
    CmdResult odd = run_cli("distance --n 3 --epsilon 0.1", "", true);
    CHECK(odd.status == 3);
}

TEST_CASE("simulate is byte-identical under a fixed seed") {
    const std::string args = "simulate --raw-len 4096 --qber 0.02 --seed 11";
    const CmdResult a = run_cli(args);
    const CmdResult b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"net_bits\":") != std::string::npos);
}

TEST_CASE("simulate JSON re-parses to the in-memory report") {
    const CmdResult r = run_cli("simulate --raw-len 8192 --qber 0.03 --seed 42 --precision 9");
    CHECK(r.status == 0);
    const nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(r.out);

    qkd::ProtocolConfig cfg;
    cfg.raw_len = 8192;
    cfg.qber = 0.03;
    cfg.rng_seed = 42;
    const nlohmann::ordered_json expected =
        qkd::protocol_report_json(qkd::run_protocol(cfg), 9);
    CHECK(parsed == expected);
}

TEST_CASE("sweep emits one deterministic row per grid point") {
    const std::string args =
        "sweep --raw-len 4096 --qber-start 0 --qber-end 0.02 --qber-step 0.01 "
        "--codes hamming74,ideal --modes padded --seed 5";
    const CmdResult a = run_cli(args);
    CHECK(a.status == 0);
    const auto rows = nlohmann::ordered_json::parse(a.out);
    CHECK(rows.is_array());
    CHECK(rows.size() == 6);
    CHECK(run_cli(args).out == a.out);
}

TEST_CASE("csv format carries a header row") {
    const CmdResult csv = run_cli("distance --n 4 --epsilon 0.1 --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.out ==
          "n,epsilon,v,guessing,guessing_bound,gap,operational_guarantee\n"
          "4,0.1,0.1,0.3,0.35,0.05,0.714159\n");

    const CmdResult rates = run_cli(
        "rates --sifted-len 10000 --qber-start 0.05 --qber-end 0.05 --qber-step 0.01 "
        "--f 1.0 --rate shannon --format csv");
    CHECK(rates.status == 0);
    CHECK(rates.out ==
          "sifted_len,qber,f_factor,mu,code_rate,h_q,leak_heuristic,leak_padded,"
          "parity_bits,h_min,key_len_n,net_bits,feasible\n"
          "10000,0.05,1.0,0.0,0.713603,0.286397,2863.97,4013.39,4013.39,7136.03,"
          "1019,-2994,false\n");
}

TEST_CASE("environment variable sets the default format") {
    const CmdResult csv = run_cli("distance --n 4 --epsilon 0.1", "QKD_AUDIT_FORMAT=csv ");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("n,epsilon,", 0) == 0);

    // Flag wins over the environment.
    const CmdResult json =
        run_cli("distance --n 4 --epsilon 0.1 --format json", "QKD_AUDIT_FORMAT=csv ");
    CHECK(json.out.rfind("{", 0) == 0);
}

TEST_CASE("exit codes: 2 for flag errors, 3 for domain errors") {
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("threshold").status == 2);                  // missing --rate
    CHECK(run_cli("threshold --rate abc").status == 2);
    CHECK(run_cli("threshold --rate shannon --format xml").status == 2);
    CHECK(run_cli("simulate --raw-len 4096 --qber 0 --mode open").status == 2);
    CHECK(run_cli("threshold --rate 0.5").status == 3);       // empty region
    CHECK(run_cli("simulate --raw-len 32 --qber 0").status == 3);
    CHECK(run_cli("markov --epsilon 1e-6 --single --double").status == 2);
    CHECK(run_cli("counterexample --code random:21:10:1").status == 3);  // desk-scale guard
    CHECK(run_cli("threshold --rate shannon").status == 0);
}

TEST_CASE("output file flag writes the same bytes") {
    const std::string path = "/tmp/qkd_cli_test_out.json";
    std::remove(path.c_str());
    const CmdResult direct = run_cli("threshold --rate shannon");
    const CmdResult filed = run_cli("threshold --rate shannon --output " + path);
    CHECK(filed.status == 0);
    CHECK(filed.out.empty());
    FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string content;
    char buf[512];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) content.append(buf, n);
    std::fclose(f);
    std::remove(path.c_str());
    CHECK(content == direct.out);
}
