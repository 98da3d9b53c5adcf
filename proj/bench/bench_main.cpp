// Timing comparison of the OpenMP kernels against their serial references:
// Toeplitz hashing, exhaustive nearest-codeword decoding, decoding-region
// enumeration and the protocol sweep. Each section checks that both paths
// agree bit for bit before reporting the speedup.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qkd/breach.hpp"
#include "qkd/gf2.hpp"
#include "qkd/pipeline.hpp"
#include "qkd/report_io.hpp"
#include "qkd/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool g_all_equal = true;

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   equal %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms, equal ? "yes" : "NO");
    g_all_equal = g_all_equal && equal;
}

void bench_toeplitz(bool quick) {
    const std::size_t n_in = quick ? 8192 : 32768;
    const std::size_t n_out = quick ? 1024 : 4096;
    qkd::Prng rng(1);
    const qkd::ToeplitzHash h = qkd::make_toeplitz(n_in, n_out, rng);
    qkd::BitWord in(n_in);
    for (std::size_t i = 0; i < n_in; ++i) in.set(i, rng.bit());

    const auto t0 = Clock::now();
    const qkd::BitWord serial = qkd::toeplitz_apply_serial(h, in);
    const double serial_ms = ms_since(t0);

    const int reps = quick ? 4 : 8;
    qkd::BitWord parallel(0);
    const auto t1 = Clock::now();
    for (int r = 0; r < reps; ++r) parallel = qkd::toeplitz_apply(h, in);
    const double parallel_ms = ms_since(t1) / reps;

    report("toeplitz_apply", serial_ms, parallel_ms, parallel == serial);
}

void bench_decode(bool quick) {
    const qkd::LinearCode code = qkd::random_code(24, quick ? 14 : 18, 7);
    qkd::Prng rng(2);
    std::vector<qkd::BitWord> words;
    for (int i = 0; i < (quick ? 4 : 8); ++i) {
        qkd::BitWord w(24);
        for (std::size_t b = 0; b < 24; ++b) w.set(b, rng.bit());
        words.push_back(w);
    }

    const auto t0 = Clock::now();
    std::vector<qkd::DecodeResult> serial;
    for (const auto& w : words) serial.push_back(qkd::decode_nearest_serial(code, w));
    const double serial_ms = ms_since(t0);

    const auto t1 = Clock::now();
    std::vector<qkd::DecodeResult> parallel;
    for (const auto& w : words) parallel.push_back(qkd::decode_nearest(code, w));
    const double parallel_ms = ms_since(t1);

    bool equal = true;
    for (std::size_t i = 0; i < words.size(); ++i)
        equal = equal && parallel[i].corrected == serial[i].corrected &&
                parallel[i].error_weight == serial[i].error_weight;
    report("decode_nearest", serial_ms, parallel_ms, equal);
}

void bench_sweep(bool quick) {
    qkd::SweepSpec spec;
    spec.raw_len = quick ? 16384 : 65536;
    spec.qbers = {0.0, 0.01, 0.02, 0.03};
    spec.codes = {qkd::CodeSpec::hamming(), qkd::CodeSpec::ideal()};
    spec.modes = {qkd::EccMode::padded};
    spec.check_fraction = 0.1;
    spec.base_seed = 5;

    const auto t0 = Clock::now();
    const auto serial = qkd::sweep_serial(spec);
    const double serial_ms = ms_since(t0);

    const auto t1 = Clock::now();
    const auto parallel = qkd::sweep(spec);
    const double parallel_ms = ms_since(t1);

    bool equal = serial.size() == parallel.size();
    for (std::size_t i = 0; equal && i < serial.size(); ++i)
        equal = qkd::protocol_report_json(serial[i], 9) == qkd::protocol_report_json(parallel[i], 9);
    report("sweep", serial_ms, parallel_ms, equal);
}

void bench_breach(bool quick) {
    const qkd::LinearCode code = qkd::random_code(quick ? 14 : 16, quick ? 7 : 8, 3);

    const auto t0 = Clock::now();
    const auto ensemble = qkd::build_breach_ensemble(code);
    const double ms = ms_since(t0);

    std::size_t members = 0;
    for (const auto& g : ensemble.groups) members += g.size();
    std::printf("%-24s enumerate %7.2f ms   (%zu sequences, %zu regions)\n",
                "build_breach_ensemble", ms, members, ensemble.groups.size());
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel entry points fall back to serial\n");
#endif
    bench_toeplitz(quick);
    bench_decode(quick);
    bench_sweep(quick);
    bench_breach(quick);
    return g_all_equal ? 0 : 1;
}
