#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkd/gf2.hpp"

namespace qkd {

/// Code selection for a protocol run. The ideal kind is a synthetic
/// Shannon-limit stand-in: rate 1 - h(q) at the configured QBER, decoder an
/// oracle that always corrects. It exists only inside the simulator.
struct CodeSpec {
    enum class Kind { hamming74, repetition, random, ideal };
    Kind kind = Kind::hamming74;
    std::size_t n = 0;        // repetition length / random n
    std::size_t k = 0;        // random k
    std::uint64_t seed = 0;   // random construction seed

    static CodeSpec hamming() { return {Kind::hamming74, 7, 4, 0}; }
    static CodeSpec repetition(std::size_t n) { return {Kind::repetition, n, 1, 0}; }
    static CodeSpec random(std::size_t n, std::size_t k, std::uint64_t seed) {
        return {Kind::random, n, k, seed};
    }
    static CodeSpec ideal() { return {Kind::ideal, 0, 0, 0}; }

    /// Parse "hamming74", "repetition<N>", "random:<n>:<k>:<seed>", "ideal".
    static CodeSpec parse(const std::string& text);
    std::string to_string() const;
};

enum class EccMode { padded, syndrome };

/// Synthetic capacity-achieving code handle: rate 1 - h(q), oracle decoder.
struct IdealCode {
    double design_qber = 0.0;
    double rate = 1.0;
};

/// Rate 1 - h(q); q = 0 gives rate 1 and zero parity cost.
IdealCode ideal_code_oracle(double qber);

struct ProtocolConfig {
    std::int64_t raw_len = 0;       ///< transmitted qubits; >= 64
    double qber = 0.0;              ///< channel flip probability on sifted bits
    double check_fraction = 0.25;   ///< sifted fraction sacrificed for the QBER estimate
    CodeSpec code = CodeSpec::hamming();
    EccMode ecc_mode = EccMode::padded;
    double mu = 0.0;                ///< finite-size allowance added to the measured QBER
    std::uint64_t rng_seed = 1;
};

/// Bits generated minus secret bits consumed across one run.
struct KeyLedger {
    std::int64_t sifted_bits = 0;
    std::int64_t check_bits_spent = 0;
    std::int64_t pad_bits_spent = 0;
    std::int64_t key_bits_generated = 0;
    std::int64_t net_bits = 0;
};

struct ProtocolReport {
    ProtocolConfig config;
    KeyLedger ledger;
    double measured_qber = 0.0;
    bool correction_ok = false;
    bool feasibility_prediction = false;  ///< h(q) < 8 - 7/r at the configured rate
    std::optional<std::string> mode_warning;  ///< present exactly in syndrome mode
    double code_rate = 0.0;
    std::int64_t corrected_len = 0;       ///< |S'| fed to privacy amplification
    std::string key_fingerprint;          ///< 64-bit FNV-1a of the generated key bits
};

/// One deterministic end-to-end run: sifting, binary-symmetric-channel
/// errors, QBER estimation on sacrificed check bits, per-block error
/// correction with parity bits either one-time padded (charged to the
/// ledger) or disclosed in the clear (syndrome mode, warned), Toeplitz
/// privacy amplification to floor(|S'| * (1 - h(q_meas + mu)) / 7) bits,
/// and the ledger fill.
ProtocolReport run_protocol(const ProtocolConfig& config);

struct SweepSpec {
    std::int64_t raw_len = 0;
    std::vector<double> qbers;
    std::vector<CodeSpec> codes;
    std::vector<EccMode> modes;
    double check_fraction = 0.25;
    double mu = 0.0;
    std::uint64_t base_seed = 1;
};

/// Independent runs over the Cartesian grid qber x code x mode, in that row
/// order. Run #i uses derive_seed(base_seed, i); output order is the grid
/// order regardless of execution order.
std::vector<ProtocolReport> sweep(const SweepSpec& spec);

/// Serial reference for sweep, kept for testing the parallel path.
std::vector<ProtocolReport> sweep_serial(const SweepSpec& spec);

}  // namespace qkd
