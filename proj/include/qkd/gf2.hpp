#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkd/bitword.hpp"

namespace qkd {

/// Binary linear block code held as a generator / parity-check pair.
/// Invariants kept by every constructor path: G has full row rank,
/// G * H^T = 0, rate = k_info / n_total in (0, 1].
struct LinearCode {
    std::size_t n_total = 0;
    std::size_t k_info = 0;
    std::vector<BitWord> generator;     // k_info rows of length n_total
    std::vector<BitWord> parity_check;  // n_total - k_info rows of length n_total
    bool systematic = false;
    /// col_perm[i] = original column now sitting at position i (identity
    /// unless systematic_form had to permute columns).
    std::vector<std::size_t> col_perm;

    double rate() const { return static_cast<double>(k_info) / static_cast<double>(n_total); }
};

/// The (7,4) Hamming code in systematic form; minimum distance 3.
LinearCode hamming74();

/// The (n,1) repetition code.
LinearCode repetition_code(std::size_t n);

/// Systematic (n,k) code with a uniformly drawn parity block; full rank by
/// construction. Rejects k > n or k == 0.
LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed);

/// Bring an arbitrary full-row-rank generator matrix to systematic form
/// [I | P] by Gaussian elimination, permuting columns when necessary, and
/// derive the parity check [P^T | I]. Rejects rank-deficient input.
LinearCode systematic_form(const std::vector<BitWord>& generator_rows);

/// info * G over GF(2). For systematic codes the first k bits equal info and
/// the rest are the parity bits.
BitWord encode(const LinearCode& code, const BitWord& info);

/// word * H^T; all-zero exactly on codewords.
BitWord syndrome(const LinearCode& code, const BitWord& word);

struct DecodeResult {
    BitWord info;
    BitWord corrected;
    std::size_t error_weight = 0;
};

/// Exhaustive nearest-codeword decoding, ties broken by lexicographically
/// smallest codeword. Guarded to desk scale: n_total <= 24 or k_info <= 20.
/// Runs the codeword scan in parallel when OpenMP is enabled and the
/// codebook is large enough to pay for it.
DecodeResult decode_nearest(const LinearCode& code, const BitWord& word);

/// Single-threaded reference for decode_nearest; same contract, kept for
/// testing and benchmarking the parallel kernel against.
DecodeResult decode_nearest_serial(const LinearCode& code, const BitWord& word);

/// Toeplitz universal hash family: T[j][i] = seed[j - i + n_in - 1] with a
/// seed of exactly n_in + n_out - 1 bits.
struct ToeplitzHash {
    std::size_t n_in = 0;
    std::size_t n_out = 0;
    BitWord seed;
};

/// Draw a Toeplitz hash with a fresh seed from the given stream.
class Prng;
ToeplitzHash make_toeplitz(std::size_t n_in, std::size_t n_out, Prng& rng);
ToeplitzHash make_toeplitz(std::size_t n_in, std::size_t n_out, const BitWord& seed);

/// output[j] = XOR_i T[j][i] * input[i]. Packed-word kernel, parallel over
/// output bits when OpenMP is enabled.
BitWord toeplitz_apply(const ToeplitzHash& h, const BitWord& input);

/// Naive bit-at-a-time reference for toeplitz_apply.
BitWord toeplitz_apply_serial(const ToeplitzHash& h, const BitWord& input);

}  // namespace qkd
