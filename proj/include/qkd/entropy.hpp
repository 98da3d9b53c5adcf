#pragma once

#include <cstdint>

namespace qkd {

/// Quantum bit error rate, constrained to [0, 0.5).
class Qber {
public:
    explicit Qber(double value);
    double value() const { return value_; }

private:
    double value_;
};

/// Rate of a linear error-correcting code, constrained to (0, 1].
class CodeRate {
public:
    explicit CodeRate(double value);
    double value() const { return value_; }

private:
    double value_;
};

/// Binary entropy h(p) = -p log2 p - (1-p) log2(1-p), in bits per symbol.
/// The limits at p in {0, 1} are 0 by continuity. Rejects p outside [0, 1].
double binary_entropy(double p);

/// Unique p in [0, 0.5] with binary_entropy(p) == h_target, by bisection to
/// absolute tolerance 1e-10. Rejects targets outside [0, 1].
double binary_entropy_inverse(double h_target);

/// Error-correction leak f * |S| * h(Q) in bits. Requires f >= 1; f == 1 is
/// the ideal one-way reconciliation limit.
double leak_ec_heuristic(std::int64_t sifted_len, Qber q, double f);

/// One-time-pad bits consumed to pad the parity bits of a capacity-achieving
/// systematic code: |S| * h(Q) / (1 - h(Q)).
double leak_ec_padded(std::int64_t sifted_len, Qber q);

/// Parity bits added by a rate-r systematic code on |S| information bits:
/// |S| * (1/r - 1). Returned as a real; callers that charge a ledger round up.
double parity_overhead(std::int64_t sifted_len, CodeRate r);

/// Generated key length n = floor(H_min / 7) with
/// H_min = |S| * (1 - h(Q + mu)). The divisor 7 enforces the near-uniformity
/// balance (H_min - n) / 6 == n. Rejects q + mu >= 0.5 (vacuous bound).
std::int64_t key_length(std::int64_t sifted_len, Qber q, double mu);

/// key_length minus the whole-bit parity overhead floor(|S| * (1/r - 1)).
std::int64_t net_key_bits(std::int64_t sifted_len, Qber q, CodeRate r, double mu);

/// Feasibility region of net key generation: h(Q) < 8 - 7/r. The right-hand
/// side is nonpositive for r <= 7/8, so those rates are infeasible at any Q.
bool net_key_feasible(Qber q, CodeRate r);

struct QberThreshold {
    double qber_max = 0.0;      ///< largest feasible QBER
    double h_bound = 0.0;       ///< the entropy bound 8 - 7/r at threshold
    bool unconstrained = false; ///< true when the bound saturates h's range (r == 1)
};

/// Threshold QBER when the code rate tracks the Shannon limit r = 1 - h(Q).
/// Solves h(Q) = 8 - 7/(1 - h(Q)), i.e. h(Q) is the root (9 - sqrt(77))/2 of
/// x^2 - 9x + 1 = 0.
QberThreshold threshold_qber_shannon();

/// Threshold QBER for a fixed code rate: binary_entropy_inverse(8 - 7/r).
/// Throws std::domain_error for r <= 7/8 (empty feasibility region).
QberThreshold threshold_qber_fixed(CodeRate r);

struct PaExponents {
    double lhl_exponent = 0.0;         ///< (H_min - n) / 2, average-distance exponent
    double operational_exponent = 0.0; ///< (H_min - n) / 6, after the cube root
    bool near_uniform = false;         ///< operational exponent >= n, i.e. n <= H_min / 7
};

/// Privacy-amplification distance exponents for extracting n bits from a
/// source with min-entropy h_min.
PaExponents pa_exponents(double h_min, std::int64_t n);

/// Every closed-form quantity of interest for one (|S|, Q, f, mu, r) point.
struct RateReport {
    std::int64_t sifted_len = 0;
    double qber = 0.0;
    double f_factor = 0.0;
    double mu = 0.0;
    double code_rate = 0.0;
    double h_q = 0.0;
    double leak_heuristic = 0.0;
    double leak_padded = 0.0;
    double parity_bits = 0.0;
    double h_min = 0.0;
    std::int64_t key_len_n = 0;
    std::int64_t net_bits = 0;
    bool feasible = false;
};

RateReport make_rate_report(std::int64_t sifted_len, Qber q, double f, double mu, CodeRate r);

}  // namespace qkd
