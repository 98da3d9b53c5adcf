#include "qkd/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace qkd {

Qber::Qber(double value) : value_(value) {
    if (!(value >= 0.0 && value < 0.5))
        throw std::domain_error("Qber must lie in [0, 0.5)");
}

CodeRate::CodeRate(double value) : value_(value) {
    if (!(value > 0.0 && value <= 1.0))
        throw std::domain_error("CodeRate must lie in (0, 1]");
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("binary_entropy: p must lie in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binary_entropy_inverse(double h_target) {
    if (!(h_target >= 0.0 && h_target <= 1.0))
        throw std::domain_error("binary_entropy_inverse: target must lie in [0, 1]");
    if (h_target == 0.0) return 0.0;
    if (h_target == 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (binary_entropy(mid) < h_target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double leak_ec_heuristic(std::int64_t sifted_len, Qber q, double f) {
    if (sifted_len < 0) throw std::domain_error("leak_ec_heuristic: negative length");
    if (!(f >= 1.0)) throw std::domain_error("leak_ec_heuristic: efficiency f must be >= 1");
    return f * static_cast<double>(sifted_len) * binary_entropy(q.value());
}

double leak_ec_padded(std::int64_t sifted_len, Qber q) {
    if (sifted_len < 0) throw std::domain_error("leak_ec_padded: negative length");
    const double h = binary_entropy(q.value());
    if (h >= 1.0) throw std::domain_error("leak_ec_padded: divergent leak at h(Q) = 1");
    return static_cast<double>(sifted_len) * h / (1.0 - h);
}

double parity_overhead(std::int64_t sifted_len, CodeRate r) {
    if (sifted_len < 0) throw std::domain_error("parity_overhead: negative length");
    return static_cast<double>(sifted_len) * (1.0 / r.value() - 1.0);
}

std::int64_t key_length(std::int64_t sifted_len, Qber q, double mu) {
    if (sifted_len < 0) throw std::domain_error("key_length: negative length");
    if (mu < 0.0) throw std::domain_error("key_length: mu must be >= 0");
    const double qe = q.value() + mu;
    if (qe >= 0.5) throw std::domain_error("key_length: q + mu >= 0.5 gives a vacuous bound");
    const double h_min = static_cast<double>(sifted_len) * (1.0 - binary_entropy(qe));
    return static_cast<std::int64_t>(std::floor(h_min / 7.0));
}

std::int64_t net_key_bits(std::int64_t sifted_len, Qber q, CodeRate r, double mu) {
    const std::int64_t parity = static_cast<std::int64_t>(std::floor(parity_overhead(sifted_len, r)));
    return key_length(sifted_len, q, mu) - parity;
}

bool net_key_feasible(Qber q, CodeRate r) {
    return binary_entropy(q.value()) < 8.0 - 7.0 / r.value();
}

QberThreshold threshold_qber_shannon() {
    // h(Q) = 8 - 7/(1 - h(Q))  <=>  h^2 - 9h + 1 = 0 on (0, 1).
    const double h_star = (9.0 - std::sqrt(77.0)) / 2.0;
    return QberThreshold{binary_entropy_inverse(h_star), h_star, false};
}

QberThreshold threshold_qber_fixed(CodeRate r) {
    const double bound = 8.0 - 7.0 / r.value();
    if (bound <= 0.0)
        throw std::domain_error("empty feasibility region (r <= 7/8)");
    if (bound >= 1.0)
        return QberThreshold{0.5, bound, true};
    return QberThreshold{binary_entropy_inverse(bound), bound, false};
}

PaExponents pa_exponents(double h_min, std::int64_t n) {
    if (h_min < 0.0) throw std::domain_error("pa_exponents: h_min must be >= 0");
    if (n < 0) throw std::domain_error("pa_exponents: n must be >= 0");
    PaExponents out;
    out.lhl_exponent = (h_min - static_cast<double>(n)) / 2.0;
    out.operational_exponent = (h_min - static_cast<double>(n)) / 6.0;
    out.near_uniform = out.operational_exponent >= static_cast<double>(n);
    return out;
}

RateReport make_rate_report(std::int64_t sifted_len, Qber q, double f, double mu, CodeRate r) {
    RateReport rep;
    rep.sifted_len = sifted_len;
    rep.qber = q.value();
    rep.f_factor = f;
    rep.mu = mu;
    rep.code_rate = r.value();
    rep.h_q = binary_entropy(q.value());
    rep.leak_heuristic = leak_ec_heuristic(sifted_len, q, f);
    rep.leak_padded = leak_ec_padded(sifted_len, q);
    rep.parity_bits = parity_overhead(sifted_len, r);
    rep.h_min = static_cast<double>(sifted_len) * (1.0 - binary_entropy(q.value() + mu));
    rep.key_len_n = key_length(sifted_len, q, mu);
    rep.net_bits = net_key_bits(sifted_len, q, r, mu);
    rep.feasible = net_key_feasible(q, r);
    return rep;
}

}  // namespace qkd
