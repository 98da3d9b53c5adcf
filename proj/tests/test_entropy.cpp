#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "qkd/entropy.hpp"

using namespace qkd;

TEST_CASE("binary entropy values") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.05) == doctest::Approx(0.286396957115956).epsilon(1e-9));
    CHECK(binary_entropy(0.01) == doctest::Approx(0.080793135895911).epsilon(1e-9));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("binary entropy symmetry / monotonicity / concavity") {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        CHECK(binary_entropy(p) == doctest::Approx(binary_entropy(1.0 - p)).epsilon(1e-14));
    }
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double h = binary_entropy(i / 100.0);
        CHECK(h > prev);
        prev = h;
    }
    for (int i = 1; i < 40; ++i) {
        const double a = i / 100.0, b = a + 0.1;
        const double mid = binary_entropy(0.5 * (a + b));
        CHECK(mid >= 0.5 * (binary_entropy(a) + binary_entropy(b)) - 1e-12);
    }
}

TEST_CASE("binary entropy inverse") {
    CHECK(binary_entropy_inverse(1.0) == 0.5);
    CHECK(binary_entropy_inverse(0.0) == 0.0);
    CHECK(binary_entropy_inverse(0.286397) == doctest::Approx(0.05).epsilon(1e-6));
    for (int i = 0; i <= 50; ++i) {
        const double p = i / 100.0;
        CHECK(binary_entropy_inverse(binary_entropy(p)) == doctest::Approx(p).epsilon(1e-8));
    }
    CHECK_THROWS_AS(binary_entropy_inverse(1.5), std::domain_error);
    CHECK_THROWS_AS(binary_entropy_inverse(-0.1), std::domain_error);
}

TEST_CASE("leak accounting") {
    CHECK(leak_ec_heuristic(10000, Qber(0.05), 1.1) == doctest::Approx(3150.3665).epsilon(1e-6));
    CHECK(leak_ec_heuristic(10000, Qber(0.0), 1.1) == 0.0);
    CHECK(leak_ec_heuristic(10000, Qber(0.05), 1.0) == doctest::Approx(2863.9696).epsilon(1e-6));
    CHECK_THROWS_AS(leak_ec_heuristic(10000, Qber(0.05), 0.9), std::domain_error);

    CHECK(leak_ec_padded(10000, Qber(0.05)) == doctest::Approx(4013.3932).epsilon(1e-6));
    CHECK(leak_ec_padded(10000, Qber(0.0)) == 0.0);
    CHECK(leak_ec_padded(8000, Qber(0.01)) == doctest::Approx(703.1552).epsilon(1e-6));

    // Padding always costs at least the ideal one-way leak.
    for (int i = 1; i < 50; ++i) {
        const Qber q(i / 100.0);
        CHECK(leak_ec_padded(5000, q) > leak_ec_heuristic(5000, q, 1.0));
    }
    CHECK(leak_ec_padded(5000, Qber(0.0)) == leak_ec_heuristic(5000, Qber(0.0), 1.0));
}

TEST_CASE("parity overhead") {
    CHECK(parity_overhead(10000, CodeRate(0.9)) == doctest::Approx(1111.1111).epsilon(1e-6));
    CHECK(parity_overhead(10000, CodeRate(1.0)) == 0.0);
    // One QC-LDPC codeword: 8160 - 7159 parity bits.
    CHECK(parity_overhead(7159, CodeRate(7159.0 / 8160.0)) == doctest::Approx(1001.0).epsilon(1e-9));
}

TEST_CASE("key length and net bits") {
    CHECK(key_length(100000, Qber(0.01), 0.0) == 13131);
    CHECK(key_length(10000, Qber(0.05), 0.0) == 1019);
    CHECK(key_length(7000, Qber(0.0), 0.0) == 1000);
    CHECK_THROWS_AS(key_length(1000, Qber(0.3), 0.25), std::domain_error);

    CHECK(net_key_bits(100000, Qber(0.01), CodeRate(0.95), 0.0) == 13131 - 5263);
    CHECK(net_key_bits(10000, Qber(0.05), CodeRate(0.9), 0.0) == 1019 - 1111);
    CHECK(net_key_bits(7000, Qber(0.0), CodeRate(1.0), 0.0) == 1000);
}

TEST_CASE("feasibility region") {
    CHECK(net_key_feasible(Qber(0.01), CodeRate(0.9)));
    CHECK_FALSE(net_key_feasible(Qber(0.05), CodeRate(7159.0 / 8160.0)));
    // Rates at or below 7/8 are infeasible no matter the QBER.
    for (int i = 0; i < 50; ++i) {
        const Qber q(i / 100.0);
        CHECK_FALSE(net_key_feasible(q, CodeRate(4.0 / 7.0)));
        CHECK_FALSE(net_key_feasible(q, CodeRate(7.0 / 8.0)));
        CHECK_FALSE(net_key_feasible(q, CodeRate(0.5)));
    }
}

TEST_CASE("net sign agrees with feasibility away from the flooring slack") {
    const std::int64_t s = 1'000'000;
    for (double q = 0.001; q < 0.05; q += 0.004) {
        for (double r = 0.88; r <= 1.0; r += 0.02) {
            const double per_bit =
                (1.0 - binary_entropy(q)) / 7.0 - (1.0 / r - 1.0);
            if (std::abs(per_bit) < 2.0 / static_cast<double>(s)) continue;
            const bool feasible = net_key_feasible(Qber(q), CodeRate(r));
            const std::int64_t net = net_key_bits(s, Qber(q), CodeRate(r), 0.0);
            CHECK((net > 0) == feasible);
        }
    }
}

TEST_CASE("threshold qber") {
    const QberThreshold shannon = threshold_qber_shannon();
    CHECK(shannon.qber_max == doctest::Approx(0.0150260).epsilon(1e-4));
    CHECK(shannon.h_bound == doctest::Approx((9.0 - std::sqrt(77.0)) / 2.0).epsilon(1e-12));
    CHECK_FALSE(shannon.unconstrained);

    // Independent route: direct bisection on h(Q) - (8 - 7/(1 - h(Q))).
    double lo = 1e-9, hi = 0.49;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double h = binary_entropy(mid);
        ((h - (8.0 - 7.0 / (1.0 - h)) < 0.0) ? lo : hi) = mid;
    }
    CHECK(shannon.qber_max == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));

    const QberThreshold ldpc = threshold_qber_fixed(CodeRate(7159.0 / 8160.0));
    CHECK(ldpc.qber_max == doctest::Approx(0.0020467).epsilon(1e-2));
    CHECK(ldpc.h_bound == doctest::Approx(152.0 / 7159.0).epsilon(1e-9));

    const QberThreshold unit = threshold_qber_fixed(CodeRate(1.0));
    CHECK(unit.qber_max == 0.5);
    CHECK(unit.unconstrained);

    CHECK_THROWS_AS(threshold_qber_fixed(CodeRate(0.5)), std::domain_error);
    CHECK_THROWS_AS(threshold_qber_fixed(CodeRate(7.0 / 8.0)), std::domain_error);
}

TEST_CASE("threshold brackets the feasibility flip at the shannon rate") {
    const double q_star = threshold_qber_shannon().qber_max;
    const double below = q_star - 1e-3, above = q_star + 1e-3;
    CHECK(net_key_feasible(Qber(below), CodeRate(1.0 - binary_entropy(below))));
    CHECK_FALSE(net_key_feasible(Qber(above), CodeRate(1.0 - binary_entropy(above))));
}

TEST_CASE("feasible column flips once inside a fine grid at the shannon rate") {
    int flips = 0;
    bool prev = true;
    for (double q = 0.014; q <= 0.016 + 1e-12; q += 0.0005) {
        const double r = 1.0 - binary_entropy(q);
        const bool feasible = make_rate_report(10000, Qber(q), 1.0, 0.0, CodeRate(r)).feasible;
        if (q > 0.014 && feasible != prev) ++flips;
        prev = feasible;
    }
    CHECK(flips == 1);
    CHECK_FALSE(prev);  // infeasible by the end of the grid
}

TEST_CASE("privacy amplification exponents") {
    const PaExponents at_boundary = pa_exponents(7000.0, 1000);
    CHECK(at_boundary.lhl_exponent == 3000.0);
    CHECK(at_boundary.operational_exponent == 1000.0);
    CHECK(at_boundary.near_uniform);

    CHECK_FALSE(pa_exponents(7000.0, 1001).near_uniform);

    const PaExponents zero = pa_exponents(0.0, 0);
    CHECK(zero.lhl_exponent == 0.0);
    CHECK(zero.operational_exponent == 0.0);
    CHECK(zero.near_uniform);
}

TEST_CASE("rate report composition") {
    const RateReport r = make_rate_report(10000, Qber(0.05), 1.0, 0.0, CodeRate(0.9));
    CHECK(r.h_q == doctest::Approx(0.2863970).epsilon(1e-6));
    CHECK(r.leak_heuristic == doctest::Approx(2863.9696).epsilon(1e-6));
    CHECK(r.leak_padded == doctest::Approx(4013.3932).epsilon(1e-6));
    CHECK(r.key_len_n == 1019);
    CHECK(r.net_bits == 1019 - 1111);
    CHECK_FALSE(r.feasible);
    CHECK(r.net_bits < 0);
}

TEST_CASE("domain type guards") {
    CHECK_THROWS_AS(Qber(0.5), std::domain_error);
    CHECK_THROWS_AS(Qber(-0.01), std::domain_error);
    CHECK_THROWS_AS(CodeRate(0.0), std::domain_error);
    CHECK_THROWS_AS(CodeRate(1.01), std::domain_error);
}
