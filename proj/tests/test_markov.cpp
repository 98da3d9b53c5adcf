#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "qkd/markov.hpp"

using namespace qkd;

TEST_CASE("markov bound") {
    CHECK(markov_bound(0.01, 0.1) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(markov_bound(0.0, 0.3) == 0.0);
    CHECK(markov_bound(1.0, 0.5) == 1.0);
    CHECK_THROWS_AS(markov_bound(0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(markov_bound(-0.1, 0.5), std::domain_error);

    // Monotone nonincreasing in delta, linear in the mean below the cap.
    double prev = 2.0;
    for (double delta = 0.05; delta < 1.0; delta += 0.05) {
        const double b = markov_bound(0.02, delta);
        CHECK(b <= prev);
        prev = b;
    }
    CHECK(markov_bound(0.04, 0.9) == doctest::Approx(2.0 * markov_bound(0.02, 0.9)).epsilon(1e-14));
}

TEST_CASE("single-layer failure probability") {
    CHECK(failure_single(1e-6, 1e-3) == doctest::Approx(0.001999).epsilon(1e-9));
    CHECK(failure_single(0.0, 0.2) == 0.2);
    CHECK(failure_single(1e-4, 1e-2) == doctest::Approx(0.0199).epsilon(1e-12));
    CHECK(failure_single(0.5, 0.1) == 1.0);  // eps beyond sigma saturates
    CHECK_THROWS_AS(failure_single(1e-6, 0.0), std::domain_error);
    CHECK_THROWS_AS(failure_single(1e-6, 1.0), std::domain_error);
}

TEST_CASE("two-layer failure probability") {
    CHECK(failure_double(1e-6, 1e-2, 1e-2) == doctest::Approx(0.029701).epsilon(1e-10));
    CHECK(failure_double(0.0, 0.2, 0.3) == doctest::Approx(1.0 - 0.8 * 0.7).epsilon(1e-14));
    CHECK(failure_double(1e-3, 0.1, 0.1) == doctest::Approx(0.271).epsilon(1e-12));
    CHECK(failure_double(0.5, 0.1, 0.1) == 1.0);
    CHECK_THROWS_AS(failure_double(1e-6, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(failure_double(1e-6, 0.5, 1.0), std::domain_error);
}

TEST_CASE("single-layer optimum lands on sqrt(eps)") {
    const CascadeResult r = optimize_single(1e-6);
    REQUIRE(r.sigma_values.size() == 1);
    CHECK(std::abs(r.sigma_values[0] - 1e-3) <= 1e-9);
    CHECK(r.failure_prob == doctest::Approx(0.001999).epsilon(1e-12));
    CHECK(r.analytic_optimum == doctest::Approx(2e-3).epsilon(1e-12));

    const CascadeResult large = optimize_single(0.25);
    CHECK(large.sigma_values[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(large.failure_prob == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(large.analytic_optimum == doctest::Approx(1.0).epsilon(1e-12));

    for (double eps = 1e-12; eps <= 1e-2; eps *= 100.0) {
        const CascadeResult res = optimize_single(eps);
        CHECK(std::abs(res.sigma_values[0] / std::sqrt(eps) - 1.0) <= 1e-6);
        CHECK(res.failure_prob ==
              doctest::Approx(2.0 * std::sqrt(eps) - eps).epsilon(1e-10));
    }
}

TEST_CASE("two-layer optimum lands on cbrt(eps)") {
    const CascadeResult r = optimize_double(1e-6);
    REQUIRE(r.sigma_values.size() == 2);
    CHECK(std::abs(r.sigma_values[0] - 0.01) <= 1e-6);
    CHECK(std::abs(r.sigma_values[1] - 0.01) <= 1e-6);
    CHECK(r.failure_prob == doctest::Approx(0.029701).epsilon(1e-9));
    CHECK(r.analytic_optimum == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(std::abs(r.failure_prob / r.analytic_optimum - 1.0) <= 1e-2);

    const CascadeResult tiny = optimize_double(1e-9);
    CHECK(tiny.sigma_values[0] == doctest::Approx(1e-3).epsilon(1e-4));
    CHECK(tiny.failure_prob == doctest::Approx(0.002997001).epsilon(1e-6));

    const CascadeResult loose = optimize_double(1e-3);
    CHECK(loose.sigma_values[0] == doctest::Approx(0.1).epsilon(1e-4));
    CHECK(loose.failure_prob == doctest::Approx(0.271).epsilon(1e-6));

    for (double eps = 1e-12; eps <= 1e-3; eps *= 1000.0) {
        const CascadeResult res = optimize_double(eps);
        CHECK(std::abs(res.sigma_values[0] / std::cbrt(eps) - 1.0) <= 1e-4);
        CHECK(std::abs(res.sigma_values[1] / std::cbrt(eps) - 1.0) <= 1e-4);
    }
}

TEST_CASE("two layers cost more than one at small eps") {
    for (double eps : {1e-12, 1e-9, 1e-6, 1e-4})
        CHECK(optimize_double(eps).failure_prob > optimize_single(eps).failure_prob);
}

TEST_CASE("single-layer curve is convex around the optimum") {
    const double eps = 1e-4;
    const double lo = std::sqrt(eps) * 0.1;
    double prev_slope = -1e9;
    for (double s = lo; s < 0.9; s *= 1.3) {
        const double slope =
            (failure_single(eps, s * 1.001) - failure_single(eps, s)) / (s * 0.001);
        CHECK(slope >= prev_slope - 1e-9);
        prev_slope = slope;
    }
}
