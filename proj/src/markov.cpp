#include "qkd/markov.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qkd {

namespace {

// Golden-section minimum of a unimodal f over [lo, hi] in log space;
// returns the abscissa once the bracket is below tol (relative).
double golden_min_log(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(lo), b = std::log(hi);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(std::exp(c)), fd = f(std::exp(d));
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(std::exp(d));
        }
    }
    return std::exp(0.5 * (a + b));
}

void check_eps_open(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("cascade optimum: eps must lie in (0, 1)");
}

}  // namespace

double markov_bound(double mean, double delta) {
    if (!(mean >= 0.0)) throw std::domain_error("markov_bound: mean must be >= 0");
    if (!(delta > 0.0)) throw std::domain_error("markov_bound: delta must be > 0");
    return std::min(mean / delta, 1.0);
}

double failure_single(double eps, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("failure_single: sigma must lie in (0, 1)");
    if (!(eps >= 0.0)) throw std::domain_error("failure_single: eps must be >= 0");
    if (eps > sigma) return 1.0;
    return sigma + eps / sigma - eps;
}

double failure_double(double eps, double sigma1, double sigma2) {
    if (!(sigma1 > 0.0 && sigma1 < 1.0) || !(sigma2 > 0.0 && sigma2 < 1.0))
        throw std::domain_error("failure_double: thresholds must lie in (0, 1)");
    if (!(eps >= 0.0)) throw std::domain_error("failure_double: eps must be >= 0");
    if (eps > sigma1 * sigma2) return 1.0;
    return 1.0 - (1.0 - sigma1) * (1.0 - sigma2) * (1.0 - eps / (sigma1 * sigma2));
}

CascadeResult optimize_single(double eps) {
    check_eps_open(eps);
    const double sigma = golden_min_log(
        [eps](double s) { return failure_single(eps, s); },
        eps * (1.0 + 1e-12), 1.0 - 1e-12, 1e-12);
    return CascadeResult{{sigma}, failure_single(eps, sigma), 2.0 * std::sqrt(eps)};
}

CascadeResult optimize_double(double eps) {
    check_eps_open(eps);
    // Symmetric diagonal first; the stationary point there is s^3 = eps.
    const double s_lo = std::sqrt(eps) * (1.0 + 1e-9);
    double s = golden_min_log(
        [eps](double v) { return failure_double(eps, v, v); },
        s_lo, 1.0 - 1e-12, 1e-12);
    double s1 = s, s2 = s;
    // Coordinate-descent polish; leaves a true symmetric optimum in place.
    for (int round = 0; round < 2; ++round) {
        s1 = golden_min_log(
            [eps, s2](double v) { return failure_double(eps, v, s2); },
            eps / s2 * (1.0 + 1e-9), 1.0 - 1e-12, 1e-12);
        s2 = golden_min_log(
            [eps, s1](double v) { return failure_double(eps, s1, v); },
            eps / s1 * (1.0 + 1e-9), 1.0 - 1e-12, 1e-12);
    }
    return CascadeResult{{s1, s2}, failure_double(eps, s1, s2), 3.0 * std::cbrt(eps)};
}

}  // namespace qkd
