#pragma once

#include <vector>

namespace qkd {

/// Result of a failure-probability minimization over one or two Markov
/// thresholds. failure_prob is the exact functional value at the numeric
/// optimum; analytic_optimum is the small-eps closed form (2*sqrt(eps) for
/// one layer, 3*cbrt(eps) for two).
struct CascadeResult {
    std::vector<double> sigma_values;
    double failure_prob = 0.0;
    double analytic_optimum = 0.0;
};

/// Markov inequality: Pr[X >= delta] <= mean/delta, capped at 1.
double markov_bound(double mean, double delta);

/// Failure probability with one guarantee layer at threshold sigma:
/// sigma + eps/sigma - eps, capped at 1 when eps > sigma.
double failure_single(double eps, double sigma);

/// Failure probability with two independent guarantee layers:
/// 1 - (1-sigma1)(1-sigma2)(1 - eps/(sigma1*sigma2)), capped at 1 when
/// eps > sigma1*sigma2.
double failure_double(double eps, double sigma1, double sigma2);

/// Numeric minimization of failure_single over sigma in (eps, 1).
/// The argmin is sqrt(eps) exactly; the numeric answer lands within 1e-6
/// relative of it and serves as an independent check.
CascadeResult optimize_single(double eps);

/// Numeric minimization of failure_double. The symmetric stationary point is
/// sigma1 = sigma2 = eps^(1/3) exactly; located by golden section along the
/// diagonal plus coordinate-descent polish.
CascadeResult optimize_double(double eps);

}  // namespace qkd
