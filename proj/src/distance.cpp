#include "qkd/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkd {

namespace {

void check_probs(const std::vector<double>& p) {
    if (p.empty()) throw std::invalid_argument("Distribution: empty outcome space");
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw std::invalid_argument("Distribution: negative entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("Distribution: entries must sum to 1");
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    check_probs(probs_);
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Distribution: empty outcome space");
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)), Unchecked{});
}

Distribution Distribution::point_mass(std::size_t n, std::size_t index) {
    if (index >= n) throw std::invalid_argument("Distribution: point mass out of range");
    std::vector<double> p(n, 0.0);
    p[index] = 1.0;
    return Distribution(std::move(p), Unchecked{});
}

Distribution Distribution::normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("Distribution: negative weight");
        sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("Distribution: all weights zero");
    for (double& w : weights) w /= sum;
    return Distribution(std::move(weights), Unchecked{});
}

double variational_distance(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("variational_distance: mismatched outcome spaces");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

Distribution skewed_pair(std::size_t n_outcomes, double eps) {
    if (n_outcomes == 0 || n_outcomes % 2 != 0)
        throw std::invalid_argument("skewed_pair: outcome count must be even and positive");
    if (!(eps >= 0.0 && eps <= 0.5))
        throw std::domain_error("skewed_pair: eps must lie in [0, 0.5]");
    const double n = static_cast<double>(n_outcomes);
    std::vector<double> p(n_outcomes);
    for (std::size_t i = 0; i < n_outcomes / 2; ++i) p[i] = (1.0 + 2.0 * eps) / n;
    for (std::size_t i = n_outcomes / 2; i < n_outcomes; ++i) p[i] = (1.0 - 2.0 * eps) / n;
    return Distribution(std::move(p));
}

Distribution peaked_distribution(std::size_t n_outcomes, double d) {
    if (n_outcomes < 2) throw std::invalid_argument("peaked_distribution: need at least 2 outcomes");
    const double n = static_cast<double>(n_outcomes);
    if (!(d >= 0.0 && d <= 1.0 - 1.0 / n))
        throw std::domain_error("peaked_distribution: d must lie in [0, 1 - 1/N]");
    std::vector<double> p(n_outcomes, (1.0 - (1.0 / n + d)) / (n - 1.0));
    p[0] = 1.0 / n + d;
    return Distribution(std::move(p));
}

double guessing_prob(const Distribution& p) {
    return *std::max_element(p.probs().begin(), p.probs().end());
}

CondEnsemble::CondEnsemble(Distribution y_marginal, std::vector<Distribution> conditionals)
    : y_marginal_(std::move(y_marginal)), conditionals_(std::move(conditionals)) {
    if (conditionals_.size() != y_marginal_.size())
        throw std::invalid_argument("CondEnsemble: one conditional per observation required");
    for (const auto& c : conditionals_)
        if (c.size() != conditionals_.front().size())
            throw std::invalid_argument("CondEnsemble: conditionals must share one key space");
}

double ensemble_guessing_prob(const CondEnsemble& e) {
    double acc = 0.0;
    for (std::size_t y = 0; y < e.y_marginal().size(); ++y)
        acc += e.y_marginal()[y] * guessing_prob(e.conditionals()[y]);
    return acc;
}

double ensemble_distance_to_uniform(const CondEnsemble& e) {
    const Distribution u = Distribution::uniform(e.n_keys());
    double acc = 0.0;
    for (std::size_t y = 0; y < e.y_marginal().size(); ++y)
        acc += e.y_marginal()[y] * variational_distance(e.conditionals()[y], u);
    return acc;
}

double guessing_bound_gap(const CondEnsemble& e) {
    const double n = static_cast<double>(e.n_keys());
    return (1.0 / n + ensemble_distance_to_uniform(e)) - ensemble_guessing_prob(e);
}

double d_lower_bound(double p1_bar, std::size_t n_keys) {
    if (n_keys == 0) throw std::invalid_argument("d_lower_bound: empty key space");
    const double floor_prob = 1.0 / static_cast<double>(n_keys);
    if (!(p1_bar >= floor_prob && p1_bar <= 1.0))
        throw std::domain_error("d_lower_bound: guessing probability must lie in [1/N, 1]");
    return p1_bar - floor_prob;
}

double operational_guarantee(double d_avg, std::size_t n_keys) {
    if (n_keys == 0) throw std::invalid_argument("operational_guarantee: empty key space");
    if (!(d_avg >= 0.0 && d_avg <= 1.0))
        throw std::domain_error("operational_guarantee: d must lie in [0, 1]");
    return std::min(1.0, std::cbrt(d_avg) + 1.0 / static_cast<double>(n_keys));
}

}  // namespace qkd
