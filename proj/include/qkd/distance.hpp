#pragma once

#include <cstddef>
#include <vector>

namespace qkd {

/// Finite probability vector over outcome indices. Entries must be
/// nonnegative and sum to 1 within 1e-12.
class Distribution {
public:
    explicit Distribution(std::vector<double> probs);

    static Distribution uniform(std::size_t n);
    static Distribution point_mass(std::size_t n, std::size_t index);
    /// Normalize arbitrary nonnegative weights (at least one positive).
    static Distribution normalized(std::vector<double> weights);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

private:
    struct Unchecked {};
    Distribution(std::vector<double> probs, Unchecked) : probs_(std::move(probs)) {}
    std::vector<double> probs_;
};

/// Half the L1 distance between two distributions on the same outcome space.
double variational_distance(const Distribution& p, const Distribution& q);

/// The half-elevated, half-depressed distribution: first half of the
/// outcomes at (1+2*eps)/N, second half at (1-2*eps)/N, so that its
/// variational distance to uniform is exactly eps. Every outcome deviates
/// from 1/N whenever eps > 0. Requires even n_outcomes and eps in [0, 0.5].
Distribution skewed_pair(std::size_t n_outcomes, double eps);

/// One outcome elevated to 1/N + d, the rest sharing the remainder evenly.
/// Attains the guessing-probability bound 1/N + d with equality.
Distribution peaked_distribution(std::size_t n_outcomes, double d);

/// Largest single-outcome probability.
double guessing_prob(const Distribution& p);

/// Marginal over adversary observations plus one conditional key
/// distribution per observation; all conditionals share the same key space.
class CondEnsemble {
public:
    CondEnsemble(Distribution y_marginal, std::vector<Distribution> conditionals);

    const Distribution& y_marginal() const { return y_marginal_; }
    const std::vector<Distribution>& conditionals() const { return conditionals_; }
    std::size_t n_keys() const { return conditionals_.front().size(); }

private:
    Distribution y_marginal_;
    std::vector<Distribution> conditionals_;
};

/// Observation-averaged optimal guessing probability
/// sum_y p(y) * max_k p(k|y).
double ensemble_guessing_prob(const CondEnsemble& e);

/// Observation-averaged variational distance to the uniform key,
/// sum_y p(y) * v(p(.|y), U).
double ensemble_distance_to_uniform(const CondEnsemble& e);

/// Slack in the bound p1 <= 1/N + d: returns
/// (1/N + ensemble_distance_to_uniform) - ensemble_guessing_prob.
/// Nonnegative (within 1e-12) for every ensemble.
double guessing_bound_gap(const CondEnsemble& e);

/// Lower bound on the distance to uniform implied by a guessing
/// probability: p1_bar - 1/n_keys. Rejects p1_bar below 1/n_keys.
double d_lower_bound(double p1_bar, std::size_t n_keys);

/// Individual guessing-probability guarantee obtainable from an average
/// distance level: d^(1/3) + 1/n_keys, capped at 1.
double operational_guarantee(double d_avg, std::size_t n_keys);

}  // namespace qkd
