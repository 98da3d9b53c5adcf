#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qkd/distance.hpp"
#include "qkd/rng.hpp"

namespace qkd::testing {

/// Dirichlet(1,...,1)-style random distribution: normalized exponentials.
inline Distribution random_distribution(Prng& rng, std::size_t n) {
    std::vector<double> w(n);
    for (double& v : w) v = -std::log(1.0 - rng.uniform());
    return Distribution::normalized(std::move(w));
}

/// Random ensemble with 2..max_n key values and 1..max_y observations.
inline CondEnsemble random_ensemble(Prng& rng, std::size_t max_n, std::size_t max_y) {
    const std::size_t n = 2 + rng.below(max_n - 1);
    const std::size_t ny = 1 + rng.below(max_y);
    std::vector<Distribution> conds;
    conds.reserve(ny);
    for (std::size_t y = 0; y < ny; ++y) conds.push_back(random_distribution(rng, n));
    return CondEnsemble(random_distribution(rng, ny), std::move(conds));
}

/// Random observation channel p(y|s) over n_s sequences and n_y outcomes.
inline std::vector<std::vector<double>> random_channel(Prng& rng, std::size_t n_s,
                                                       std::size_t n_y) {
    std::vector<std::vector<double>> rows;
    rows.reserve(n_s);
    for (std::size_t s = 0; s < n_s; ++s)
        rows.push_back(random_distribution(rng, n_y).probs());
    return rows;
}

}  // namespace qkd::testing
