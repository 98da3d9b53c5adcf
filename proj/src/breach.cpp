#include "qkd/breach.hpp"

#include <algorithm>
#include <stdexcept>

namespace qkd {

namespace {

void check_pac_fits(const LinearCode& code, const Pac& pac) {
    if (!pac.is_identity()) {
        // Probe once; toeplitz_apply validates the length itself.
        const std::size_t probe = pac.out_len(code.k_info);
        (void)probe;
        BitWord test(code.k_info);
        (void)pac.apply(test);
    }
}

/// k = pac(l) as an integer index.
std::uint64_t pac_image(const Pac& pac, std::uint64_t l, std::size_t k_info) {
    return pac.apply(BitWord::from_uint(l, k_info)).to_uint();
}

}  // namespace

BreachEnsemble build_breach_ensemble(const LinearCode& code) {
    if (code.n_total > 20)
        throw std::domain_error("build_breach_ensemble: n_total > 20 exceeds desk scale");
    const std::uint64_t space = std::uint64_t{1} << code.n_total;

    BreachEnsemble e;
    e.code = code;
    e.group_of.assign(space, 0);
    e.groups.assign(std::size_t{1} << code.k_info, {});

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long s = 0; s < static_cast<long long>(space); ++s) {
        const auto dec = decode_nearest_serial(code, BitWord::from_uint(static_cast<std::uint64_t>(s), code.n_total));
        e.group_of[static_cast<std::size_t>(s)] = static_cast<std::uint32_t>(dec.info.to_uint());
    }
    for (std::uint64_t s = 0; s < space; ++s)
        e.groups[e.group_of[s]].push_back(static_cast<std::uint32_t>(s));
    return e;
}

GuessingChain guessing_chain(const BreachEnsemble& e, const Pac& pac) {
    check_pac_fits(e.code, pac);
    const double space = static_cast<double>(std::uint64_t{1} << e.code.n_total);

    GuessingChain chain;
    for (const auto& group : e.groups) {
        if (group.empty()) continue;
        const double p_y = static_cast<double>(group.size()) / space;
        // p(s|y) uniform over the region: the best guess of S has mass
        // 1/|group|; L is the region label itself and K its PAC image, so
        // both are pinned.
        chain.p1_s += p_y * (1.0 / static_cast<double>(group.size()));
        chain.p1_l += p_y * 1.0;
        chain.p1_k += p_y * 1.0;
    }
    return chain;
}

GuessingChain baseline_chain(const BreachEnsemble& e, const Pac& pac) {
    check_pac_fits(e.code, pac);
    const double space = static_cast<double>(std::uint64_t{1} << e.code.n_total);

    GuessingChain chain;
    chain.p1_s = 1.0 / space;

    double max_group = 0.0;
    for (const auto& group : e.groups)
        max_group = std::max(max_group, static_cast<double>(group.size()));
    chain.p1_l = max_group / space;

    // Push the L-marginal through the PAC and take the heaviest fiber.
    const std::size_t n_keys = std::size_t{1} << pac.out_len(e.code.k_info);
    std::vector<double> key_mass(n_keys, 0.0);
    for (std::uint64_t l = 0; l < e.groups.size(); ++l)
        key_mass[pac_image(pac, l, e.code.k_info)] +=
            static_cast<double>(e.groups[l].size()) / space;
    chain.p1_k = *std::max_element(key_mass.begin(), key_mass.end());
    return chain;
}

GuessingChain chain_for_channel(const LinearCode& code, const Pac& pac,
                                const std::vector<std::vector<double>>& p_y_given_s) {
    if (code.n_total > 12)
        throw std::domain_error("chain_for_channel: n_total > 12 exceeds the dense guard");
    check_pac_fits(code, pac);
    const std::uint64_t space = std::uint64_t{1} << code.n_total;
    if (p_y_given_s.size() != space)
        throw std::invalid_argument("chain_for_channel: one channel row per sequence required");
    const std::size_t n_obs = p_y_given_s.front().size();
    for (const auto& row : p_y_given_s)
        if (row.size() != n_obs)
            throw std::invalid_argument("chain_for_channel: ragged channel");

    // Deterministic maps s -> l -> k.
    std::vector<std::uint64_t> l_of(space), k_of(space);
    std::vector<std::uint64_t> pac_of_l(std::size_t{1} << code.k_info);
    for (std::uint64_t l = 0; l < pac_of_l.size(); ++l)
        pac_of_l[l] = pac_image(pac, l, code.k_info);
    for (std::uint64_t s = 0; s < space; ++s) {
        l_of[s] = decode_nearest_serial(code, BitWord::from_uint(s, code.n_total)).info.to_uint();
        k_of[s] = pac_of_l[l_of[s]];
    }
    const std::size_t n_l = pac_of_l.size();
    const std::size_t n_k = std::size_t{1} << pac.out_len(code.k_info);

    const double prior = 1.0 / static_cast<double>(space);
    GuessingChain chain;
    std::vector<double> mass_l(n_l), mass_k(n_k);
    for (std::size_t y = 0; y < n_obs; ++y) {
        // Unnormalized posterior p(s, y); the conditional max over a joint
        // slice divided by p(y) re-normalizes, so accumulate joint maxima.
        double max_s = 0.0;
        std::fill(mass_l.begin(), mass_l.end(), 0.0);
        std::fill(mass_k.begin(), mass_k.end(), 0.0);
        for (std::uint64_t s = 0; s < space; ++s) {
            const double joint = prior * p_y_given_s[s][y];
            max_s = std::max(max_s, joint);
            mass_l[l_of[s]] += joint;
            mass_k[k_of[s]] += joint;
        }
        chain.p1_s += max_s;
        chain.p1_l += *std::max_element(mass_l.begin(), mass_l.end());
        chain.p1_k += *std::max_element(mass_k.begin(), mass_k.end());
    }
    return chain;
}

}  // namespace qkd
