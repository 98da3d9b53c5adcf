#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qkd/gf2.hpp"

namespace qkd {

/// Privacy-amplification map applied to the corrected key in the guessing
/// chain: either the identity or a Toeplitz hash.
class Pac {
public:
    static Pac identity() { return Pac{}; }
    static Pac toeplitz(ToeplitzHash h) { Pac p; p.hash_ = std::move(h); return p; }

    bool is_identity() const { return !hash_.has_value(); }
    std::size_t out_len(std::size_t in_len) const {
        return hash_ ? hash_->n_out : in_len;
    }
    BitWord apply(const BitWord& in) const {
        return hash_ ? toeplitz_apply(*hash_, in) : in;
    }

private:
    std::optional<ToeplitzHash> hash_;
};

/// Partition of the 2^n_total sequences into the code's decoding regions.
/// The adversary's observation is the region index, which equals the decoded
/// information word; conditioned on it, the sifted key is uniform over the
/// region.
struct BreachEnsemble {
    LinearCode code;
    /// group_of[s] = decoded information word of sequence s, as an integer.
    std::vector<std::uint32_t> group_of;
    /// groups[l] = the sequences decoding to information word l.
    std::vector<std::vector<std::uint32_t>> groups;
};

/// Enumerate every length-n sequence and assign it to its decoding region.
/// Guarded to n_total <= 20. Region boundaries follow decode_nearest
/// exactly, including its tie-breaking.
BreachEnsemble build_breach_ensemble(const LinearCode& code);

/// Optimal average probabilities of guessing the sifted key S, the corrected
/// key L and the generated key K from one observation.
struct GuessingChain {
    double p1_s = 0.0;
    double p1_l = 0.0;
    double p1_k = 0.0;
};

/// Chain for the partition observation: the region index pins L (and hence
/// K) exactly, while S stays spread over the region. Requires the PAC input
/// length to equal k_info.
GuessingChain guessing_chain(const BreachEnsemble& e, const Pac& pac);

/// Control case with the observation independent of S: one trivial
/// observation with S uniform over all sequences. Shows the compromise comes
/// from the code-aligned observation, not from compression itself.
GuessingChain baseline_chain(const BreachEnsemble& e, const Pac& pac);

/// Chain for an arbitrary finite observation channel p(y|s) over the full
/// sequence space (s uniform a priori). Dense computation, guarded to
/// n_total <= 12; used by the randomized property checks.
GuessingChain chain_for_channel(const LinearCode& code, const Pac& pac,
                                const std::vector<std::vector<double>>& p_y_given_s);

}  // namespace qkd
