#include "qkd/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qkd/entropy.hpp"
#include "qkd/rng.hpp"

namespace qkd {

namespace {

std::uint64_t fnv1a64(const BitWord& w) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::size_t i = 0; i < w.word_count(); ++i) {
        std::uint64_t v = w.word(i);
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    }
    return h ^ w.size();
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void validate(const ProtocolConfig& c) {
    if (c.raw_len < 64) throw std::invalid_argument("run_protocol: raw_len must be >= 64");
    if (!(c.qber >= 0.0 && c.qber < 0.5))
        throw std::invalid_argument("run_protocol: qber must lie in [0, 0.5)");
    if (!(c.check_fraction > 0.0 && c.check_fraction < 1.0))
        throw std::invalid_argument("run_protocol: check_fraction must lie in (0, 1)");
    if (c.mu < 0.0) throw std::invalid_argument("run_protocol: mu must be >= 0");
}

}  // namespace

CodeSpec CodeSpec::parse(const std::string& text) {
    if (text == "hamming74") return hamming();
    if (text == "ideal") return ideal();
    if (text.rfind("repetition", 0) == 0) {
        const std::string tail = text.substr(10);
        const std::size_t n = std::stoul(tail[0] == ':' ? tail.substr(1) : tail);
        return repetition(n);
    }
    if (text.rfind("random:", 0) == 0) {
        std::size_t n = 0, k = 0;
        unsigned long long seed = 0;
        if (std::sscanf(text.c_str(), "random:%zu:%zu:%llu", &n, &k, &seed) != 3)
            throw std::invalid_argument("code spec: expected random:<n>:<k>:<seed>");
        return random(n, k, seed);
    }
    throw std::invalid_argument("code spec: unknown code '" + text + "'");
}

std::string CodeSpec::to_string() const {
    switch (kind) {
        case Kind::hamming74: return "hamming74";
        case Kind::repetition: return "repetition" + std::to_string(n);
        case Kind::random:
            return "random:" + std::to_string(n) + ":" + std::to_string(k) + ":" +
                   std::to_string(seed);
        case Kind::ideal: return "ideal";
    }
    return "?";
}

IdealCode ideal_code_oracle(double qber) {
    const double h = binary_entropy(qber);
    if (h >= 1.0) throw std::domain_error("ideal_code_oracle: h(q) = 1 leaves no rate");
    return IdealCode{qber, 1.0 - h};
}

ProtocolReport run_protocol(const ProtocolConfig& config) {
    validate(config);
    Prng rng(config.rng_seed);

    // (1) Sifting: each transmitted bit survives basis matching with
    // probability 1/2; A's kept bits are fair coin flips.
    std::vector<unsigned char> alice;
    alice.reserve(static_cast<std::size_t>(config.raw_len) / 2 + 64);
    for (std::int64_t i = 0; i < config.raw_len; ++i) {
        const bool kept = rng.bernoulli(0.5);
        const bool value = rng.bit();
        if (kept) alice.push_back(value);
    }
    const std::int64_t sifted = static_cast<std::int64_t>(alice.size());

    // (2) Collective attack channel: memoryless BSC on B's sifted bits.
    std::vector<unsigned char> bob(alice.begin(), alice.end());
    for (auto& b : bob)
        if (rng.bernoulli(config.qber)) b ^= 1;

    // (3) Disturbance check on a sacrificed prefix.
    const std::int64_t check_n =
        std::max<std::int64_t>(1, std::llround(config.check_fraction * static_cast<double>(sifted)));
    if (check_n >= sifted) throw std::domain_error("run_protocol: degenerate sift (no key bits left)");
    std::int64_t disagreements = 0;
    for (std::int64_t i = 0; i < check_n; ++i)
        if (alice[static_cast<std::size_t>(i)] != bob[static_cast<std::size_t>(i)]) ++disagreements;
    const double measured_qber = static_cast<double>(disagreements) / static_cast<double>(check_n);

    const std::int64_t post_check = sifted - check_n;

    // (4) Error correction.
    ProtocolReport rep;
    rep.config = config;
    bool correction_ok = true;
    std::int64_t pad_bits = 0;
    std::int64_t corrected_len = 0;
    BitWord corrected;

    if (config.code.kind == CodeSpec::Kind::ideal) {
        const IdealCode ideal = ideal_code_oracle(config.qber);
        rep.code_rate = ideal.rate;
        corrected_len = post_check;
        corrected = BitWord(static_cast<std::size_t>(corrected_len));
        for (std::int64_t i = 0; i < corrected_len; ++i)
            corrected.set(static_cast<std::size_t>(i), alice[static_cast<std::size_t>(check_n + i)] != 0);
        const double parity = static_cast<double>(corrected_len) * (1.0 / ideal.rate - 1.0);
        if (config.ecc_mode == EccMode::padded)
            pad_bits = static_cast<std::int64_t>(std::ceil(parity));
    } else {
        LinearCode code;
        switch (config.code.kind) {
            case CodeSpec::Kind::hamming74: code = hamming74(); break;
            case CodeSpec::Kind::repetition: code = repetition_code(config.code.n); break;
            case CodeSpec::Kind::random:
                code = random_code(config.code.n, config.code.k, config.code.seed);
                break;
            default: break;
        }
        rep.code_rate = code.rate();
        const std::int64_t blocks = post_check / static_cast<std::int64_t>(code.k_info);
        if (blocks < 1) throw std::domain_error("run_protocol: degenerate sift (< 1 code block)");
        corrected_len = blocks * static_cast<std::int64_t>(code.k_info);
        // Remainder bits past the last whole block are discarded.

        const std::size_t parity_len = code.n_total - code.k_info;
        if (config.ecc_mode == EccMode::padded)
            pad_bits = blocks * static_cast<std::int64_t>(parity_len);

        std::vector<unsigned char> block_ok(static_cast<std::size_t>(blocks), 0);
        std::vector<unsigned char> decoded(static_cast<std::size_t>(corrected_len), 0);
        std::exception_ptr block_error;

        // A transmits the parity bits of her systematic codeword per block
        // (padded or in the clear depending on mode); B decodes his noisy
        // info bits against her exact parity. Blocks are independent; each
        // thread writes only its own byte range of `decoded`. Exceptions
        // must not escape the parallel region.
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long blk = 0; blk < static_cast<long long>(blocks); ++blk) {
            try {
                const std::size_t base = static_cast<std::size_t>(check_n) +
                                         static_cast<std::size_t>(blk) * code.k_info;
                BitWord a_info(code.k_info);
                BitWord b_word(code.n_total);
                for (std::size_t i = 0; i < code.k_info; ++i) {
                    a_info.set(i, alice[base + i] != 0);
                    b_word.set(i, bob[base + i] != 0);
                }
                const BitWord a_code = encode(code, a_info);
                for (std::size_t i = code.k_info; i < code.n_total; ++i)
                    b_word.set(i, a_code.get(i));
                const DecodeResult dec = decode_nearest_serial(code, b_word);
                block_ok[static_cast<std::size_t>(blk)] = (dec.info == a_info);
                for (std::size_t i = 0; i < code.k_info; ++i)
                    decoded[static_cast<std::size_t>(blk) * code.k_info + i] = dec.info.get(i);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!block_error) block_error = std::current_exception();
            }
        }
        if (block_error) std::rethrow_exception(block_error);
        for (unsigned char ok : block_ok) correction_ok = correction_ok && ok != 0;

        corrected = BitWord(static_cast<std::size_t>(corrected_len));
        for (std::size_t i = 0; i < decoded.size(); ++i)
            if (decoded[i]) corrected.set(i, true);
    }

    // (5) Privacy amplification down to floor(|S'| (1 - h(q_meas + mu)) / 7).
    const double q_eff = measured_qber + config.mu;
    std::int64_t key_bits = 0;
    if (q_eff < 0.5) {
        const double h_min = static_cast<double>(corrected_len) * (1.0 - binary_entropy(q_eff));
        key_bits = static_cast<std::int64_t>(std::floor(h_min / 7.0));
    }
    BitWord final_key(0);
    if (key_bits > 0) {
        const ToeplitzHash pac = make_toeplitz(static_cast<std::size_t>(corrected_len),
                                               static_cast<std::size_t>(key_bits), rng);
        final_key = toeplitz_apply(pac, corrected);
    }

    // (6) Ledger.
    rep.ledger.sifted_bits = sifted;
    rep.ledger.check_bits_spent = check_n;
    rep.ledger.pad_bits_spent = pad_bits;
    rep.ledger.key_bits_generated = key_bits;
    rep.ledger.net_bits = key_bits - pad_bits - check_n;

    rep.measured_qber = measured_qber;
    rep.correction_ok = correction_ok;
    rep.feasibility_prediction =
        net_key_feasible(Qber(config.qber), CodeRate(rep.code_rate));
    if (config.ecc_mode == EccMode::syndrome)
        rep.mode_warning = "parity bits disclosed unpadded; their leak is not charged to the ledger";
    rep.corrected_len = corrected_len;
    rep.key_fingerprint = hex64(fnv1a64(final_key));
    return rep;
}

std::vector<ProtocolReport> sweep_serial(const SweepSpec& spec) {
    if (spec.qbers.empty() || spec.codes.empty() || spec.modes.empty())
        throw std::invalid_argument("sweep: empty grid");
    std::vector<ProtocolReport> out;
    out.reserve(spec.qbers.size() * spec.codes.size() * spec.modes.size());
    std::uint64_t index = 0;
    for (double q : spec.qbers)
        for (const CodeSpec& code : spec.codes)
            for (EccMode mode : spec.modes) {
                ProtocolConfig c;
                c.raw_len = spec.raw_len;
                c.qber = q;
                c.check_fraction = spec.check_fraction;
                c.code = code;
                c.ecc_mode = mode;
                c.mu = spec.mu;
                c.rng_seed = derive_seed(spec.base_seed, index++);
                out.push_back(run_protocol(c));
            }
    return out;
}

std::vector<ProtocolReport> sweep(const SweepSpec& spec) {
    if (spec.qbers.empty() || spec.codes.empty() || spec.modes.empty())
        throw std::invalid_argument("sweep: empty grid");
#ifdef _OPENMP
    const std::size_t total = spec.qbers.size() * spec.codes.size() * spec.modes.size();
    std::vector<ProtocolConfig> configs;
    configs.reserve(total);
    std::uint64_t index = 0;
    for (double q : spec.qbers)
        for (const CodeSpec& code : spec.codes)
            for (EccMode mode : spec.modes) {
                ProtocolConfig c;
                c.raw_len = spec.raw_len;
                c.qber = q;
                c.check_fraction = spec.check_fraction;
                c.code = code;
                c.ecc_mode = mode;
                c.mu = spec.mu;
                c.rng_seed = derive_seed(spec.base_seed, index++);
                configs.push_back(c);
            }
    std::vector<ProtocolReport> out(total);
    std::exception_ptr run_error;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(total); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = run_protocol(configs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!run_error) run_error = std::current_exception();
        }
    }
    if (run_error) std::rethrow_exception(run_error);
    return out;
#else
    return sweep_serial(spec);
#endif
}

}  // namespace qkd
