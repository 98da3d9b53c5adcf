#include "qkd/gf2.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qkd/rng.hpp"

namespace qkd {

namespace {

std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// Parity check [P^T | I] matching a systematic generator [I | P].
std::vector<BitWord> parity_from_systematic(const std::vector<BitWord>& g,
                                            std::size_t n, std::size_t k) {
    std::vector<BitWord> h(n - k, BitWord(n));
    for (std::size_t r = 0; r < n - k; ++r) {
        for (std::size_t c = 0; c < k; ++c)
            h[r].set(c, g[c].get(k + r));
        h[r].set(k + r, true);
    }
    return h;
}

LinearCode assemble_systematic(std::vector<BitWord> g, std::size_t n, std::size_t k,
                               std::vector<std::size_t> perm) {
    LinearCode code;
    code.n_total = n;
    code.k_info = k;
    code.parity_check = parity_from_systematic(g, n, k);
    code.generator = std::move(g);
    code.systematic = true;
    code.col_perm = std::move(perm);
    return code;
}

}  // namespace

LinearCode hamming74() {
    // Parity block rows: 110, 101, 011, 111.
    const char* rows[4] = {"1000110", "0100101", "0010011", "0001111"};
    std::vector<BitWord> g;
    for (const char* r : rows) g.push_back(BitWord::from_string(r));
    return assemble_systematic(std::move(g), 7, 4, identity_perm(7));
}

LinearCode repetition_code(std::size_t n) {
    if (n == 0) throw std::invalid_argument("repetition_code: block length must be positive");
    BitWord row(n);
    for (std::size_t i = 0; i < n; ++i) row.set(i, true);
    return assemble_systematic({row}, n, 1, identity_perm(n));
}

LinearCode random_code(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k == 0 || k > n) throw std::invalid_argument("random_code: need 0 < k <= n");
    Prng rng(seed);
    std::vector<BitWord> g(k, BitWord(n));
    for (std::size_t r = 0; r < k; ++r) {
        g[r].set(r, true);
        for (std::size_t c = k; c < n; ++c) g[r].set(c, rng.bit());
    }
    return assemble_systematic(std::move(g), n, k, identity_perm(n));
}

LinearCode systematic_form(const std::vector<BitWord>& generator_rows) {
    if (generator_rows.empty())
        throw std::invalid_argument("systematic_form: empty generator");
    const std::size_t k = generator_rows.size();
    const std::size_t n = generator_rows.front().size();
    for (const auto& r : generator_rows)
        if (r.size() != n) throw std::invalid_argument("systematic_form: ragged generator");
    if (k > n) throw std::invalid_argument("systematic_form: more rows than columns");

    std::vector<BitWord> g = generator_rows;
    std::vector<std::size_t> perm = identity_perm(n);

    auto swap_columns = [&](std::size_t a, std::size_t b) {
        for (auto& row : g) {
            const bool ta = row.get(a), tb = row.get(b);
            row.set(a, tb);
            row.set(b, ta);
        }
        std::swap(perm[a], perm[b]);
    };

    for (std::size_t col = 0; col < k; ++col) {
        // Find a pivot for this column; pull one in from the right if needed.
        std::size_t pivot_row = k;
        std::size_t pivot_col = col;
        for (std::size_t c = col; c < n && pivot_row == k; ++c) {
            for (std::size_t r = col; r < k; ++r) {
                if (g[r].get(c)) {
                    pivot_row = r;
                    pivot_col = c;
                    break;
                }
            }
        }
        if (pivot_row == k)
            throw std::invalid_argument("systematic_form: generator is rank deficient");
        if (pivot_col != col) swap_columns(pivot_col, col);
        if (pivot_row != col) std::swap(g[pivot_row], g[col]);
        for (std::size_t r = 0; r < k; ++r)
            if (r != col && g[r].get(col)) g[r] ^= g[col];
    }
    return assemble_systematic(std::move(g), n, k, std::move(perm));
}

BitWord encode(const LinearCode& code, const BitWord& info) {
    if (info.size() != code.k_info)
        throw std::invalid_argument("encode: info length must equal k_info");
    BitWord out(code.n_total);
    for (std::size_t r = 0; r < code.k_info; ++r)
        if (info.get(r)) out ^= code.generator[r];
    return out;
}

BitWord syndrome(const LinearCode& code, const BitWord& word) {
    if (word.size() != code.n_total)
        throw std::invalid_argument("syndrome: word length must equal n_total");
    BitWord out(code.parity_check.size());
    for (std::size_t r = 0; r < code.parity_check.size(); ++r)
        out.set(r, word.dot(code.parity_check[r]));
    return out;
}

namespace {

struct Candidate {
    std::size_t weight;
    BitWord codeword;
    std::uint64_t info;
    bool valid = false;

    bool better_than(const Candidate& o) const {
        if (!o.valid) return true;
        if (weight != o.weight) return weight < o.weight;
        return codeword.lex_compare(o.codeword) < 0;
    }
};

/// Scan info indices [begin, end) in Gray order against `word`, returning
/// the best candidate of the range.
Candidate scan_range(const LinearCode& code, const BitWord& word,
                     std::uint64_t begin, std::uint64_t end) {
    Candidate best;
    std::uint64_t gray = begin ^ (begin >> 1);
    BitWord cw = encode(code, BitWord::from_uint(gray, code.k_info));
    for (std::uint64_t i = begin; i < end; ++i) {
        Candidate cand{hamming_distance(cw, word), cw, gray, true};
        if (cand.better_than(best)) best = cand;
        if (i + 1 < end) {
            const std::uint64_t next_gray = (i + 1) ^ ((i + 1) >> 1);
            const int changed = std::countr_zero(gray ^ next_gray);
            cw ^= code.generator[static_cast<std::size_t>(changed)];
            gray = next_gray;
        }
    }
    return best;
}

DecodeResult result_from(const LinearCode& code, Candidate best) {
    DecodeResult res;
    res.info = BitWord::from_uint(best.info, code.k_info);
    res.corrected = std::move(best.codeword);
    res.error_weight = best.weight;
    return res;
}

void check_decode_scale(const LinearCode& code) {
    if (code.n_total > 24 && code.k_info > 20)
        throw std::domain_error("decode_nearest: code too large for exhaustive decoding");
}

}  // namespace

DecodeResult decode_nearest_serial(const LinearCode& code, const BitWord& word) {
    check_decode_scale(code);
    if (word.size() != code.n_total)
        throw std::invalid_argument("decode_nearest: word length must equal n_total");
    return result_from(code, scan_range(code, word, 0, std::uint64_t{1} << code.k_info));
}

DecodeResult decode_nearest(const LinearCode& code, const BitWord& word) {
    check_decode_scale(code);
    if (word.size() != code.n_total)
        throw std::invalid_argument("decode_nearest: word length must equal n_total");
    const std::uint64_t total = std::uint64_t{1} << code.k_info;
#ifdef _OPENMP
    if (total >= 4096) {
        const int chunks = 64;
        const std::uint64_t step = (total + chunks - 1) / chunks;
        std::vector<Candidate> bests(chunks);
#pragma omp parallel for schedule(dynamic)
        for (int c = 0; c < chunks; ++c) {
            const std::uint64_t lo = step * static_cast<std::uint64_t>(c);
            const std::uint64_t hi = std::min(total, lo + step);
            if (lo < hi) bests[c] = scan_range(code, word, lo, hi);
        }
        Candidate best;
        for (const auto& b : bests)
            if (b.valid && b.better_than(best)) best = b;
        return result_from(code, best);
    }
#endif
    return result_from(code, scan_range(code, word, 0, total));
}

ToeplitzHash make_toeplitz(std::size_t n_in, std::size_t n_out, const BitWord& seed) {
    if (n_out > n_in) throw std::invalid_argument("make_toeplitz: n_out must be <= n_in");
    if (n_in == 0) throw std::invalid_argument("make_toeplitz: empty input space");
    if (seed.size() != n_in + n_out - 1)
        throw std::invalid_argument("make_toeplitz: seed must have n_in + n_out - 1 bits");
    return ToeplitzHash{n_in, n_out, seed};
}

ToeplitzHash make_toeplitz(std::size_t n_in, std::size_t n_out, Prng& rng) {
    if (n_out > n_in) throw std::invalid_argument("make_toeplitz: n_out must be <= n_in");
    if (n_in == 0) throw std::invalid_argument("make_toeplitz: empty input space");
    BitWord seed(n_in + n_out - 1);
    for (std::size_t i = 0; i < seed.size(); ++i) seed.set(i, rng.bit());
    return ToeplitzHash{n_in, n_out, seed};
}

BitWord toeplitz_apply_serial(const ToeplitzHash& h, const BitWord& input) {
    if (input.size() != h.n_in)
        throw std::invalid_argument("toeplitz_apply: input length must equal n_in");
    BitWord out(h.n_out);
    for (std::size_t j = 0; j < h.n_out; ++j) {
        bool acc = false;
        for (std::size_t i = 0; i < h.n_in; ++i)
            acc ^= h.seed.get(j + h.n_in - 1 - i) && input.get(i);
        out.set(j, acc);
    }
    return out;
}

BitWord toeplitz_apply(const ToeplitzHash& h, const BitWord& input) {
    if (input.size() != h.n_in)
        throw std::invalid_argument("toeplitz_apply: input length must equal n_in");
    if (h.n_out == 0) return BitWord(0);

    // Row j reads seed positions j + n_in - 1 down to j; with the seed
    // reversed that is the window starting at n_out - 1 - j, so the whole
    // product is a packed sliding correlation.
    BitWord rev(h.seed.size());
    for (std::size_t i = 0; i < h.seed.size(); ++i)
        rev.set(i, h.seed.get(h.seed.size() - 1 - i));

    const std::uint64_t* rw = rev.data();
    const std::size_t rev_words = rev.word_count();
    const std::size_t in_words = input.word_count();
    BitWord out(h.n_out);

    auto row_parity = [&](std::size_t j) -> bool {
        const std::size_t off = h.n_out - 1 - j;
        const std::size_t wo = off >> 6;
        const unsigned sh = static_cast<unsigned>(off & 63);
        std::uint64_t acc = 0;
        for (std::size_t t = 0; t < in_words; ++t) {
            std::uint64_t win = rw[wo + t] >> sh;
            if (sh != 0 && wo + t + 1 < rev_words)
                win |= rw[wo + t + 1] << (64 - sh);
            acc ^= win & input.word(t);
        }
        return std::popcount(acc) & 1;
    };

#ifdef _OPENMP
    if (h.n_out >= 256 && h.n_in >= 1024) {
        std::vector<unsigned char> bits(h.n_out);
#pragma omp parallel for schedule(static)
        for (long long j = 0; j < static_cast<long long>(h.n_out); ++j)
            bits[static_cast<std::size_t>(j)] = row_parity(static_cast<std::size_t>(j));
        for (std::size_t j = 0; j < h.n_out; ++j) out.set(j, bits[j] != 0);
        return out;
    }
#endif
    for (std::size_t j = 0; j < h.n_out; ++j) out.set(j, row_parity(j));
    return out;
}

}  // namespace qkd
