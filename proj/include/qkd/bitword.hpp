#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace qkd {

/// Fixed-length bit sequence packed into 64-bit words, bit i of the sequence
/// at word i/64, lane i%64. Position 0 is the leftmost bit of the string
/// form and the most significant position for lexicographic comparison.
class BitWord {
public:
    BitWord() = default;
    explicit BitWord(std::size_t n_bits) : n_(n_bits), w_((n_bits + 63) / 64, 0) {}

    static BitWord from_string(std::string_view bits);

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitWord& operator^=(const BitWord& o);
    friend BitWord operator^(BitWord a, const BitWord& b) { a ^= b; return a; }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Parity of the AND with another word of the same length.
    bool dot(const BitWord& o) const;

    std::size_t word_count() const { return w_.size(); }
    std::uint64_t word(std::size_t i) const { return w_[i]; }
    std::uint64_t* data() { return w_.data(); }
    const std::uint64_t* data() const { return w_.data(); }

    /// First n bits as an integer, bit 0 least significant. Requires n <= 64.
    std::uint64_t to_uint() const { return n_ == 0 ? 0 : w_[0]; }
    /// Word of n bits from the low bits of v.
    static BitWord from_uint(std::uint64_t v, std::size_t n_bits);

    BitWord prefix(std::size_t n_bits) const;
    void append(const BitWord& o);

    std::string to_string() const;

    bool operator==(const BitWord& o) const { return n_ == o.n_ && w_ == o.w_; }

    /// Lexicographic order with position 0 most significant: negative when
    /// *this precedes o. Requires equal lengths.
    int lex_compare(const BitWord& o) const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Number of positions where two equal-length words differ.
std::size_t hamming_distance(const BitWord& a, const BitWord& b);

}  // namespace qkd
