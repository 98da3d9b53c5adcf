#include "qkd/bitword.hpp"

#include <stdexcept>

namespace qkd {

BitWord BitWord::from_string(std::string_view bits) {
    BitWord out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') out.set(i, true);
        else if (bits[i] != '0') throw std::invalid_argument("BitWord: expected only 0/1");
    }
    return out;
}

BitWord BitWord::from_uint(std::uint64_t v, std::size_t n_bits) {
    if (n_bits > 64) throw std::invalid_argument("BitWord::from_uint: more than 64 bits");
    BitWord out(n_bits);
    if (n_bits > 0) out.w_[0] = n_bits == 64 ? v : (v & ((std::uint64_t{1} << n_bits) - 1));
    return out;
}

BitWord& BitWord::operator^=(const BitWord& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitWord: xor of mismatched lengths");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitWord::dot(const BitWord& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitWord: dot of mismatched lengths");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

BitWord BitWord::prefix(std::size_t n_bits) const {
    if (n_bits > n_) throw std::invalid_argument("BitWord: prefix longer than word");
    BitWord out(n_bits);
    for (std::size_t i = 0; i < out.w_.size(); ++i) out.w_[i] = w_[i];
    const std::size_t tail = n_bits & 63;
    if (n_bits > 0 && tail != 0)
        out.w_.back() &= (std::uint64_t{1} << tail) - 1;
    return out;
}

void BitWord::append(const BitWord& o) {
    const std::size_t base = n_;
    n_ += o.n_;
    w_.resize((n_ + 63) / 64, 0);
    for (std::size_t i = 0; i < o.n_; ++i)
        if (o.get(i)) set(base + i, true);
}

std::string BitWord::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

int BitWord::lex_compare(const BitWord& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitWord: lex compare of mismatched lengths");
    for (std::size_t i = 0; i < w_.size(); ++i) {
        const std::uint64_t diff = w_[i] ^ o.w_[i];
        if (diff != 0) {
            // Lowest set lane is the earliest differing position.
            const int lane = std::countr_zero(diff);
            return ((w_[i] >> lane) & 1u) ? 1 : -1;
        }
    }
    return 0;
}

std::size_t hamming_distance(const BitWord& a, const BitWord& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: mismatched lengths");
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.word_count(); ++i)
        c += static_cast<std::size_t>(std::popcount(a.word(i) ^ b.word(i)));
    return c;
}

}  // namespace qkd
