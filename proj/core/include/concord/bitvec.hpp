#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace concord {

// Bit-packed vector over GF(2), 64 bits per word. Bit i holds the label bit
// of qubit i. Rendered as text, position 0 is the leftmost character.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec unit(std::size_t n, std::size_t k) {
        BitVec v(n);
        v.set(k, true);
        return v;
    }
    static BitVec from_string(std::string_view bits);
    static BitVec from_hex(std::string_view hex, std::size_t n);
    static BitVec from_uint(std::size_t n, std::uint64_t bits);

    std::size_t size() const { return n_; }
    std::size_t num_words() const { return w_.size(); }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    BitVec& operator|=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }
    friend BitVec operator|(BitVec a, const BitVec& b) { a |= b; return a; }

    BitVec operator~() const {
        BitVec r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool any() const {
        for (std::uint64_t w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    // Parity of the GF(2) inner product <this, other>.
    bool parity_and(const BitVec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }

    // True when every set bit of *this is also set in mask.
    bool is_subset_of(const BitVec& mask) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~mask.w_[i]) return false;
        return true;
    }

    bool operator==(const BitVec&) const = default;

    // Calls f(i) for every set bit, ascending.
    template <typename F>
    void for_each_set(F f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                f(wi * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::string to_string() const;
    std::string to_hex() const;

    std::uint64_t to_uint() const;  // requires size() <= 64

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;

    void trim() {
        if (n_ & 63) w_.back() &= (std::uint64_t(1) << (n_ & 63)) - 1;
    }
};

}
