#include "concord/bitvec.hpp"

#include <stdexcept>

namespace concord {

BitVec BitVec::from_string(std::string_view bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i, true);
        else if (bits[i] != '0') throw std::invalid_argument("bit string must contain only 0/1");
    }
    return v;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

// Byte 0 covers bits 0..7 (bit 0 is the byte's LSB); two uppercase-free hex
// chars per byte, high nibble first.
std::string BitVec::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t nbytes = (n_ + 7) / 8;
    std::string s;
    s.reserve(2 * nbytes);
    for (std::size_t b = 0; b < nbytes; ++b) {
        unsigned byte = (w_[b >> 3] >> ((b & 7) * 8)) & 0xff;
        s.push_back(digits[byte >> 4]);
        s.push_back(digits[byte & 0xf]);
    }
    return s;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t n) {
    if (hex.size() != 2 * ((n + 7) / 8))
        throw std::invalid_argument("hex string length does not match bit count");
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("invalid hex digit");
    };
    BitVec v(n);
    for (std::size_t b = 0; b * 2 < hex.size(); ++b) {
        std::uint64_t byte = nibble(hex[2 * b]) << 4 | nibble(hex[2 * b + 1]);
        std::size_t bit0 = b * 8;
        for (int k = 0; k < 8; ++k) {
            if (!(byte >> k & 1)) continue;
            if (bit0 + k >= n) throw std::invalid_argument("hex string has bits beyond size");
            v.set(bit0 + k, true);
        }
    }
    return v;
}

BitVec BitVec::from_uint(std::size_t n, std::uint64_t bits) {
    if (n > 64) throw std::invalid_argument("from_uint limited to 64 bits");
    BitVec v(n);
    if (n) v.w_[0] = bits;
    v.trim();
    return v;
}

std::uint64_t BitVec::to_uint() const {
    if (n_ > 64) throw std::invalid_argument("to_uint limited to 64 bits");
    return n_ ? w_[0] : 0;
}

}
