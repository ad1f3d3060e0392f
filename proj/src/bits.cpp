#include "anamac/bits.hpp"

namespace anamac {

namespace {

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
}

constexpr char kHexDigits[] = "0123456789abcdef";

} // namespace

std::string to_hex(const Bytes& data) {
    std::string s;
    s.reserve(data.size() * 2);
    for (uint8_t b : data) {
        s.push_back(kHexDigits[b >> 4]);
        s.push_back(kHexDigits[b & 15]);
    }
    return s;
}

Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2) throw std::invalid_argument("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = uint8_t(hex_val(hex[2 * i]) << 4 | hex_val(hex[2 * i + 1]));
    return out;
}

std::string BitString::to_hex() const { return anamac::to_hex(bytes_); }

BitString BitString::from_hex(const std::string& hex, size_t nbits) {
    return BitString(anamac::from_hex(hex), nbits);
}

size_t hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    size_t d = 0;
    for (size_t i = 0; i < a.byte_size(); ++i)
        d += size_t(std::popcount(uint8_t(a.bytes()[i] ^ b.bytes()[i])));
    return d;
}

} // namespace anamac
