#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace anamac {

using Bytes = std::vector<uint8_t>;

// Fixed-length bit string packed MSB-first: bit 0 is the most significant bit
// of the first octet. Pad bits in the last octet are kept zero so that
// equality, ordering and hex round-trips are canonical.
class BitString {
public:
    BitString() = default;
    explicit BitString(size_t nbits) : bytes_((nbits + 7) / 8, 0), bits_(nbits) {}
    BitString(Bytes bytes, size_t nbits) : bytes_(std::move(bytes)), bits_(nbits) {
        if (bytes_.size() != (bits_ + 7) / 8)
            throw std::invalid_argument("BitString: byte count does not match bit length");
        mask_tail();
    }

    size_t size() const { return bits_; }
    size_t byte_size() const { return bytes_.size(); }
    const Bytes& bytes() const { return bytes_; }

    bool get(size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1; }
    void set(size_t i, bool v) {
        uint8_t m = uint8_t(0x80 >> (i & 7));
        if (v) bytes_[i >> 3] |= m; else bytes_[i >> 3] &= uint8_t(~m);
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint8_t b : bytes_) c += size_t(std::popcount(b));
        return c;
    }

    // Numeric value for short strings (used for exhaustive key spaces).
    uint64_t to_u64() const {
        if (bits_ > 64) throw std::invalid_argument("BitString: too long for u64");
        uint64_t v = 0;
        for (uint8_t b : bytes_) v = (v << 8) | b;
        return bits_ % 8 ? v >> (8 - bits_ % 8) : v;
    }
    static BitString from_u64(uint64_t v, size_t nbits) {
        BitString s(nbits);
        for (size_t i = 0; i < nbits; ++i)
            s.set(nbits - 1 - i, (v >> i) & 1);
        return s;
    }

    std::string to_hex() const;
    static BitString from_hex(const std::string& hex, size_t nbits);

    friend bool operator==(const BitString& a, const BitString& b) = default;
    // Lexicographic byte order; for equal lengths this is numeric big-endian order.
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
        if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
        return a.bytes_ <=> b.bytes_;
    }

private:
    void mask_tail() {
        if (bits_ % 8) bytes_.back() &= uint8_t(0xFF << (8 - bits_ % 8));
    }
    Bytes bytes_;
    size_t bits_ = 0;
};

size_t hamming_distance(const BitString& a, const BitString& b);

std::string to_hex(const Bytes& data);
Bytes from_hex(const std::string& hex);

} // namespace anamac
