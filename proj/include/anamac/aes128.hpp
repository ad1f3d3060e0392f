#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace anamac {

// AES-128 block encryption, byte-oriented. Only encryption is needed: the
// keyed tag function and the message digest both run the cipher forward.
class Aes128 {
public:
    explicit Aes128(const uint8_t key[16]);
    void encrypt(const uint8_t in[16], uint8_t out[16]) const;

private:
    std::array<uint8_t, 176> round_keys_;
};

// 128-bit Matyas-Meyer-Oseas digest over AES-128: zero IV, message padded
// with 0x80, zeros, and the 64-bit big-endian bit length.
std::array<uint8_t, 16> mmo_digest(std::span<const uint8_t> msg);

} // namespace anamac
