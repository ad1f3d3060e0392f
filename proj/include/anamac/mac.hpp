#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anamac/bits.hpp"

namespace anamac {

using SecretKey = BitString;
using Tag = BitString;
using SourceMessage = Bytes;

enum class PrfId { reference, toy };

PrfId prf_from_string(const std::string& name);
std::string prf_to_string(PrfId id);

struct MacParams {
    unsigned n = 128;             // key bits
    unsigned l = 256;             // tag bits
    PrfId prf = PrfId::reference;

    void validate() const;
};

// Uniform n-bit key, a pure function of (params, seed).
SecretKey gen_key(const MacParams& params, uint64_t seed);

// 128-bit digest D(s) that the tag generators consume. Computing it once per
// message amortizes bulk tag generation over a key space.
std::array<uint8_t, 16> message_digest(const SourceMessage& msg);

// The keyed tag function. reference: counter-mode expansion of AES-128 over a
// 128-bit message digest (tag = first l bits of E_k(D(s)), E_k(D(s)+1), ...,
// with the key zero-padded or truncated to 128 bits and the digest treated as
// a big-endian counter block). toy: splitmix64 counter generator seeded by the
// key bits and the digest; only its statistics matter, documented as such.
Tag compute_tag(const SecretKey& key, const SourceMessage& msg, const MacParams& params);
Tag tag_from_digest(const SecretKey& key, const std::array<uint8_t, 16>& digest,
                    const MacParams& params);

// Concatenation of the r per-message tags: one codeword of the induced code.
Tag codeword(const SecretKey& key, const std::vector<SourceMessage>& msgs, const MacParams& params);

// Key bits per transmitted tag bit for an observation of r tags.
double coding_rate(unsigned n, unsigned r, unsigned l);

// Either every n-bit key in numeric order or an explicit list. Enumeration
// order is the tie-break order for decoding.
class KeySpace {
public:
    static KeySpace exhaustive(unsigned n);
    static KeySpace explicit_list(std::vector<SecretKey> keys);

    size_t size() const { return exhaustive_bits_ >= 0 ? size_t(1) << exhaustive_bits_ : keys_.size(); }
    SecretKey key(size_t index) const;
    bool contains(const SecretKey& k) const;

private:
    int exhaustive_bits_ = -1;
    std::vector<SecretKey> keys_;
};

} // namespace anamac
