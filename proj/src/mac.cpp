#include "anamac/mac.hpp"

#include <algorithm>
#include <stdexcept>

#include "anamac/aes128.hpp"
#include "anamac/rng.hpp"

namespace anamac {

PrfId prf_from_string(const std::string& name) {
    if (name == "reference") return PrfId::reference;
    if (name == "toy") return PrfId::toy;
    throw std::invalid_argument("unknown prf id: " + name);
}

std::string prf_to_string(PrfId id) {
    return id == PrfId::reference ? "reference" : "toy";
}

void MacParams::validate() const {
    if (n < 1 || n > 256) throw std::invalid_argument("key length must be in [1, 256] bits");
    if (l < 1) throw std::invalid_argument("tag length must be positive");
    if (prf == PrfId::toy && n > 24)
        throw std::invalid_argument("toy generator supports at most 24 key bits");
}

SecretKey gen_key(const MacParams& params, uint64_t seed) {
    params.validate();
    SecretKey key(params.n);
    Bytes raw((params.n + 7) / 8);
    for (size_t i = 0; i < raw.size(); ++i) {
        uint64_t w = mix3(seed, streams::keygen, i / 8);
        raw[i] = uint8_t(w >> (8 * (7 - i % 8)));
    }
    return SecretKey(std::move(raw), params.n);
}

std::array<uint8_t, 16> message_digest(const SourceMessage& msg) {
    return mmo_digest(std::span<const uint8_t>(msg.data(), msg.size()));
}

namespace {

Tag reference_tag(const SecretKey& key, std::array<uint8_t, 16> counter, const MacParams& params) {
    uint8_t aes_key[16] = {0};
    size_t kb = std::min<size_t>(key.byte_size(), 16);
    std::copy_n(key.bytes().begin(), kb, aes_key);
    Aes128 cipher(aes_key);

    Bytes out((params.l + 7) / 8);
    size_t produced = 0;
    while (produced < out.size()) {
        uint8_t block[16];
        cipher.encrypt(counter.data(), block);
        size_t take = std::min<size_t>(16, out.size() - produced);
        std::copy_n(block, take, out.begin() + long(produced));
        produced += take;
        for (int i = 15; i >= 0; --i)
            if (++counter[size_t(i)] != 0) break;
    }
    return Tag(std::move(out), params.l);
}

Tag toy_tag(const SecretKey& key, const std::array<uint8_t, 16>& d, const MacParams& params) {
    uint64_t dhi = 0, dlo = 0;
    for (int i = 0; i < 8; ++i) {
        dhi = dhi << 8 | d[size_t(i)];
        dlo = dlo << 8 | d[size_t(i + 8)];
    }
    uint64_t seed = key.to_u64() ^ splitmix64(dlo);
    Bytes out((params.l + 7) / 8);
    for (size_t i = 0; i < out.size(); ++i) {
        uint64_t w = mix3(seed, streams::toy_prf ^ dhi, i / 8);
        out[i] = uint8_t(w >> (8 * (7 - i % 8)));
    }
    return Tag(std::move(out), params.l);
}

} // namespace

Tag tag_from_digest(const SecretKey& key, const std::array<uint8_t, 16>& digest,
                    const MacParams& params) {
    params.validate();
    if (key.size() != params.n)
        throw std::invalid_argument("key length does not match parameters");
    return params.prf == PrfId::reference ? reference_tag(key, digest, params)
                                          : toy_tag(key, digest, params);
}

Tag compute_tag(const SecretKey& key, const SourceMessage& msg, const MacParams& params) {
    return tag_from_digest(key, message_digest(msg), params);
}

Tag codeword(const SecretKey& key, const std::vector<SourceMessage>& msgs, const MacParams& params) {
    if (msgs.empty()) throw std::invalid_argument("codeword needs at least one message");
    Tag out(params.l * msgs.size());
    size_t off = 0;
    for (const auto& msg : msgs) {
        Tag t = compute_tag(key, msg, params);
        for (size_t i = 0; i < params.l; ++i) out.set(off + i, t.get(i));
        off += params.l;
    }
    return out;
}

double coding_rate(unsigned n, unsigned r, unsigned l) {
    if (n == 0 || r == 0 || l == 0) throw std::invalid_argument("coding_rate: zero argument");
    return double(n) / (double(r) * double(l));
}

KeySpace KeySpace::exhaustive(unsigned n) {
    if (n > 24) throw std::invalid_argument("exhaustive key space limited to 24 bits");
    KeySpace s;
    s.exhaustive_bits_ = int(n);
    return s;
}

KeySpace KeySpace::explicit_list(std::vector<SecretKey> keys) {
    if (keys.empty()) throw std::invalid_argument("empty key list");
    KeySpace s;
    s.keys_ = std::move(keys);
    return s;
}

SecretKey KeySpace::key(size_t index) const {
    if (exhaustive_bits_ >= 0)
        return BitString::from_u64(index, size_t(exhaustive_bits_));
    return keys_.at(index);
}

bool KeySpace::contains(const SecretKey& k) const {
    if (exhaustive_bits_ >= 0)
        return k.size() == size_t(exhaustive_bits_);
    return std::find(keys_.begin(), keys_.end(), k) != keys_.end();
}

} // namespace anamac
