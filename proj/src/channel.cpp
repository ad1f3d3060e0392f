#include "anamac/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "anamac/rng.hpp"

namespace anamac {

double ChannelParams::default_clip(double sigma_w) {
    // 1 + 4 sigma keeps the per-symbol saturation probability near Q(4);
    // the floor keeps the range strictly wider than the signal at sigma_w = 0.
    return std::max(1.0 + 4.0 * sigma_w, 1.125);
}

void ChannelParams::validate() const {
    if (!(sigma_w >= 0.0)) throw std::invalid_argument("sigma_w must be >= 0");
    if (q && (*q < 1 || *q > 16)) throw std::invalid_argument("q must be in [1, 16]");
    if (!(clip() > 1.0)) throw std::invalid_argument("clip amplitude must exceed 1");
}

std::vector<double> bipolarize(const Tag& tag) {
    std::vector<double> x(tag.size());
    for (size_t i = 0; i < tag.size(); ++i) x[i] = tag.get(i) ? -1.0 : 1.0;
    return x;
}

std::vector<double> corrupt(const std::vector<double>& x, double sigma_w, uint64_t noise_seed) {
    if (!(sigma_w >= 0.0)) throw std::invalid_argument("sigma_w must be >= 0");
    std::vector<double> y(x.size());
    if (sigma_w == 0.0) {
        y = x;
        return y;
    }
    for (size_t i = 0; i < x.size(); ++i)
        y[i] = x[i] + sigma_w * gaussian_at(noise_seed, streams::noise, i);
    return y;
}

double quantizer_value(unsigned level, unsigned q, double clip_A) {
    double step = 2.0 * clip_A / double(1u << q);
    return -clip_A + (double(level) + 0.5) * step;
}

NoisyTag quantize(const std::vector<double>& x, const ChannelParams& params, size_t* saturated) {
    params.validate();
    if (!params.q) throw std::invalid_argument("quantize requires q");
    unsigned q = *params.q;
    double A = params.clip();
    double step = 2.0 * A / double(1u << q);
    int top = int(1u << q) - 1;

    NoisyTag out;
    out.levels.resize(x.size());
    out.values.resize(x.size());
    size_t sat = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        int idx = int(std::floor((x[i] + A) / step));
        if (idx < 0 || idx > top) {
            ++sat;
            idx = std::clamp(idx, 0, top);
        }
        out.levels[i] = uint16_t(idx);
        out.values[i] = quantizer_value(unsigned(idx), q, A);
    }
    if (saturated) *saturated = sat;
    return out;
}

NoisyTag make_ana_tag(const SecretKey& key, const SourceMessage& msg, const MacParams& mac_params,
                      const ChannelParams& channel_params, uint64_t noise_seed) {
    channel_params.validate();
    auto noisy = corrupt(bipolarize(compute_tag(key, msg, mac_params)),
                         channel_params.sigma_w, noise_seed);
    if (!channel_params.q) {
        NoisyTag out;
        out.values = std::move(noisy);
        return out;
    }
    return quantize(noisy, channel_params);
}

SnrParams snr_params(double sigma_w, unsigned n, unsigned l, unsigned r) {
    if (!(sigma_w > 0.0)) throw std::invalid_argument("snr_params requires sigma_w > 0");
    double gamma_t = 1.0 / (2.0 * sigma_w * sigma_w);
    return {gamma_t, gamma_t / coding_rate(n, r, l)};
}

double ebn0_db_to_gamma_b(double db) { return std::pow(10.0, db / 10.0); }

double sigma_w_for_gamma_t(double gamma_t) {
    if (!(gamma_t > 0.0)) throw std::invalid_argument("gamma_t must be positive");
    return std::sqrt(1.0 / (2.0 * gamma_t));
}

namespace {

constexpr uint8_t kMagic[4] = {'A', 'N', 'A', 'M'};
constexpr uint8_t kVersion = 0x01;
constexpr size_t kHeaderSize = 24;

void put_be_double(Bytes& out, double v) {
    uint64_t u = std::bit_cast<uint64_t>(v);
    for (int i = 7; i >= 0; --i) out.push_back(uint8_t(u >> (8 * i)));
}

double get_be_double(const uint8_t* p) {
    uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u = u << 8 | p[i];
    return std::bit_cast<double>(u);
}

} // namespace

Bytes encode_packet(const NoisyTag& tag, const ChannelParams& params) {
    params.validate();
    if (!params.q) throw std::invalid_argument("encode_packet requires quantized mode");
    unsigned q = *params.q;
    size_t l = tag.levels.size();
    if (l != tag.values.size() || l == 0)
        throw std::invalid_argument("encode_packet: malformed tag");
    if (l > 65535) throw std::invalid_argument("encode_packet: tag longer than 65535 symbols");

    Bytes out;
    out.reserve(kHeaderSize + (l * q + 7) / 8);
    for (uint8_t m : kMagic) out.push_back(m);
    out.push_back(kVersion);
    out.push_back(uint8_t(q));
    out.push_back(uint8_t(l >> 8));
    out.push_back(uint8_t(l & 0xFF));
    put_be_double(out, params.sigma_w);
    put_be_double(out, params.clip());

    out.resize(kHeaderSize + (l * q + 7) / 8, 0);
    uint8_t* payload = out.data() + kHeaderSize;
    size_t bitpos = 0;
    for (size_t i = 0; i < l; ++i) {
        uint16_t level = tag.levels[i];
        if (level >= (1u << q)) throw std::invalid_argument("encode_packet: level out of range");
        for (unsigned b = 0; b < q; ++b, ++bitpos)
            if (level >> (q - 1 - b) & 1)
                payload[bitpos >> 3] |= uint8_t(0x80 >> (bitpos & 7));
    }
    return out;
}

std::pair<NoisyTag, ChannelParams> decode_packet(const Bytes& bytes) {
    if (bytes.size() < kHeaderSize)
        throw FrameError(FrameError::Kind::truncated, "frame shorter than header");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw FrameError(FrameError::Kind::bad_magic, "bad frame magic");
    if (bytes[4] != kVersion)
        throw FrameError(FrameError::Kind::bad_version, "unsupported frame version");

    unsigned q = bytes[5];
    size_t l = size_t(bytes[6]) << 8 | bytes[7];
    double sigma_w = get_be_double(bytes.data() + 8);
    double clip_A = get_be_double(bytes.data() + 16);
    if (q < 1 || q > 16 || l == 0 || !(sigma_w >= 0.0) || !(clip_A > 1.0))
        throw FrameError(FrameError::Kind::bad_field, "frame header field out of range");

    size_t payload = (l * q + 7) / 8;
    if (bytes.size() < kHeaderSize + payload)
        throw FrameError(FrameError::Kind::truncated, "frame payload truncated");

    NoisyTag tag;
    tag.levels.resize(l);
    tag.values.resize(l);
    const uint8_t* p = bytes.data() + kHeaderSize;
    size_t bitpos = 0;
    for (size_t i = 0; i < l; ++i) {
        uint16_t level = 0;
        for (unsigned b = 0; b < q; ++b, ++bitpos)
            level = uint16_t(level << 1 | (p[bitpos >> 3] >> (7 - (bitpos & 7)) & 1));
        tag.levels[i] = level;
        tag.values[i] = quantizer_value(level, q, clip_A);
    }
    ChannelParams params;
    params.sigma_w = sigma_w;
    params.q = q;
    params.clip_A = clip_A;
    return {std::move(tag), params};
}

} // namespace anamac
