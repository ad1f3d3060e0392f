#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "anamac/mac.hpp"

namespace anamac {

struct ChannelParams {
    double sigma_w = 0.5;          // noise std dev per unit-amplitude symbol
    std::optional<unsigned> q = 8; // quantizer bits; nullopt = unquantized analysis mode
    double clip_A = 0.0;           // quantizer range bound; <= 0 means "use default"

    void validate() const;
    double clip() const { return clip_A > 0 ? clip_A : default_clip(sigma_w); }
    static double default_clip(double sigma_w);
};

// Transmitted tag: quantizer level indices plus their real reconstruction
// values. In unquantized mode `levels` is empty and `values` carries the raw
// noisy symbols.
struct NoisyTag {
    std::vector<uint16_t> levels;
    std::vector<double> values;

    size_t size() const { return values.size(); }
    bool quantized() const { return !levels.empty() || values.empty(); }
};

// bit b -> 1 - 2b: 0 maps to +1, 1 maps to -1.
std::vector<double> bipolarize(const Tag& tag);

// x + w with w i.i.d. N(0, sigma_w^2), one counter-based draw per symbol.
std::vector<double> corrupt(const std::vector<double>& x, double sigma_w, uint64_t noise_seed);

// Uniform mid-rise quantizer on [-A, A]: step 2A/2^q, out-of-range inputs
// clamp to the end cells (counted by `saturated` when given).
NoisyTag quantize(const std::vector<double>& x, const ChannelParams& params,
                  size_t* saturated = nullptr);

// Reconstruction value of one level index.
double quantizer_value(unsigned level, unsigned q, double clip_A);

// The full pipeline: quantize(corrupt(bipolarize(compute_tag(...)))). With
// q unset the quantization step is skipped.
NoisyTag make_ana_tag(const SecretKey& key, const SourceMessage& msg, const MacParams& mac_params,
                      const ChannelParams& channel_params, uint64_t noise_seed);

struct SnrParams {
    double gamma_t; // per tag symbol: 1/(2 sigma_w^2)
    double gamma_b; // per key bit: gamma_t / R_c
};
SnrParams snr_params(double sigma_w, unsigned n, unsigned l, unsigned r);

double ebn0_db_to_gamma_b(double db);
double sigma_w_for_gamma_t(double gamma_t);

// Binary frame format, the only cross-implementation contract:
//   "ANAM" | version 0x01 | q | l (2 bytes BE) | sigma_w (8 bytes BE IEEE) |
//   clip_A (8 bytes BE IEEE) | ceil(l*q/8) bytes of levels packed MSB-first.
class FrameError : public std::runtime_error {
public:
    enum class Kind { bad_magic, bad_version, bad_field, truncated };
    FrameError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

Bytes encode_packet(const NoisyTag& tag, const ChannelParams& params);
std::pair<NoisyTag, ChannelParams> decode_packet(const Bytes& bytes);

} // namespace anamac
