#include "anamac/likelihood.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace anamac {

namespace {

// Finite stand-in for an impossible observation; sums of these stay finite
// so softmax normalization never sees inf - inf.
constexpr double kImpossible = -1e100;

} // namespace

double log_gaussian_tail(double x) {
    if (x < 30.0) {
        double q = 0.5 * std::erfc(x / std::numbers::sqrt2);
        if (q > 0.0) return std::log(q);
    }
    // Asymptotic expansion of Mills' ratio for the far tail.
    double x2 = x * x;
    return -0.5 * x2 - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) +
           std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

double log_gaussian_interval(double a, double b) {
    if (!(a < b)) return kImpossible;
    if (a >= 0.0) {
        // both ends in the right tail: Q(a) - Q(b)
        double la = log_gaussian_tail(a), lb = log_gaussian_tail(b);
        return la + std::log1p(-std::exp(lb - la));
    }
    if (b <= 0.0) return log_gaussian_interval(-b, -a);
    // interval straddles the mean; mass is large, direct arithmetic is safe
    double p = 1.0 - 0.5 * std::erfc(-a / std::numbers::sqrt2) - 0.5 * std::erfc(b / std::numbers::sqrt2);
    // guard: erfc rounding can push p to 0 for a ~ b near 0
    return p > 0.0 ? std::log(p) : kImpossible;
}

PackedTags PackedTags::build(const KeySpace& space, const std::vector<SourceMessage>& msgs,
                             const MacParams& params) {
    PackedTags out;
    out.count = space.size();
    out.nbits = params.l * msgs.size();
    out.words_per_key = (out.nbits + 63) / 64;
    out.words.assign(out.count * out.words_per_key, 0);
    std::vector<std::array<uint8_t, 16>> digests;
    digests.reserve(msgs.size());
    for (const auto& msg : msgs) digests.push_back(message_digest(msg));
    for (size_t k = 0; k < out.count; ++k) {
        SecretKey key = space.key(k);
        uint64_t* row = &out.words[k * out.words_per_key];
        size_t off = 0;
        for (const auto& digest : digests) {
            Tag t = tag_from_digest(key, digest, params);
            for (size_t i = 0; i < params.l; ++i)
                if (t.get(i)) row[(off + i) / 64] |= uint64_t(1) << ((off + i) % 64);
            off += params.l;
        }
    }
    return out;
}

SymbolLogLik symbol_logliks(const NoisyTag& obs, const ChannelParams& chan, bool cells) {
    SymbolLogLik out;
    size_t l = obs.size();
    out.diff.resize(l);
    double sigma = chan.sigma_w;

    if (sigma == 0.0) {
        // Exact-match indicators. Quantized observations compare level
        // indices against the levels the two clean symbols land on.
        double lv_plus = 0.0, lv_minus = 0.0;
        uint16_t level_plus = 0, level_minus = 0;
        if (chan.q) {
            ChannelParams cp = chan;
            NoisyTag clean = quantize({+1.0, -1.0}, cp);
            level_plus = clean.levels[0];
            level_minus = clean.levels[1];
        } else {
            lv_plus = +1.0;
            lv_minus = -1.0;
        }
        for (size_t i = 0; i < l; ++i) {
            bool ok0 = chan.q ? obs.levels[i] == level_plus : obs.values[i] == lv_plus;
            bool ok1 = chan.q ? obs.levels[i] == level_minus : obs.values[i] == lv_minus;
            double lp0 = ok0 ? 0.0 : kImpossible;
            double lp1 = ok1 ? 0.0 : kImpossible;
            out.base += lp0;
            out.diff[i] = lp1 - lp0;
        }
        return out;
    }

    if (cells && chan.q) {
        // True quantized-channel likelihood: Gaussian mass of each cell.
        unsigned q = *chan.q;
        double A = chan.clip();
        double step = 2.0 * A / double(1u << q);
        unsigned top = (1u << q) - 1;
        for (size_t i = 0; i < l; ++i) {
            unsigned level = obs.levels[i];
            double lo = level == 0 ? -std::numeric_limits<double>::infinity() : -A + level * step;
            double hi = level == top ? std::numeric_limits<double>::infinity() : -A + (level + 1) * step;
            double lp0 = log_gaussian_interval((lo - 1.0) / sigma,
                                               hi == std::numeric_limits<double>::infinity()
                                                   ? std::numeric_limits<double>::infinity()
                                                   : (hi - 1.0) / sigma);
            double lp1 = log_gaussian_interval((lo + 1.0) / sigma,
                                               hi == std::numeric_limits<double>::infinity()
                                                   ? std::numeric_limits<double>::infinity()
                                                   : (hi + 1.0) / sigma);
            out.base += lp0;
            out.diff[i] = lp1 - lp0;
        }
        return out;
    }

    // Gaussian density on the received values; per-key total is
    // <values, bipolar>/sigma^2 up to a shared constant.
    double inv = 1.0 / (sigma * sigma);
    for (size_t i = 0; i < l; ++i) {
        double v = obs.values[i];
        out.base += v * inv;          // symbol +1 contribution
        out.diff[i] = -2.0 * v * inv; // switching the symbol to -1
    }
    return out;
}

void accumulate_logliks(const PackedTags& tags, const SymbolLogLik& sym, size_t symbol_offset,
                        std::vector<double>& out) {
    size_t nsym = sym.diff.size();
    for (size_t k = 0; k < tags.count; ++k) {
        const uint64_t* row = &tags.words[k * tags.words_per_key];
        double s = sym.base;
        size_t w0 = symbol_offset / 64;
        size_t w1 = (symbol_offset + nsym + 63) / 64;
        for (size_t j = w0; j < w1 && j < tags.words_per_key; ++j) {
            uint64_t w = row[j];
            if (j == w0 && symbol_offset % 64) w &= ~uint64_t(0) << (symbol_offset % 64);
            size_t end = symbol_offset + nsym;
            if (j * 64 + 64 > end && end % 64) w &= (uint64_t(1) << (end % 64)) - 1;
            while (w) {
                unsigned b = unsigned(std::countr_zero(w));
                w &= w - 1;
                s += sym.diff[j * 64 + b - symbol_offset];
            }
        }
        out[k] += s;
    }
}

std::vector<double> normalize_posterior(std::vector<double> logliks) {
    double m = *std::max_element(logliks.begin(), logliks.end());
    double z = 0.0;
    for (double& v : logliks) {
        v = std::exp(v - m);
        z += v;
    }
    for (double& v : logliks) v /= z;
    return logliks;
}

double entropy_bits(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

} // namespace anamac
