#pragma once

#include <vector>

#include "anamac/channel.hpp"
#include "anamac/mac.hpp"

namespace anamac {

// log Q(x) for the Gaussian upper tail, stable far into the tail where
// erfc underflows.
double log_gaussian_tail(double x);

// log(Phi(b) - Phi(a)) for a < b, stable when the interval sits deep in
// either tail.
double log_gaussian_interval(double a, double b);

// Clean tags of every key in a space, bit i stored LSB-first in 64-bit words
// for fast set-bit iteration. Rows follow key-space enumeration order.
struct PackedTags {
    size_t nbits = 0;
    size_t words_per_key = 0;
    size_t count = 0;
    std::vector<uint64_t> words;

    static PackedTags build(const KeySpace& space, const std::vector<SourceMessage>& msgs,
                            const MacParams& params);
    bool bit(size_t key_index, size_t i) const {
        return words[key_index * words_per_key + i / 64] >> (i % 64) & 1;
    }
};

// Per-symbol decomposition of log p(observation | clean bits): the total for
// a key is `base` plus `diff[i]` summed over that key's set bits. Constant
// terms shared by all keys may be dropped; posteriors and likelihood ratios
// are unaffected. sigma_w = 0 degenerates to exact-match indicators through
// the same representation (mismatches carry a huge finite penalty, so the
// posterior becomes uniform over the argmax set).
struct SymbolLogLik {
    std::vector<double> diff;
    double base = 0.0;
};

// model: Gaussian density on the received values (unquantized analysis), or
// exact quantizer-cell masses when `cells` is set (the true likelihood of the
// quantized channel).
SymbolLogLik symbol_logliks(const NoisyTag& obs, const ChannelParams& chan, bool cells);

// out[k] += loglik of key k for one observation block starting at
// symbol_offset within each packed row.
void accumulate_logliks(const PackedTags& tags, const SymbolLogLik& sym, size_t symbol_offset,
                        std::vector<double>& out);

// Normalized posterior from joint log-likelihoods, uniform prior.
std::vector<double> normalize_posterior(std::vector<double> logliks);

// Entropy in bits of a normalized distribution.
double entropy_bits(const std::vector<double>& p);

} // namespace anamac
