#pragma once

#include <cstdint>
#include <vector>

#include "anamac/bounds.hpp"
#include "anamac/channel.hpp"
#include "anamac/mac.hpp"

namespace anamac {

// One intercepted message/tag pair.
struct Observation {
    SourceMessage msg;
    NoisyTag noisy_tag;
};

// Posterior over an explicit key space; probs[i] belongs to key_space.key(i)
// and the entries sum to 1.
struct PosteriorTable {
    std::vector<double> probs;
};

// Monte Carlo estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct InvarianceReport {
    double max_tv = 0.0;   // largest pairwise total-variation distance
    bool pass = false;     // max_tv <= tol
    bool degenerate = false; // every per-reference distribution is a point mass
};

struct RocPoint {
    double rho;
    double alpha_hat, alpha_se; // legitimate-tag rejection rate
    double beta_hat, beta_se;   // random-wrong-key acceptance rate
};

// P(k | observations) under a uniform key prior and the Gaussian observation
// density, chained over independent per-tag noise. Log-domain throughout;
// sigma_w = 0 collapses to a uniform distribution over the exact-match set.
PosteriorTable exact_posterior(const std::vector<Observation>& obs, const KeySpace& key_space,
                               const MacParams& mac_params, double sigma_w);

// Posterior argmax; ties break toward the earliest key in enumeration order.
SecretKey ml_decode(const std::vector<Observation>& obs, const KeySpace& key_space,
                    const MacParams& mac_params, double sigma_w);

// Monte Carlo mean over (key, noise) of the posterior entropy H(K | T~^r) in
// bits. Quantized channels use exact quantizer-cell likelihoods, unquantized
// ones the Gaussian density, so the estimate targets the entropy of the
// observation actually delivered.
Estimate exact_equivocation(const MacParams& mac_params, const ChannelParams& channel_params,
                            const KeySpace& key_space, const std::vector<SourceMessage>& msgs,
                            size_t trials, uint64_t seed);

// Per-message channel variant. Message i's noise indices depend only on
// (seed, trial, i), so two runs agreeing on a prefix of msgs see identical
// noise for that prefix; differences of such runs are low-variance.
Estimate exact_equivocation(const MacParams& mac_params,
                            const std::vector<ChannelParams>& channels,
                            const KeySpace& key_space, const std::vector<SourceMessage>& msgs,
                            size_t trials, uint64_t seed);

// Success probability of the optimal substitution attacker who, after seeing
// noisy tags for observed_msgs, submits the clean tag t maximizing the
// posterior mass of the exact-match set {k : tag(k, next_msg) = t}. Each
// trial draws a fresh (key, noise) pair; tags are recomputed inside.
Estimate optimal_spoof_success(const std::vector<SourceMessage>& observed_msgs,
                               const KeySpace& key_space, const SourceMessage& next_msg,
                               const MacParams& mac_params, const ChannelParams& channel_params,
                               size_t trials, uint64_t seed);

// Counts of sample keys whose tag sits at each Hamming distance from the
// reference key's tag; weights sum to the sample size.
DistanceDistribution distance_distribution(const MacParams& mac_params, const SourceMessage& msg,
                                           const KeySpace& key_sample,
                                           const SecretKey& reference_key);

// Draws `sample` keys per (reference key, message) cell, builds the empirical
// distance distributions, and reports the largest pairwise total-variation
// gap. A report where every distribution concentrates on one distance is
// flagged degenerate rather than celebrated.
InvarianceReport distance_invariance_check(const MacParams& mac_params,
                                           const std::vector<SourceMessage>& msgs,
                                           const std::vector<SecretKey>& reference_keys,
                                           size_t sample, uint64_t seed, double tol);

// Shared-trial estimates of the completeness error alpha(rho) and the
// random-wrong-key false acceptance beta(rho) over a threshold grid.
std::vector<RocPoint> monte_carlo_roc(const MacParams& mac_params,
                                      const ChannelParams& channel_params,
                                      const std::vector<double>& rho_grid, size_t trials,
                                      uint64_t seed);

} // namespace anamac
