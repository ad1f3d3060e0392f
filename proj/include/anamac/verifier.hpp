#pragma once

#include "anamac/channel.hpp"
#include "anamac/mac.hpp"

namespace anamac {

struct VerifyConfig {
    double rho = 0.5; // normalized threshold; decision threshold is rho * l
    MacParams mac;
    ChannelParams channel;
};

struct Decision {
    bool accept;
    double eta;
    double threshold;
};

// Inner product of the expected bipolar tag with the received values. For a
// noise-free bipolar pattern at Hamming distance d this equals l - 2d.
double correlation_statistic(const Tag& expected, const NoisyTag& received);

// Threshold test: accept iff eta >= rho * l. Equality accepts.
Decision verify(const SecretKey& key, const SourceMessage& msg, const NoisyTag& received,
                const VerifyConfig& cfg);

// Gaussian upper-tail probability.
double q_function(double x);

// Rejection probability for a legitimate tag under the threshold test.
double alpha_closed_form(double gamma_b, unsigned n, double rho);

// Acceptance probability for a wrong-key tag at normalized distance delta_d
// when every wrong codeword sits at the same distance.
double beta_equidistant(double gamma_b, unsigned n, double delta_d, double rho);

// Acceptance probability for a uniformly random wrong key, averaging the
// distance-d term over binomial(l, 1/2) pair distances.
double beta_random_code(double gamma_b, unsigned n, unsigned l, double rho);

struct DistanceDistribution; // bounds.hpp
// Same acceptance average but over a supplied distance spectrum.
double beta_from_distribution(double gamma_b, unsigned n, double rho,
                              const DistanceDistribution& dist);

// log p(received | claimed key) - log of the key-averaged likelihood, the
// optimal test statistic for a uniformly chosen key. Enumerates the key
// space; log-domain throughout.
double optimal_llr_statistic(const NoisyTag& received, const SourceMessage& msg,
                             const SecretKey& claimed_key, const KeySpace& key_space,
                             const MacParams& mac_params, double sigma_w);

} // namespace anamac
