#include "anamac/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anamac/bounds.hpp"
#include "anamac/likelihood.hpp"

namespace anamac {

double correlation_statistic(const Tag& expected, const NoisyTag& received) {
    if (expected.size() != received.size())
        throw std::invalid_argument("correlation_statistic: length mismatch");
    double eta = 0.0;
    for (size_t i = 0; i < received.size(); ++i)
        eta += (expected.get(i) ? -1.0 : 1.0) * received.values[i];
    return eta;
}

Decision verify(const SecretKey& key, const SourceMessage& msg, const NoisyTag& received,
                const VerifyConfig& cfg) {
    Tag expected = compute_tag(key, msg, cfg.mac);
    double eta = correlation_statistic(expected, received);
    double threshold = cfg.rho * double(cfg.mac.l);
    return {eta >= threshold, eta, threshold};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double alpha_closed_form(double gamma_b, unsigned n, double rho) {
    return q_function(std::sqrt(2.0 * gamma_b * double(n)) * (1.0 - rho));
}

double beta_equidistant(double gamma_b, unsigned n, double delta_d, double rho) {
    return q_function(std::sqrt(2.0 * gamma_b * double(n)) * (2.0 * delta_d - (1.0 - rho)));
}

double beta_random_code(double gamma_b, unsigned n, unsigned l, double rho) {
    double scale = std::sqrt(2.0 * gamma_b * double(n));
    double lg = std::lgamma(double(l) + 1.0);
    double acc = 0.0;
    for (unsigned d = 1; d <= l; ++d) {
        double logw = lg - std::lgamma(double(d) + 1.0) - std::lgamma(double(l - d) + 1.0) -
                      double(l) * std::numbers::ln2;
        acc += std::exp(logw) * q_function(scale * (2.0 * double(d) / double(l) - (1.0 - rho)));
    }
    return acc;
}

double beta_from_distribution(double gamma_b, unsigned n, double rho,
                              const DistanceDistribution& dist) {
    double total = dist.total();
    if (!(total > 0.0)) throw std::invalid_argument("beta_from_distribution: empty distribution");
    double scale = std::sqrt(2.0 * gamma_b * double(n));
    double acc = 0.0;
    for (const auto& [d, w] : dist.weights) {
        if (d == 0) continue;
        acc += w / total *
               q_function(scale * (2.0 * double(d) / double(dist.l) - (1.0 - rho)));
    }
    return acc;
}

double optimal_llr_statistic(const NoisyTag& received, const SourceMessage& msg,
                             const SecretKey& claimed_key, const KeySpace& key_space,
                             const MacParams& mac_params, double sigma_w) {
    if (key_space.size() > (size_t(1) << 20))
        throw std::invalid_argument("optimal_llr_statistic: key space too large");
    if (!key_space.contains(claimed_key))
        throw std::invalid_argument("optimal_llr_statistic: claimed key not in key space");
    if (!(sigma_w >= 0.0))
        throw std::invalid_argument("optimal_llr_statistic: sigma_w must be >= 0");
    if (received.size() != mac_params.l)
        throw std::invalid_argument("optimal_llr_statistic: length mismatch");

    ChannelParams chan;
    chan.sigma_w = sigma_w;
    chan.q.reset();
    SymbolLogLik sym = symbol_logliks(received, chan, false);
    PackedTags tags = PackedTags::build(key_space, {msg}, mac_params);
    std::vector<double> ll(key_space.size(), 0.0);
    accumulate_logliks(tags, sym, 0, ll);

    double m = *std::max_element(ll.begin(), ll.end());
    double z = 0.0;
    for (double v : ll) z += std::exp(v - m);
    double log_mixture = m + std::log(z / double(key_space.size()));

    Tag claimed_tag = compute_tag(claimed_key, msg, mac_params);
    double claimed = sym.base;
    for (size_t i = 0; i < mac_params.l; ++i)
        if (claimed_tag.get(i)) claimed += sym.diff[i];
    return claimed - log_mixture;
}

} // namespace anamac
