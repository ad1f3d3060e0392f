#include "anamac/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anamac/likelihood.hpp"
#include "anamac/parallel.hpp"
#include "anamac/rng.hpp"
#include "anamac/verifier.hpp"

namespace anamac {

namespace {

constexpr size_t kMaxPosteriorKeys = size_t(1) << 20;
constexpr size_t kMaxEntropyKeys = size_t(1) << 16;

std::vector<SourceMessage> messages_of(const std::vector<Observation>& obs) {
    std::vector<SourceMessage> msgs;
    msgs.reserve(obs.size());
    for (const auto& o : obs) msgs.push_back(o.msg);
    return msgs;
}

std::vector<double> observation_logliks(const std::vector<Observation>& obs,
                                        const KeySpace& key_space, const MacParams& mac_params,
                                        double sigma_w) {
    if (key_space.size() == 0) throw std::invalid_argument("posterior: empty key space");
    if (key_space.size() > kMaxPosteriorKeys)
        throw std::invalid_argument("posterior: key space too large");
    if (!(sigma_w >= 0.0)) throw std::invalid_argument("posterior: sigma_w must be >= 0");
    for (const auto& o : obs)
        if (o.noisy_tag.size() != mac_params.l)
            throw std::invalid_argument("posterior: tag length mismatch");

    PackedTags tags = PackedTags::build(key_space, messages_of(obs), mac_params);
    std::vector<double> ll(key_space.size(), 0.0);
    ChannelParams chan;
    chan.sigma_w = sigma_w;
    chan.q.reset();
    for (size_t i = 0; i < obs.size(); ++i) {
        SymbolLogLik sym = symbol_logliks(obs[i].noisy_tag, chan, false);
        accumulate_logliks(tags, sym, i * mac_params.l, ll);
    }
    return ll;
}

Estimate from_moments(double sum, double sum_sq, size_t trials) {
    double mean = sum / double(trials);
    double var = trials > 1
                     ? std::max(0.0, (sum_sq - double(trials) * mean * mean) / double(trials - 1))
                     : 0.0;
    return {mean, std::sqrt(var / double(trials))};
}

} // namespace

PosteriorTable exact_posterior(const std::vector<Observation>& obs, const KeySpace& key_space,
                               const MacParams& mac_params, double sigma_w) {
    return {normalize_posterior(observation_logliks(obs, key_space, mac_params, sigma_w))};
}

SecretKey ml_decode(const std::vector<Observation>& obs, const KeySpace& key_space,
                    const MacParams& mac_params, double sigma_w) {
    std::vector<double> ll = observation_logliks(obs, key_space, mac_params, sigma_w);
    size_t best = size_t(std::max_element(ll.begin(), ll.end()) - ll.begin());
    return key_space.key(best);
}

Estimate exact_equivocation(const MacParams& mac_params, const ChannelParams& channel_params,
                            const KeySpace& key_space, const std::vector<SourceMessage>& msgs,
                            size_t trials, uint64_t seed) {
    return exact_equivocation(mac_params,
                              std::vector<ChannelParams>(msgs.size(), channel_params), key_space,
                              msgs, trials, seed);
}

Estimate exact_equivocation(const MacParams& mac_params,
                            const std::vector<ChannelParams>& channels,
                            const KeySpace& key_space, const std::vector<SourceMessage>& msgs,
                            size_t trials, uint64_t seed) {
    if (channels.size() != msgs.size())
        throw std::invalid_argument("exact_equivocation: one channel per message required");
    if (key_space.size() == 0) throw std::invalid_argument("exact_equivocation: empty key space");
    if (key_space.size() > kMaxEntropyKeys)
        throw std::invalid_argument("exact_equivocation: key space too large");
    if (trials < 1000) throw std::invalid_argument("exact_equivocation: too few trials");
    for (const auto& c : channels) c.validate();

    const PackedTags tags = PackedTags::build(key_space, msgs, mac_params);
    const size_t nk = key_space.size();
    const unsigned l = mac_params.l;

    auto chunk = [&](size_t first, size_t last) {
        std::vector<double> acc(2, 0.0);
        std::vector<double> ll(nk), x(l);
        for (size_t t = first; t < last; ++t) {
            size_t ki = size_t(mix3(seed, streams::trial_key, t) % nk);
            uint64_t ns = mix3(seed, streams::trial_noise, t);
            std::fill(ll.begin(), ll.end(), 0.0);
            for (size_t i = 0; i < msgs.size(); ++i) {
                const ChannelParams& cp = channels[i];
                for (size_t j = 0; j < l; ++j) {
                    x[j] = tags.bit(ki, i * l + j) ? -1.0 : 1.0;
                    if (cp.sigma_w > 0.0)
                        x[j] += cp.sigma_w * gaussian_at(ns, streams::noise, i * l + j);
                }
                NoisyTag obs = cp.q ? quantize(x, cp) : NoisyTag{{}, x};
                SymbolLogLik sym = symbol_logliks(obs, cp, cp.q.has_value());
                accumulate_logliks(tags, sym, i * l, ll);
            }
            double h = entropy_bits(normalize_posterior(ll));
            acc[0] += h;
            acc[1] += h * h;
        }
        return acc;
    };
    auto chunks = run_chunked(trials, chunk);
    return from_moments(kahan_sum_slot(chunks, 0), kahan_sum_slot(chunks, 1), trials);
}

Estimate optimal_spoof_success(const std::vector<SourceMessage>& observed_msgs,
                               const KeySpace& key_space, const SourceMessage& next_msg,
                               const MacParams& mac_params, const ChannelParams& channel_params,
                               size_t trials, uint64_t seed) {
    if (mac_params.l > 16)
        throw std::invalid_argument("optimal_spoof_success: tag space too large to enumerate");
    if (key_space.size() == 0 || key_space.size() > kMaxPosteriorKeys)
        throw std::invalid_argument("optimal_spoof_success: key space size unsupported");
    if (trials == 0) throw std::invalid_argument("optimal_spoof_success: need trials");
    channel_params.validate();

    const PackedTags tags = PackedTags::build(key_space, observed_msgs, mac_params);
    const size_t nk = key_space.size();
    const unsigned l = mac_params.l;

    std::vector<uint32_t> next_tag(nk);
    for (size_t k = 0; k < nk; ++k)
        next_tag[k] = uint32_t(compute_tag(key_space.key(k), next_msg, mac_params).to_u64());

    auto chunk = [&](size_t first, size_t last) {
        std::vector<double> acc(2, 0.0);
        std::vector<double> ll(nk), x(l);
        std::vector<double> mass(size_t(1) << l);
        for (size_t t = first; t < last; ++t) {
            size_t ki = size_t(mix3(seed, streams::trial_key, t) % nk);
            uint64_t ns = mix3(seed, streams::trial_noise, t);
            std::fill(ll.begin(), ll.end(), 0.0);
            for (size_t i = 0; i < observed_msgs.size(); ++i) {
                for (size_t j = 0; j < l; ++j) {
                    x[j] = tags.bit(ki, i * l + j) ? -1.0 : 1.0;
                    if (channel_params.sigma_w > 0.0)
                        x[j] += channel_params.sigma_w * gaussian_at(ns, streams::noise, i * l + j);
                }
                NoisyTag obs = channel_params.q ? quantize(x, channel_params) : NoisyTag{{}, x};
                SymbolLogLik sym = symbol_logliks(obs, channel_params, channel_params.q.has_value());
                accumulate_logliks(tags, sym, i * l, ll);
            }
            std::vector<double> post = normalize_posterior(ll);
            std::fill(mass.begin(), mass.end(), 0.0);
            for (size_t k = 0; k < nk; ++k) mass[next_tag[k]] += post[k];
            double p = *std::max_element(mass.begin(), mass.end());
            acc[0] += p;
            acc[1] += p * p;
        }
        return acc;
    };
    auto chunks = run_chunked(trials, chunk);
    return from_moments(kahan_sum_slot(chunks, 0), kahan_sum_slot(chunks, 1), trials);
}

DistanceDistribution distance_distribution(const MacParams& mac_params, const SourceMessage& msg,
                                           const KeySpace& key_sample,
                                           const SecretKey& reference_key) {
    if (key_sample.size() == 0)
        throw std::invalid_argument("distance_distribution: empty key sample");
    Tag ref = compute_tag(reference_key, msg, mac_params);
    DistanceDistribution out;
    out.l = mac_params.l;
    for (size_t i = 0; i < key_sample.size(); ++i) {
        unsigned d = unsigned(hamming_distance(ref, compute_tag(key_sample.key(i), msg, mac_params)));
        out.weights[d] += 1.0;
    }
    return out;
}

InvarianceReport distance_invariance_check(const MacParams& mac_params,
                                           const std::vector<SourceMessage>& msgs,
                                           const std::vector<SecretKey>& reference_keys,
                                           size_t sample, uint64_t seed, double tol) {
    if (reference_keys.size() < 2 || msgs.size() < 2)
        throw std::invalid_argument("distance_invariance_check: need >= 2 references and messages");
    if (sample == 0) throw std::invalid_argument("distance_invariance_check: empty sample");

    std::vector<SecretKey> sampled;
    sampled.reserve(sample);
    for (size_t i = 0; i < sample; ++i)
        sampled.push_back(gen_key(mac_params, mix3(seed, streams::sample_key, i)));
    KeySpace space = KeySpace::explicit_list(std::move(sampled));

    std::vector<std::vector<double>> ps;
    bool degenerate = true;
    for (const auto& rk : reference_keys)
        for (const auto& m : msgs) {
            DistanceDistribution d = distance_distribution(mac_params, m, space, rk);
            if (d.weights.size() > 1) degenerate = false;
            std::vector<double> p(mac_params.l + 1, 0.0);
            for (const auto& [dd, w] : d.weights) p[dd] = w / double(sample);
            ps.push_back(std::move(p));
        }

    double max_tv = 0.0;
    for (size_t a = 0; a < ps.size(); ++a)
        for (size_t b = a + 1; b < ps.size(); ++b) {
            double tv = 0.0;
            for (size_t d = 0; d < ps[a].size(); ++d) tv += std::abs(ps[a][d] - ps[b][d]);
            max_tv = std::max(max_tv, 0.5 * tv);
        }
    return {max_tv, max_tv <= tol, degenerate};
}

std::vector<RocPoint> monte_carlo_roc(const MacParams& mac_params,
                                      const ChannelParams& channel_params,
                                      const std::vector<double>& rho_grid, size_t trials,
                                      uint64_t seed) {
    if (rho_grid.empty()) throw std::invalid_argument("monte_carlo_roc: empty threshold grid");
    if (trials < 10000) throw std::invalid_argument("monte_carlo_roc: too few trials");
    mac_params.validate();
    channel_params.validate();

    const SourceMessage msg = {'p', 'r', 'o', 'b', 'e'};
    const double lf = double(mac_params.l);
    const size_t ng = rho_grid.size();

    auto chunk = [&](size_t first, size_t last) {
        std::vector<double> acc(2 * ng, 0.0);
        for (size_t t = first; t < last; ++t) {
            SecretKey key = gen_key(mac_params, mix3(seed, streams::trial_key, t));
            SecretKey wrong = gen_key(mac_params, mix3(seed, streams::wrong_key, t));
            NoisyTag received = make_ana_tag(key, msg, mac_params, channel_params,
                                             mix3(seed, streams::trial_noise, t));
            double eta_legit = correlation_statistic(compute_tag(key, msg, mac_params), received);
            double eta_wrong = correlation_statistic(compute_tag(wrong, msg, mac_params), received);
            for (size_t g = 0; g < ng; ++g) {
                double thr = rho_grid[g] * lf;
                if (!(eta_legit >= thr)) acc[2 * g] += 1.0;
                if (eta_wrong >= thr) acc[2 * g + 1] += 1.0;
            }
        }
        return acc;
    };
    auto chunks = run_chunked(trials, chunk);

    std::vector<RocPoint> out(ng);
    for (size_t g = 0; g < ng; ++g) {
        double pa = kahan_sum_slot(chunks, 2 * g) / double(trials);
        double pb = kahan_sum_slot(chunks, 2 * g + 1) / double(trials);
        out[g] = {rho_grid[g], pa, std::sqrt(pa * (1.0 - pa) / double(trials)), pb,
                  std::sqrt(pb * (1.0 - pb) / double(trials))};
    }
    return out;
}

} // namespace anamac
