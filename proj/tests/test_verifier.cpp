#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "anamac/bounds.hpp"
#include "anamac/channel.hpp"
#include "anamac/mac.hpp"
#include "anamac/rng.hpp"
#include "anamac/verifier.hpp"

using namespace anamac;

namespace {

NoisyTag raw_tag(std::vector<double> values) {
    NoisyTag t;
    t.values = std::move(values);
    return t;
}

} // namespace

TEST_CASE("correlation statistic on noise-free patterns") {
    Tag t(8);
    t.set(1, true);
    t.set(5, true);
    auto x = bipolarize(t);

    CHECK(correlation_statistic(t, raw_tag(x)) == doctest::Approx(8.0));

    auto flipped = x;
    for (double& v : flipped) v = -v;
    CHECK(correlation_statistic(t, raw_tag(flipped)) == doctest::Approx(-8.0));

    for (size_t d = 1; d <= 8; ++d) {
        auto y = x;
        for (size_t i = 0; i < d; ++i) y[i] = -y[i];
        CHECK(correlation_statistic(t, raw_tag(y)) == doctest::Approx(8.0 - 2.0 * double(d)));
    }

    CHECK_THROWS_AS(correlation_statistic(t, raw_tag({1.0, -1.0})), std::invalid_argument);
}

TEST_CASE("verify thresholds at rho*l and ties accept") {
    MacParams mp;
    mp.n = 16;
    mp.l = 8;
    mp.prf = PrfId::toy;
    SecretKey k = gen_key(mp, 2);
    SourceMessage msg = {'v'};

    VerifyConfig cfg;
    cfg.mac = mp;
    cfg.channel.sigma_w = 0.0;
    cfg.channel.q.reset();

    NoisyTag clean = raw_tag(bipolarize(compute_tag(k, msg, mp)));

    cfg.rho = 0.5;
    Decision d = verify(k, msg, clean, cfg);
    CHECK(d.accept);
    CHECK(d.eta == doctest::Approx(8.0));
    CHECK(d.threshold == doctest::Approx(4.0));

    // eta == rho*l exactly: equality accepts.
    cfg.rho = 1.0;
    CHECK(verify(k, msg, clean, cfg).accept);

    // One flipped symbol drops eta to l-2 < l.
    NoisyTag dented = clean;
    dented.values[0] = -dented.values[0];
    CHECK_FALSE(verify(k, msg, dented, cfg).accept);
    cfg.rho = 0.5;
    CHECK(verify(k, msg, dented, cfg).accept);

    // Wrong key at a tight threshold.
    cfg.rho = 0.99;
    SecretKey wrong = gen_key(mp, 3);
    CHECK_FALSE(verify(wrong, msg, clean, cfg).accept);
}

TEST_CASE("gaussian tail function identities and spot values") {
    CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.5, 1.0, 2.0})
        CHECK(q_function(-x) + q_function(x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(q_function(1.2816) - 0.1000) < 1e-4);

    // Fixed decimals from an independent high-precision evaluation.
    CHECK(std::abs(q_function(1.0) - 0.15865525393145705) < 1e-12);
    CHECK(std::abs(q_function(2.0) - 0.022750131948179195) < 1e-12);
    CHECK(std::abs(q_function(5.0) - 2.8665157187919333e-07) < 1e-12);
    CHECK(q_function(40.0) >= 0.0);
    CHECK(q_function(-40.0) == doctest::Approx(1.0));
}

TEST_CASE("completeness error closed form") {
    CHECK(alpha_closed_form(1.0, 128, 1.0) == doctest::Approx(0.5));
    CHECK(alpha_closed_form(1e9, 128, 0.5) == doctest::Approx(0.0));

    // rho chosen so the argument is 1.2816.
    double n = 128, gb = 0.125;
    double rho = 1.0 - 1.2816 / std::sqrt(2 * gb * n);
    CHECK(std::abs(alpha_closed_form(gb, 128, rho) - 0.1) < 1e-4);

    // Monotone: non-increasing in gamma_b, non-decreasing in rho.
    double prev = 1.0;
    for (double g : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0}) {
        double a = alpha_closed_form(g, 128, 0.5);
        CHECK(a <= prev + 1e-15);
        prev = a;
    }
    prev = 0.0;
    for (double r : {-0.5, 0.0, 0.3, 0.6, 0.9}) {
        double a = alpha_closed_form(1.0, 128, r);
        CHECK(a >= prev - 1e-15);
        prev = a;
    }
}

TEST_CASE("equidistant false-acceptance closed form") {
    double gb = 0.7, rho = 0.4;
    unsigned n = 64;

    CHECK(beta_equidistant(gb, n, (1 - rho) / 2, rho) == doctest::Approx(0.5));

    // Balance point: the distance ratio delta_d = 1 - rho makes beta equal
    // alpha (the argument collapses to the alpha argument).
    CHECK(beta_equidistant(gb, n, 1 - rho, rho) ==
          doctest::Approx(alpha_closed_form(gb, n, rho)).epsilon(1e-14));

    // Same-codeword case: sign-flipped alpha argument.
    CHECK(beta_equidistant(gb, n, 0.0, rho) ==
          doctest::Approx(q_function(-std::sqrt(2 * gb * n) * (1 - rho))).epsilon(1e-14));
}

TEST_CASE("random-code false acceptance: limits and fixed values") {
    CHECK(beta_random_code(1.0, 128, 256, -1e6) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(beta_random_code(1e4, 128, 256, 0.999999) == doctest::Approx(0.0));

    // Fixed decimals from a 25-digit evaluation of the weighted sum.
    CHECK(beta_random_code(std::pow(10.0, -0.4), 128, 256, 0.2) ==
          doctest::Approx(0.043857978073269).epsilon(1e-9));
    CHECK(beta_random_code(1.0, 128, 256, 0.4) ==
          doctest::Approx(2.9221768578684e-6).epsilon(1e-9));
    CHECK(beta_random_code(std::pow(10.0, 0.2), 128, 256, 0.6) ==
          doctest::Approx(1.9073375902711e-14).epsilon(1e-6));
    CHECK(beta_random_code(1.0, 8, 16, 0.5) ==
          doctest::Approx(0.078907890527189).epsilon(1e-9));
}

TEST_CASE("distribution-weighted false acceptance") {
    // Fed the binomial spectrum, it reproduces the random-code closed form.
    DistanceDistribution dist = random_code_distribution(256, 128);
    for (double rho : {0.2, 0.5})
        for (double gb : {0.5, 1.0})
            CHECK(beta_from_distribution(gb, 128, rho, dist) ==
                  doctest::Approx(beta_random_code(gb, 128, 256, rho)).epsilon(1e-12));

    // A pure point mass at distance d reproduces the equidistant form.
    DistanceDistribution point;
    point.l = 32;
    point.weights[8] = 5.0;
    CHECK(beta_from_distribution(0.8, 16, 0.3, point) ==
          doctest::Approx(beta_equidistant(0.8, 16, 8.0 / 32.0, 0.3)).epsilon(1e-14));

    // The d = 0 self-pair term is excluded but still counts in the total.
    DistanceDistribution with_self = point;
    with_self.weights[0] = 5.0;
    CHECK(beta_from_distribution(0.8, 16, 0.3, with_self) ==
          doctest::Approx(0.5 * beta_from_distribution(0.8, 16, 0.3, point)).epsilon(1e-14));

    DistanceDistribution empty;
    empty.l = 8;
    CHECK_THROWS_AS(beta_from_distribution(1.0, 8, 0.5, empty), std::invalid_argument);
}

TEST_CASE("likelihood-ratio statistic: noiseless limit and guards") {
    MacParams mp;
    mp.n = 8;
    mp.l = 16;
    mp.prf = PrfId::toy;
    KeySpace space = KeySpace::exhaustive(8);
    SourceMessage msg = {'z'};
    SecretKey k = space.key(77);

    NoisyTag authentic = raw_tag(bipolarize(compute_tag(k, msg, mp)));
    double stat = optimal_llr_statistic(authentic, msg, k, space, mp, 1e-4);
    // With the true-key likelihood dominating the mixture, the statistic
    // approaches log |K|.
    CHECK(stat > 0.99 * std::log(256.0));
    CHECK(stat < std::log(256.0) + 1e-6);

    // A wrong claimed key is strongly disfavored.
    CHECK(optimal_llr_statistic(authentic, msg, space.key(78), space, mp, 1e-4) < -100.0);

    KeySpace narrow = KeySpace::explicit_list({space.key(1), space.key(2)});
    CHECK_THROWS_AS(optimal_llr_statistic(authentic, msg, k, narrow, mp, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_llr_statistic(raw_tag({1.0}), msg, k, space, mp, 0.5),
                    std::invalid_argument);
}

TEST_CASE("likelihood-ratio test weakly dominates the correlation test") {
    MacParams mp;
    mp.n = 8;
    mp.l = 16;
    mp.prf = PrfId::toy;
    KeySpace space = KeySpace::exhaustive(8);
    SourceMessage msg = {'n', 'p'};
    SecretKey claimed = space.key(173);
    Tag claimed_tag = compute_tag(claimed, msg, mp);
    ChannelParams cp;
    cp.sigma_w = 1.0;
    cp.q.reset();

    const size_t N = 5000;
    std::vector<double> corr0, corr1, llr0, llr1;
    corr0.reserve(N);
    for (size_t t = 0; t < N; ++t) {
        NoisyTag h0 = make_ana_tag(claimed, msg, mp, cp, mix3(1, streams::trial_noise, t));
        corr0.push_back(correlation_statistic(claimed_tag, h0));
        llr0.push_back(optimal_llr_statistic(h0, msg, claimed, space, mp, cp.sigma_w));

        SecretKey eve = space.key(size_t(mix3(1, streams::wrong_key, t) % 256));
        NoisyTag h1 = make_ana_tag(eve, msg, mp, cp, mix3(2, streams::trial_noise, t));
        corr1.push_back(correlation_statistic(claimed_tag, h1));
        llr1.push_back(optimal_llr_statistic(h1, msg, claimed, space, mp, cp.sigma_w));
    }
    std::sort(corr0.begin(), corr0.end());
    std::sort(llr0.begin(), llr0.end());

    auto frac_ge = [N](const std::vector<double>& v, double thr) {
        size_t c = 0;
        for (double x : v) c += (x >= thr);
        return double(c) / double(N);
    };

    for (double astar : {0.05, 0.1, 0.2, 0.3, 0.5, 0.7}) {
        size_t idx = size_t(astar * double(N));
        double thr_c = corr0[idx]; // empirical alpha of both tests is idx/N
        double thr_l = llr0[idx];
        double beta_c = frac_ge(corr1, thr_c);
        double beta_l = frac_ge(llr1, thr_l);
        double se = 3.0 * std::sqrt((beta_c * (1 - beta_c) + beta_l * (1 - beta_l)) / double(N));
        CHECK(beta_l <= beta_c + se + 1e-9);
    }
}

TEST_CASE("deception inequality holds exactly on an enumerable instance") {
    // n=4 keys, l=8 one-bit-quantized symbols: any test's decision divergence
    // D(alpha, beta) is capped by the tag's key leakage I(K; T~), and both
    // sides are computable exactly at this size.
    const unsigned n = 4, l = 8;
    const double sigma = 0.8;
    MacParams mp;
    mp.n = n;
    mp.l = l;
    mp.prf = PrfId::toy;
    KeySpace space = KeySpace::exhaustive(n);
    SourceMessage msg = {'d', 'k'};

    // Per-symbol exact one-bit cell masses: level 1 covers [0, inf).
    auto p_level1 = [&](double mu) { return q_function(-mu / sigma); };

    std::vector<Tag> tags;
    for (size_t k = 0; k < 16; ++k) tags.push_back(compute_tag(space.key(k), msg, mp));

    // p(t | k) over all 2^8 level patterns and the key-average mixture.
    std::vector<std::vector<double>> p(16, std::vector<double>(256));
    std::vector<double> mix(256, 0.0);
    for (size_t k = 0; k < 16; ++k) {
        for (unsigned pat = 0; pat < 256; ++pat) {
            double pr = 1.0;
            for (unsigned i = 0; i < l; ++i) {
                double mu = tags[k].get(i) ? -1.0 : 1.0;
                double p1 = p_level1(mu);
                pr *= (pat >> (l - 1 - i) & 1) ? p1 : 1.0 - p1;
            }
            p[k][pat] = pr;
            mix[pat] += pr / 16.0;
        }
    }

    double info = 0.0; // I(K; T~) in bits
    for (size_t k = 0; k < 16; ++k)
        for (unsigned pat = 0; pat < 256; ++pat)
            if (p[k][pat] > 0) info += (p[k][pat] / 16.0) * std::log2(p[k][pat] / mix[pat]);

    // Optimal-test sweep: score every (k, pattern) pair by its exact
    // log-likelihood ratio and trace out (alpha, beta) at every threshold.
    struct Pt {
        double llr, w0, w1;
    };
    std::vector<Pt> pts;
    pts.reserve(16 * 256);
    for (size_t k = 0; k < 16; ++k)
        for (unsigned pat = 0; pat < 256; ++pat)
            pts.push_back({std::log(p[k][pat] / mix[pat]), p[k][pat] / 16.0, mix[pat] / 16.0});
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.llr < b.llr; });

    double alpha = 0.0, beta = 1.0;
    for (const Pt& pt : pts) {
        // Threshold just below pt.llr: everything earlier is rejected.
        double dval = deception_D(alpha, beta);
        CHECK(dval <= info + 1e-9);
        alpha += pt.w0;
        beta -= pt.w1;
    }
}
