// Acceptance gate: each case checks one deliverable criterion at its stated
// tolerance and prints exactly one PASS/FAIL line. Tolerances and parameters
// are fixed here on purpose; loosening them is not an option.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "anamac/adversary.hpp"
#include "anamac/bounds.hpp"
#include "anamac/channel.hpp"
#include "anamac/rng.hpp"
#include "anamac/verifier.hpp"

using namespace anamac;

namespace {

SourceMessage msg_bytes(const std::string& s) { return SourceMessage(s.begin(), s.end()); }

MacParams mac_of(unsigned n, unsigned l, PrfId prf) {
    MacParams p;
    p.n = n;
    p.l = l;
    p.prf = prf;
    return p;
}

ChannelParams channel_of(double sigma, std::optional<unsigned> q) {
    ChannelParams c;
    c.sigma_w = sigma;
    c.q = q;
    return c;
}

double binomial_half_pmf(unsigned l, unsigned d) {
    return std::exp(std::lgamma(double(l) + 1.0) - std::lgamma(double(d) + 1.0) -
                    std::lgamma(double(l - d) + 1.0) - double(l) * std::log(2.0));
}

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

bool report(int num, const char* name, bool pass, const std::string& detail) {
    std::printf("ACCEPTANCE %d %s: %s%s%s%s\n", num, name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : " (", detail.c_str(), detail.empty() ? "" : ")");
    std::fflush(stdout);
    return pass;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

} // namespace

TEST_CASE("acceptance_1_distance_spectrum") {
    Stopwatch sw;
    MacParams mac = mac_of(128, 256, PrfId::reference);
    const size_t sample = 100000;
    const uint64_t seed = 1;

    std::vector<SecretKey> keys;
    keys.reserve(sample);
    for (size_t i = 0; i < sample; ++i)
        keys.push_back(gen_key(mac, mix3(seed, streams::sample_key, i)));
    SecretKey ref = gen_key(mac, mix3(seed, streams::keygen, 0));
    DistanceDistribution emp = distance_distribution(mac, msg_bytes("spectrum probe"),
                                                     KeySpace::explicit_list(std::move(keys)), ref);
    double tv = 0.0;
    for (unsigned d = 0; d <= 256; ++d) {
        double e = 0.0;
        if (auto it = emp.weights.find(d); it != emp.weights.end()) e = it->second / double(sample);
        tv += std::abs(e - binomial_half_pmf(256, d));
    }
    tv *= 0.5;

    std::vector<SecretKey> refs;
    for (uint64_t i = 0; i < 4; ++i) refs.push_back(gen_key(mac, mix3(seed, streams::keygen, 1 + i)));
    InvarianceReport inv = distance_invariance_check(
        mac, {msg_bytes("invariance A"), msg_bytes("invariance B")}, refs, sample, seed, 0.05);

    double secs = sw.seconds();
    bool pass = tv <= 0.01 && inv.pass && !inv.degenerate && secs < 120.0;
    CHECK(report(1, "distance_spectrum", pass,
                 "tv=" + fmt(tv) + ", max_tv=" + fmt(inv.max_tv) + ", " + fmt(secs) + "s"));
}

TEST_CASE("acceptance_2_equivocation_floor") {
    double gamma_t = ebn0_db_to_gamma_b(-3.0) * coding_rate(128, 1, 256);
    double bits = equivocation_lower_bound(128, 256, 1, gamma_t);
    bool pass = bits >= 53.0 && bits <= 56.0;
    CHECK(report(2, "equivocation_floor", pass, "bound=" + fmt(bits) + " bits"));
}

TEST_CASE("acceptance_3_error_bound_crossover") {
    // Integer dB grid -6..+6 at l=256, rate 1/2.
    bool low_side = true;
    bool high_side = false;
    double at_minus2 = 0.0, at_minus1 = 0.0;
    for (int db = -6; db <= 6; ++db) {
        double gt = 0.5 * ebn0_db_to_gamma_b(double(db));
        double b = sp59_bound(256, 0.5, gt);
        if (db == -2) at_minus2 = b;
        if (db == -1) at_minus1 = b;
        if (db <= -1 && b < 0.99) low_side = false;
        if (db > 1 && b < 0.99) high_side = true;
    }
    bool pass = low_side && high_side;
    CHECK(report(3, "error_bound_crossover", pass,
                 "bound(-2 dB)=" + fmt(at_minus2) + ", bound(-1 dB)=" + fmt(at_minus1)));
}

TEST_CASE("acceptance_4_roc_match") {
    Stopwatch sw;
    MacParams mac = mac_of(128, 256, PrfId::reference);
    const std::vector<double> dbs = {-4.0, -2.0, 0.0, 2.0};
    const std::vector<double> rhos = {0.2, 0.4, 0.6};
    const size_t trials = 1000000;
    const double rc = coding_rate(mac.n, 1, mac.l);

    bool pass = true;
    std::string worst;
    for (size_t gi = 0; gi < dbs.size(); ++gi) {
        double gb = ebn0_db_to_gamma_b(dbs[gi]);
        ChannelParams chan = channel_of(sigma_w_for_gamma_t(rc * gb), 8u);
        auto points = monte_carlo_roc(mac, chan, rhos, trials, mix3(4001, 0x726f772d736e7200ULL, gi));
        for (const auto& pt : points) {
            double ac = alpha_closed_form(gb, mac.n, pt.rho);
            double bc = beta_random_code(gb, mac.n, mac.l, pt.rho);
            double sa = std::sqrt(ac * (1.0 - ac) / double(trials));
            double sb = std::sqrt(bc * (1.0 - bc) / double(trials));
            bool ok = std::abs(pt.alpha_hat - ac) <= 3.0 * sa && std::abs(pt.beta_hat - bc) <= 3.0 * sb;
            if (!ok && worst.empty())
                worst = "off at " + fmt(dbs[gi]) + " dB, rho=" + fmt(pt.rho) + ": alpha " +
                        fmt(pt.alpha_hat) + " vs " + fmt(ac) + ", beta " + fmt(pt.beta_hat) +
                        " vs " + fmt(bc);
            pass = pass && ok;
        }
    }
    double secs = sw.seconds();
    pass = pass && secs < 600.0;
    CHECK(report(4, "roc_match", pass,
                 (worst.empty() ? "12 operating points within 3 SE" : worst) + ", " + fmt(secs) + "s"));
}

TEST_CASE("acceptance_5_equivocation_vs_bound") {
    struct Size {
        unsigned n, l;
    };
    const std::vector<Size> sizes = {{8, 16}, {10, 20}, {12, 24}};
    const std::vector<double> dbs = {-2.0, 0.0, 2.0, 4.0};
    const size_t trials = 10000;

    bool pass = true;
    std::string worst;
    for (const Size& s : sizes) {
        MacParams mac = mac_of(s.n, s.l, PrfId::toy);
        KeySpace space = KeySpace::exhaustive(s.n);
        double rc = coding_rate(s.n, 1, s.l);
        for (size_t di = 0; di < dbs.size(); ++di) {
            double gt = rc * ebn0_db_to_gamma_b(dbs[di]);
            ChannelParams chan = channel_of(sigma_w_for_gamma_t(gt), std::nullopt);
            Estimate h = exact_equivocation(mac, chan, space, {msg_bytes("floor probe")}, trials,
                                            mix3(5001, uint64_t(s.n) << 8, di));
            double lb = equivocation_lower_bound(s.n, s.l, 1, gt);
            bool ok = h.value >= lb - 3.0 * h.std_error;
            if (!ok && worst.empty())
                worst = "n=" + std::to_string(s.n) + " at " + fmt(dbs[di]) + " dB: " + fmt(h.value) +
                        " < " + fmt(lb);
            pass = pass && ok;
        }
    }
    CHECK(report(5, "equivocation_vs_bound", pass,
                 worst.empty() ? "12 points respect the floor" : worst));
}

TEST_CASE("acceptance_6_ml_error_vs_bound") {
    MacParams mac = mac_of(12, 24, PrfId::toy);
    KeySpace space = KeySpace::exhaustive(12);
    const std::vector<double> dbs = {-2.0, 0.0, 2.0, 4.0};
    const size_t trials = 10000;
    SourceMessage msg = msg_bytes("decode probe");

    bool pass = true;
    std::string detail;
    for (size_t di = 0; di < dbs.size(); ++di) {
        double gt = 0.5 * ebn0_db_to_gamma_b(dbs[di]);
        ChannelParams chan = channel_of(sigma_w_for_gamma_t(gt), std::nullopt);
        uint64_t seed = mix3(6001, 0x6d6c00, di);
        size_t errors = 0;
        for (size_t t = 0; t < trials; ++t) {
            SecretKey key = space.key(size_t(mix3(seed, streams::trial_key, t) % space.size()));
            NoisyTag obs = make_ana_tag(key, msg, mac, chan, mix3(seed, streams::trial_noise, t));
            if (!(ml_decode({{msg, obs}}, space, mac, chan.sigma_w) == key)) ++errors;
        }
        double err = double(errors) / double(trials);
        double se = std::sqrt(err * (1.0 - err) / double(trials));
        double floor = sp59_bound(24, 0.5, gt);
        bool ok = err >= floor - 3.0 * se;
        if (!ok && detail.empty())
            detail = "at " + fmt(dbs[di]) + " dB: " + fmt(err) + " < " + fmt(floor);
        pass = pass && ok;
    }
    CHECK(report(6, "ml_error_vs_bound", pass,
                 detail.empty() ? "4 SNR points stay above the floor" : detail));
}

TEST_CASE("acceptance_7_spoof_info_bound") {
    // gamma_b = 1 at n=8, l=12, r=1: gamma_t = 2/3.
    MacParams mac = mac_of(8, 12, PrfId::toy);
    KeySpace space = KeySpace::exhaustive(8);
    ChannelParams chan = channel_of(sigma_w_for_gamma_t(2.0 / 3.0), std::nullopt);
    ChannelParams clean = channel_of(0.0, std::nullopt);
    SourceMessage m1 = msg_bytes("observed tag");
    SourceMessage m2 = msg_bytes("forged tag");
    const size_t trials = 20000;
    const uint64_t seed = 7001;

    Estimate spoof = optimal_spoof_success({m1}, space, m2, mac, chan, trials, seed);
    Estimate ha = exact_equivocation(mac, chan, space, {m1}, trials, seed);
    Estimate hb = exact_equivocation(mac, {chan, clean}, space, {m1, m2}, trials, seed);
    double info = ha.value - hb.value;
    double bound = std::pow(2.0, -info);
    double se = std::sqrt(spoof.std_error * spoof.std_error +
                          std::pow(std::log(2.0) * bound, 2.0) *
                              (ha.std_error * ha.std_error + hb.std_error * hb.std_error));
    bool pass = spoof.value >= bound - 3.0 * se && info >= 0.0;
    CHECK(report(7, "spoof_info_bound", pass,
                 "p1=" + fmt(spoof.value) + ", bound=" + fmt(bound) + ", leaked=" + fmt(info) +
                     " bits"));
}

TEST_CASE("acceptance_8_quantizer_monotonicity") {
    // n=10, l=20 at 0 dB: gamma_t = 0.5, sigma_w = 1.
    MacParams mac = mac_of(10, 20, PrfId::toy);
    KeySpace space = KeySpace::exhaustive(10);
    std::vector<SourceMessage> msgs = {msg_bytes("staircase")};
    const size_t trials = 10000;
    const uint64_t seed = 8001;
    const double sigma = sigma_w_for_gamma_t(0.5);

    Estimate un = exact_equivocation(mac, channel_of(sigma, std::nullopt), space, msgs, trials, seed);
    Estimate h2 = exact_equivocation(mac, channel_of(sigma, 2u), space, msgs, trials, seed);
    Estimate h4 = exact_equivocation(mac, channel_of(sigma, 4u), space, msgs, trials, seed);
    Estimate h8 = exact_equivocation(mac, channel_of(sigma, 8u), space, msgs, trials, seed);

    auto slack = [](const Estimate& a, const Estimate& b) {
        return 3.0 * std::hypot(a.std_error, b.std_error);
    };
    bool above = h2.value >= un.value - slack(h2, un) && h4.value >= un.value - slack(h4, un) &&
                 h8.value >= un.value - slack(h8, un);
    bool staircase = h2.value >= h4.value - slack(h2, h4) && h4.value >= h8.value - slack(h4, h8);
    bool pass = above && staircase;
    CHECK(report(8, "quantizer_monotonicity", pass,
                 "H2=" + fmt(h2.value) + ", H4=" + fmt(h4.value) + ", H8=" + fmt(h8.value) +
                     ", unquantized=" + fmt(un.value)));
}

TEST_CASE("acceptance_9_frame_roundtrip") {
    bool pass = true;
    std::string detail;

    for (size_t i = 0; i < 10000 && pass; ++i) {
        uint64_t r = mix3(9001, 0x6672616d65ULL, i);
        ChannelParams p;
        p.q = 1 + unsigned(r % 16);
        p.sigma_w = double((r >> 8) % 1000) / 250.0;
        p.clip_A = 1.0001 + double((r >> 24) % 300) / 100.0;
        unsigned l = 1 + unsigned((r >> 40) % 300);
        std::vector<double> x(l);
        for (unsigned j = 0; j < l; ++j) {
            uint64_t s = mix3(9002, i, j);
            x[j] = (u64_to_unit(s) * 2.0 - 1.0) * (p.clip() + 1.0);
        }
        NoisyTag sent = quantize(x, p);
        Bytes frame = encode_packet(sent, p);
        auto [got, gp] = decode_packet(frame);
        bool ok = got.levels == sent.levels && gp.q == p.q && gp.sigma_w == p.sigma_w &&
                  gp.clip_A == p.clip() && encode_packet(got, gp) == frame;
        if (!ok) {
            pass = false;
            detail = "random frame " + std::to_string(i) + " did not survive";
        }
    }

    struct Golden {
        const char* hex;
        unsigned q, l;
        double sigma, clip;
        std::vector<uint16_t> levels;
    };
    const std::vector<Golden> golden = {
        {"414e414d010100083fe0000000000000400800000000000069",
         1, 8, 0.5, 3.0, {0, 1, 1, 0, 1, 0, 0, 1}},
        {"414e414d010800043ff0000000000000401400000000000000ff8007",
         8, 4, 1.0, 5.0, {0, 255, 128, 7}},
        {"414e414d010200053fd00000000000004000000000000000c9c0",
         2, 5, 0.25, 2.0, {3, 0, 2, 1, 3}},
        {"414e414d010400103fe6a09e667f3bcd400ea09e667f3bcd0123456789abcdef",
         4, 16, 0.7071067811865476, 3.8284271247461903,
         {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}},
        {"414e414d0103000c00000000000000003ff20000000000009241db6ea0",
         3, 12, 0.0, 1.125, {4, 4, 4, 4, 0, 7, 3, 3, 3, 3, 5, 2}},
    };
    for (size_t g = 0; g < golden.size(); ++g) {
        auto [tag, gp] = decode_packet(from_hex(golden[g].hex));
        bool ok = gp.q && *gp.q == golden[g].q && tag.levels.size() == golden[g].l &&
                  gp.sigma_w == golden[g].sigma && gp.clip_A == golden[g].clip &&
                  tag.levels == golden[g].levels &&
                  to_hex(encode_packet(tag, gp)) == golden[g].hex;
        if (!ok) {
            pass = false;
            if (detail.empty()) detail = "golden frame " + std::to_string(g + 1) + " mismatched";
        }
    }
    CHECK(report(9, "frame_roundtrip", pass,
                 detail.empty() ? "10000 random frames and 5 golden frames" : detail));
}
