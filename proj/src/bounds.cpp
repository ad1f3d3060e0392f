#include "anamac/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "anamac/mac.hpp"

namespace anamac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename F>
double simpson_half(F& f, double a, double m, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_half(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_half(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson with the usual 15x local error share.
template <typename F>
double adaptive_simpson(F f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_half(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

double log2_one_plus_exp(double x) {
    if (x > 0.0) return (x + std::log1p(std::exp(-x))) / std::numbers::ln2;
    return std::log1p(std::exp(x)) / std::numbers::ln2;
}

double log_beta_fn(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Lentz continued fraction for the regularized incomplete beta.
double beta_cf(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3e-16) break;
    }
    return h;
}

// log of the unregularized-tail prefactor x^a (1-x)^b / (a B(a,b)).
double log_inc_beta_pre(double x, double a, double b, double xc) {
    return a * std::log(x) + b * std::log(xc) - std::log(a) - log_beta_fn(a, b);
}

// log I_x(a, b), exact deep into the left tail where I_x underflows. The
// caller supplies xc = 1 - x computed in whatever form stays exact (e.g.
// cos^2 when x = sin^2 saturates at 1), so neither tail loses resolution.
double log_reg_inc_beta(double x, double a, double b, double xc) {
    if (x <= 0.0) return -kInf;
    if (xc <= 0.0) return 0.0;
    if (x < (a + 1.0) / (a + b + 2.0))
        return log_inc_beta_pre(x, a, b, xc) + std::log(beta_cf(x, a, b)); // cf is O(1) here
    return std::log1p(-std::exp(log_inc_beta_pre(xc, b, a, x) + std::log(beta_cf(xc, b, a))));
}

// log f_l(x) for f_l(x) = [2^{(l-1)/2} Gamma((l+1)/2)]^{-1}
// * integral_0^inf z^{l-1} exp(-z^2/2 + z x) dz. The integrand is log-concave
// with mode at the positive root of z^2 - x z - (l-1) = 0; a Simpson grid
// spanning +-12 posterior sigmas captures it at any magnitude.
double log_f_l(unsigned l, double x) {
    double lm1 = double(l) - 1.0;
    double zstar = 0.5 * (x + std::sqrt(x * x + 4.0 * lm1));
    double sigma = 1.0 / std::sqrt(lm1 / (zstar * zstar) + 1.0);
    double zlo = std::max(zstar - 12.0 * sigma, 0.0);
    double zhi = zstar + 12.0 * sigma;
    constexpr int N = 1600;
    double h = (zhi - zlo) / N;
    std::vector<double> li(N + 1);
    double m = -kInf;
    for (int i = 0; i <= N; ++i) {
        double z = zlo + i * h;
        li[i] = z > 0.0 ? lm1 * std::log(z) - 0.5 * z * z + z * x : -kInf;
        m = std::max(m, li[i]);
    }
    double acc = 0.0;
    for (int i = 0; i <= N; ++i) {
        double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::exp(li[i] - m);
    }
    double log_integral = m + std::log(acc * h / 3.0);
    return log_integral - 0.5 * lm1 * std::numbers::ln2 - std::lgamma(0.5 * (double(l) + 1.0));
}

} // namespace

double DistanceDistribution::total() const {
    double s = 0.0;
    for (const auto& [d, w] : weights) s += w;
    return s;
}

double DistanceDistribution::mean_distance() const {
    double s = 0.0, t = 0.0;
    for (const auto& [d, w] : weights) {
        s += double(d) * w;
        t += w;
    }
    return t > 0.0 ? s / t : 0.0;
}

double bi_awgn_capacity(double gamma_t) {
    if (!(gamma_t >= 0.0)) throw std::invalid_argument("bi_awgn_capacity: gamma_t must be >= 0");
    if (gamma_t == 0.0) return 0.0;
    double beta = std::sqrt(2.0 * gamma_t);
    auto integrand = [beta](double y) {
        double g = std::exp(-0.5 * (y - beta) * (y - beta)) / std::sqrt(2.0 * std::numbers::pi);
        return g * log2_one_plus_exp(-2.0 * beta * y);
    };
    double c = 1.0 - adaptive_simpson(integrand, beta - 14.0, beta + 14.0, 1e-13);
    return std::clamp(c, 0.0, 1.0);
}

double equivocation_lower_bound(unsigned n, unsigned l, unsigned r, double gamma_t) {
    double rc = coding_rate(n, r, l);
    double c2 = bi_awgn_capacity(gamma_t);
    return double(n) * std::max(0.0, 1.0 - c2 / rc);
}

double log_cap_fraction(unsigned l, double theta) {
    if (l < 2) throw std::invalid_argument("log_cap_fraction: l must be >= 2");
    if (theta <= 0.0) return -kInf;
    if (theta >= std::numbers::pi) return 0.0;
    double a = 0.5 * (double(l) - 1.0);
    double s = std::sin(theta);
    double c = std::cos(theta);
    double li = log_reg_inc_beta(s * s, a, 0.5, c * c);
    if (theta <= 0.5 * std::numbers::pi) return li - std::numbers::ln2;
    return std::log1p(-0.5 * std::exp(li));
}

double sp59_cone_angle(unsigned l, double rate) {
    if (l < 2) throw std::invalid_argument("sp59_cone_angle: l must be >= 2");
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("sp59_cone_angle: rate must be in (0, 1]");
    double target = -double(l) * rate * std::numbers::ln2;
    double lo = 0.0, hi = std::numbers::pi;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        double mid = 0.5 * (lo + hi);
        (log_cap_fraction(l, mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double sp59_bound(unsigned l, double rate, double gamma_t) {
    if (!(gamma_t >= 0.0)) throw std::invalid_argument("sp59_bound: gamma_t must be >= 0");
    double theta = sp59_cone_angle(l, rate);
    double amp = std::sqrt(2.0 * double(l) * gamma_t);
    // Probability that noise pushes the signal direction outside the cone of
    // half-angle theta. Splitting the range at pi/2 recovers the
    // Q(amp) + [theta, pi/2] tail-integral decomposition term for term.
    constexpr int N = 4000;
    double h = (std::numbers::pi - theta) / N;
    if (!(h > 0.0)) return 0.0;
    std::vector<double> li(N + 1);
    double m = -kInf;
    for (int i = 0; i <= N; ++i) {
        double phi = theta + i * h;
        double s = std::sin(phi);
        double logs = l == 2 ? 0.0 : (s > 0.0 ? (double(l) - 2.0) * std::log(s) : -kInf);
        li[i] = logs + log_f_l(l, amp * std::cos(phi));
        m = std::max(m, li[i]);
    }
    if (!std::isfinite(m)) return 0.0;
    double acc = 0.0;
    for (int i = 0; i <= N; ++i) {
        double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::exp(li[i] - m);
    }
    double log_integral = m + std::log(acc * h / 3.0);
    double logp = std::log((double(l) - 1.0) / std::sqrt(2.0 * std::numbers::pi)) -
                  double(l) * gamma_t + log_integral;
    return std::clamp(std::exp(logp), 0.0, 1.0);
}

double deception_D(double alpha, double beta) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("deception_D: alpha range");
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("deception_D: beta range");
    double acc = 0.0;
    if (alpha > 0.0) acc += alpha * std::log2(alpha / (1.0 - beta));
    if (alpha < 1.0) acc += (1.0 - alpha) * std::log2((1.0 - alpha) / beta);
    return acc;
}

double equivocation_approx(unsigned n, unsigned l, double gamma_t,
                           const DistanceDistribution& dist) {
    if (dist.l != l) throw std::invalid_argument("equivocation_approx: distribution length mismatch");
    double s = 0.0;
    for (const auto& [d, w] : dist.weights) s += double(d) * w;
    double dbar = std::ldexp(s, -int(n));
    return double(n) - 4.0 / std::numbers::ln2 * gamma_t * dbar;
}

DistanceDistribution random_code_distribution(unsigned l, unsigned n) {
    if (l == 0) throw std::invalid_argument("random_code_distribution: l must be positive");
    DistanceDistribution out;
    out.l = l;
    double lg = std::lgamma(double(l) + 1.0);
    for (unsigned d = 0; d <= l; ++d) {
        double logw = lg - std::lgamma(double(d) + 1.0) - std::lgamma(double(l - d) + 1.0) +
                      (double(n) - double(l)) * std::numbers::ln2;
        out.weights[d] = std::exp(logw);
    }
    return out;
}

double delsarte_bound(unsigned l, unsigned s) {
    if (s < 1 || s > l) throw std::invalid_argument("delsarte_bound: need 1 <= s <= l");
    double acc = 1.0, term = 1.0;
    for (unsigned i = 1; i <= s; ++i) {
        term *= double(l - i + 1) / double(i);
        acc += term;
    }
    return acc;
}

EquidistantDesign equidistant_design(unsigned l, unsigned M, unsigned n, double rho) {
    if (M < 2) throw std::invalid_argument("equidistant_design: M must be >= 2");
    if (n == 0) throw std::invalid_argument("equidistant_design: n must be positive");
    double d_opt = double(M) * double(l) / (2.0 * (double(M) - 1.0));
    double delta = std::sqrt((1.0 - rho) * (1.0 - rho) / double(n));
    return {d_opt, delta};
}

} // namespace anamac
