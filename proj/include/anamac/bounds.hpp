#pragma once

#include <map>
#include <string>

namespace anamac {

// Pair-count spectrum of a code: weights[d] is the (mean) number of codewords
// at Hamming distance d from a reference word.
struct DistanceDistribution {
    unsigned l = 0;
    std::map<unsigned, double> weights;

    double total() const;
    double mean_distance() const;
};

// One evaluated bound with the inputs that produced it.
struct BoundReport {
    std::string name;
    std::map<std::string, double> params;
    double value = 0.0;
    std::string units; // "bits" | "probability" | "dimensionless"
};

// Capacity of the binary-input AWGN channel at per-symbol SNR gamma_t,
// absolute error <= 1e-6.
double bi_awgn_capacity(double gamma_t);

// Guaranteed key equivocation after observing r noisy tags:
// n * max(0, 1 - C2(gamma_t) / R_c(r)).
double equivocation_lower_bound(unsigned n, unsigned l, unsigned r, double gamma_t);

// log of the surface fraction of the unit l-sphere inside a cap of half-angle
// theta. Monotone increasing on [0, pi]; stable when the fraction underflows.
double log_cap_fraction(unsigned l, double theta);

// Half-angle whose cap fraction equals 2^{-l*rate}, by bisection.
double sp59_cone_angle(unsigned l, double rate);

// Sphere-packing lower bound on the block error probability of any
// length-l rate-`rate` code on the AWGN channel at per-symbol SNR gamma_t.
double sp59_bound(unsigned l, double rate, double gamma_t);

// D(alpha, beta) in bits: the binary divergence between an (alpha, beta)
// test's decision distributions under the two hypotheses.
double deception_D(double alpha, double beta);

// Second-order equivocation approximation n - (4/ln2) * gamma_t * dbar with
// dbar = 2^{-n} * sum_d d * A_d. Can undershoot the true equivocation.
double equivocation_approx(unsigned n, unsigned l, double gamma_t,
                           const DistanceDistribution& dist);

// Expected spectrum of a random code of 2^n words: A_d = C(l,d) * 2^{n-l}.
DistanceDistribution random_code_distribution(unsigned l, unsigned n);

// Maximum size of a length-l code whose words take at most s distinct
// nonzero pairwise distances: sum_{i=0}^{s} C(l,i).
double delsarte_bound(unsigned l, unsigned s);

struct EquidistantDesign {
    double d_opt;           // pairwise distance maximizing the minimum gap
    double delta_balanced;  // normalized distance of the beta = alpha design
};
EquidistantDesign equidistant_design(unsigned l, unsigned M, unsigned n, double rho);

} // namespace anamac
