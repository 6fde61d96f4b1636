// triplet.hpp — characteristic pairs and triplets of quasi-infinitely
// divisible laws, and the calculus around the exponent
//
//   Psi(z) = i gamma z - a z^2 / 2 + sum_x w_x (e^{izx} - 1 - i z c(x)),
//
// where c is one of three representation functions:
//
//   Standard : c(x) = x 1_{[-1,1]}(x)
//   Drift    : c(x) = 0      (gamma is then the drift gamma_0)
//   Center   : c(x) = x      (gamma is then the center gamma_m = mean)
//
// The pair form folds the Gaussian variance a into an atom at 0 of the
// finite signed measure zeta(dx) = a delta_0 + (1 ^ x^2) nu(dx); the two
// forms are interconvertible and a = zeta({0}) must be nonnegative for a
// genuine distribution.

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qid/signed_measure.hpp"

namespace qid {

enum class RepresentationKind { Standard, Drift, Center };

const char* to_string(RepresentationKind k);

// The representation function c(x) of the given kind.
double representation_c(RepresentationKind kind, double x);

// g_c(x, z) = (e^{izx} - 1 - izc(x)) / (1 ^ x^2), continuously extended by
// -z^2/2 at x = 0. Defined for the Standard kind only; throws
// std::invalid_argument otherwise.
std::complex<double> g_c(double x, double z, RepresentationKind kind);

struct CharacteristicTriplet {
    double a = 0.0;     // Gaussian variance, >= 0
    SignedMeasure nu;   // quasi-Levy measure, no atom at 0
    double gamma = 0.0;
    RepresentationKind kind = RepresentationKind::Standard;
};

struct CharacteristicPair {
    SignedMeasure zeta;
    double gamma = 0.0;
    RepresentationKind kind = RepresentationKind::Standard;
};

// Validating constructor: a >= 0, nu({0}) = 0.
CharacteristicTriplet make_triplet(double a, SignedMeasure nu, double gamma, RepresentationKind kind);

// Characteristic exponent; Psi(0) = 0 and Psi(-z) = conj(Psi(z)).
std::complex<double> psi_eval(const CharacteristicTriplet& t, double z);

// zeta({0}) -> a, (1 ^ x^2)^{-1} zeta off 0 -> nu. Throws
// std::domain_error when zeta({0}) < 0 (not a valid QID pair).
CharacteristicTriplet pair_to_triplet(const CharacteristicPair& p);
CharacteristicPair triplet_to_pair(const CharacteristicTriplet& t);

// gamma_2 = gamma_1 + sum_x (c_2(x) - c_1(x)) nu({x}); a and nu unchanged.
CharacteristicTriplet rebase_gamma(const CharacteristicTriplet& t, RepresentationKind target);

// Triplet of mX + b for m != 0: (a m^2, nu(m^{-1} .), transformed gamma).
CharacteristicTriplet affine_transform(const CharacteristicTriplet& t, double m, double b);

// Triplet of the convolution: components add (same kind required).
CharacteristicTriplet convolve_triplets(const CharacteristicTriplet& s, const CharacteristicTriplet& t);

struct VarianceProbe {
    std::array<double, 3> z{};
    std::array<double, 3> estimate{};  // -2 Re Psi(z) / z^2
    double spread = 0.0;               // max - min of the estimates
};

// Samples -2 Psi(z)/z^2 at z_max/4, z_max/2, z_max. A diagnostic for the
// Gaussian variance a = -2 lim z^{-2} Psi(z); the spread is reported, no
// convergence is asserted.
VarianceProbe gaussian_variance_probe(const std::function<std::complex<double>(double)>& psi, double z_max);

struct InequalityCheck {
    std::string name;
    bool applicable = true;  // the a = 0 checks are skipped when a > 0
    bool pass = true;
    double margin = 0.0;   // min over the grid of lhs - rhs
    double worst_z = 0.0;  // grid point attaining the margin (grid checks)
};

struct ValidationReport {
    std::vector<InequalityCheck> checks;
    bool pass = true;  // all applicable checks pass
};

// Default grid for validate_necessary: 128 points log-spaced in [1e-2, 1e3].
std::vector<double> default_z_grid();

// Necessary conditions on (a, nu) for a QID triplet. FAIL means certainly
// not a characteristic triplet; PASS is necessary, not sufficient.
ValidationReport validate_necessary(const CharacteristicTriplet& t, const std::vector<double>& z_grid);

}  // namespace qid
