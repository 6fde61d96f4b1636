// cuppens.hpp — quasi-Levy measures from factorization series.
//
// A distribution with a dominant atom p = mu({lambda}) > 1/2 is QID with
//
//   nu = sum_{m>=1} (-1)^{m+1} m^{-1} ((1-p)/p)^m (delta_{-lambda} * sigma)^{*m}
//        restricted off 0,         sigma = (1-p)^{-1} (mu - p delta_lambda),
//
// drift lambda and Gaussian variance 0. The same logarithmic series handles
// convex mixtures p mu_1 + q mu_2 when a signed sigma with
// sigma^ = mu_2^ / mu_1^ and |sigma|(R) < p/q is supplied, and the two-point
// complex factor delta_1 - xi delta_0 in closed form.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>

#include "qid/lattice.hpp"
#include "qid/signed_measure.hpp"
#include "qid/triplet.hpp"

namespace qid {

struct SeriesTriplet {
    CharacteristicTriplet triplet;
    std::size_t terms = 0;   // series index M actually summed
    double tail_bound = 0.0;  // total-variation bound on the dropped tail
};

// Dominant-atom series. Throws std::invalid_argument when the largest atom
// has mass p <= 1/2 + 1e-9 (the hypothesis fails) or tail_tol <= 0.
SeriesTriplet cuppens_series(const LatticeDistribution& mu, double tail_tol);

enum class GridVerification { Require, Warn, Off };

struct MixtureOptions {
    GridVerification verification = GridVerification::Require;
    const SignedMeasure* mu2 = nullptr;  // enables the sigma^ = mu_2^/mu_1^ grid check
    double verify_tol = 1e-8;            // on 64 grid points in (0, 2pi]
};

// Triplet of p mu_1 + (1-p) mu_2 from mu_1's triplet and sigma with
// sigma^ = mu_2^/mu_1^. Requires p in (1/2, 1) and |sigma|(R) < p/(1-p).
SeriesTriplet mixture_series(const CharacteristicTriplet& mu1, const SignedMeasure& sigma, double p,
                             double tail_tol, const MixtureOptions& opts = {});

// Complex-weighted atomic measure on Z; internal to the factor routines,
// never serialized.
class ComplexAtomicMeasure {
  public:
    void add(std::int64_t n, std::complex<double> w);
    const std::map<std::int64_t, std::complex<double>>& atoms() const { return atoms_; }
    double total_variation() const;
    double max_imag() const;
    SignedMeasure real_part() const;  // on Z, imaginary parts dropped

    friend ComplexAtomicMeasure operator+(const ComplexAtomicMeasure& a, const ComplexAtomicMeasure& b);

  private:
    std::map<std::int64_t, std::complex<double>> atoms_;
};

struct TwoPointFactor {
    ComplexAtomicMeasure nu;           // geometric series, truncated at 1e-14
    int drift = 0;                     // 1 when |xi| < 1, else 0
    std::complex<double> constant{1.0, 0.0};  // 1 - xi
};

// Closed-form factor of delta_1 - xi delta_0; throws std::invalid_argument
// when | |xi| - 1 | <= 1e-9.
TwoPointFactor factor_two_point(std::complex<double> xi);

}  // namespace qid
