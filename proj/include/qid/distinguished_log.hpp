// distinguished_log.hpp — the continuous logarithm g of the characteristic
// function of a Z-supported distribution, with g(0) = 0.
//
// mu^ is sampled on z_j = 2 pi j / N; the phase is unwrapped cumulatively
// under the assumption |delta arg| < pi per step, with the grid doubled
// (up to 2^18) whenever a step exceeds pi/2 or the Fourier coefficients of
// g~(z) = g(z) - ikz have not decayed at the top of the band. The winding
// number k = g(2 pi)/(2 pi i) is the drift; the Fourier coefficients b_n of
// g~ are the quasi-Levy atoms on Z and are real for genuine distributions.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qid/lattice.hpp"

namespace qid {

inline constexpr double kCharFnDefiniteZero = 1e-12;
inline constexpr double kCharFnZeroGuard = 1e-8;
inline constexpr std::size_t kMaxUnwrapGrid = std::size_t{1} << 18;

// |mu^| fell below the guard threshold somewhere on the grid.
struct CharFnNearZero : std::runtime_error {
    CharFnNearZero(double min_abs_, double at_z_)
        : std::runtime_error("possible zero of characteristic function"), min_abs(min_abs_), at_z(at_z_) {}
    double min_abs;
    double at_z;
};

// The phase could not be tracked even on the finest grid.
struct PhaseUnwrapFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DistinguishedLog {
    std::size_t grid_size = 0;                    // N (power of two)
    std::vector<std::complex<double>> samples;    // g(2 pi j / N), j = 0..N
    std::int64_t drift_k = 0;                     // g(2 pi) / (2 pi i)
    std::map<std::int64_t, double> fourier_coeffs;  // n -> Re b_n, n != 0, above drop_tol
    double dropped_l1 = 0.0;           // sum |b_n| discarded below drop_tol
    double max_imag_residual = 0.0;    // max |Im b_n| discarded when realizing
    double min_charfn_abs = 0.0;       // min |mu^| over the grid
    double edge_coefficient_max = 0.0; // max |b_n| for |n| in [N/4, N/2]
};

// Computes g on a 2^m grid; grid = 0 picks max(64, 8 * support width)
// rounded up to a power of two. Throws CharFnNearZero / PhaseUnwrapFailure;
// std::invalid_argument if mu is not on Z or grid is not a power of two.
DistinguishedLog distinguished_log(const LatticeDistribution& mu, std::size_t grid = 0,
                                   double drop_tol = 1e-12);

}  // namespace qid
