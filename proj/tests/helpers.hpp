// helpers.hpp — shared builders and oracles for the test suites.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qid/lattice.hpp"
#include "qid/lattice_qid.hpp"
#include "qid/signed_measure.hpp"

namespace qid::testing {

inline LatticeDistribution bernoulli(double p) {
    return LatticeDistribution::on_integers(0, {1.0 - p, p});
}

inline LatticeDistribution binomial(int n, double p) {
    std::vector<double> masses(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double c = 1.0;
        for (int j = 0; j < k; ++j) c = c * static_cast<double>(n - j) / static_cast<double>(j + 1);
        masses[static_cast<std::size_t>(k)] = c * std::pow(p, k) * std::pow(1.0 - p, n - k);
    }
    return LatticeDistribution::on_integers(0, std::move(masses));
}

inline LatticeDistribution poisson(double lambda, double drop = 1e-15) {
    std::vector<double> masses;
    double term = std::exp(-lambda);
    for (int n = 0;; ++n) {
        masses.push_back(term);
        term *= lambda / static_cast<double>(n + 1);
        if (term < drop && static_cast<double>(n) > lambda) break;
    }
    return truncated(0.0, 1.0, 0, masses, drop).dist;
}

inline LatticeDistribution geometric(double p, double drop = 1e-15) {
    std::vector<double> masses;
    double term = p;
    while (term >= drop) {
        masses.push_back(term);
        term *= (1.0 - p);
    }
    return truncated(0.0, 1.0, 0, masses, drop).dist;
}

// p mu1 + (1-p) mu2 on a common integer lattice.
inline LatticeDistribution mix(double p, const LatticeDistribution& mu1, const LatticeDistribution& mu2) {
    const std::int64_t lo = std::min(mu1.first_index(), mu2.first_index());
    const std::int64_t hi = std::max(mu1.last_index(), mu2.last_index());
    std::vector<double> masses(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::int64_t n = lo; n <= hi; ++n)
        masses[static_cast<std::size_t>(n - lo)] =
            p * mu1.mass_at_index(n) + (1.0 - p) * mu2.mass_at_index(n);
    return LatticeDistribution::on_integers(lo, std::move(masses));
}

// Strictly positive masses on {0..width}, normalized.
inline LatticeDistribution random_positive(std::mt19937_64& rng, int width) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> masses(static_cast<std::size_t>(width) + 1);
    double sum = 0.0;
    for (double& m : masses) {
        m = unif(rng);
        sum += m;
    }
    for (double& m : masses) m /= sum;
    double resum = 0.0;
    for (double m : masses) resum += m;
    for (double& m : masses) m /= resum;
    return LatticeDistribution::on_integers(0, std::move(masses));
}

inline SignedMeasure random_signed_integer_measure(std::mt19937_64& rng, int atom_count, int span = 10) {
    std::uniform_int_distribution<std::int64_t> loc(-span, span);
    std::uniform_real_distribution<double> weight(-2.0, 2.0);
    std::vector<std::pair<std::int64_t, double>> atoms;
    for (int i = 0; i < atom_count; ++i) atoms.emplace_back(loc(rng), weight(rng));
    return SignedMeasure::on_integers(atoms);
}

inline SignedMeasure random_signed_free_measure(std::mt19937_64& rng, int atom_count) {
    std::uniform_real_distribution<double> loc(-10.0, 10.0);
    std::uniform_real_distribution<double> weight(-2.0, 2.0);
    std::vector<std::pair<double, double>> atoms;
    for (int i = 0; i < atom_count; ++i) atoms.emplace_back(loc(rng), weight(rng));
    return SignedMeasure::at_points(atoms);
}

// max_j |exp Psi(z_j) - mu^(z_j)| over an equispaced grid in [0, 2 pi).
inline double round_trip_error(const QidResult& res, const LatticeDistribution& mu, int grid = 512) {
    double worst = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double z = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
        worst = std::max(worst, std::abs(reconstruct_charfn(res, z) - mu.char_fn(z)));
    }
    return worst;
}

}  // namespace qid::testing
