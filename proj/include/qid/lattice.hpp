// lattice.hpp — probability distributions on a lattice r + h Z.
//
// Masses are stored densely from the first supported index; the stored
// vector is support-tight (first and last entries positive) and sums to 1
// within 1e-12. Distributions with rapidly decaying infinite support enter
// through `truncated`, which drops masses below a threshold, renormalizes
// and reports the perturbation.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qid/signed_measure.hpp"
#include "qid/triplet.hpp"

namespace qid {

inline constexpr double kMassSumTol = 1e-12;
inline constexpr double kMassDropTol = 1e-14;

class LatticeDistribution {
  public:
    // Throws std::invalid_argument on negative masses, a total mass off 1
    // by more than kMassSumTol, or an empty support. Leading/trailing zero
    // masses are trimmed.
    LatticeDistribution(double offset, double spacing, std::int64_t first_index, std::vector<double> masses);

    // Z-native distribution (offset 0, spacing 1).
    static LatticeDistribution on_integers(std::int64_t first_index, std::vector<double> masses);

    double offset() const { return offset_; }
    double spacing() const { return spacing_; }
    std::int64_t first_index() const { return first_index_; }
    std::int64_t last_index() const { return first_index_ + static_cast<std::int64_t>(masses_.size()) - 1; }
    std::int64_t support_width() const { return last_index() - first_index(); }
    const std::vector<double>& masses() const { return masses_; }

    bool on_integer_lattice() const;  // offset ~ 0, spacing ~ 1

    double mass_at_index(std::int64_t n) const;
    double location_of_index(std::int64_t n) const { return offset_ + spacing_ * static_cast<double>(n); }

    SignedMeasure to_measure() const;

    // Characteristic function mu^(z) = sum_n m_n e^{iz(r + hn)}.
    std::complex<double> char_fn(double z) const;

  private:
    double offset_;
    double spacing_;
    std::int64_t first_index_;
    std::vector<double> masses_;
};

struct TruncatedDistribution {
    LatticeDistribution dist;
    double dropped_mass = 0.0;  // l1 perturbation before renormalization
};

// Drops masses below drop_tol, renormalizes, reports the perturbation.
TruncatedDistribution truncated(double offset, double spacing, std::int64_t first_index,
                                const std::vector<double>& masses, double drop_tol = kMassDropTol);

// Affine change of variable x -> scale * y + shift.
struct AffineMap {
    double scale = 1.0;
    double shift = 0.0;
    double operator()(double y) const { return scale * y + shift; }

    // Triplet of scale * Y + shift from the triplet of Y.
    CharacteristicTriplet apply(const CharacteristicTriplet& t) const { return affine_transform(t, scale, shift); }
};

struct RescaleResult {
    LatticeDistribution dist;  // same masses viewed on Z
    AffineMap back;            // X = spacing * Y + offset
};

// Moves a distribution on r + hZ to Z, keeping indices; the back map and
// `AffineMap::apply` recover the triplet of the original distribution.
RescaleResult rescale(const LatticeDistribution& mu);

}  // namespace qid
