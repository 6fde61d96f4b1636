#include "qid/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace qid {

LatticeDistribution::LatticeDistribution(double offset, double spacing, std::int64_t first_index,
                                         std::vector<double> masses)
    : offset_(offset), spacing_(spacing), first_index_(first_index), masses_(std::move(masses)) {
    if (!(spacing_ > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    std::size_t lead = 0;
    while (lead < masses_.size() && masses_[lead] == 0.0) ++lead;
    std::size_t tail = masses_.size();
    while (tail > lead && masses_[tail - 1] == 0.0) --tail;
    if (lead == tail) throw std::invalid_argument("distribution has empty support");
    if (lead > 0 || tail < masses_.size()) {
        masses_ = std::vector<double>(masses_.begin() + static_cast<std::ptrdiff_t>(lead),
                                      masses_.begin() + static_cast<std::ptrdiff_t>(tail));
        first_index_ += static_cast<std::int64_t>(lead);
    }
    double sum = 0.0;
    for (double m : masses_) {
        if (m < 0.0) throw std::invalid_argument("masses must be nonnegative");
        sum += m;
    }
    if (std::abs(sum - 1.0) > kMassSumTol)
        throw std::invalid_argument("masses must sum to 1 within 1e-12");
}

LatticeDistribution LatticeDistribution::on_integers(std::int64_t first_index, std::vector<double> masses) {
    return LatticeDistribution(0.0, 1.0, first_index, std::move(masses));
}

bool LatticeDistribution::on_integer_lattice() const {
    return std::abs(offset_) <= kLatticeFitTol && std::abs(spacing_ - 1.0) <= 1e-12;
}

double LatticeDistribution::mass_at_index(std::int64_t n) const {
    if (n < first_index() || n > last_index()) return 0.0;
    return masses_[static_cast<std::size_t>(n - first_index_)];
}

SignedMeasure LatticeDistribution::to_measure() const {
    std::vector<std::pair<std::int64_t, double>> atoms;
    atoms.reserve(masses_.size());
    for (std::size_t j = 0; j < masses_.size(); ++j)
        atoms.emplace_back(first_index_ + static_cast<std::int64_t>(j), masses_[j]);
    return SignedMeasure::on_lattice(LatticeTag{offset_, spacing_}, atoms);
}

std::complex<double> LatticeDistribution::char_fn(double z) const {
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> step = std::exp(i * (z * spacing_));
    std::complex<double> cur = std::exp(i * (z * location_of_index(first_index_)));
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < masses_.size(); ++j) {
        if (masses_[j] != 0.0) sum += masses_[j] * cur;
        cur *= step;
        if ((j & 0xffu) == 0xffu)  // re-anchor against drift on long supports
            cur = std::exp(i * (z * location_of_index(first_index_ + static_cast<std::int64_t>(j) + 1)));
    }
    return sum;
}

TruncatedDistribution truncated(double offset, double spacing, std::int64_t first_index,
                                const std::vector<double>& masses, double drop_tol) {
    std::vector<double> kept(masses.size(), 0.0);
    double dropped = 0.0, sum = 0.0;
    for (std::size_t j = 0; j < masses.size(); ++j) {
        if (masses[j] < 0.0) throw std::invalid_argument("masses must be nonnegative");
        if (masses[j] < drop_tol) {
            dropped += masses[j];
        } else {
            kept[j] = masses[j];
            sum += masses[j];
        }
    }
    if (sum <= 0.0) throw std::invalid_argument("truncation removed all mass");
    dropped += std::abs(1.0 - (dropped + sum));  // mass missing from the input itself
    for (double& m : kept) m /= sum;
    return TruncatedDistribution{LatticeDistribution(offset, spacing, first_index, std::move(kept)), dropped};
}

RescaleResult rescale(const LatticeDistribution& mu) {
    return RescaleResult{LatticeDistribution::on_integers(mu.first_index(), mu.masses()),
                         AffineMap{mu.spacing(), mu.offset()}};
}

}  // namespace qid
