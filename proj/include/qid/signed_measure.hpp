// signed_measure.hpp — finite signed measures on R stored as atom sets.
//
// A SignedMeasure is a finite collection of (location, weight) atoms with
// nonzero weights. Two storage modes:
//
//   * lattice-tagged: every location is offset + spacing * n for an integer
//     index n; atoms are keyed by the exact index and all location algebra
//     (convolution, shifts) is integer arithmetic.
//   * free: atoms are keyed by their real location; locations closer than
//     1e-12 (absolute) are merged. This is lossy and documented as such.
//
// The convolution algebra, Hahn-Jordan decomposition, Fourier transform,
// exponential series exp(m) = sum_n m^{*n}/n! and the l1 metric live here.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qid {

// Absolute location tolerance below which free atoms are merged.
inline constexpr double kLocationMergeTol = 1e-12;

// Tolerance for "location lies on the lattice", relative to max(1, |x|).
inline constexpr double kLatticeFitTol = 1e-9;

struct LatticeTag {
    double offset = 0.0;
    double spacing = 1.0;
};

class SignedMeasure {
  public:
    SignedMeasure() = default;  // zero measure, free mode

    static SignedMeasure zero() { return SignedMeasure{}; }
    static SignedMeasure zero_on(const LatticeTag& tag);

    // Single atom helpers.
    static SignedMeasure dirac(double location, double weight = 1.0);
    static SignedMeasure dirac_integer(std::int64_t n, double weight = 1.0);

    // Lattice constructors; (index, weight) pairs, zero weights dropped.
    static SignedMeasure on_integers(const std::vector<std::pair<std::int64_t, double>>& atoms);
    static SignedMeasure on_lattice(const LatticeTag& tag,
                                    const std::vector<std::pair<std::int64_t, double>>& atoms);

    // Free constructor; merges locations within kLocationMergeTol.
    static SignedMeasure at_points(const std::vector<std::pair<double, double>>& atoms);

    // Lattice constructor from real locations; throws std::invalid_argument
    // if a location is farther than kLatticeFitTol from the lattice.
    static SignedMeasure from_locations_on(const LatticeTag& tag,
                                           const std::vector<std::pair<double, double>>& atoms);

    bool is_lattice() const { return tag_.has_value(); }
    const std::optional<LatticeTag>& lattice_tag() const { return tag_; }

    bool empty() const;
    std::size_t size() const;

    double total_variation() const;  // |m|(R)
    double total_mass() const;       // m(R)

    // Weight lookup; free lookup matches within kLocationMergeTol.
    double weight_at(double location) const;
    double weight_at_index(std::int64_t n) const;  // lattice mode only

    double location_of_index(std::int64_t n) const;  // offset + spacing * n

    // Atoms as (location, weight), ascending by location.
    std::vector<std::pair<double, double>> atoms() const;

    // Lattice-mode access (throws std::logic_error in free mode).
    const std::map<std::int64_t, double>& integer_atoms() const;
    std::int64_t min_index() const;
    std::int64_t max_index() const;

    // Drops the lattice tag, re-keying atoms by real location.
    SignedMeasure as_free() const;

    SignedMeasure operator-() const;
    friend SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b);
    friend SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b);
    friend SignedMeasure operator*(double c, const SignedMeasure& m);

  private:
    friend class MeasureBuilder;

    std::optional<LatticeTag> tag_;
    std::map<std::int64_t, double> int_atoms_;  // lattice mode
    std::map<double, double> real_atoms_;       // free mode
};

// Accumulates atoms and produces a SignedMeasure; used by the algebra below.
class MeasureBuilder {
  public:
    explicit MeasureBuilder(std::optional<LatticeTag> tag) : tag_(std::move(tag)) {}

    void add_index(std::int64_t n, double w);  // lattice mode
    void add_point(double x, double w);        // free mode, tolerance merge
    SignedMeasure take();

  private:
    std::optional<LatticeTag> tag_;
    std::map<std::int64_t, double> int_atoms_;
    std::map<double, double> real_atoms_;
};

// Hahn-Jordan split; positive, negative and total variation all carry
// nonnegative weights, positive - negative reconstructs the input.
struct MeasureDecomposition {
    SignedMeasure positive;
    SignedMeasure negative;
    SignedMeasure total_variation;
};

// Closed interval or its complement, for restriction.
struct Region {
    double lo = 0.0;
    double hi = 0.0;
    bool complement = false;

    static Region all();
    static Region empty();
    static Region interval(double lo, double hi);
    static Region complement_of(double lo, double hi);
    static Region punctured_line();  // R \ {0}

    bool contains(double x) const;
};

struct ExpMeasureResult {
    SignedMeasure value;
    int terms = 0;          // highest convolution power kept
    double tail_bound = 0;  // e^T T^{N+1}/(N+1)! with T = |m|(R)
};

MeasureDecomposition hahn_jordan(const SignedMeasure& m);

SignedMeasure convolve(const SignedMeasure& a, const SignedMeasure& b);

// m-fold convolution power via repeated squaring; requires m >= 1.
SignedMeasure convolve_power(const SignedMeasure& m, std::uint64_t power);

// Truncated exponential series; throws std::invalid_argument for
// tail_tol <= 0.
ExpMeasureResult exp_measure(const SignedMeasure& m, double tail_tol);

std::complex<double> fourier_eval(const SignedMeasure& m, double z);

// l1 distance over the union of atoms, |m1 - m2|(R).
double l1_distance(const SignedMeasure& a, const SignedMeasure& b);

SignedMeasure restrict(const SignedMeasure& m, const Region& region);

}  // namespace qid
