// roots.hpp — polynomial root finding tuned for mass polynomials.
//
// Roots come from the companion-matrix eigenvalues, then one Aberth
// refinement sweep. Clusters of computed roots (multiple roots scatter as
// eps^{1/k} around the true root) are collapsed by a Newton polish on the
// (k-1)-st derivative, accepted only when the residual certifies a genuine
// multiple root. Classification against the unit circle drives the QID
// trichotomy: inside / outside / on the circle.

#pragma once

#include <complex>
#include <vector>

namespace qid {

// A computed root within this distance of the unit circle is reported as a
// genuine zero of the characteristic function (NotQID); roots between this
// and the caller's circle_tol are numerically ambiguous (Undecided).
inline constexpr double kOnCircleTol = 1e-10;

inline constexpr double kDefaultCircleTol = 1e-8;

enum class CircleClass { Inside, Outside, OnCircle };

const char* to_string(CircleClass c);

struct ClassifiedRoot {
    std::complex<double> value;
    CircleClass circle_class = CircleClass::Inside;
    double circle_distance = 0.0;  // | |xi| - 1 |
};

struct PolynomialRootSet {
    std::vector<ClassifiedRoot> roots;
    double circle_tol = kDefaultCircleTol;

    bool any_on_circle() const;
    double min_circle_distance() const;
    std::size_t count_inside() const;
};

// All complex roots of sum_j coeffs[j] w^j, counted with multiplicity;
// coeffs ascending with coeffs.back() != 0. Degree-0 input yields no roots.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

// OnCircle when within circle_tol of the unit circle, else Inside/Outside.
PolynomialRootSet classify_roots(const std::vector<std::complex<double>>& roots, double circle_tol);

}  // namespace qid
