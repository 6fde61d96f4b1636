#include "qid/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qid {

namespace {

using Complex = std::complex<double>;

Complex horner(const std::vector<double>& c, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

double coefficient_scale(const std::vector<double>& c, Complex z) {
    const double m = std::max(1.0, std::abs(z));
    double scale = 0.0, p = 1.0;
    for (double ci : c) {
        scale += std::abs(ci) * p;
        p *= m;
    }
    return scale;
}

// One simultaneous-correction sweep; steps that fail to reduce |f| are
// discarded, so clustered roots cannot be made worse here.
void aberth_sweep(const std::vector<double>& c, const std::vector<double>& dc,
                  std::vector<Complex>& roots) {
    const std::vector<Complex> snapshot = roots;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Complex z = snapshot[i];
        const Complex fz = horner(c, z);
        const Complex dfz = horner(dc, z);
        if (std::abs(dfz) == 0.0) continue;
        const Complex newton = fz / dfz;
        Complex repulsion{0.0, 0.0};
        bool degenerate = false;
        for (std::size_t j = 0; j < snapshot.size(); ++j) {
            if (j == i) continue;
            const Complex d = z - snapshot[j];
            if (std::abs(d) < 1e-14) {
                degenerate = true;
                break;
            }
            repulsion += 1.0 / d;
        }
        if (degenerate) continue;
        const Complex denom = 1.0 - newton * repulsion;
        if (std::abs(denom) == 0.0) continue;
        const Complex candidate = z - newton / denom;
        if (std::isfinite(candidate.real()) && std::isfinite(candidate.imag()) &&
            std::abs(horner(c, candidate)) <= std::abs(fz))
            roots[i] = candidate;
    }
}

// Collapses a cluster of k computed roots onto the simple root of
// f^{(k-1)}; accepted only when the residual of f there is at rounding
// level, which separates true k-fold roots from merely close simple ones.
void polish_clusters(const std::vector<double>& c, std::vector<Complex>& roots) {
    constexpr double kClusterRadius = 5e-3;
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= kClusterRadius * std::max(1.0, std::abs(roots[i])))
                parent[find(i)] = find(j);

    std::vector<std::vector<std::size_t>> clusters(n);
    for (std::size_t i = 0; i < n; ++i) clusters[find(i)].push_back(i);

    for (const auto& members : clusters) {
        const std::size_t k = members.size();
        if (k < 2) continue;
        Complex mean{0.0, 0.0};
        double worst_residual = 0.0;
        for (std::size_t i : members) {
            mean += roots[i];
            worst_residual = std::max(worst_residual, std::abs(horner(c, roots[i])));
        }
        mean /= static_cast<double>(k);

        std::vector<double> dk = c;
        for (std::size_t j = 0; j + 1 < k; ++j) dk = derivative(dk);
        const std::vector<double> ddk = derivative(dk);

        Complex z = mean;
        for (int it = 0; it < 60; ++it) {
            const Complex g = horner(dk, z);
            const Complex dg = horner(ddk, z);
            if (std::abs(dg) == 0.0) break;
            const Complex step = g / dg;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        const double residual = std::abs(horner(c, z));
        const bool certified = residual <= 1e-12 * coefficient_scale(c, z) && residual <= worst_residual + 1e-300;
        if (!certified) continue;
        const Complex value = std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z.real()))
                                  ? Complex{z.real(), 0.0}
                                  : z;
        for (std::size_t i : members) roots[i] = value;
    }
}

}  // namespace

const char* to_string(CircleClass c) {
    switch (c) {
        case CircleClass::Inside: return "inside";
        case CircleClass::Outside: return "outside";
        case CircleClass::OnCircle: return "on_circle";
    }
    return "?";
}

bool PolynomialRootSet::any_on_circle() const {
    return std::any_of(roots.begin(), roots.end(),
                       [](const ClassifiedRoot& r) { return r.circle_class == CircleClass::OnCircle; });
}

double PolynomialRootSet::min_circle_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) d = std::min(d, r.circle_distance);
    return d;
}

std::size_t PolynomialRootSet::count_inside() const {
    return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [](const ClassifiedRoot& r) {
        return r.circle_class == CircleClass::Inside;
    }));
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial_roots: empty coefficient vector");
    if (coeffs.back() == 0.0) throw std::invalid_argument("polynomial_roots: leading coefficient is zero");

    std::vector<Complex> roots;
    std::vector<double> c = coeffs;

    // Exact zero roots from vanishing low-order coefficients.
    std::size_t zero_roots = 0;
    while (zero_roots + 1 < c.size() && c[zero_roots] == 0.0) ++zero_roots;
    if (zero_roots > 0) c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zero_roots));
    roots.assign(zero_roots, Complex{0.0, 0.0});

    const std::size_t deg = c.size() - 1;
    if (deg == 0) return roots;
    if (deg == 1) {
        roots.emplace_back(-c[0] / c[1], 0.0);
        return roots;
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t r = 1; r < deg; ++r) companion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r - 1)) = 1.0;
    for (std::size_t r = 0; r < deg; ++r)
        companion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(deg - 1)) = -c[r] / c[deg];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue iteration failed");

    std::vector<Complex> eig(deg);
    for (std::size_t i = 0; i < deg; ++i) eig[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));

    const std::vector<double> dc = derivative(c);
    aberth_sweep(c, dc, eig);
    polish_clusters(c, eig);

    roots.insert(roots.end(), eig.begin(), eig.end());
    return roots;
}

PolynomialRootSet classify_roots(const std::vector<std::complex<double>>& roots, double circle_tol) {
    PolynomialRootSet set;
    set.circle_tol = circle_tol;
    set.roots.reserve(roots.size());
    for (const Complex& r : roots) {
        const double dist = std::abs(std::abs(r) - 1.0);
        CircleClass cls = CircleClass::OnCircle;
        if (dist > circle_tol) cls = std::abs(r) < 1.0 ? CircleClass::Inside : CircleClass::Outside;
        set.roots.push_back(ClassifiedRoot{r, cls, dist});
    }
    return set;
}

}  // namespace qid
