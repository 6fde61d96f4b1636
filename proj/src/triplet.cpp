#include "qid/triplet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qid {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Re-anchor the stepped unit-circle walk with a fresh exp() this often.
constexpr std::int64_t kStepReanchor = 256;

double min1_x2(double x) { return std::min(1.0, x * x); }

// sum_x w e^{izx} over the atoms, plus total mass and int c dnu in one pass.
struct ExponentSums {
    std::complex<double> fourier{0.0, 0.0};
    double mass = 0.0;
    double c_integral = 0.0;
};

ExponentSums exponent_sums(const SignedMeasure& nu, double z, RepresentationKind kind) {
    ExponentSums s;
    if (nu.is_lattice() && !nu.empty()) {
        const LatticeTag tag = *nu.lattice_tag();
        const std::complex<double> step = std::exp(kI * (z * tag.spacing));
        std::int64_t prev = nu.min_index();
        std::complex<double> cur = std::exp(kI * (z * nu.location_of_index(prev)));
        std::int64_t since_anchor = 0;
        for (const auto& [n, w] : nu.integer_atoms()) {
            const std::int64_t gap = n - prev;
            if (gap + since_anchor > kStepReanchor) {
                cur = std::exp(kI * (z * nu.location_of_index(n)));
                since_anchor = 0;
            } else {
                for (std::int64_t g = 0; g < gap; ++g) cur *= step;
                since_anchor += gap;
            }
            prev = n;
            s.fourier += w * cur;
            s.mass += w;
            s.c_integral += w * representation_c(kind, nu.location_of_index(n));
        }
    } else {
        for (const auto& [x, w] : nu.atoms()) {
            s.fourier += w * std::exp(kI * (z * x));
            s.mass += w;
            s.c_integral += w * representation_c(kind, x);
        }
    }
    return s;
}

}  // namespace

const char* to_string(RepresentationKind k) {
    switch (k) {
        case RepresentationKind::Standard: return "standard";
        case RepresentationKind::Drift: return "drift";
        case RepresentationKind::Center: return "center";
    }
    return "?";
}

double representation_c(RepresentationKind kind, double x) {
    switch (kind) {
        case RepresentationKind::Standard: return std::abs(x) <= 1.0 ? x : 0.0;
        case RepresentationKind::Drift: return 0.0;
        case RepresentationKind::Center: return x;
    }
    return 0.0;
}

std::complex<double> g_c(double x, double z, RepresentationKind kind) {
    if (kind != RepresentationKind::Standard)
        throw std::invalid_argument("g_c is defined for the Standard representation function only");
    if (x == 0.0) return {-0.5 * z * z, 0.0};
    const std::complex<double> num = std::exp(kI * (z * x)) - 1.0 - kI * (z * representation_c(kind, x));
    return num / min1_x2(x);
}

CharacteristicTriplet make_triplet(double a, SignedMeasure nu, double gamma, RepresentationKind kind) {
    if (!(a >= 0.0)) throw std::domain_error("Gaussian variance must be nonnegative");
    if (nu.weight_at(0.0) != 0.0) throw std::invalid_argument("quasi-Levy measure must not charge 0");
    return CharacteristicTriplet{a, std::move(nu), gamma, kind};
}

std::complex<double> psi_eval(const CharacteristicTriplet& t, double z) {
    const ExponentSums s = exponent_sums(t.nu, z, t.kind);
    return kI * (t.gamma * z) - 0.5 * t.a * z * z + s.fourier - s.mass - kI * (z * s.c_integral);
}

CharacteristicTriplet pair_to_triplet(const CharacteristicPair& p) {
    const double a = p.zeta.weight_at(0.0);
    if (a < 0.0) throw std::domain_error("not a valid QID pair: zeta({0}) < 0");
    if (p.zeta.is_lattice()) {
        const LatticeTag tag = *p.zeta.lattice_tag();
        std::vector<std::pair<std::int64_t, double>> atoms;
        for (const auto& [n, w] : p.zeta.integer_atoms()) {
            const double x = p.zeta.location_of_index(n);
            if (std::abs(x) <= kLocationMergeTol) continue;
            atoms.emplace_back(n, w / min1_x2(x));
        }
        return make_triplet(a, SignedMeasure::on_lattice(tag, atoms), p.gamma, p.kind);
    }
    std::vector<std::pair<double, double>> atoms;
    for (const auto& [x, w] : p.zeta.atoms()) {
        if (std::abs(x) <= kLocationMergeTol) continue;
        atoms.emplace_back(x, w / min1_x2(x));
    }
    return make_triplet(a, SignedMeasure::at_points(atoms), p.gamma, p.kind);
}

CharacteristicPair triplet_to_pair(const CharacteristicTriplet& t) {
    if (t.nu.is_lattice()) {
        const LatticeTag tag = *t.nu.lattice_tag();
        // Place the Gaussian atom at 0 when 0 lies on the lattice.
        const double raw = -tag.offset / tag.spacing;
        const bool origin_on_lattice = std::abs(raw - std::round(raw)) <= kLatticeFitTol;
        if (t.a == 0.0 || origin_on_lattice) {
            std::vector<std::pair<std::int64_t, double>> atoms;
            for (const auto& [n, w] : t.nu.integer_atoms())
                atoms.emplace_back(n, w * min1_x2(t.nu.location_of_index(n)));
            if (t.a != 0.0) atoms.emplace_back(static_cast<std::int64_t>(std::llround(raw)), t.a);
            return CharacteristicPair{SignedMeasure::on_lattice(tag, atoms), t.gamma, t.kind};
        }
    }
    std::vector<std::pair<double, double>> atoms;
    for (const auto& [x, w] : t.nu.atoms()) atoms.emplace_back(x, w * min1_x2(x));
    if (t.a != 0.0) atoms.emplace_back(0.0, t.a);
    return CharacteristicPair{SignedMeasure::at_points(atoms), t.gamma, t.kind};
}

CharacteristicTriplet rebase_gamma(const CharacteristicTriplet& t, RepresentationKind target) {
    if (target == t.kind) return t;
    double shift = 0.0;
    for (const auto& [x, w] : t.nu.atoms())
        shift += w * (representation_c(target, x) - representation_c(t.kind, x));
    return CharacteristicTriplet{t.a, t.nu, t.gamma + shift, target};
}

CharacteristicTriplet affine_transform(const CharacteristicTriplet& t, double m, double b) {
    if (m == 0.0) throw std::invalid_argument("affine_transform requires m != 0");
    SignedMeasure nu_bar;
    if (t.nu.is_lattice()) {
        const LatticeTag tag = *t.nu.lattice_tag();
        const LatticeTag new_tag{m * tag.offset, std::abs(m) * tag.spacing};
        const std::int64_t sign = m > 0 ? 1 : -1;
        std::vector<std::pair<std::int64_t, double>> atoms;
        for (const auto& [n, w] : t.nu.integer_atoms()) atoms.emplace_back(sign * n, w);
        nu_bar = SignedMeasure::on_lattice(new_tag, atoms);
    } else {
        std::vector<std::pair<double, double>> atoms;
        for (const auto& [x, w] : t.nu.atoms()) atoms.emplace_back(m * x, w);
        nu_bar = SignedMeasure::at_points(atoms);
    }
    double gamma = b + m * t.gamma;
    if (t.kind == RepresentationKind::Standard)
        for (const auto& [x, w] : t.nu.atoms())
            gamma += w * (representation_c(t.kind, m * x) - m * representation_c(t.kind, x));
    return CharacteristicTriplet{t.a * m * m, std::move(nu_bar), gamma, t.kind};
}

CharacteristicTriplet convolve_triplets(const CharacteristicTriplet& s, const CharacteristicTriplet& t) {
    if (s.kind != t.kind) throw std::invalid_argument("convolve_triplets requires matching representation kinds");
    return CharacteristicTriplet{s.a + t.a, s.nu + t.nu, s.gamma + t.gamma, s.kind};
}

VarianceProbe gaussian_variance_probe(const std::function<std::complex<double>(double)>& psi, double z_max) {
    if (!(z_max > 0.0)) throw std::invalid_argument("gaussian_variance_probe requires z_max > 0");
    VarianceProbe probe;
    probe.z = {z_max / 4.0, z_max / 2.0, z_max};
    for (int i = 0; i < 3; ++i) {
        const double z = probe.z[static_cast<std::size_t>(i)];
        probe.estimate[static_cast<std::size_t>(i)] = -2.0 * psi(z).real() / (z * z);
    }
    const auto [lo, hi] = std::minmax_element(probe.estimate.begin(), probe.estimate.end());
    probe.spread = *hi - *lo;
    return probe;
}

std::vector<double> default_z_grid() {
    std::vector<double> grid(128);
    const double lo = std::log(1e-2), hi = std::log(1e3);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid.size() - 1));
    return grid;
}

ValidationReport validate_necessary(const CharacteristicTriplet& t, const std::vector<double>& z_grid) {
    const MeasureDecomposition hj = hahn_jordan(t.nu);
    const auto pos = hj.positive.atoms();
    const auto neg = hj.negative.atoms();
    const bool a_zero = (t.a == 0.0);

    const auto kernel_margin = [&](const std::function<double(double)>& kernel) {
        double lhs = 0.0, rhs = 0.0;
        for (const auto& [x, w] : pos) lhs += w * kernel(x);
        for (const auto& [x, w] : neg) rhs += w * kernel(x);
        return std::pair<double, double>{lhs, rhs};
    };
    const auto slack = [](double lhs, double rhs) {
        return 1e-10 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    };

    ValidationReport report;

    {  // (1) spectral nonpositivity of log |mu^|, per grid point
        InequalityCheck c{"cosine_grid", true, true, 0.0, 0.0};
        bool first = true;
        for (double z : z_grid) {
            auto [l, r] = kernel_margin([z](double x) { return 1.0 - std::cos(z * x); });
            l += 0.5 * t.a * z * z;
            const double margin = l - r;
            if (first || margin < c.margin) {
                c.margin = margin;
                c.worst_z = z;
                first = false;
            }
            if (margin < -slack(l, r)) c.pass = false;
        }
        report.checks.push_back(c);
    }
    {  // (2) smoothed with a standard normal: 1 - Re sigma^(x) = 1 - e^{-x^2/2}
        auto [l, r] = kernel_margin([](double x) { return 1.0 - std::exp(-0.5 * x * x); });
        l += 0.5 * t.a;
        report.checks.push_back({"gaussian_smoothed", true, l - r >= -slack(l, r), l - r, 0.0});
    }
    {  // (3) bounded rational kernel x^2/(1+x^2)
        auto [l, r] = kernel_margin([](double x) { return x * x / (1.0 + x * x); });
        l += t.a;
        report.checks.push_back({"rational_kernel", true, l - r >= -slack(l, r), l - r, 0.0});
    }
    {  // (4) total masses, only valid when a = 0
        auto [l, r] = kernel_margin([](double) { return 1.0; });
        report.checks.push_back({"total_mass", a_zero, !a_zero || l - r >= -slack(l, r), l - r, 0.0});
    }
    {  // (5) kernel 1 ^ |x|, only valid when a = 0
        auto [l, r] = kernel_margin([](double x) { return std::min(1.0, std::abs(x)); });
        report.checks.push_back({"linear_kernel", a_zero, !a_zero || l - r >= -slack(l, r), l - r, 0.0});
    }

    report.pass = true;
    for (const auto& c : report.checks)
        if (c.applicable && !c.pass) report.pass = false;
    return report;
}

}  // namespace qid
