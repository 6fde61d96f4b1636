#include "qid/cuppens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qid {

namespace {

// Smallest M with ratio^{M+1} / ((M+1)(1-ratio)) * scale < tail_tol.
std::size_t series_terms(double ratio, double scale, double tail_tol, double& achieved_bound) {
    if (!(ratio < 1.0)) throw std::invalid_argument("series ratio must be below 1");
    std::size_t M = 1;
    double bound = scale * ratio * ratio / (2.0 * (1.0 - ratio));
    while (bound >= tail_tol && M < 5'000'000) {
        ++M;
        bound = scale * std::pow(ratio, static_cast<double>(M + 1)) /
                (static_cast<double>(M + 1) * (1.0 - ratio));
    }
    achieved_bound = bound;
    return M;
}

// nu~ = sum_{m=1}^{M} (-1)^{m+1} m^{-1} ratio^m base^{*m}, restricted off 0.
SignedMeasure log_series(const SignedMeasure& base, double ratio, std::size_t M) {
    SignedMeasure acc = base.is_lattice() ? SignedMeasure::zero_on(*base.lattice_tag()) : SignedMeasure::zero();
    SignedMeasure power = base;
    double coeff = ratio;
    for (std::size_t m = 1; m <= M; ++m) {
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        acc = acc + (sign * coeff / static_cast<double>(m)) * power;
        if (m < M) {
            power = convolve(power, base);
            coeff *= ratio;
        }
    }
    return restrict(acc, Region::punctured_line());
}

}  // namespace

SeriesTriplet cuppens_series(const LatticeDistribution& mu, double tail_tol) {
    if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be positive");

    const auto& masses = mu.masses();
    std::size_t dominant = 0;
    for (std::size_t j = 1; j < masses.size(); ++j)
        if (masses[j] > masses[dominant]) dominant = j;
    const double p = masses[dominant];
    const std::int64_t lambda_index = mu.first_index() + static_cast<std::int64_t>(dominant);
    const double lambda = mu.location_of_index(lambda_index);

    if (1.0 - p <= 1e-15) {  // degenerate point mass: sigma has mass 0, nu = 0
        return SeriesTriplet{make_triplet(0.0, SignedMeasure::zero_on(LatticeTag{0.0, mu.spacing()}), lambda,
                                          RepresentationKind::Drift),
                             0, 0.0};
    }
    if (p <= 0.5 + 1e-9) throw std::invalid_argument("dominant-atom hypothesis fails: mu({lambda}) <= 1/2");

    // tau = delta_{-lambda} * sigma lives on the offset-free lattice h Z.
    std::vector<std::pair<std::int64_t, double>> tau_atoms;
    const double inv_q = 1.0 / (1.0 - p);
    for (std::size_t j = 0; j < masses.size(); ++j) {
        if (j == dominant || masses[j] == 0.0) continue;
        tau_atoms.emplace_back(mu.first_index() + static_cast<std::int64_t>(j) - lambda_index,
                               inv_q * masses[j]);
    }
    const SignedMeasure tau = SignedMeasure::on_lattice(LatticeTag{0.0, mu.spacing()}, tau_atoms);

    const double ratio = (1.0 - p) / p;
    double bound = 0.0;
    const std::size_t M = series_terms(ratio, 1.0, tail_tol, bound);  // |tau^{*m}|(R) = 1

    SeriesTriplet out;
    out.terms = M;
    out.tail_bound = bound;
    out.triplet = make_triplet(0.0, log_series(tau, ratio, M), lambda, RepresentationKind::Drift);
    return out;
}

SeriesTriplet mixture_series(const CharacteristicTriplet& mu1, const SignedMeasure& sigma, double p,
                             double tail_tol, const MixtureOptions& opts) {
    if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be positive");
    if (!(p > 0.5 && p < 1.0)) throw std::invalid_argument("mixture weight p must lie in (1/2, 1)");
    const double q = 1.0 - p;
    const double sigma_tv = sigma.total_variation();
    if (sigma_tv >= p / q - 1e-9)
        throw std::invalid_argument("|sigma|(R) must be below p/(1-p)");

    if (opts.verification != GridVerification::Off && opts.mu2 != nullptr) {
        double worst = 0.0;
        for (int j = 1; j <= 64; ++j) {
            const double z = 2.0 * std::numbers::pi * static_cast<double>(j) / 64.0;
            const std::complex<double> lhs = fourier_eval(sigma, z) * std::exp(psi_eval(mu1, z));
            const std::complex<double> rhs = fourier_eval(*opts.mu2, z);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        if (worst > opts.verify_tol) {
            if (opts.verification == GridVerification::Require)
                throw std::invalid_argument("sigma^ * mu1^ does not match mu2^ on the verification grid");
            // Warn mode: the caller inspects the returned triplet anyway.
        }
    }

    SeriesTriplet out;
    if (sigma_tv == 0.0) {  // mu2 = mu1: nothing to add
        out.triplet = mu1;
        return out;
    }

    const double ratio = q / p;
    double bound = 0.0;
    // |sigma^{*m}|(R) <= sigma_tv^m, folded into the ratio.
    const double eff_ratio = ratio * sigma_tv;
    const std::size_t M = series_terms(eff_ratio, 1.0, tail_tol, bound);

    const SignedMeasure nu_tilde = log_series(sigma, ratio, M);

    double gamma_shift = 0.0;
    for (const auto& [x, w] : nu_tilde.atoms()) gamma_shift += w * representation_c(mu1.kind, x);

    out.terms = M;
    out.tail_bound = bound;
    out.triplet = make_triplet(mu1.a, mu1.nu + nu_tilde, mu1.gamma + gamma_shift, mu1.kind);
    return out;
}

void ComplexAtomicMeasure::add(std::int64_t n, std::complex<double> w) {
    if (w == std::complex<double>{0.0, 0.0}) return;
    auto [it, inserted] = atoms_.try_emplace(n, w);
    if (!inserted) {
        it->second += w;
        if (it->second == std::complex<double>{0.0, 0.0}) atoms_.erase(it);
    }
}

double ComplexAtomicMeasure::total_variation() const {
    double s = 0.0;
    for (const auto& [n, w] : atoms_) s += std::abs(w);
    return s;
}

double ComplexAtomicMeasure::max_imag() const {
    double s = 0.0;
    for (const auto& [n, w] : atoms_) s = std::max(s, std::abs(w.imag()));
    return s;
}

SignedMeasure ComplexAtomicMeasure::real_part() const {
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(atoms_.size());
    for (const auto& [n, w] : atoms_) out.emplace_back(n, w.real());
    return SignedMeasure::on_integers(out);
}

ComplexAtomicMeasure operator+(const ComplexAtomicMeasure& a, const ComplexAtomicMeasure& b) {
    ComplexAtomicMeasure out = a;
    for (const auto& [n, w] : b.atoms_) out.add(n, w);
    return out;
}

TwoPointFactor factor_two_point(std::complex<double> xi) {
    const double mod = std::abs(xi);
    if (std::abs(mod - 1.0) <= 1e-9)
        throw std::invalid_argument("factor_two_point: |xi| must stay away from 1");

    TwoPointFactor out;
    out.constant = 1.0 - xi;
    out.drift = mod < 1.0 ? 1 : 0;

    const std::complex<double> base = mod < 1.0 ? xi : 1.0 / xi;
    const double rho = std::abs(base);
    if (rho == 0.0) return out;  // xi = 0: pure delta_1

    double bound = 0.0;
    const std::size_t M = series_terms(rho, 1.0, 1e-14, bound);
    std::complex<double> power = base;
    for (std::size_t m = 1; m <= M; ++m) {
        const std::int64_t n = mod < 1.0 ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
        out.nu.add(n, -power / static_cast<double>(m));
        power *= base;
    }
    return out;
}

}  // namespace qid
