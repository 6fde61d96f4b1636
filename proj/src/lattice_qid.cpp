#include "qid/lattice_qid.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qid {

namespace {

using Complex = std::complex<double>;

constexpr double kConjugateImagTol = 1e-9;
constexpr std::size_t kMaxSeriesTerms = 2'000'000;

void require_integer_lattice(const LatticeDistribution& mu, const char* who) {
    if (!mu.on_integer_lattice())
        throw std::invalid_argument(std::string(who) + " requires a Z-supported distribution; rescale first");
}

// l1 tail of count * sum_{m>M} rho^m / m.
double geometric_tail(double rho, std::size_t count, std::size_t M) {
    if (count == 0 || rho <= 0.0) return 0.0;
    return static_cast<double>(count) * std::pow(rho, static_cast<double>(M + 1)) /
           (static_cast<double>(M + 1) * (1.0 - rho));
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Qid: return "qid";
        case Verdict::NotQid: return "not_qid";
        case Verdict::Undecided: return "undecided";
    }
    return "?";
}

const char* to_string(AnalysisMethod m) {
    switch (m) {
        case AnalysisMethod::Auto: return "auto";
        case AnalysisMethod::Root: return "root";
        case AnalysisMethod::Fourier: return "fft";
    }
    return "?";
}

QidResult analyze_finite(const LatticeDistribution& mu, double trunc_tol, double circle_tol) {
    require_integer_lattice(mu, "analyze_finite");
    if (!(trunc_tol > 0.0)) throw std::invalid_argument("trunc_tol must be positive");

    QidResult res;
    res.method = AnalysisMethod::Root;

    if (mu.masses().size() == 1) {  // degenerate delta_k
        res.verdict = Verdict::Qid;
        res.triplet = make_triplet(0.0, SignedMeasure::zero_on(LatticeTag{0.0, 1.0}),
                                   static_cast<double>(mu.first_index()), RepresentationKind::Drift);
        res.roots = PolynomialRootSet{{}, circle_tol};
        return res;
    }

    res.roots = classify_roots(polynomial_roots(mu.masses()), circle_tol);

    if (res.roots->any_on_circle()) {
        if (res.roots->min_circle_distance() <= kOnCircleTol) {
            res.verdict = Verdict::NotQid;
            res.reason = "root on unit circle: characteristic function has zeroes";
        } else {
            res.verdict = Verdict::Undecided;
            res.reason = "root within circle_tol of the unit circle";
        }
        return res;
    }

    std::vector<Complex> inside, outside;
    for (const auto& r : res.roots->roots)
        (r.circle_class == CircleClass::Inside ? inside : outside).push_back(r.value);
    for (auto& xi : outside) xi = 1.0 / xi;  // both sides now iterate powers of modulus < 1

    double rho_in = 0.0, rho_out = 0.0;
    for (const auto& xi : inside) rho_in = std::max(rho_in, std::abs(xi));
    for (const auto& xi : outside) rho_out = std::max(rho_out, std::abs(xi));

    std::size_t M = 1;
    while (geometric_tail(rho_in, inside.size(), M) + geometric_tail(rho_out, outside.size(), M) >=
               trunc_tol &&
           M < kMaxSeriesTerms)
        ++M;
    res.tail_bound = geometric_tail(rho_in, inside.size(), M) + geometric_tail(rho_out, outside.size(), M);

    std::vector<std::pair<std::int64_t, double>> atoms;
    atoms.reserve(2 * M);
    double imag_residual = 0.0;
    std::vector<Complex> pow_in = inside, pow_out = outside;
    for (std::size_t m = 1; m <= M; ++m) {
        Complex s_in{0.0, 0.0}, s_out{0.0, 0.0};
        for (auto& p : pow_in) s_in += p;
        for (auto& p : pow_out) s_out += p;
        const double inv_m = 1.0 / static_cast<double>(m);
        imag_residual = std::max({imag_residual, std::abs(s_in.imag()) * inv_m, std::abs(s_out.imag()) * inv_m});
        if (s_in.real() != 0.0) atoms.emplace_back(-static_cast<std::int64_t>(m), -s_in.real() * inv_m);
        if (s_out.real() != 0.0) atoms.emplace_back(static_cast<std::int64_t>(m), -s_out.real() * inv_m);
        for (std::size_t j = 0; j < pow_in.size(); ++j) pow_in[j] *= inside[j];
        for (std::size_t j = 0; j < pow_out.size(); ++j) pow_out[j] *= outside[j];
    }

    if (imag_residual > kConjugateImagTol) {
        res.verdict = Verdict::Undecided;
        res.reason = "imaginary parts of the quasi-Levy series did not cancel (conjugate pairing)";
        return res;
    }

    res.verdict = Verdict::Qid;
    const double drift = static_cast<double>(mu.first_index()) + static_cast<double>(inside.size());
    res.triplet = make_triplet(0.0, SignedMeasure::on_lattice(LatticeTag{0.0, 1.0}, atoms), drift,
                               RepresentationKind::Drift);
    return res;
}

QidResult analyze_z(const LatticeDistribution& mu, double trunc_tol) {
    require_integer_lattice(mu, "analyze_z");
    if (!(trunc_tol > 0.0)) throw std::invalid_argument("trunc_tol must be positive");

    QidResult res;
    res.method = AnalysisMethod::Fourier;

    DistinguishedLog dlog;
    try {
        dlog = distinguished_log(mu, 0, std::min(trunc_tol, 1e-12));
    } catch (const CharFnNearZero& e) {
        if (e.min_abs <= kCharFnDefiniteZero) {
            res.verdict = Verdict::NotQid;
            res.reason = "characteristic function vanishes on the grid";
        } else {
            res.verdict = Verdict::Undecided;
            res.reason = "small |mu^| on grid: possible zero of characteristic function";
        }
        return res;
    } catch (const PhaseUnwrapFailure& e) {
        res.verdict = Verdict::Undecided;
        res.reason = e.what();
        return res;
    }

    if (dlog.edge_coefficient_max > 1e-10) {
        res.verdict = Verdict::Undecided;
        res.reason = "Fourier coefficients of the distinguished logarithm did not decay on the finest grid";
        res.dlog = std::move(dlog);
        return res;
    }
    if (dlog.max_imag_residual > 1e-8) {
        res.verdict = Verdict::Undecided;
        res.reason = "imaginary residual of the Fourier coefficients exceeds 1e-8";
        res.dlog = std::move(dlog);
        return res;
    }

    std::vector<std::pair<std::int64_t, double>> atoms;
    atoms.reserve(dlog.fourier_coeffs.size());
    double dropped = dlog.dropped_l1;
    for (const auto& [n, b] : dlog.fourier_coeffs) {
        if (std::abs(b) >= trunc_tol)
            atoms.emplace_back(n, b);
        else
            dropped += std::abs(b);
    }

    res.verdict = Verdict::Qid;
    res.tail_bound = dropped;
    res.triplet = make_triplet(0.0, SignedMeasure::on_lattice(LatticeTag{0.0, 1.0}, atoms),
                               static_cast<double>(dlog.drift_k), RepresentationKind::Drift);
    res.dlog = std::move(dlog);
    return res;
}

QidResult analyze(const LatticeDistribution& mu, const AnalyzeOptions& opts) {
    const RescaleResult rs = rescale(mu);
    AnalysisMethod method = opts.method;
    if (method == AnalysisMethod::Auto)
        method = rs.dist.support_width() <= 512 ? AnalysisMethod::Root : AnalysisMethod::Fourier;

    QidResult res = method == AnalysisMethod::Root
                        ? analyze_finite(rs.dist, opts.trunc_tol, opts.circle_tol)
                        : analyze_z(rs.dist, opts.fourier_drop_tol);

    if (res.triplet && (rs.back.scale != 1.0 || rs.back.shift != 0.0))
        res.triplet = rs.back.apply(*res.triplet);
    return res;
}

KattiResult katti_extract(const LatticeDistribution& mu, std::size_t max_n) {
    require_integer_lattice(mu, "katti_extract");
    const std::int64_t k = mu.first_index();
    const double a0 = mu.mass_at_index(k);
    if (a0 == 0.0) throw std::invalid_argument("katti_extract: no mass at the infimum of the support");

    KattiResult out;
    out.min_index = k;
    out.q.resize(max_n + 1, 0.0);  // 1-based
    out.abs_partial_sums.reserve(max_n);
    double partial = 0.0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        double rhs = static_cast<double>(n) * mu.mass_at_index(k + static_cast<std::int64_t>(n));
        for (std::size_t j = 1; j < n; ++j)
            rhs -= static_cast<double>(j) * out.q[j] * mu.mass_at_index(k + static_cast<std::int64_t>(n - j));
        out.q[n] = rhs / (static_cast<double>(n) * a0);
        partial += std::abs(out.q[n]);
        out.abs_partial_sums.push_back(partial);
    }
    out.q.erase(out.q.begin());  // drop the unused 0 slot
    return out;
}

DpcpResult dpcp_check(const LatticeDistribution& mu, double negative_mass_tol) {
    require_integer_lattice(mu, "dpcp_check");
    if (mu.first_index() < 0) throw std::invalid_argument("dpcp_check requires support in N0");

    DpcpResult out;
    if (mu.first_index() > 0) {  // pgf(0) = 0: no zero-free extension to the closed disk
        out.reason = "no atom at 0 (probability generating function vanishes at 0)";
        return out;
    }

    out.analysis = analyze(mu);
    if (!out.analysis.is_qid()) {
        out.reason = std::string("not QID: ") + (out.analysis.reason.empty() ? "?" : out.analysis.reason);
        return out;
    }

    const CharacteristicTriplet& t = *out.analysis.triplet;
    const double drift = t.gamma;
    if (std::abs(drift) > 1e-9) {
        out.reason = "drift " + std::to_string(std::llround(drift)) + " (nonzero)";
        return out;
    }

    double negative_mass = 0.0;
    for (const auto& [x, w] : t.nu.atoms())
        if (x < 0.0) negative_mass += std::abs(w);
    if (negative_mass >= negative_mass_tol) {
        out.reason = "quasi-Levy mass on the negative axis";
        return out;
    }

    out.is_dpcp = true;
    if (t.nu.empty()) return out;  // degenerate delta_0: lambda = 0

    out.lambda = t.nu.total_mass();
    const std::int64_t top = t.nu.max_index();
    out.alphas.assign(static_cast<std::size_t>(std::max<std::int64_t>(top, 0)), 0.0);
    for (const auto& [n, w] : t.nu.integer_atoms())
        if (n >= 1) out.alphas[static_cast<std::size_t>(n - 1)] = w / out.lambda;
    double alpha_sum = 0.0;
    for (double a : out.alphas) alpha_sum += a;
    if (alpha_sum != 0.0)
        for (double& a : out.alphas) a /= alpha_sum;
    return out;
}

LatticeDistribution qid_approximate(const LatticeDistribution& mu, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("qid_approximate requires h > 0");
    if (mu.masses().size() == 1) return mu;

    const std::vector<double>& a = mu.masses();
    const auto roots = polynomial_roots(a);

    // a_n prod (w - xi_j - h), expanded by successive multiplication.
    std::vector<Complex> poly{Complex{a.back(), 0.0}};
    for (const Complex& xi : roots) {
        const Complex shifted = xi + h;
        std::vector<Complex> next(poly.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= shifted * poly[i];
        }
        poly = std::move(next);
    }

    std::vector<double> coeffs(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (std::abs(poly[i].imag()) > 1e-10 * std::max(1.0, std::abs(poly[i].real())))
            throw std::runtime_error("qid_approximate: imaginary residue above 1e-10 after expansion");
        coeffs[i] = poly[i].real();
    }

    double sum = 0.0;
    for (double& c : coeffs) {
        if (c < 0.0) {
            if (c < -1e-12) throw std::domain_error("qid_approximate: h produced a substantially negative mass");
            c = 0.0;
        }
        sum += c;
    }
    if (!(sum > 0.0)) throw std::domain_error("qid_approximate: shifted polynomial lost all mass");
    for (double& c : coeffs) c /= sum;
    double resum = 0.0;
    for (double c : coeffs) resum += c;
    for (double& c : coeffs) c /= resum;

    return LatticeDistribution(mu.offset(), mu.spacing(), mu.first_index(), std::move(coeffs));
}

ApproximationResult approximate_until_qid(const LatticeDistribution& mu, double h, double circle_tol) {
    AnalyzeOptions opts;
    opts.method = AnalysisMethod::Root;
    opts.circle_tol = circle_tol;
    for (int attempt = 0; attempt <= 40; ++attempt) {
        LatticeDistribution candidate = qid_approximate(mu, h);
        if (analyze(candidate, opts).is_qid()) return ApproximationResult{std::move(candidate), h, attempt};
        h /= 2.0;
    }
    throw std::runtime_error("approximate_until_qid: retries exhausted");
}

std::complex<double> reconstruct_charfn(const QidResult& res, double z) {
    if (!res.is_qid() || !res.triplet)
        throw std::invalid_argument("reconstruct_charfn requires a QID result");
    return std::exp(psi_eval(*res.triplet, z));
}

std::vector<std::complex<double>> sample_charfn(const CharacteristicTriplet& t, std::size_t N) {
    std::vector<Complex> out(N);
    for (std::size_t j = 0; j < N; ++j)
        out[j] = std::exp(psi_eval(t, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(N)));
    return out;
}

SynthesizedMasses synthesize_masses(const CharacteristicTriplet& t, std::size_t N, double drop_tol) {
    if (N < 2 || (N & (N - 1)) != 0) throw std::invalid_argument("synthesize_masses: N must be a power of two");
    const auto samples = sample_charfn(t, N);

    Eigen::FFT<double> fft;
    std::vector<Complex> spectrum;
    std::vector<Complex> input = samples;
    fft.fwd(spectrum, input);

    const double drift = rebase_gamma(t, RepresentationKind::Drift).gamma;
    const std::int64_t center = std::llround(drift);
    const std::int64_t half = static_cast<std::int64_t>(N / 2);

    SynthesizedMasses out;
    std::vector<std::pair<std::int64_t, double>> kept;
    for (std::int64_t n = center - half; n < center + half; ++n) {
        const std::size_t bin = static_cast<std::size_t>(((n % static_cast<std::int64_t>(N)) +
                                                          static_cast<std::int64_t>(N)) %
                                                         static_cast<std::int64_t>(N));
        const Complex v = spectrum[bin] / static_cast<double>(N);
        out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
        if (std::abs(v.real()) >= drop_tol) kept.emplace_back(n, v.real());
    }
    if (kept.empty()) return out;
    out.first_index = kept.front().first;
    out.masses.assign(static_cast<std::size_t>(kept.back().first - kept.front().first + 1), 0.0);
    for (const auto& [n, w] : kept) out.masses[static_cast<std::size_t>(n - out.first_index)] = w;
    return out;
}

}  // namespace qid
