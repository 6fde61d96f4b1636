// lattice_qid.hpp — deciding quasi-infinite divisibility of lattice
// distributions and extracting the characteristic triplet.
//
// Three independent routes:
//
//   * analyze_finite — factor the mass polynomial f(w) = sum a_j w^j over
//     its complex roots. No root on the unit circle <=> QID; then a = 0,
//     the drift is the number of roots inside the circle, and
//       nu({-m}) = - sum_{|xi|<1} xi^m / m,   nu({m}) = - sum_{|xi|>1} xi^{-m} / m,
//     truncated with a certified geometric l1 tail bound.
//
//   * analyze_z — the distinguished logarithm of mu^: drift = winding
//     number, nu({n}) = n-th Fourier coefficient of g(z) - ikz.
//
//   * katti_extract — the linear recursion n a_{n+k} = sum_j j q_j a_{n+k-j}
//     whose solution q_n equals nu({n}) for distributions bounded below
//     with quasi-Levy measure on N.
//
// qid_approximate shifts every polynomial root by +h and renormalizes,
// producing a nearby distribution whose characteristic function is
// zero-free for small enough h.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qid/distinguished_log.hpp"
#include "qid/lattice.hpp"
#include "qid/roots.hpp"
#include "qid/signed_measure.hpp"
#include "qid/triplet.hpp"

namespace qid {

enum class Verdict { Qid, NotQid, Undecided };
enum class AnalysisMethod { Auto, Root, Fourier };

const char* to_string(Verdict v);
const char* to_string(AnalysisMethod m);

struct QidResult {
    Verdict verdict = Verdict::Undecided;
    std::string reason;                            // empty on a QID verdict
    std::optional<CharacteristicTriplet> triplet;  // Drift kind, a = 0, lattice nu
    std::optional<PolynomialRootSet> roots;        // root method diagnostics
    std::optional<DistinguishedLog> dlog;          // Fourier method diagnostics
    double tail_bound = 0.0;                       // l1 bound on the truncated nu tail
    AnalysisMethod method = AnalysisMethod::Root;

    bool is_qid() const { return verdict == Verdict::Qid; }
};

struct AnalyzeOptions {
    AnalysisMethod method = AnalysisMethod::Auto;  // Auto: Root when width <= 512
    double trunc_tol = 1e-9;    // root method: certified l1 tail of the nu series
    double fourier_drop_tol = 1e-12;  // Fourier method: per-coefficient drop threshold
    double circle_tol = kDefaultCircleTol;
};

// Root-based analysis; requires a Z-supported distribution.
QidResult analyze_finite(const LatticeDistribution& mu, double trunc_tol = 1e-9,
                         double circle_tol = kDefaultCircleTol);

// Distinguished-logarithm analysis; requires a Z-supported distribution.
QidResult analyze_z(const LatticeDistribution& mu, double trunc_tol = 1e-12);

// General entry point: rescales r + hZ to Z, dispatches on the method, and
// maps the triplet back to the original lattice.
QidResult analyze(const LatticeDistribution& mu, const AnalyzeOptions& opts = {});

struct KattiResult {
    std::int64_t min_index = 0;          // k = inf supp mu
    std::vector<double> q;               // q_1 .. q_max_n
    std::vector<double> abs_partial_sums;  // sum_{j<=n} |q_j|, a summability diagnostic
};

// Solves n a_{n+k} = sum_{j=1}^n j q_j a_{n+k-j} for q_1..q_max_n.
KattiResult katti_extract(const LatticeDistribution& mu, std::size_t max_n);

struct DpcpResult {
    bool is_dpcp = false;
    std::string reason;          // why not, when is_dpcp is false
    double lambda = 0.0;         // sum_j nu({j})
    std::vector<double> alphas;  // alpha_j = nu({j})/lambda, j = 1.. (sum = 1)
    QidResult analysis;
};

// A distribution on N0 is DPCP iff it is QID with drift 0 and nu on N.
DpcpResult dpcp_check(const LatticeDistribution& mu, double negative_mass_tol = 1e-9);

// f_h(w) = a_n prod (w - xi_j - h), re-expanded, clamped and renormalized.
LatticeDistribution qid_approximate(const LatticeDistribution& mu, double h);

struct ApproximationResult {
    LatticeDistribution dist;
    double used_h = 0.0;
    int retries = 0;
};

// Retries qid_approximate with h/2 on an OnCircle verdict, up to 40 times.
ApproximationResult approximate_until_qid(const LatticeDistribution& mu, double h,
                                          double circle_tol = kDefaultCircleTol);

// exp(Psi(z)) of the extracted triplet; throws std::invalid_argument on a
// non-QID result.
std::complex<double> reconstruct_charfn(const QidResult& res, double z);

// exp(Psi(2 pi j / N)) for j = 0..N-1.
std::vector<std::complex<double>> sample_charfn(const CharacteristicTriplet& t, std::size_t N);

struct SynthesizedMasses {
    std::int64_t first_index = 0;
    std::vector<double> masses;   // not renormalized; tiny values dropped
    double max_imag = 0.0;        // largest |Im| discarded
};

// Inverse transform of exp(Psi) on an N-point grid; meaningful when the
// triplet passes integer_support_check and N covers the support.
SynthesizedMasses synthesize_masses(const CharacteristicTriplet& t, std::size_t N, double drop_tol = 1e-12);

}  // namespace qid
