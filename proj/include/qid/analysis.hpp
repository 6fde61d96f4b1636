// analysis.hpp — consumers of characteristic triplets: moments, weighted
// moments, support and Laplace facts, convergence diagnostics.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qid/lattice_qid.hpp"
#include "qid/signed_measure.hpp"
#include "qid/triplet.hpp"

namespace qid {

// Submultiplicative weight families h(n); `grs` marks log h(n)/n -> 0,
// under which h-moment finiteness transfers between mu and |nu|.
struct WeightFunction {
    enum class Family { Polynomial, Log, StretchedExp, Exp };

    Family family = Family::Polynomial;
    double alpha = 1.0;
    double beta = 0.5;  // StretchedExp only, in (0,1)

    static WeightFunction polynomial(double alpha);       // (|n| v 1)^alpha, B = 2^alpha
    static WeightFunction log_weight();                   // log(|n| v e),   B = 3
    static WeightFunction stretched_exp(double alpha, double beta);  // exp(alpha |n|^beta), B = 1
    static WeightFunction exponential(double alpha);      // exp(alpha n),   B = 1, not GRS

    double operator()(double x) const;
    bool grs() const { return family != Family::Exp; }
    double submultiplicative_constant() const;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    // Error estimates for triplets with a truncated quasi-Levy tail:
    // tail_bound x the integrand at the truncation boundary.
    double mean_error = 0.0;
    double variance_error = 0.0;
};

// mean = center gamma_m, variance = a + sum x^2 nu({x}).
Moments moments(const CharacteristicTriplet& t, double tail_bound = 0.0);

// E e^{alpha X} = exp(alpha^2 a / 2 + sum (e^{alpha x} - 1 - alpha c(x)) nu + alpha gamma)
// in the Standard representation.
double exp_moment(const CharacteristicTriplet& t, double alpha);

struct HMoment {
    double value = 0.0;
    bool grs = true;
    std::vector<double> partial_sums;  // by growing |n|; finiteness is never claimed
};

HMoment h_moment(const SignedMeasure& m, const WeightFunction& w, std::int64_t trunc);
HMoment h_moment(const LatticeDistribution& mu, const WeightFunction& w, std::int64_t trunc);

struct SupportInfo {
    bool bounded_below = false;  // the one-sided criterion held
    std::optional<double> inf_support;
    std::string note;  // caveat when the criterion is not met
};

// Criterion: a = 0 and nu (both parts) supported on [0, infinity). When it
// holds, mu is bounded below with inf supp mu = drift. When it fails,
// nothing is claimed about boundedness.
SupportInfo support_info(const CharacteristicTriplet& t);

// Laplace transform exp(-gamma_0 u - sum (1 - e^{-ux}) nu({x})) for u >= 0;
// throws std::domain_error unless the support_info criterion holds.
double laplace_eval(const CharacteristicTriplet& t, double u);

struct ConvergenceElement {
    bool drift_match = false;
    double l1_to_target = 0.0;
    double nu_total_variation = 0.0;  // |nu_m|(R), exposes divergence
};

struct ConvergenceReport {
    std::vector<ConvergenceElement> elements;
    bool converging = false;
    std::string summary;
};

// l1 comparison of extracted quasi-Levy measures against a target; the
// verdict is "converging" when drifts eventually match and the l1 distances
// have a monotone tail ending below the threshold. Throws
// std::invalid_argument on a non-QID member.
ConvergenceReport convergence_diag(const std::vector<QidResult>& seq, const QidResult& target,
                                   double l1_threshold = 0.5);

// a = 0, nu concentrated on Z, drift integral (all within 1e-9).
bool integer_support_check(const CharacteristicTriplet& t);

}  // namespace qid
