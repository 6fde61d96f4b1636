#include "qid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qid {

WeightFunction WeightFunction::polynomial(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("polynomial weight needs alpha > 0");
    return WeightFunction{Family::Polynomial, alpha, 0.0};
}

WeightFunction WeightFunction::log_weight() { return WeightFunction{Family::Log, 0.0, 0.0}; }

WeightFunction WeightFunction::stretched_exp(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("stretched_exp weight needs alpha > 0 and beta in (0,1)");
    return WeightFunction{Family::StretchedExp, alpha, beta};
}

WeightFunction WeightFunction::exponential(double alpha) {
    return WeightFunction{Family::Exp, alpha, 0.0};
}

double WeightFunction::operator()(double x) const {
    switch (family) {
        case Family::Polynomial: return std::pow(std::max(std::abs(x), 1.0), alpha);
        case Family::Log: return std::log(std::max(std::abs(x), std::exp(1.0)));
        case Family::StretchedExp: return std::exp(alpha * std::pow(std::abs(x), beta));
        case Family::Exp: return std::exp(alpha * x);
    }
    return 0.0;
}

double WeightFunction::submultiplicative_constant() const {
    switch (family) {
        case Family::Polynomial: return std::pow(2.0, alpha);  // |n+m| <= 2 max(|n|,|m|)
        case Family::Log: return 3.0;  // a + b + log 2 <= 3ab for a, b >= 1
        case Family::StretchedExp: return 1.0;  // |n+m|^beta <= |n|^beta + |m|^beta
        case Family::Exp: return 1.0;
    }
    return 1.0;
}

Moments moments(const CharacteristicTriplet& t, double tail_bound) {
    Moments out;
    out.mean = rebase_gamma(t, RepresentationKind::Center).gamma;
    out.variance = t.a;
    double boundary = 0.0;
    for (const auto& [x, w] : t.nu.atoms()) {
        out.variance += w * x * x;
        boundary = std::max(boundary, std::abs(x));
    }
    out.mean_error = tail_bound * boundary;
    out.variance_error = tail_bound * boundary * boundary;
    return out;
}

double exp_moment(const CharacteristicTriplet& t, double alpha) {
    const CharacteristicTriplet s = rebase_gamma(t, RepresentationKind::Standard);
    double integral = 0.0;
    for (const auto& [x, w] : s.nu.atoms())
        integral += w * (std::exp(alpha * x) - 1.0 - alpha * representation_c(s.kind, x));
    return std::exp(0.5 * alpha * alpha * s.a + integral + alpha * s.gamma);
}

namespace {

HMoment h_moment_atoms(const std::vector<std::pair<double, double>>& atoms, const WeightFunction& w,
                       std::int64_t trunc) {
    // Accumulate by growing |location| so the partial sums expose decay.
    std::vector<std::pair<double, double>> sorted = atoms;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return std::abs(a.first) < std::abs(b.first); });
    HMoment out;
    out.grs = w.grs();
    for (const auto& [x, weight] : sorted) {
        if (std::abs(x) > static_cast<double>(trunc)) break;
        out.value += w(x) * std::abs(weight);
        out.partial_sums.push_back(out.value);
    }
    return out;
}

}  // namespace

HMoment h_moment(const SignedMeasure& m, const WeightFunction& w, std::int64_t trunc) {
    return h_moment_atoms(m.atoms(), w, trunc);
}

HMoment h_moment(const LatticeDistribution& mu, const WeightFunction& w, std::int64_t trunc) {
    return h_moment_atoms(mu.to_measure().atoms(), w, trunc);
}

SupportInfo support_info(const CharacteristicTriplet& t) {
    const CharacteristicTriplet d = rebase_gamma(t, RepresentationKind::Drift);
    SupportInfo out;
    if (d.a > 1e-12) {
        out.note = "criterion not met: Gaussian variance is nonzero";
        return out;
    }
    for (const auto& [x, w] : d.nu.atoms()) {
        if (x < -1e-12) {
            // The criterion is one-sided: mass of nu on the negative axis only
            // means the test is inconclusive, not that mu is unbounded.
            out.note = "criterion not met: quasi-Levy mass on the negative axis (two-sided caveat)";
            return out;
        }
    }
    out.bounded_below = true;
    out.inf_support = d.gamma;
    return out;
}

double laplace_eval(const CharacteristicTriplet& t, double u) {
    if (!(u >= 0.0)) throw std::invalid_argument("laplace_eval requires u >= 0");
    const SupportInfo info = support_info(t);
    if (!info.bounded_below) throw std::domain_error("laplace_eval: " + info.note);
    const CharacteristicTriplet d = rebase_gamma(t, RepresentationKind::Drift);
    double integral = 0.0;
    for (const auto& [x, w] : d.nu.atoms()) integral += w * (1.0 - std::exp(-u * x));
    return std::exp(-d.gamma * u - integral);
}

ConvergenceReport convergence_diag(const std::vector<QidResult>& seq, const QidResult& target,
                                   double l1_threshold) {
    const auto require_z_qid = [](const QidResult& r) -> const CharacteristicTriplet& {
        if (!r.is_qid() || !r.triplet) throw std::invalid_argument("convergence_diag: non-QID member");
        return *r.triplet;
    };
    const CharacteristicTriplet& t = require_z_qid(target);
    const std::int64_t target_drift = std::llround(rebase_gamma(t, RepresentationKind::Drift).gamma);

    ConvergenceReport report;
    for (const QidResult& r : seq) {
        const CharacteristicTriplet& m = require_z_qid(r);
        ConvergenceElement e;
        e.drift_match = std::llround(rebase_gamma(m, RepresentationKind::Drift).gamma) == target_drift;
        e.l1_to_target = l1_distance(m.nu, t.nu);
        e.nu_total_variation = m.nu.total_variation();
        report.elements.push_back(e);
    }
    if (report.elements.empty()) {
        report.summary = "empty sequence";
        return report;
    }

    const std::size_t tail_start = report.elements.size() / 2;
    bool drifts_ok = true, monotone = true;
    for (std::size_t i = tail_start; i < report.elements.size(); ++i) {
        drifts_ok = drifts_ok && report.elements[i].drift_match;
        if (i > tail_start)
            monotone = monotone && report.elements[i].l1_to_target <=
                                       report.elements[i - 1].l1_to_target * 1.05 + 1e-12;
    }
    const double final_l1 = report.elements.back().l1_to_target;
    report.converging = drifts_ok && monotone && final_l1 < l1_threshold;
    report.summary = report.converging
                         ? "converging: drifts match and l1 tail is monotone below threshold"
                         : (!drifts_ok ? "drift mismatch in the tail"
                                       : (!monotone ? "l1 distances are not monotonically decreasing"
                                                    : "final l1 distance above threshold"));
    return report;
}

bool integer_support_check(const CharacteristicTriplet& t) {
    if (std::abs(t.a) > 1e-9) return false;
    const double drift = rebase_gamma(t, RepresentationKind::Drift).gamma;
    if (std::abs(drift - std::round(drift)) > 1e-9) return false;
    for (const auto& [x, w] : t.nu.atoms())
        if (std::abs(x - std::round(x)) > 1e-9) return false;
    return true;
}

}  // namespace qid
