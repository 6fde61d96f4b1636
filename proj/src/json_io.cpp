#include "qid/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace qid {

using nlohmann::json;

void to_json(json& j, const SignedMeasure& m) {
    json atoms = json::array();
    if (m.is_lattice()) {
        for (const auto& [n, w] : m.integer_atoms())
            atoms.push_back(json::array({m.location_of_index(n), w, n}));
        j = json{{"atoms", atoms},
                 {"lattice", {{"offset", m.lattice_tag()->offset}, {"spacing", m.lattice_tag()->spacing}}}};
    } else {
        for (const auto& [x, w] : m.atoms()) atoms.push_back(json::array({x, w}));
        j = json{{"atoms", atoms}, {"lattice", nullptr}};
    }
}

void from_json(const json& j, SignedMeasure& m) {
    const json& atoms = j.at("atoms");
    if (j.contains("lattice") && !j.at("lattice").is_null()) {
        const LatticeTag tag{j.at("lattice").at("offset").get<double>(),
                             j.at("lattice").at("spacing").get<double>()};
        std::vector<std::pair<std::int64_t, double>> pairs;
        std::vector<std::pair<double, double>> located;
        bool all_indexed = true;
        for (const auto& a : atoms) {
            if (a.size() >= 3)
                pairs.emplace_back(a.at(2).get<std::int64_t>(), a.at(1).get<double>());
            else {
                all_indexed = false;
                located.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
            }
        }
        if (all_indexed)
            m = SignedMeasure::on_lattice(tag, pairs);
        else {
            for (const auto& [n, w] : pairs) located.emplace_back(tag.offset + tag.spacing * static_cast<double>(n), w);
            m = SignedMeasure::from_locations_on(tag, located);
        }
    } else {
        std::vector<std::pair<double, double>> pts;
        for (const auto& a : atoms) pts.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
        m = SignedMeasure::at_points(pts);
    }
}

namespace {

RepresentationKind kind_from_string(const std::string& s) {
    if (s == "standard") return RepresentationKind::Standard;
    if (s == "drift") return RepresentationKind::Drift;
    if (s == "center") return RepresentationKind::Center;
    throw std::invalid_argument("unknown representation kind: " + s);
}

}  // namespace

void to_json(json& j, const CharacteristicTriplet& t) {
    j = json{{"a", t.a}, {"nu", t.nu}, {"gamma", t.gamma}, {"kind", to_string(t.kind)}};
}

void from_json(const json& j, CharacteristicTriplet& t) {
    SignedMeasure nu = j.at("nu").get<SignedMeasure>();
    t = make_triplet(j.at("a").get<double>(), std::move(nu), j.at("gamma").get<double>(),
                     kind_from_string(j.at("kind").get<std::string>()));
}

void to_json(json& j, const QidResult& r) {
    j = json{{"verdict", to_string(r.verdict)},
             {"method", to_string(r.method)},
             {"tail_bound", r.tail_bound}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (r.triplet)
        j["triplet"] = *r.triplet;
    else
        j["triplet"] = nullptr;
    if (r.roots) {
        json roots = json::array();
        for (const auto& root : r.roots->roots)
            roots.push_back(json{{"re", root.value.real()},
                                 {"im", root.value.imag()},
                                 {"modulus", std::abs(root.value)},
                                 {"class", to_string(root.circle_class)},
                                 {"circle_distance", root.circle_distance}});
        j["diagnostics"] = json{{"type", "roots"}, {"circle_tol", r.roots->circle_tol}, {"roots", roots}};
    } else if (r.dlog) {
        j["diagnostics"] = json{{"type", "distinguished_log"},
                                {"grid_size", r.dlog->grid_size},
                                {"drift_k", r.dlog->drift_k},
                                {"max_imag_residual", r.dlog->max_imag_residual},
                                {"min_charfn_abs", r.dlog->min_charfn_abs},
                                {"coefficient_count", r.dlog->fourier_coeffs.size()},
                                {"dropped_l1", r.dlog->dropped_l1}};
    }
}

void to_json(json& j, const ValidationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name},
                              {"applicable", c.applicable},
                              {"pass", c.pass},
                              {"margin", c.margin},
                              {"worst_z", c.worst_z}});
    j = json{{"pass", r.pass}, {"checks", checks}};
}

void to_json(json& j, const KattiResult& r) {
    j = json{{"min_index", r.min_index}, {"q", r.q}, {"abs_partial_sums", r.abs_partial_sums}};
}

void to_json(json& j, const DpcpResult& r) {
    j = json{{"is_dpcp", r.is_dpcp}, {"lambda", r.lambda}, {"alphas", r.alphas}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["analysis"] = r.analysis;
}

void to_json(json& j, const ConvergenceReport& r) {
    json elems = json::array();
    for (const auto& e : r.elements)
        elems.push_back(json{{"drift_match", e.drift_match},
                             {"l1_to_target", e.l1_to_target},
                             {"nu_total_variation", e.nu_total_variation}});
    j = json{{"converging", r.converging}, {"summary", r.summary}, {"elements", elems}};
}

void to_json(json& j, const Moments& m) {
    j = json{{"mean", m.mean},
             {"variance", m.variance},
             {"mean_error", m.mean_error},
             {"variance_error", m.variance_error}};
}

void to_json(json& j, const SeriesTriplet& s) {
    j = json{{"triplet", s.triplet}, {"terms", s.terms}, {"tail_bound", s.tail_bound}};
}

void to_json(json& j, const SynthesizedMasses& s) {
    j = json{{"first_index", s.first_index}, {"masses", s.masses}, {"max_imag", s.max_imag}};
}

}  // namespace qid

namespace nlohmann {

qid::LatticeDistribution adl_serializer<qid::LatticeDistribution>::from_json(const json& j) {
    return qid::LatticeDistribution(j.at("offset").get<double>(), j.at("spacing").get<double>(),
                                    j.at("first_index").get<std::int64_t>(),
                                    j.at("masses").get<std::vector<double>>());
}

void adl_serializer<qid::LatticeDistribution>::to_json(json& j, const qid::LatticeDistribution& mu) {
    j = json{{"offset", mu.offset()},
             {"spacing", mu.spacing()},
             {"first_index", mu.first_index()},
             {"masses", mu.masses()}};
}

}  // namespace nlohmann
