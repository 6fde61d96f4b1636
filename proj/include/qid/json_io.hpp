// json_io.hpp — JSON schemas for the domain types.
//
//   measure : {"atoms": [[x, w], ...], "lattice": null}
//             {"atoms": [[x, w, n], ...], "lattice": {"offset": r, "spacing": h}}
//   dist    : {"offset": r, "spacing": h, "first_index": k0, "masses": [...]}
//   triplet : {"a": a, "nu": <measure>, "gamma": g, "kind": "standard"|"drift"|"center"}
//
// QidResult and the report types serialize one way (to JSON) for the CLI.

#pragma once

#include <json.hpp>

#include "qid/analysis.hpp"
#include "qid/cuppens.hpp"
#include "qid/lattice.hpp"
#include "qid/lattice_qid.hpp"
#include "qid/signed_measure.hpp"
#include "qid/triplet.hpp"

namespace qid {

void to_json(nlohmann::json& j, const SignedMeasure& m);
void from_json(const nlohmann::json& j, SignedMeasure& m);

void to_json(nlohmann::json& j, const CharacteristicTriplet& t);
void from_json(const nlohmann::json& j, CharacteristicTriplet& t);

void to_json(nlohmann::json& j, const QidResult& r);
void to_json(nlohmann::json& j, const ValidationReport& r);
void to_json(nlohmann::json& j, const KattiResult& r);
void to_json(nlohmann::json& j, const DpcpResult& r);
void to_json(nlohmann::json& j, const ConvergenceReport& r);
void to_json(nlohmann::json& j, const Moments& m);
void to_json(nlohmann::json& j, const SeriesTriplet& s);
void to_json(nlohmann::json& j, const SynthesizedMasses& s);

}  // namespace qid

namespace nlohmann {

// LatticeDistribution validates on construction and has no default state.
template <>
struct adl_serializer<qid::LatticeDistribution> {
    static qid::LatticeDistribution from_json(const json& j);
    static void to_json(json& j, const qid::LatticeDistribution& mu);
};

}  // namespace nlohmann
