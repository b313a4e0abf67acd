#pragma once

#include <string>

#include <json.hpp>

#include "ornament/degree.hpp"
#include "ornament/model.hpp"
#include "ornament/sweep.hpp"

namespace ornament {

// Interchange documents (JSON syntax). Rationals are canonical "p/q" strings.
//
// Ornament:
//   { "m": int,
//     "components": [ { "name": str, "dim": int,
//                       "vertices": [[rational, ...], ...],
//                       "facets": [[int, ...], ...] } x 3 ] }
//
// Homotopy: the ornament document of the start, plus
//   "keyframes": [ { "t": rational, "vertices": [comp1, comp2, comp3] }, ... ]
// where each comp is a vertex list as above. The first keyframe must repeat
// the component vertices.

nlohmann::json to_json(const Ornament& o);
Ornament ornament_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const HomotopyTrack& track);
HomotopyTrack track_from_json(const nlohmann::json& doc);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json to_json(const ManifoldReport& report);
nlohmann::json to_json(const OrnamentReport& report);
nlohmann::json to_json(const PreimageSolution& p);
nlohmann::json to_json(const SignedTriplePoint& p);

/// Canonical text form: two-space indent, trailing newline.
std::string dump(const nlohmann::json& doc);

/// Reads and parses a file; ParseError (with the JSON location) on failure.
nlohmann::json read_document(const std::string& path);

}  // namespace ornament
