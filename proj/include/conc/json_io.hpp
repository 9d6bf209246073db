#pragma once

#include <json.hpp>

#include "conc/diophantine.hpp"
#include "conc/intervals.hpp"
#include "conc/pipeline.hpp"
#include "conc/poly.hpp"

namespace conc {

// Wire formats. Integer fields round-trip bit-exactly; doubles use the
// shortest representation that parses back to the same value.

nlohmann::json to_json(const SparseTrigPoly& f);
SparseTrigPoly poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IntervalUnion& E);
IntervalUnion intervals_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridApproximation& g);

// Versioned report schema; `include_coeffs` additionally embeds the witness
// spectrum (descriptor-only by default).
nlohmann::json to_json(const ConcentrationReport& r, bool include_coeffs = false);

nlohmann::json error_json(const Error& e);

}  // namespace conc
