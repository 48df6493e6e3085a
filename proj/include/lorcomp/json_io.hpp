#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lorcomp/composition.hpp"
#include "lorcomp/functions.hpp"
#include "lorcomp/lorentz_norm.hpp"
#include "lorcomp/measure.hpp"
#include "lorcomp/pushforward.hpp"

namespace lorcomp::io {

using nlohmann::json;

// Reads and parses a file. Throws StructuralError naming the file on I/O or
// syntax errors.
json read_json_file(const std::filesystem::path& path);

// Infinite values are written as the string "inf".
json number(double v);
// Accepts a number or the string "inf"; `field` names the value in errors.
double parse_extended(const json& j, std::string_view field);

// {"atoms":[{"id":"x1","weight":1.0}, ...]}
json to_json(const MeasureSpace& space);
SpaceRef space_from_json(const json& j, std::string_view field = "space");

// {"values":{"x1":3.0, ...}}
json to_json(const SimpleFunction& f);
SimpleFunction function_from_json(const json& j, const SpaceRef& space,
                                  std::string_view field = "function");

// {"breakpoints":[...],"levels":[...]}
json to_json(const StepFunction& g);
StepFunction step_function_from_json(const json& j, std::string_view field = "step");

// {"p":2.0,"q":"inf"}
json to_json(const LorentzExponents& e);
LorentzExponents exponents_from_json(const json& j, std::string_view field = "exponents");

// {"members":["y1", ...]} or a bare array of ids.
json to_json(const MSet& s);
MSet set_from_json(const json& j, const SpaceRef& space, std::string_view field = "set");

// {"domain":<space>,"codomain":<space>,"assign":{"x1":"y1", ...}}. Domain and
// codomain may also be file paths, resolved against base_dir.
json to_json(const MeasurableMap& m);
MeasurableMap map_from_json(const json& j, const std::filesystem::path& base_dir = {},
                            std::string_view field = "map");

json to_json(const ConstantCertificate& c);
json to_json(const RNDerivative& j);
json to_json(const LuzinReport& r, const MeasureSpace& codomain);
json to_json(const BoundednessReport& r, const MeasureSpace& codomain);
json to_json(const BoundedBelowReport& r, const MeasureSpace& codomain);
json to_json(const ClosedRangeReport& r, const MeasureSpace& codomain);
json to_json(const RangeReport& r, const MeasureSpace& codomain);
json to_json(const IsomorphismReport& r, const MeasureSpace& codomain);
json to_json(const SampleReport& r);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);

}  // namespace lorcomp::io
