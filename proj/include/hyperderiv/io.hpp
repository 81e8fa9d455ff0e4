#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "hyperderiv/fourier.hpp"
#include "hyperderiv/hypergroup.hpp"
#include "hyperderiv/measure.hpp"
#include "hyperderiv/moments.hpp"
#include "hyperderiv/report.hpp"

namespace hyperderiv::io {

using nlohmann::json;

/// Parses a preset name ("chebyshev", "dtheta:<theta>", "realline") or a
/// hypergroup JSON document. All failures are ParseError.
HypergroupPtr parse_hypergroup(const json& j);
HypergroupPtr hypergroup_from_preset(const std::string& name);
/// Preset name, a path to a JSON file, or inline JSON text.
HypergroupPtr load_hypergroup(const std::string& spec);

/// Complex scalar: a number or [re, im].
Complex parse_complex(const json& j);
json to_json(Complex c);

Point parse_point(const Hypergroup& h, const json& j);
json to_json(const Point& p);

/// [[point, [re, im]], ...]
Measure parse_measure(const HypergroupPtr& h, const json& j);
json to_json(const Measure& mu);

/// {"kind": "table" | "constant" | "exponential" | "moment" | "polynomial"
///  | "perturbed", ...}
CFunction parse_function(const HypergroupPtr& h, const json& j);

/// {"rank", "order", "entries": [[alpha, function], ...]} or a builtin
/// {"family": "realline-moment", "lambda"} /
/// {"family": "polynomial-derivative", "z"}, with optional "order",
/// "rank" and per-axis "weights". `order` and `rank` override the document
/// when nonzero.
MomentSequence parse_family(const HypergroupPtr& h, const json& j, unsigned order = 0,
                            std::size_t rank = 0);

MultiIndex parse_multi_index(const json& j);

std::vector<PointPair> parse_point_pairs(const Hypergroup& h, const json& j);
std::vector<MeasurePair> parse_measure_pairs(const HypergroupPtr& h, const json& j);

/// Lowest degree first, each coefficient [re, im].
json to_json(const Poly& p);

json to_json(const Check& c);
json to_json(const Report& r);
Report report_from_json(const json& j);

/// Reads `spec` as a file if it names one, otherwise parses it as JSON text.
json load_json(const std::string& spec);

}  // namespace hyperderiv::io
