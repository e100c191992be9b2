#pragma once
#include <string>

#include <json.hpp>

#include "canal/moebius.hpp"
#include "canal/surface.hpp"

namespace canal {

/// %.17g, enough digits for a lossless text round-trip.
std::string fmt17(double x);

/// Serialize with insertion order preserved and all floats at 17 significant
/// digits (nlohmann's own dump uses shortest-round-trip formatting instead).
std::string dump_json17(const nlohmann::ordered_json& j, int indent = 2);

/// Curve spec: {"kind": "ellipse" | "family_curve" | "fourier", ...}.
ClosedCurve parse_curve_spec(const nlohmann::json& j);

/// Radial spec: {"kind": "constant" | "family" | "fourier", ...}.
RadialFunction parse_radial_spec(const nlohmann::json& j, double curve_period);

/// Surface spec: {"curve": <curve spec>, "radial": <radial spec>}.
CanalSurface parse_surface_spec(const nlohmann::json& j);

/// Parse a surface spec from a JSON document (throws InputError naming the
/// offending field on malformed input).
CanalSurface parse_surface_spec_text(const std::string& text);

/// Built-in specs, expressed in the same JSON schema so that resolved
/// configs are self-contained: a torus is a unit-speed circle of radius R
/// (a one-term Fourier curve) with constant radius r.
nlohmann::ordered_json torus_spec(double big_radius, double small_radius);
nlohmann::ordered_json family_spec(double eps, double rho, double mu);

/// Classification report as an ordered JSON object.
nlohmann::ordered_json report_to_json(const ReturnMapReport& rep);

}  // namespace canal
