#include "canal/spec_io.hpp"

#include <cmath>
#include <cstdio>

#include "canal/errors.hpp"

namespace canal {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void dump_impl(const ordered_json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in;
                out += ordered_json(it.key()).dump();
                out += ": ";
                dump_impl(it.value(), out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump_impl(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? fmt17(v) : "null";
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json17(const ordered_json& j, int indent) {
    std::string out;
    dump_impl(j, out, indent, 0);
    out += "\n";
    return out;
}

namespace {

const json& require_field(const json& j, const char* key,
                          const std::string& where) {
    if (!j.is_object())
        throw InputError("spec: '" + where + "' must be an object");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError("spec: missing field '" + where + "." + key + "'");
    return *it;
}

double require_number(const json& j, const char* key, const std::string& where) {
    const json& f = require_field(j, key, where);
    if (!f.is_number())
        throw InputError("spec: field '" + where + "." + key +
                         "' must be a number");
    return f.get<double>();
}

double optional_number(const json& j, const char* key, double fallback,
                       const std::string& where) {
    if (!j.is_object())
        throw InputError("spec: '" + where + "' must be an object");
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number())
        throw InputError("spec: field '" + where + "." + key +
                         "' must be a number");
    return it->get<double>();
}

FourierSeries parse_series(const json& j, const std::string& where) {
    FourierSeries s;
    if (!j.is_object())
        throw InputError("spec: '" + where + "' must be an object");
    s.a0 = optional_number(j, "a0", 0.0, where);
    for (const char* key : {"cos", "sin"}) {
        auto it = j.find(key);
        if (it == j.end()) continue;
        if (!it->is_array())
            throw InputError("spec: field '" + where + "." + key +
                             "' must be an array of numbers");
        std::vector<double>& dst =
            key[0] == 'c' ? s.cos_coeffs : s.sin_coeffs;
        for (const json& v : *it) {
            if (!v.is_number())
                throw InputError("spec: field '" + where + "." + key +
                                 "' must contain only numbers");
            dst.push_back(v.get<double>());
        }
    }
    return s;
}

}  // namespace

ClosedCurve parse_curve_spec(const json& j) {
    const json& kind_f = require_field(j, "kind", "curve");
    if (!kind_f.is_string())
        throw InputError("spec: field 'curve.kind' must be a string");
    const std::string kind = kind_f.get<std::string>();
    if (kind == "ellipse") {
        const double a = optional_number(j, "a", 2.0, "curve");
        const double b = optional_number(j, "b", 1.0, "curve");
        return ClosedCurve::ellipse(a, b);
    }
    if (kind == "family_curve") {
        return ClosedCurve::deformed_ellipse(require_number(j, "eps", "curve"));
    }
    if (kind == "fourier") {
        const double period = require_number(j, "period", "curve");
        return ClosedCurve::fourier(
            parse_series(require_field(j, "x", "curve"), "curve.x"),
            parse_series(require_field(j, "y", "curve"), "curve.y"),
            parse_series(require_field(j, "z", "curve"), "curve.z"), period);
    }
    throw InputError("spec: field 'curve.kind' has unknown value '" + kind +
                     "' (expected ellipse, family_curve or fourier)");
}

RadialFunction parse_radial_spec(const json& j, double curve_period) {
    const json& kind_f = require_field(j, "kind", "radial");
    if (!kind_f.is_string())
        throw InputError("spec: field 'radial.kind' must be a string");
    const std::string kind = kind_f.get<std::string>();
    if (kind == "constant")
        return RadialFunction::constant(require_number(j, "value", "radial"),
                                        curve_period);
    if (kind == "family")
        return RadialFunction::modulated(require_number(j, "rho", "radial"),
                                         require_number(j, "mu", "radial"));
    if (kind == "fourier") {
        const double period =
            optional_number(j, "period", curve_period, "radial");
        return RadialFunction::fourier(parse_series(j, "radial"), period);
    }
    throw InputError("spec: field 'radial.kind' has unknown value '" + kind +
                     "' (expected constant, family or fourier)");
}

CanalSurface parse_surface_spec(const json& j) {
    const json& curve_j = require_field(j, "curve", "surface");
    const json& radial_j = require_field(j, "radial", "surface");
    ClosedCurve curve = parse_curve_spec(curve_j);
    RadialFunction radial = parse_radial_spec(radial_j, curve.period());
    try {
        return CanalSurface(std::move(curve), std::move(radial));
    } catch (const ConstructionError& e) {
        throw InputError(std::string("spec: invalid surface: ") + e.what());
    }
}

CanalSurface parse_surface_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("spec: JSON parse error: ") + e.what());
    }
    return parse_surface_spec(j);
}

ordered_json torus_spec(double big_radius, double small_radius) {
    ordered_json curve;
    curve["kind"] = "fourier";
    curve["period"] = 2.0 * M_PI * big_radius;
    curve["x"] = {{"a0", 0.0}, {"cos", {big_radius}}, {"sin", json::array()}};
    curve["y"] = {{"a0", 0.0}, {"cos", json::array()}, {"sin", {big_radius}}};
    curve["z"] = {{"a0", 0.0}, {"cos", json::array()}, {"sin", json::array()}};
    ordered_json radial;
    radial["kind"] = "constant";
    radial["value"] = small_radius;
    return ordered_json{{"curve", curve}, {"radial", radial}};
}

ordered_json family_spec(double eps, double rho, double mu) {
    ordered_json curve;
    curve["kind"] = "family_curve";
    curve["eps"] = eps;
    ordered_json radial;
    radial["kind"] = "family";
    radial["rho"] = rho;
    radial["mu"] = mu;
    return ordered_json{{"curve", curve}, {"radial", radial}};
}

ordered_json report_to_json(const ReturnMapReport& rep) {
    ordered_json j;
    j["classification"] = to_string(rep.classification);
    j["moebius"] = {{"a", rep.moebius.a()},
                    {"b", rep.moebius.b()},
                    {"c", rep.moebius.c()},
                    {"d", rep.moebius.d()}};
    j["abs_trace"] = std::abs(rep.moebius.trace());
    if (rep.rotation_number)
        j["rotation_number"] = *rep.rotation_number;
    else
        j["rotation_number"] = nullptr;
    ordered_json fps = ordered_json::array();
    for (const FixedPointInfo& fp : rep.fixed_points) {
        const char* stab =
            fp.stability == FixedPointInfo::Stability::attracting ? "attracting"
            : fp.stability == FixedPointInfo::Stability::repelling
                ? "repelling"
                : "semi-stable";
        fps.push_back({{"phi", fp.phi},
                       {"multiplier", fp.multiplier},
                       {"stability", stab}});
    }
    j["fixed_points"] = fps;
    j["fit_residual"] = rep.fit_residual;
    j["lift_delta"] = rep.lift_delta;
    if (rep.classification == MapClass::parabolic)
        j["parabolic_confident"] = rep.parabolic_confident;
    return j;
}

}  // namespace canal
