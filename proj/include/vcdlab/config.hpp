#pragma once

#include "activation.hpp"
#include "baseline.hpp"
#include "errors.hpp"
#include "hypothesis_class.hpp"
#include "network.hpp"
#include "uc.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace vcdlab::config {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct ClassSpec {
    std::string id;
    HypothesisClass cls;
};

namespace detail {

inline const json& require(const json& j, const char* field, const std::string& where) {
    if (!j.is_object() || !j.contains(field))
        throw SchemaError(where + ": missing required field '" + field + "'");
    return j.at(field);
}

template <typename T>
T get(const json& j, const char* field, const std::string& where) {
    const json& v = require(j, field, where);
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw SchemaError(where + ": field '" + field + "' has the wrong type");
    }
}

inline void check_version(const json& j, const std::string& where) {
    const int v = get<int>(j, "schema_version", where);
    if (v != kSchemaVersion)
        throw SchemaError(where + ": unsupported schema_version " + std::to_string(v));
}

inline Point parse_point(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": a point must be an array of numbers");
    Point p;
    for (const auto& v : j) {
        if (!v.is_number()) throw SchemaError(where + ": point coordinates must be numbers");
        p.push_back(v.get<double>());
    }
    return p;
}

inline PointSet parse_points(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty array of points");
    std::vector<Point> pts;
    for (const auto& p : j) pts.push_back(parse_point(p, where));
    const std::size_t dim = pts.front().size();
    return PointSet(dim, std::move(pts));
}

/// "domain" as an explicit point list, or "domain_size": N for 0..N-1 on the line.
inline PointSet parse_domain(const json& j, const std::string& where) {
    if (j.contains("domain")) return parse_points(j.at("domain"), where + ".domain");
    if (j.contains("domain_size")) {
        const auto n = get<std::size_t>(j, "domain_size", where);
        if (n == 0) throw SchemaError(where + ": domain_size must be positive");
        std::vector<Point> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i)});
        return PointSet(1, std::move(pts));
    }
    throw SchemaError(where + ": missing required field 'domain' (or 'domain_size')");
}

inline ActivationSpec parse_activation(const json& j, const std::string& where) {
    const auto kind = parse_activation_kind(get<std::string>(j, "kind", where));
    std::vector<double> params;
    if (j.contains("params")) params = get<std::vector<double>>(j, "params", where);
    std::optional<Interval> restriction;
    if (j.contains("restriction")) {
        const auto r = get<std::vector<double>>(j, "restriction", where);
        if (r.size() != 2) throw SchemaError(where + ": restriction must be [a, b]");
        restriction = Interval{r[0], r[1]};
    }
    const bool clamp = j.contains("clamp") ? get<bool>(j, "clamp", where) : false;
    return ActivationSpec(kind, std::move(params), restriction, clamp);
}

inline NetworkClass parse_network(const json& j, const std::string& where) {
    const auto input_dim = get<std::size_t>(j, "input_dim", where);
    const json& layers = require(j, "layers", where);
    if (!layers.is_array()) throw SchemaError(where + ": 'layers' must be an array");
    std::vector<LayerSpec> specs;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::string lw = where + ".layers[" + std::to_string(l) + "]";
        const auto fan_in = get<std::size_t>(layers[l], "fan_in", lw);
        const std::size_t width = layers[l].contains("width") ? get<std::size_t>(layers[l], "width", lw) : 1;
        specs.push_back({fan_in, width, parse_activation(require(layers[l], "activation", lw), lw + ".activation")});
    }
    WeightSampler sampler;
    if (j.contains("sampler")) {
        const json& s = j.at("sampler");
        const std::string sw = where + ".sampler";
        if (s.contains("box")) {
            const auto box = get<std::vector<double>>(s, "box", sw);
            if (box.size() != 2) throw SchemaError(sw + ": box must be [lo, hi]");
            sampler.lo = box[0];
            sampler.hi = box[1];
        }
        if (s.contains("refine_steps")) sampler.refine_steps = get<std::size_t>(s, "refine_steps", sw);
        if (s.contains("refine_scale")) sampler.refine_scale = get<double>(s, "refine_scale", sw);
    }
    return NetworkClass(NetworkSpec(input_dim, std::move(specs)), sampler);
}

inline json parse_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(where + ": invalid JSON (" + std::string(e.what()) + ")");
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

/// Hypothesis class from a parsed JSON document (see docs/schemas.md).
inline ClassSpec parse_class(const json& j, std::string default_id = "class") {
    const std::string where = "class spec";
    detail::check_version(j, where);
    ClassSpec out{j.contains("id") ? detail::get<std::string>(j, "id", where) : std::move(default_id),
                  LinearThresholdClass{1}};
    const auto kind = detail::get<std::string>(j, "class", where);
    if (kind == "linear_threshold") {
        const auto dim = detail::get<std::size_t>(j, "dim", where);
        if (dim == 0) throw SchemaError(where + ": dim must be positive");
        out.cls = LinearThresholdClass{dim};
    } else if (kind == "union_of_points") {
        out.cls = UnionOfPointsClass(detail::get<std::size_t>(j, "capacity", where), detail::parse_domain(j, where));
    } else if (kind == "explicit_finite") {
        auto domain = detail::parse_domain(j, where);
        std::vector<Trace> traces;
        for (const auto& s : detail::get<std::vector<std::string>>(j, "traces", where)) traces.push_back(Trace::parse(s));
        out.cls = ExplicitFiniteClass(std::move(domain), std::move(traces));
    } else if (kind == "network") {
        out.cls = detail::parse_network(j, where);
    } else {
        throw SchemaError(where + ": unknown class '" + kind + "'");
    }
    return out;
}

inline ClassSpec parse_class_text(const std::string& text, std::string default_id = "class") {
    return parse_class(detail::parse_text(text, "class spec"), std::move(default_id));
}

inline ClassSpec load_class(const std::filesystem::path& path) {
    return parse_class_text(detail::read_file(path), path.stem().string());
}

/// Distribution from JSON: "support" points, optional "probabilities"
/// (uniform when absent), and 0/1 "labels".
inline DiscreteDistribution parse_distribution(const json& j) {
    const std::string where = "distribution spec";
    detail::check_version(j, where);
    auto support = detail::parse_points(detail::require(j, "support", where), where + ".support");
    const auto labels = detail::get<std::vector<int>>(j, "labels", where);
    if (labels.size() != support.size()) throw SchemaError(where + ": labels must have one entry per support point");
    Trace t(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw SchemaError(where + ": labels must be 0 or 1");
        t.set(i, labels[i] == 1);
    }
    if (!j.contains("probabilities")) return DiscreteDistribution::uniform(std::move(support), std::move(t));
    return DiscreteDistribution(std::move(support), detail::get<std::vector<double>>(j, "probabilities", where),
                                std::move(t));
}

inline DiscreteDistribution parse_distribution_text(const std::string& text) {
    return parse_distribution(detail::parse_text(text, "distribution spec"));
}

inline DiscreteDistribution load_distribution(const std::filesystem::path& path) {
    return parse_distribution_text(detail::read_file(path));
}

} // namespace vcdlab::config
