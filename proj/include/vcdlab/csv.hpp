#pragma once

#include "bounds.hpp"
#include "density.hpp"
#include "dichotomy.hpp"
#include "errors.hpp"
#include "uc.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace vcdlab::csv {

/// Shortest decimal that round-trips to `v`.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// RFC 4180 field quoting.
inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Splits one CSV record, honouring quoted fields.
inline std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw SchemaError("unterminated quoted CSV field");
    return fields;
}

inline constexpr std::string_view kGrowthHeader = "n,count,exactness,seed,class_id";

inline std::string growth_csv(const GrowthEstimate& g) {
    std::string out(kGrowthHeader);
    out += '\n';
    for (const auto& s : g.samples) {
        out += std::to_string(s.n) + ',' + std::to_string(s.count) + ',' + std::string(to_string(s.exactness)) + ',' +
               std::to_string(g.seed) + ',' + quote(g.class_id) + '\n';
    }
    return out;
}

namespace detail {

template <typename T>
T parse_integer(std::string_view s, std::string_view field) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw SchemaError("growth CSV: bad integer in column '" + std::string(field) + "'");
    return v;
}

} // namespace detail

/// Parses growth CSV text. All rows must share one class_id and seed.
inline GrowthEstimate parse_growth_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("growth CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kGrowthHeader) throw SchemaError("growth CSV: header must be '" + std::string(kGrowthHeader) + "'");
    GrowthEstimate g;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = split_record(line);
        if (f.size() != 5) throw SchemaError("growth CSV: expected 5 columns");
        const auto seed = detail::parse_integer<std::uint64_t>(f[3], "seed");
        if (first) {
            g.class_id = f[4];
            g.seed = seed;
            first = false;
        } else if (f[4] != g.class_id || seed != g.seed) {
            throw SchemaError("growth CSV: rows from more than one class/seed");
        }
        g.samples.push_back({detail::parse_integer<std::size_t>(f[0], "n"),
                             detail::parse_integer<std::uint64_t>(f[1], "count"), parse_exactness(f[2])});
    }
    return g;
}

inline constexpr std::string_view kBoundsHeader =
    "m,eps,delta,k_elementary,k_rademacher,k_solver_elem,k_solver_rad,classical_m2,classical_m4,classical_mlogm";

inline std::string bounds_csv(std::span<const BoundReport> reports) {
    std::string out(kBoundsHeader);
    out += '\n';
    for (const auto& r : reports) {
        out += std::to_string(r.query.m) + ',' + format_double(r.query.eps) + ',' + format_double(r.query.delta) + ',' +
               std::to_string(r.k_elementary) + ',' + std::to_string(r.k_rademacher) + ',' +
               std::to_string(r.k_solver_elementary) + ',' + std::to_string(r.k_solver_rademacher) + ',' +
               format_double(r.classical_m2) + ',' + format_double(r.classical_m4) + ',' +
               format_double(r.classical_mlogm) + '\n';
    }
    return out;
}

inline constexpr std::string_view kUcHeader = "k,eps,delta_target,trials,failures,empirical_rate,sup_method,seed";

inline std::string uc_csv(std::span<const UCExperimentResult> results) {
    std::string out(kUcHeader);
    out += '\n';
    for (const auto& r : results) {
        out += std::to_string(r.k) + ',' + format_double(r.eps) + ',' + format_double(r.delta_target) + ',' +
               std::to_string(r.trials) + ',' + std::to_string(r.failures) + ',' + format_double(r.empirical_rate) +
               ',' + std::string(to_string(r.sup_method)) + ',' + std::to_string(r.seed) + '\n';
    }
    return out;
}

inline std::string density_csv(const std::string& class_id, const DensityEstimate& d) {
    return "class_id,slope,n_min,n_max,residual,points\n" + quote(class_id) + ',' + format_double(d.slope) + ',' +
           std::to_string(d.n_min) + ',' + std::to_string(d.n_max) + ',' + format_double(d.residual) + ',' +
           std::to_string(d.points) + '\n';
}

inline std::string vcdim_csv(const std::string& class_id, std::size_t max_d, const VcDimResult& r,
                             std::uint64_t seed) {
    return "class_id,max_d,vc_dim,reached_max,exactness,candidates,seed\n" + quote(class_id) + ',' +
           std::to_string(max_d) + ',' + std::to_string(r.dimension) + ',' + (r.reached_max ? "true" : "false") +
           ',' + std::string(to_string(r.exactness)) + ',' + std::to_string(r.candidates_tried) + ',' +
           std::to_string(seed) + '\n';
}

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Two columns per series (`<label>_x`, `<label>_y`); shorter series leave
/// their cells empty once exhausted.
inline std::string plot_data_csv(std::span<const PlotSeries> series) {
    if (series.empty()) throw SchemaError("plot data needs at least one series");
    std::size_t rows = 0;
    for (const auto& s : series) {
        if (s.points.empty()) throw SchemaError("plot series '" + s.label + "' is empty");
        rows = std::max(rows, s.points.size());
    }
    std::string out;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i) out += ',';
        out += quote(series[i].label + "_x") + ',' + quote(series[i].label + "_y");
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (i) out += ',';
            if (r < series[i].points.size())
                out += format_double(series[i].points[r].first) + ',' + format_double(series[i].points[r].second);
            else
                out += ',';
        }
        out += '\n';
    }
    return out;
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline void emit_plot_data(std::span<const PlotSeries> series, const std::filesystem::path& path) {
    write_file(path, plot_data_csv(series));
}

} // namespace vcdlab::csv
