#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "splitsolve/core/system.hpp"
#include "splitsolve/depauw/evolve.hpp"

namespace splitsolve {

/// Format-neutral view of a trajectory: named fields sampled at cells, per time.
struct ExportData {
    nlohmann::ordered_json grid;                           // grid description, see grid_coords
    std::vector<double> times;
    std::vector<std::string> names;                       // field names, CSV column order
    std::vector<std::vector<std::vector<double>>> fields;  // [field][time][cell]
    std::map<std::string, std::string> meta;

    friend bool operator==(const ExportData&, const ExportData&) = default;
};

inline nlohmann::ordered_json grid_json(const Grid1D& g) {
    return {{"kind", "uniform1d"}, {"x_min", g.x_min}, {"x_max", g.x_max}, {"n", g.n}};
}

inline nlohmann::ordered_json grid_json(const Grid2D& g) { return {{"kind", "periodic2d"}, {"m", g.m}}; }

/// Coordinate column names and per-cell values implied by a grid description.
inline std::vector<std::pair<std::string, std::vector<double>>> grid_coords(const nlohmann::ordered_json& grid) {
    const std::string kind = grid.value("kind", "");
    if (kind == "uniform1d") {
        const Grid1D g = make_grid(grid.at("x_min").get<double>(), grid.at("x_max").get<double>(),
                                   grid.at("n").get<std::size_t>());
        std::vector<double> x(g.n);
        for (std::size_t i = 0; i < g.n; ++i) x[i] = g.midpoint(i);
        return {{"x", x}};
    }
    if (kind == "periodic2d") {
        const Grid2D g = make_grid2d(grid.at("m").get<int>());
        std::vector<double> x(g.size()), y(g.size());
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t i = 0; i < g.n; ++i) {
                x[g.index(i, j)] = g.center(i);
                y[g.index(i, j)] = g.center(j);
            }
        return {{"x", x}, {"y", y}};
    }
    fail(ErrorKind::invalid_argument, "unknown grid kind '" + kind + "'");
}

inline ExportData to_export(const Trajectory& traj, const Grid1D& grid, const std::string& name = "u") {
    ExportData d;
    d.grid = grid_json(grid);
    d.names = {name};
    d.fields.resize(1);
    d.times = traj.times;
    for (const auto& f : traj.fields) d.fields[0].push_back(f.values);
    d.meta = traj.meta;
    return d;
}

/// Components named u1..uk.
inline ExportData to_export(const SystemTrajectory& traj, const Grid1D& grid, std::size_t k) {
    ExportData d;
    d.grid = grid_json(grid);
    d.fields.resize(k);
    for (std::size_t j = 0; j < k; ++j) d.names.push_back("u" + std::to_string(j + 1));
    d.times = traj.times;
    for (const auto& s : traj.states) {
        if (s.k() != k) fail(ErrorKind::invalid_argument, "component count changed along the trajectory");
        for (std::size_t j = 0; j < k; ++j) d.fields[j].push_back(s[j].values);
    }
    d.meta = traj.meta;
    return d;
}

inline ExportData to_export(const Trajectory2D& traj, const Grid2D& grid) {
    ExportData d;
    d.grid = grid_json(grid);
    d.names = {"u"};
    d.fields.resize(1);
    d.times = traj.times;
    for (const auto& s : traj.states) d.fields[0].push_back(s.values);
    d.meta = traj.meta;
    return d;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Header row, then one row per (t, cell); 17 significant digits.
inline std::string csv_text(const ExportData& d) {
    const auto coords = grid_coords(d.grid);
    std::string out = "t";
    for (const auto& c : coords) out += "," + c.first;
    for (const auto& n : d.names) out += "," + n;
    out += "\n";
    const std::size_t cells = coords.front().second.size();
    for (std::size_t k = 0; k < d.times.size(); ++k) {
        const std::string t = format_double(d.times[k]);
        for (std::size_t c = 0; c < cells; ++c) {
            out += t;
            for (const auto& co : coords) out += "," + format_double(co.second[c]);
            for (const auto& f : d.fields) out += "," + format_double(f[k][c]);
            out += "\n";
        }
    }
    return out;
}

inline nlohmann::ordered_json to_json(const ExportData& d) {
    nlohmann::ordered_json j;
    j["times"] = d.times;
    j["grid"] = d.grid;
    j["fields"] = nlohmann::ordered_json::object();
    for (std::size_t f = 0; f < d.names.size(); ++f) j["fields"][d.names[f]] = d.fields[f];
    j["meta"] = d.meta;
    return j;
}

/// Inverse of to_json; field order is preserved.
inline ExportData from_json(const nlohmann::ordered_json& j) {
    try {
        ExportData d;
        d.times = j.at("times").get<std::vector<double>>();
        d.grid = j.at("grid");
        grid_coords(d.grid);
        for (const auto& [name, value] : j.at("fields").items()) {
            d.names.push_back(name);
            d.fields.push_back(value.get<std::vector<std::vector<double>>>());
        }
        d.meta = j.value("meta", std::map<std::string, std::string>{});
        return d;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::invalid_argument, std::string("malformed trajectory json: ") + e.what());
    }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorKind::io_failure, "cannot create directory for " + path.string() + ": " + ec.message());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorKind::io_failure, "cannot open " + path.string() + " for writing");
    os << text;
    os.flush();
    if (!os) fail(ErrorKind::io_failure, "write to " + path.string() + " failed");
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrorKind::io_failure, "cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline void write_csv(const ExportData& d, const std::filesystem::path& path) { write_text(path, csv_text(d)); }

inline void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path) {
    write_text(path, j.dump(2) + "\n");
}

inline ExportData read_trajectory_json(const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::invalid_argument, path.string() + " is not valid json: " + e.what());
    }
    return from_json(j);
}

}  // namespace splitsolve
