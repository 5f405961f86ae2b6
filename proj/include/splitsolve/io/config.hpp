#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "splitsolve/error.hpp"

namespace splitsolve {

enum class ExperimentKind { riemann, chroma, kk, depauw, verify };

inline std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::riemann: return "riemann";
        case ExperimentKind::chroma: return "chroma";
        case ExperimentKind::kk: return "kk";
        case ExperimentKind::depauw: return "depauw";
        case ExperimentKind::verify: return "verify";
    }
    return "unknown";
}

/// Initial data. `table` holds breakpoints x and one column per component,
/// interpolated linearly between breakpoints and held constant outside.
struct InitialSpec {
    std::string type = "riemann";  // constant | riemann | table
    std::vector<double> value, left, right;
    double x0 = 0.0;
    std::vector<double> x;
    std::vector<std::vector<double>> columns;

    std::size_t components() const {
        if (type == "constant") return value.size();
        if (type == "riemann") return left.size();
        return columns.size();
    }
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::riemann;
    std::string name = "experiment";

    double x_min = -1.0, x_max = 1.0;
    std::size_t n = 512;

    InitialSpec initial;

    double t_end = 1.0;
    std::size_t records = 4;           // uniform record intervals, unless record_times is given
    std::vector<double> record_times;  // explicit, excluding 0
    double cfl = 0.45;
    double epsilon = 0.0;              // chroma: mollifier width for the characteristics cross-check
    std::string flux = "chromatography";

    std::string kk_f = "identity";  // identity | affine
    double kk_a = 0.0, kk_b = 1.0;

    std::string variant = "original";
    int k_max = 5;
    int m = 7;
    std::string branch = "nontrivial";  // nontrivial | zero
    std::size_t samples_per_stage = 2;
    bool witness = true;

    std::string level = "fast";

    std::string csv, json, trajectory_json;  // empty csv/json fall back to <name>.csv / <name>.json

    /// Times at which the trajectory is recorded (0 first, t_end last).
    std::vector<double> recorded_times() const {
        std::vector<double> ts{0.0};
        if (!record_times.empty()) {
            for (double t : record_times)
                if (t > 0.0 && t < t_end) ts.push_back(t);
        } else {
            for (std::size_t k = 1; k < records; ++k) ts.push_back(t_end * static_cast<double>(k) / static_cast<double>(records));
        }
        ts.push_back(t_end);
        return ts;
    }
};

namespace detail {

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(","));
    std::vector<double> out;
    for (auto& p : parts) {
        boost::trim(p);
        if (p.empty()) fail(ErrorKind::invalid_argument, "empty entry in list '" + key + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(p, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != p.size() || !std::isfinite(v))
            fail(ErrorKind::invalid_argument, "'" + p + "' in '" + key + "' is not a finite number");
        out.push_back(v);
    }
    return out;
}

/// Typed reads that remember which keys were consumed, so leftovers can be reported.
class IniReader {
public:
    explicit IniReader(boost::property_tree::ptree tree) : tree_(std::move(tree)) {}

    bool has(const std::string& key) const { return tree_.get_optional<std::string>(path(key)).has_value(); }

    std::string str(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        auto v = tree_.get_optional<std::string>(path(key));
        if (!v) return fallback;
        std::string s = *v;
        boost::trim(s);
        return s;
    }

    double num(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const auto xs = parse_list(key, str(key, ""));
        if (xs.size() != 1) fail(ErrorKind::invalid_argument, "'" + key + "' must be a single number");
        return xs[0];
    }

    long long integer(const std::string& key, long long fallback) {
        if (!has(key)) return fallback;
        const double v = num(key, 0.0);
        if (v != std::floor(v) || std::abs(v) > 1e15)
            fail(ErrorKind::invalid_argument, "'" + key + "' must be an integer");
        return static_cast<long long>(v);
    }

    std::vector<double> list(const std::string& key) {
        if (!has(key)) return {};
        return parse_list(key, str(key, ""));
    }

    bool flag(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const std::string s = boost::to_lower_copy(str(key, ""));
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        fail(ErrorKind::invalid_argument, "'" + key + "' must be true or false");
    }

    void reject_unknown() const {
        for (const auto& [section, body] : tree_) {
            if (body.empty())
                fail(ErrorKind::invalid_argument, "key '" + section + "' is outside any section");
            for (const auto& kv : body) {
                const std::string key = section + "." + kv.first;
                if (!used_.count(key)) fail(ErrorKind::invalid_argument, "unknown key '" + key + "'");
            }
        }
    }

private:
    static boost::property_tree::ptree::path_type path(const std::string& key) {
        return boost::property_tree::ptree::path_type(key, '.');
    }

    boost::property_tree::ptree tree_;
    std::set<std::string> used_;
};

inline void expect_one_of(const std::string& key, const std::string& v, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (v == a) return;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    fail(ErrorKind::invalid_argument, "'" + key + "' = '" + v + "' is not one of: " + list);
}

}  // namespace detail

/// Checks the cross-field constraints that do not need a solver.
inline void validate(const ExperimentConfig& c) {
    using detail::expect_one_of;
    require(c.cfl > 0.0 && c.cfl < 1.0, "solver.cfl must lie in (0, 1)");
    if (c.kind == ExperimentKind::verify) {
        expect_one_of("verify.level", c.level, {"fast", "full"});
        return;
    }
    if (c.kind == ExperimentKind::depauw) {
        expect_one_of("depauw.variant", c.variant, {"original", "strong"});
        expect_one_of("depauw.branch", c.branch, {"nontrivial", "zero"});
        require(c.m >= 1 && c.m <= 10, "depauw.m must lie in [1, 10]");
        require(c.k_max >= 2 && c.k_max <= c.m, "depauw.k_max must lie in [2, m]");
        require(c.samples_per_stage >= 1 && c.samples_per_stage <= 64, "depauw.samples_per_stage must lie in [1, 64]");
        return;
    }
    require(c.x_max > c.x_min, "grid.x_max must exceed grid.x_min");
    require(c.n >= 2 && c.n <= (1u << 20), "grid.n must lie in [2, 2^20]");
    require(c.t_end > 0.0, "solver.t_end must be positive");
    require(c.records >= 1 && c.records <= 10000, "solver.records must lie in [1, 10000]");
    for (std::size_t i = 0; i < c.record_times.size(); ++i) {
        require(c.record_times[i] > 0.0 && c.record_times[i] <= c.t_end, "solver.record_times must lie in (0, t_end]");
        require(i == 0 || c.record_times[i] > c.record_times[i - 1], "solver.record_times must increase");
    }
    require(c.epsilon >= 0.0, "solver.epsilon must be nonnegative");

    const InitialSpec& ic = c.initial;
    expect_one_of("initial.type", ic.type, {"constant", "riemann", "table"});
    const std::size_t k = ic.components();
    require(k >= 1, "initial data has no components");
    if (ic.type == "riemann") require(ic.right.size() == k, "initial.left and initial.right must have equal length");
    if (ic.type == "table") {
        require(ic.x.size() >= 2, "initial.x needs at least two breakpoints");
        for (std::size_t i = 1; i < ic.x.size(); ++i) require(ic.x[i] > ic.x[i - 1], "initial.x must increase");
        for (const auto& col : ic.columns) require(col.size() == ic.x.size(), "initial.u* columns must match initial.x");
    }

    switch (c.kind) {
        case ExperimentKind::riemann:
            expect_one_of("solver.flux", c.flux, {"chromatography", "burgers"});
            require(k == 1, "riemann experiments are scalar: one component");
            break;
        case ExperimentKind::chroma:
            require(k >= 1, "chroma needs at least one component");
            break;
        case ExperimentKind::kk:
            expect_one_of("kk.f", c.kk_f, {"identity", "affine"});
            if (c.kk_f == "affine") require(c.kk_b > 0.0, "kk.b must be positive");
            break;
        default: break;
    }
}

/// Parses INI text. `origin` names the source in error messages.
inline ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>") {
    boost::property_tree::ptree tree;
    try {
        std::istringstream is(text);
        boost::property_tree::ini_parser::read_ini(is, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        fail(ErrorKind::invalid_argument, origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    detail::IniReader r(std::move(tree));
    ExperimentConfig c;

    const std::string kind = r.str("experiment.kind", "");
    if (kind.empty()) fail(ErrorKind::invalid_argument, origin + ": experiment.kind is required");
    detail::expect_one_of("experiment.kind", kind, {"riemann", "chroma", "kk", "depauw", "verify"});
    c.kind = kind == "riemann" ? ExperimentKind::riemann
             : kind == "chroma" ? ExperimentKind::chroma
             : kind == "kk"     ? ExperimentKind::kk
             : kind == "depauw" ? ExperimentKind::depauw
                                : ExperimentKind::verify;
    c.name = r.str("experiment.name", kind);
    for (char ch : c.name)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
            fail(ErrorKind::invalid_argument, "experiment.name may only use letters, digits, '_', '-', '.'");

    c.x_min = r.num("grid.x_min", c.x_min);
    c.x_max = r.num("grid.x_max", c.x_max);
    const long long n = r.integer("grid.n", static_cast<long long>(c.n));
    require(n >= 2, "grid.n must be at least 2");
    c.n = static_cast<std::size_t>(n);

    InitialSpec& ic = c.initial;
    ic.type = r.str("initial.type", ic.type);
    ic.value = r.list("initial.value");
    ic.left = r.list("initial.left");
    ic.right = r.list("initial.right");
    ic.x0 = r.num("initial.x0", 0.0);
    ic.x = r.list("initial.x");
    for (int j = 1; j <= 16; ++j) {
        const std::string key = "initial.u" + std::to_string(j);
        if (!r.has(key)) {
            r.str(key, "");
            break;
        }
        ic.columns.push_back(r.list(key));
    }

    c.t_end = r.num("solver.t_end", c.t_end);
    const long long records = r.integer("solver.records", static_cast<long long>(c.records));
    require(records >= 1, "solver.records must be at least 1");
    c.records = static_cast<std::size_t>(records);
    c.record_times = r.list("solver.record_times");
    c.cfl = r.num("solver.cfl", c.cfl);
    c.epsilon = r.num("solver.epsilon", c.epsilon);
    c.flux = r.str("solver.flux", c.flux);

    c.kk_f = r.str("kk.f", c.kk_f);
    c.kk_a = r.num("kk.a", c.kk_a);
    c.kk_b = r.num("kk.b", c.kk_b);

    c.variant = r.str("depauw.variant", c.variant);
    c.k_max = static_cast<int>(r.integer("depauw.k_max", c.k_max));
    c.m = static_cast<int>(r.integer("depauw.m", c.m));
    c.branch = r.str("depauw.branch", c.branch);
    const long long sps = r.integer("depauw.samples_per_stage", static_cast<long long>(c.samples_per_stage));
    require(sps >= 1, "depauw.samples_per_stage must be at least 1");
    c.samples_per_stage = static_cast<std::size_t>(sps);
    c.witness = r.flag("depauw.witness", c.witness);

    c.level = r.str("verify.level", c.level);

    c.csv = r.str("output.csv", "");
    c.json = r.str("output.json", "");
    c.trajectory_json = r.str("output.trajectory_json", "");

    r.reject_unknown();
    validate(c);
    return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrorKind::invalid_argument, "cannot read config " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path.string());
}

}  // namespace splitsolve
