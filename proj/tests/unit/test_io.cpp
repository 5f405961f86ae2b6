#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "splitsolve/io/experiment.hpp"

using namespace splitsolve;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("splitsolve_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::construction_bug;
}

const char* chroma_ini = R"(
[experiment]
kind = chroma
name = fx
[grid]
x_min = -0.5
x_max = 1.5
n = 64
[initial]
type = riemann
left = 1, 1
right = 0, 0
[solver]
t_end = 0.5
records = 2
)";

}  // namespace

TEST(Export, EmptyTrajectoryGivesHeaderOnlyCsv) {
    const Grid1D g = make_grid(0, 1, 8);
    EXPECT_EQ(csv_text(to_export(Trajectory{}, g)), "t,x,u\n");
    EXPECT_EQ(csv_text(to_export(SystemTrajectory{}, g, 2)), "t,x,u1,u2\n");
    EXPECT_EQ(csv_text(to_export(Trajectory2D{}, make_grid2d(2))), "t,x,y,u\n");
}

TEST(Export, CsvLayoutOneRowPerTimeAndCell) {
    const Grid1D g = make_grid(0, 1, 4);
    Trajectory tr;
    tr.push(0.0, CellField::constant(g, 1.0));
    tr.push(0.5, CellField::constant(g, 2.0));
    const std::string csv = csv_text(to_export(tr, g));
    std::istringstream is(csv);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 1u + 2 * 4);
    EXPECT_EQ(lines[1], "0,0.125,1");
    EXPECT_EQ(lines[8], "0.5,0.875,2");
}

TEST(Export, SeventeenDigitsRoundTripEveryDouble) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
}

TEST(Export, JsonRoundTripEqualsOriginal) {
    const Grid1D g = make_grid(-1, 2, 16);
    SystemTrajectory tr;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (double t : {0.0, 1.0 / 3.0, 0.7}) {
        std::vector<CellField> cs;
        for (int j = 0; j < 2; ++j) {
            CellField f = CellField::constant(g, 0.0);
            for (auto& v : f.values) v = u(rng);
            cs.push_back(f);
        }
        tr.push(t, SystemState(cs));
    }
    tr.meta["flux"] = "chromatography";
    const ExportData d = to_export(tr, g, 2);
    const ExportData back = from_json(nlohmann::ordered_json::parse(to_json(d).dump(2)));
    EXPECT_EQ(back, d);
    EXPECT_EQ(to_json(back).dump(), to_json(d).dump());

    Trajectory2D t2;
    const Grid2D g2 = make_grid2d(3);
    t2.times = {0.0, 0.5};
    t2.states = {chessboard(1, g2), chessboard(3, g2)};
    const ExportData d2 = to_export(t2, g2);
    EXPECT_EQ(from_json(nlohmann::ordered_json::parse(to_json(d2).dump())), d2);
}

TEST(Export, JsonSchemaKeysInOrder) {
    const auto j = to_json(to_export(Trajectory{}, make_grid(0, 1, 2)));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"times", "grid", "fields", "meta"}));
}

TEST(Export, RejectsMalformedJsonAndBadPaths) {
    EXPECT_EQ(kind_of([] { from_json(nlohmann::ordered_json::parse(R"({"times": [0]})")); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { from_json(nlohmann::ordered_json::parse(R"({"times":[],"grid":{"kind":"hex"},"fields":{}})")); }),
              ErrorKind::invalid_argument);
    const fs::path dir = scratch("badpath");
    write_text(dir / "file", "x");
    EXPECT_EQ(kind_of([&] { write_text(dir / "file" / "below.csv", "y"); }), ErrorKind::io_failure);
    EXPECT_EQ(kind_of([&] { read_text(dir / "missing.json"); }), ErrorKind::io_failure);
    write_text(dir / "garbage.json", "{not json");
    EXPECT_EQ(kind_of([&] { read_trajectory_json(dir / "garbage.json"); }), ErrorKind::invalid_argument);
}

TEST(Config, ParsesEverySection) {
    const auto c = parse_config(R"(
[experiment]
kind = kk
name = k1
[grid]
x_min = -2
x_max = 3
n = 100
[initial]
type = table
x = -1, 0, 1
u1 = 1, 2, 3
u2 = 0.5, 0.5, 0.25
[solver]
t_end = 2
record_times = 0.5, 1.5
cfl = 0.4
[kk]
f = affine
a = 0.5
b = 2
[output]
csv = out/k1.csv
json = out/k1.json
)");
    EXPECT_EQ(c.kind, ExperimentKind::kk);
    EXPECT_EQ(c.n, 100u);
    EXPECT_EQ(c.initial.columns.size(), 2u);
    EXPECT_EQ(c.initial.components(), 2u);
    EXPECT_EQ(c.recorded_times(), (std::vector<double>{0.0, 0.5, 1.5, 2.0}));
    EXPECT_DOUBLE_EQ(c.cfl, 0.4);
    EXPECT_EQ(c.kk_f, "affine");
    EXPECT_DOUBLE_EQ(c.kk_b, 2.0);
    EXPECT_EQ(c.csv, "out/k1.csv");
}

TEST(Config, UniformRecordsIncludeEnds) {
    ExperimentConfig c;
    c.t_end = 2.0;
    c.records = 4;
    EXPECT_EQ(c.recorded_times(), (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
}

TEST(Config, RejectsMalformedInput) {
    const std::string base = chroma_ini;
    auto bad = [&](const std::string& from, const std::string& to) {
        std::string s = base;
        const auto at = s.find(from);
        EXPECT_NE(at, std::string::npos) << from;
        s.replace(at, from.size(), to);
        return kind_of([&] { parse_config(s); });
    };
    EXPECT_EQ(bad("kind = chroma", "kind = plasma"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("kind = chroma", ""), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("n = 64", "n = 6.5"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("n = 64", "n = lots"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("n = 64", "n = 64\nsize = 3"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("right = 0, 0", "right = 0"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("t_end = 0.5", "t_end = -1"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("records = 2", "record_times = 0.3, 0.2"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("[grid]", "[grid"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("x_max = 1.5", "x_max = -0.5"), ErrorKind::invalid_argument);
    EXPECT_EQ(bad("kind = chroma", "kind = riemann"), ErrorKind::invalid_argument);  // two components
    EXPECT_EQ(bad("type = riemann", "type = table\nx = 0, 1\nu1 = 1"), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { parse_config("stray = 1\n[experiment]\nkind = verify\n"); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { load_config("/nonexistent/x.ini"); }), ErrorKind::invalid_argument);
}

TEST(Experiment, TableInitialInterpolatesAndHolds) {
    ExperimentConfig c;
    c.x_min = 0.0;
    c.x_max = 4.0;
    c.n = 4;
    c.initial.type = "table";
    c.initial.x = {1.0, 3.0};
    c.initial.columns = {{0.0, 2.0}};
    const auto f = detail::initial_component(c, make_grid(0, 4, 4), 0);
    EXPECT_EQ(f.values, (std::vector<double>{0.0, 0.5, 1.5, 2.0}));
}

TEST(Experiment, ChromaDiagnosticsContract) {
    const auto c = parse_config(chroma_ini);
    std::ostringstream log;
    const RunOutcome out = run_experiment(c, log);
    ASSERT_TRUE(out.data);
    EXPECT_EQ(out.data->names, (std::vector<std::string>{"u1", "u2"}));
    EXPECT_EQ(out.data->times, (std::vector<double>{0.0, 0.25, 0.5}));
    const auto& d = out.diagnostics.at("diagnostics");
    for (const char* key : {"mass_defect", "tv", "entropy_residual", "domain_checks"}) EXPECT_TRUE(d.contains(key)) << key;
    for (double m : d.at("mass_defect")) EXPECT_LE(m, 1e-12);
    EXPECT_TRUE(d.at("domain_checks").at("F").at("pass").get<bool>());
    EXPECT_LE(d.at("entropy_residual").get<double>(), 0.75 * 2.0 / 64);
}

TEST(Experiment, RiemannMatchesExactFan) {
    auto c = parse_config(chroma_ini);
    c.kind = ExperimentKind::riemann;
    c.initial.left = {0.0};
    c.initial.right = {1.0};
    c.n = 512;
    std::ostringstream log;
    const auto d = run_experiment(c, log).diagnostics.at("diagnostics");
    EXPECT_LE(d.at("l1_error").get<double>(), 0.02);
    EXPECT_LE(d.at("mass_defect").get<double>(), 1e-12);
    EXPECT_EQ(d.at("oleinik_excess").get<double>(), 0.0);
}

TEST(Experiment, KKVacuumIsAHypothesisViolation) {
    auto c = parse_config(chroma_ini);
    c.kind = ExperimentKind::kk;
    std::ostringstream log;
    EXPECT_EQ(kind_of([&] { run_experiment(c, log); }), ErrorKind::hypothesis_violation);
}

TEST(Experiment, DepauwDiagnostics) {
    ExperimentConfig c;
    c.kind = ExperimentKind::depauw;
    c.m = 5;
    c.k_max = 4;
    std::ostringstream log;
    const RunOutcome out = run_experiment(c, log);
    const auto& d = out.diagnostics.at("diagnostics");
    EXPECT_EQ(d.at("stages").size(), 3u);
    EXPECT_EQ(d.at("witness").at("min_l1_gap").get<double>(), 1.0);
    EXPECT_EQ(d.at("witness").at("zero_residual").get<double>(), 0.0);
    EXPECT_EQ(out.data->fields[0].size(), out.data->times.size());
    EXPECT_EQ(out.data->fields[0].front(), std::vector<double>(32 * 32, 0.0));
}

TEST(Experiment, IdenticalConfigGivesByteIdenticalArtifacts) {
    const auto c = parse_config(chroma_ini);
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    std::ostringstream log;
    const auto wa = run_and_write(c, a, log);
    const auto wb = run_and_write(c, b, log);
    ASSERT_EQ(wa.paths.size(), 2u);
    for (std::size_t i = 0; i < wa.paths.size(); ++i) {
        EXPECT_EQ(wa.paths[i].filename(), wb.paths[i].filename());
        EXPECT_EQ(read_text(wa.paths[i]), read_text(wb.paths[i]));
    }
}
