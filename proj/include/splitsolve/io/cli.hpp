#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splitsolve/io/experiment.hpp"

namespace splitsolve::cli {

enum Exit : int { ok = 0, failed = 1, usage = 2, solver = 3, io = 4 };

namespace detail {

/// Config problems map to 2; everything raised while computing maps to 3, except IO (4).
inline int exit_for(const Error& e, bool parsing) {
    if (e.kind() == ErrorKind::io_failure) return io;
    return parsing ? usage : solver;
}

struct Guard {
    std::ostream& err;

    template <class F>
    int operator()(bool parsing, F&& body) const {
        try {
            return body();
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return exit_for(e, parsing);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return parsing ? usage : solver;
        }
    }
};

}  // namespace detail

/// Entry point of the `splitsolve` tool; returns the process exit status.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Split solvers for chromatography-type systems: experiments, export and verification", "splitsolve"};
    app.require_subcommand(1);

    std::string config_path, root_override;
    auto* run = app.add_subcommand("run", "Run the experiment described by an INI config");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--output-root", root_override, "Directory for relative output paths (overrides SPLITSOLVE_OUTPUT_ROOT)");

    std::string level = "fast";
    std::vector<int> only;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--only", only, "Criterion ids to run (default: all)");

    std::string ex_config, ex_input, format, output;
    auto* exp = app.add_subcommand("export", "Write a trajectory as CSV or JSON");
    auto* o_cfg = exp->add_option("--config", ex_config, "Run this config and export its trajectory");
    auto* o_in = exp->add_option("--input", ex_input, "Trajectory JSON to convert");
    o_cfg->excludes(o_in);
    exp->add_option("--format", format, "csv or json")->required()->check(CLI::IsMember({"csv", "json"}));
    exp->add_option("--output", output, "Destination path (relative paths resolve under the output root)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    const detail::Guard guard{err};
    auto root = [&] { return root_override.empty() ? output_root() : std::filesystem::path(root_override); };

    if (*run) {
        ExperimentConfig cfg;
        if (const int rc = guard(true, [&] { cfg = load_config(config_path); return 0; })) return rc;
        return guard(false, [&] {
            const WrittenArtifacts w = run_and_write(cfg, root(), out);
            for (const auto& p : w.paths) out << "wrote " << p.string() << "\n";
            return w.ok ? ok : failed;
        });
    }

    if (*verify) {
        return guard(false, [&] {
            const auto lv = level == "full" ? acceptance::Level::full : acceptance::Level::fast;
            const auto results = acceptance::run(lv, out, only);
            std::size_t passed = 0;
            for (const auto& r : results) passed += r.pass ? 1 : 0;
            out << passed << "/" << results.size() << " criteria passed\n";
            return acceptance::all_passed(results) && !results.empty() ? ok : failed;
        });
    }

    if (ex_config.empty() && ex_input.empty()) {
        err << "error: export needs --config or --input\n";
        return usage;
    }
    ExportData data;
    if (!ex_input.empty()) {
        if (const int rc = guard(true, [&] { data = read_trajectory_json(ex_input); return 0; })) return rc;
    } else {
        ExperimentConfig cfg;
        if (const int rc = guard(true, [&] { cfg = load_config(ex_config); return 0; })) return rc;
        if (cfg.kind == ExperimentKind::verify) {
            err << "error: verify configs have no trajectory to export\n";
            return usage;
        }
        if (const int rc = guard(false, [&] {
                std::ostringstream sink;
                data = *run_experiment(cfg, sink).data;
                return 0;
            }))
            return rc;
    }
    return guard(false, [&] {
        const auto path = resolve_output(output, root());
        if (format == "csv") write_csv(data, path);
        else write_json(to_json(data), path);
        out << "wrote " << path.string() << "\n";
        return ok;
    });
}

}  // namespace splitsolve::cli
