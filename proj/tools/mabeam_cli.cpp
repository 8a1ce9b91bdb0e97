// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mabeam/io.hpp"

namespace {

using namespace mabeam;

int run(const ExperimentSpec& spec, const std::string& emit,
        const std::string& scene_path, const std::string& dump_scene_path)
{
    if (emit == "results") {
        const ExperimentResult result = run_experiment_to_files(spec);
        int failed = 0;
        for (const auto& r : result.rows) {
            if (r.ok)
                continue;
            if (++failed <= 10)
                std::cerr << "trial " << r.trial << " scheme "
                          << scheme_name(r.scheme) << " sweep " << r.sweep_value
                          << " failed: " << r.error << '\n';
        }
        std::cout << "wrote " << result.rows.size() << " rows to "
                  << spec.out_path << " (aggregates in " << spec.out_path
                  << ".agg.csv)\n";
        if (failed > 0)
            std::cout << failed << " trial(s) failed; see the status column\n";
        std::ostringstream agg;
        write_aggregate_csv(result, agg);
        std::cout << agg.str();
        return failed == 0 ? 0 : 2;
    }

    // one solve per scheme at the base config, then a per-angle sweep
    std::ofstream out(spec.out_path);
    if (!out) {
        std::cerr << "cannot open output file: " << spec.out_path << '\n';
        return 2;
    }
    const RVector grid = degree_grid();
    out << (emit == "beampattern" ? "scheme,theta_deg,bp\n"
                                  : "scheme,theta_deg,crb_rad2\n");
    Scene scene;
    if (scene_path.empty()) {
        scene = sample_scene(spec.base, spec.base_seed);
    } else {
        scene = load_scene_file(scene_path);
        scene.validate(spec.base);
    }
    if (!dump_scene_path.empty()) {
        save_scene_file(scene, dump_scene_path);
        std::cout << "wrote " << dump_scene_path << '\n';
    }
    for (Scheme scheme : spec.schemes) {
        const SolveResult res = solve(scene, spec.base, scheme, spec.base_seed);
        if (emit == "beampattern")
            emit_beampattern(out, scheme_name(scheme), res.x, res.F,
                             spec.base.wavelength, grid);
        else
            emit_crb_sweep(out, scheme_name(scheme), scene, res.x, spec.base,
                           grid);
        std::cout << scheme_name(scheme) << ": objective "
                  << res.metrics.objective_bits << " bits, " << res.iterations
                  << " outer iterations\n";
    }
    std::cout << "wrote " << spec.out_path << '\n';
    return out.good() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Movable-antenna ISAC flexible beamforming simulator"};

    std::string config_path;
    std::vector<std::string> scheme_names;
    std::string sweep_name;
    int trials = -1;
    long long seed = -1;
    std::string out_path;
    std::string mode;
    std::string emit = "results";
    int workers = -1;
    std::string scene_path;
    std::string dump_scene_path;

    app.add_option("--config", config_path, "experiment JSON document");
    app.add_option("--scheme", scheme_names,
                   "scheme name (repeatable): SPGA-FP, DGA-FP, FP-FPA, "
                   "SPGA-RBF, DGA-RBF, RBF-FPA");
    app.add_option("--sweep", sweep_name, "sweep axis: snr, xmax or weight");
    app.add_option("--trials", trials, "Monte Carlo trials per point");
    app.add_option("--seed", seed, "base seed (trial seeds are seed+trial)");
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--mode", mode, "xi update: standard-fp or paper-literal");
    app.add_option("--emit", emit, "results, beampattern or crb")
        ->check(CLI::IsMember({"results", "beampattern", "crb"}));
    app.add_option("--workers", workers, "concurrent trial workers (0 = auto)");
    app.add_option("--scene", scene_path,
                   "replay a recorded scene JSON (beampattern/crb only)");
    app.add_option("--dump-scene", dump_scene_path,
                   "record the solved scene as JSON (beampattern/crb only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        ExperimentSpec spec;
        if (!config_path.empty())
            spec = load_experiment_file(config_path);

        if (!scheme_names.empty()) {
            spec.schemes.clear();
            for (const auto& name : scheme_names)
                spec.schemes.push_back(scheme_from_name(name));
        }
        if (!sweep_name.empty()) {
            const SweepAxis axis = sweep_axis_from_name(sweep_name);
            if (axis != spec.axis)
                spec.sweep_values = default_sweep_values(axis);
            spec.axis = axis;
        }
        if (trials >= 0)
            spec.n_trials = trials;
        if (seed >= 0)
            spec.base_seed = static_cast<std::uint64_t>(seed);
        if (!out_path.empty())
            spec.out_path = out_path;
        else if (emit != "results" && spec.out_path == "results.csv")
            spec.out_path = emit + ".csv"; // only when nothing else chose a path
        if (!mode.empty()) {
            if (mode == "standard-fp")
                spec.base.xi_mode = XiMode::standard_fp;
            else if (mode == "paper-literal")
                spec.base.xi_mode = XiMode::paper_literal;
            else
                throw std::invalid_argument(
                    "mode must be standard-fp or paper-literal");
        }
        if (workers >= 0)
            spec.workers = workers;
        if ((!scene_path.empty() || !dump_scene_path.empty()) &&
            emit == "results")
            throw std::invalid_argument(
                "--scene/--dump-scene apply to beampattern and crb runs only");

        spec.validate();
        return run(spec, emit, scene_path, dump_scene_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
