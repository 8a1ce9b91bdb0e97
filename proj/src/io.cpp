// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace mabeam {

namespace {

using nlohmann::json;

json complex_to_json(const cplx& z)
{
    return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("unknown key \"" + it.key() + "\" in " +
                                        where);
}

} // namespace

json scene_to_json(const Scene& scene)
{
    json users = json::array();
    for (const auto& paths : scene.user_paths) {
        json jpaths = json::array();
        for (const auto& p : paths)
            jpaths.push_back({{"angle_deg", rad_to_deg(p.angle)},
                              {"gain", complex_to_json(p.gain)}});
        users.push_back({{"paths", jpaths}});
    }
    json clutters = json::array();
    for (const auto& c : scene.clutter)
        clutters.push_back({{"angle_deg", rad_to_deg(c.angle)},
                            {"coeff", complex_to_json(c.coeff)}});
    return {{"users", users},
            {"target",
             {{"angle_deg", rad_to_deg(scene.target_angle)},
              {"coeff", complex_to_json(scene.target_coeff)}}},
            {"clutters", clutters}};
}

Scene scene_from_json(const json& j)
{
    reject_unknown_keys(j, {"users", "target", "clutters"}, "scene");
    Scene scene;
    for (const auto& ju : j.at("users")) {
        reject_unknown_keys(ju, {"paths"}, "scene user");
        std::vector<PathComponent> paths;
        for (const auto& jp : ju.at("paths")) {
            reject_unknown_keys(jp, {"angle_deg", "gain"}, "scene path");
            PathComponent p;
            p.angle = deg_to_rad(jp.at("angle_deg").get<double>());
            p.gain = complex_from_json(jp.at("gain"));
            paths.push_back(p);
        }
        scene.user_paths.push_back(std::move(paths));
    }
    const auto& jt = j.at("target");
    reject_unknown_keys(jt, {"angle_deg", "coeff"}, "scene target");
    scene.target_angle = deg_to_rad(jt.at("angle_deg").get<double>());
    scene.target_coeff = complex_from_json(jt.at("coeff"));
    for (const auto& jc : j.at("clutters")) {
        reject_unknown_keys(jc, {"angle_deg", "coeff"}, "scene clutter");
        ClutterPoint c;
        c.angle = deg_to_rad(jc.at("angle_deg").get<double>());
        c.coeff = complex_from_json(jc.at("coeff"));
        scene.clutter.push_back(c);
    }
    return scene;
}

SystemConfig config_from_json(const json& j)
{
    static const std::set<std::string> known = {
        "n_antennas", "n_users", "n_clutters", "n_paths", "snr_db", "tx_power",
        "wavelength", "noise_user", "noise_sense", "weight_comm",
        "x_min_wavelengths", "x_max_wavelengths", "min_spacing_wavelengths",
        "n_sense_symbols", "target_angle_deg", "target_angle_random",
        "xi_mode", "f_init", "fim_conjugate_cross", "ga", "solver"};
    reject_unknown_keys(j, known, "config");

    SystemConfig cfg;
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key))
            field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("n_antennas", cfg.n_antennas);
    get("n_users", cfg.n_users);
    get("n_clutters", cfg.n_clutters);
    get("n_paths", cfg.n_paths);
    get("wavelength", cfg.wavelength);
    get("noise_user", cfg.noise_user);
    get("noise_sense", cfg.noise_sense);
    get("n_sense_symbols", cfg.n_sense_symbols);
    get("target_angle_random", cfg.target_angle_random);
    get("fim_conjugate_cross", cfg.fim_conjugate_cross);

    if (j.contains("snr_db") && j.contains("tx_power"))
        throw std::invalid_argument("give snr_db or tx_power, not both");
    if (j.contains("snr_db"))
        cfg.tx_power = db_to_linear(j.at("snr_db").get<double>()) * cfg.noise_user;
    else
        get("tx_power", cfg.tx_power);

    if (j.contains("weight_comm")) {
        cfg.weight_comm = j.at("weight_comm").get<double>();
        cfg.weight_sense = 1.0 - cfg.weight_comm;
    }
    if (j.contains("x_min_wavelengths"))
        cfg.region_min = j.at("x_min_wavelengths").get<double>() * cfg.wavelength;
    if (j.contains("x_max_wavelengths"))
        cfg.region_max = j.at("x_max_wavelengths").get<double>() * cfg.wavelength;
    else
        cfg.region_max = cfg.region_min + 10.0 * cfg.wavelength;
    if (j.contains("min_spacing_wavelengths"))
        cfg.min_spacing =
            j.at("min_spacing_wavelengths").get<double>() * cfg.wavelength;
    else
        cfg.min_spacing = cfg.wavelength / 2.0;
    if (j.contains("target_angle_deg"))
        cfg.target_angle = deg_to_rad(j.at("target_angle_deg").get<double>());

    if (j.contains("xi_mode")) {
        const std::string mode = j.at("xi_mode").get<std::string>();
        if (mode == "standard-fp")
            cfg.xi_mode = XiMode::standard_fp;
        else if (mode == "paper-literal")
            cfg.xi_mode = XiMode::paper_literal;
        else
            throw std::invalid_argument("xi_mode must be standard-fp or paper-literal");
    }
    if (j.contains("f_init")) {
        const std::string init = j.at("f_init").get<std::string>();
        if (init == "matched")
            cfg.f_init = BeamformerInit::matched_filter;
        else if (init == "random")
            cfg.f_init = BeamformerInit::random;
        else
            throw std::invalid_argument("f_init must be matched or random");
    }

    if (j.contains("ga")) {
        const json& g = j.at("ga");
        reject_unknown_keys(g,
                            {"grid_points_per_wavelength", "step_init",
                             "backtrack_factor", "max_inner_iters", "inner_tol",
                             "max_backtracks"},
                            "config.ga");
        auto gget = [&g](const char* key, auto& field) {
            if (g.contains(key))
                field = g.at(key).get<std::decay_t<decltype(field)>>();
        };
        gget("grid_points_per_wavelength", cfg.ga.grid_points_per_wavelength);
        gget("step_init", cfg.ga.step_init);
        gget("backtrack_factor", cfg.ga.backtrack_factor);
        gget("max_inner_iters", cfg.ga.max_inner_iters);
        gget("inner_tol", cfg.ga.inner_tol);
        gget("max_backtracks", cfg.ga.max_backtracks);
    }
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        reject_unknown_keys(s,
                            {"outer_tol", "max_outer_iters", "bisect_tol_rel",
                             "bisect_max_iters", "init_probes"},
                            "config.solver");
        auto sget = [&s](const char* key, auto& field) {
            if (s.contains(key))
                field = s.at(key).get<std::decay_t<decltype(field)>>();
        };
        sget("outer_tol", cfg.solver.outer_tol);
        sget("max_outer_iters", cfg.solver.max_outer_iters);
        sget("bisect_tol_rel", cfg.solver.bisect_tol_rel);
        sget("bisect_max_iters", cfg.solver.bisect_max_iters);
        sget("init_probes", cfg.solver.init_probes);
    }

    cfg.validate();
    return cfg;
}

ExperimentSpec experiment_from_json(const json& j)
{
    static const std::set<std::string> known = {
        "config", "schemes", "sweep", "trials", "seed", "out", "workers"};
    reject_unknown_keys(j, known, "experiment");

    ExperimentSpec spec;
    if (j.contains("config"))
        spec.base = config_from_json(j.at("config"));
    if (j.contains("schemes")) {
        spec.schemes.clear();
        for (const auto& name : j.at("schemes"))
            spec.schemes.push_back(scheme_from_name(name.get<std::string>()));
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        reject_unknown_keys(s, {"axis", "values"}, "experiment.sweep");
        spec.axis = sweep_axis_from_name(s.at("axis").get<std::string>());
        if (s.contains("values"))
            spec.sweep_values = s.at("values").get<std::vector<double>>();
        else
            spec.sweep_values = default_sweep_values(spec.axis);
    }
    if (j.contains("trials"))
        spec.n_trials = j.at("trials").get<int>();
    if (j.contains("seed"))
        spec.base_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out"))
        spec.out_path = j.at("out").get<std::string>();
    if (j.contains("workers"))
        spec.workers = j.at("workers").get<int>();

    spec.validate();
    return spec;
}

namespace {

json parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("JSON parse error in " + path + ": " +
                                    e.what());
    }
    return j;
}

} // namespace

SystemConfig load_config_file(const std::string& path)
{
    return config_from_json(parse_file(path));
}

ExperimentSpec load_experiment_file(const std::string& path)
{
    return experiment_from_json(parse_file(path));
}

Scene load_scene_file(const std::string& path)
{
    return scene_from_json(parse_file(path));
}

void save_scene_file(const Scene& scene, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open file: " + path);
    out << scene_to_json(scene).dump(2) << '\n';
    if (!out.good())
        throw std::runtime_error("write failed: " + path);
}

} // namespace mabeam
