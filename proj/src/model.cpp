// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mabeam/rng.hpp"

namespace mabeam {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

} // namespace

void SystemConfig::validate() const
{
    require(n_antennas >= 1, "n_antennas must be >= 1");
    require(n_users >= 1, "n_users must be >= 1");
    require(n_clutters >= 0, "n_clutters must be >= 0");
    require(n_paths >= 1, "n_paths must be >= 1");
    require(n_sense_symbols >= 1, "n_sense_symbols must be >= 1");
    require(tx_power > 0.0, "tx_power must be positive");
    require(wavelength > 0.0, "wavelength must be positive");
    require(noise_user > 0.0, "noise_user must be positive");
    require(noise_sense > 0.0, "noise_sense must be positive");
    require(min_spacing > 0.0, "min_spacing must be positive");
    require(weight_comm >= 0.0 && weight_comm <= 1.0, "weight_comm out of [0,1]");
    require(weight_sense >= 0.0 && weight_sense <= 1.0, "weight_sense out of [0,1]");
    require(std::abs(weight_comm + weight_sense - 1.0) <= 1e-12,
            "weight_comm + weight_sense must equal 1");
    require(region_max - region_min >= (n_antennas - 1) * min_spacing - 1e-12,
            "region too small: region_max - region_min must be >= (N-1)*min_spacing");
    require(target_angle >= 0.0 && target_angle <= pi, "target_angle out of [0,pi]");
    require(ga.grid_points_per_wavelength >= 1, "grid_points_per_wavelength must be >= 1");
    require(ga.backtrack_factor > 0.0 && ga.backtrack_factor < 1.0,
            "backtrack_factor must lie in (0,1)");
    require(ga.max_inner_iters >= 1, "max_inner_iters must be >= 1");
    require(ga.inner_tol > 0.0, "inner_tol must be positive");
    require(ga.max_backtracks >= 0, "max_backtracks must be >= 0");
    require(solver.outer_tol > 0.0, "outer_tol must be positive");
    require(solver.max_outer_iters >= 1, "max_outer_iters must be >= 1");
    require(solver.bisect_tol_rel > 0.0, "bisect_tol_rel must be positive");
    require(solver.bisect_max_iters >= 1, "bisect_max_iters must be >= 1");
    require(solver.init_probes >= 0, "init_probes must be >= 0");
}

void Scene::validate(const SystemConfig& cfg) const
{
    require(n_users() == cfg.n_users, "scene has wrong user count");
    require(n_clutters() == cfg.n_clutters, "scene has wrong clutter count");
    for (const auto& paths : user_paths) {
        require(static_cast<int>(paths.size()) == cfg.n_paths,
                "scene user has wrong path count");
        for (const auto& p : paths)
            require(p.angle >= 0.0 && p.angle <= pi, "path angle out of [0,pi]");
    }
    require(target_angle >= 0.0 && target_angle <= pi, "target angle out of [0,pi]");
    for (const auto& c : clutter)
        require(c.angle >= 0.0 && c.angle <= pi, "clutter angle out of [0,pi]");
}

CVector steering_vector(const Eigen::Ref<const RVector>& x, double theta,
                        double wavelength)
{
    if (!(wavelength > 0.0))
        throw std::invalid_argument("steering_vector: wavelength must be positive");
    const double phase_rate = 2.0 * pi / wavelength * std::cos(theta);
    CVector a(x.size());
    for (Eigen::Index n = 0; n < x.size(); ++n)
        a[n] = std::polar(1.0, phase_rate * x[n]);
    return a;
}

CVector user_channel(const Scene& scene, int user, const AntennaPositions& x,
                     const SystemConfig& cfg)
{
    if (user < 0 || user >= scene.n_users())
        throw std::out_of_range("user_channel: user index out of range");
    const auto& paths = scene.user_paths[user];
    CVector h = CVector::Zero(x.size());
    for (const auto& p : paths)
        h += p.gain * steering_vector(x, p.angle, cfg.wavelength);
    const double lp = static_cast<double>(paths.size());
    h *= std::sqrt(static_cast<double>(x.size()) / lp);
    return h;
}

Scene sample_scene(const SystemConfig& cfg, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    Scene scene;
    scene.user_paths.resize(cfg.n_users);
    for (auto& paths : scene.user_paths) {
        paths.resize(cfg.n_paths);
        for (auto& p : paths) {
            p.angle = rng::uniform(gen, 0.0, pi);
            p.gain = rng::gaussian_cn01(gen);
        }
    }
    scene.target_angle =
        cfg.target_angle_random ? rng::uniform(gen, 0.0, pi) : cfg.target_angle;
    scene.target_coeff = rng::gaussian_cn01(gen);
    scene.clutter.resize(cfg.n_clutters);
    for (auto& c : scene.clutter) {
        c.angle = rng::uniform(gen, 0.0, pi);
        c.coeff = rng::gaussian_cn01(gen);
    }
    return scene;
}

AntennaPositions ula_positions(const SystemConfig& cfg)
{
    AntennaPositions x(cfg.n_antennas);
    for (int n = 0; n < cfg.n_antennas; ++n)
        x[n] = cfg.region_min + n * (cfg.wavelength / 2.0);
    return x;
}

bool positions_feasible(const AntennaPositions& x, const SystemConfig& cfg,
                        double tol)
{
    for (Eigen::Index n = 0; n < x.size(); ++n) {
        if (!(x[n] >= cfg.region_min - tol && x[n] <= cfg.region_max + tol))
            return false;
    }
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t n = 1; n < sorted.size(); ++n) {
        if (sorted[n] - sorted[n - 1] < cfg.min_spacing - tol)
            return false;
    }
    return true;
}

} // namespace mabeam
