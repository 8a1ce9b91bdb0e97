// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <cstdint>
#include <vector>

#include "mabeam/types.hpp"

namespace mabeam {

/// Which closed form the quadratic-transform auxiliaries use.
/// standard_fp scales by sqrt(1 + SINR) so that one xi-then-mu refresh
/// makes the surrogate coincide with the true objective (monotone AO);
/// paper_literal keeps the unscaled form for fidelity experiments.
enum class XiMode { standard_fp, paper_literal };

enum class BeamformerInit { matched_filter, random };

/// Per-antenna gradient-ascent controls for the position sub-problem.
struct GaConfig {
    int grid_points_per_wavelength = 10;
    double step_init = 0.0;       // meters; <= 0 selects wavelength/100
    double backtrack_factor = 0.5;
    int max_inner_iters = 40;     // alternation rounds over all antennas
    double inner_tol = 1e-5;      // nats, per-round improvement floor
    int max_backtracks = 30;
    bool dga_mode = false;        // reject infeasible steps instead of projecting
};

struct SolverOptions {
    double outer_tol = 1e-4;      // nats
    int max_outer_iters = 200;
    double bisect_tol_rel = 1e-10; // epsilon = bisect_tol_rel * P0
    int bisect_max_iters = 200;
    // search-based schemes draw this many probe beamformers for the
    // initial position search and keep the best-scoring geometry
    int init_probes = 6;
};

/// All scalar problem parameters. Angles in radians, powers in watts,
/// lengths in meters; unit conversion happens at the config boundary.
struct SystemConfig {
    int n_antennas = 4;  // N
    int n_users = 4;     // K
    int n_clutters = 3;  // C
    int n_paths = 13;    // Lp per user

    double tx_power = 1.0;     // P0
    double wavelength = 0.1;
    double noise_user = 1.0;   // sigma_k^2, same for every user
    double noise_sense = 1.0;  // sigma_s^2
    double weight_comm = 0.5;  // varpi_c
    double weight_sense = 0.5; // varpi_s

    double region_min = 0.0;   // X_min
    double region_max = 1.0;   // X_max (default 10 wavelengths)
    double min_spacing = 0.05; // D0 (default wavelength/2)

    int n_sense_symbols = 1;   // T, enters the FIM only

    double target_angle = pi / 3.0; // fixed target direction (60 deg)
    bool target_angle_random = false;

    XiMode xi_mode = XiMode::standard_fp;
    BeamformerInit f_init = BeamformerInit::matched_filter;
    bool fim_conjugate_cross = false;

    GaConfig ga;
    SolverOptions solver;

    int n_streams() const { return n_users + 1; }
    double ga_step_init() const
    {
        return ga.step_init > 0.0 ? ga.step_init : wavelength / 100.0;
    }

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

struct PathComponent {
    double angle = 0.0; // AoD, radians in [0, pi]
    cplx gain{0.0, 0.0};
};

struct ClutterPoint {
    double angle = 0.0;
    cplx coeff{0.0, 0.0};
};

/// One channel realization: per-user multipath plus the sensing geometry.
struct Scene {
    std::vector<std::vector<PathComponent>> user_paths; // K entries of Lp paths
    double target_angle = 0.0;
    cplx target_coeff{0.0, 0.0};
    std::vector<ClutterPoint> clutter;

    int n_users() const { return static_cast<int>(user_paths.size()); }
    int n_clutters() const { return static_cast<int>(clutter.size()); }

    /// Checks dimensions against cfg and angle ranges.
    void validate(const SystemConfig& cfg) const;
};

/// Field response vector: element n is exp(j 2pi/lambda * x_n cos(theta)).
CVector steering_vector(const Eigen::Ref<const RVector>& x, double theta,
                        double wavelength);

/// Multipath channel h_k = sqrt(N/Lp) * sum_l rho_{k,l} a(x, theta_{k,l}).
/// user is 0-based.
CVector user_channel(const Scene& scene, int user, const AntennaPositions& x,
                     const SystemConfig& cfg);

/// Draws a scene: path/clutter angles uniform on [0, pi], all complex
/// gains CN(0,1), target angle fixed from cfg unless target_angle_random.
/// Deterministic given the seed.
Scene sample_scene(const SystemConfig& cfg, std::uint64_t seed);

/// Half-wavelength ULA anchored at region_min (the FPA layout and the
/// movable-antenna starting point).
AntennaPositions ula_positions(const SystemConfig& cfg);

/// Region and min-spacing constraints, with a small absolute slack for
/// clamp arithmetic at the boundary.
bool positions_feasible(const AntennaPositions& x, const SystemConfig& cfg,
                        double tol = 1e-9);

} // namespace mabeam
