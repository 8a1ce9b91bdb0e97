// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mabeam/sensing.hpp"
#include "mabeam/solver.hpp"

namespace mabeam {

enum class SweepAxis { none, snr_db, x_max_wavelengths, weight_comm };

std::string sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(std::string_view name);

/// Paper-mirroring default sweep values for an axis.
std::vector<double> default_sweep_values(SweepAxis axis);

/// One Monte Carlo campaign: sweep x scheme x trial, with trial seeds
/// base_seed + trial so every scheme and sweep point sees the identical
/// scene for a given trial index (paired comparisons).
struct ExperimentSpec {
    SystemConfig base;
    std::vector<Scheme> schemes{Scheme::spga_fp};
    SweepAxis axis = SweepAxis::none;
    std::vector<double> sweep_values{0.0};
    int n_trials = 200;
    std::uint64_t base_seed = 1;
    std::string out_path = "results.csv";
    int workers = 0; // 0 = hardware concurrency

    void validate() const;
};

struct TrialRow {
    double sweep_value = 0.0;
    Scheme scheme = Scheme::spga_fp;
    int trial = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double objective_bits = 0.0;
    double sum_rate_bits = 0.0;
    double mi_bits = 0.0;
    double scnr_db = 0.0;
    int iters = 0;
    double wall_ms = 0.0;
};

struct ExperimentResult {
    std::vector<TrialRow> rows; // deterministic (sweep, scheme, trial) order
};

/// Returns base with one axis value applied (snr -> tx_power, etc.).
SystemConfig apply_sweep(const SystemConfig& base, SweepAxis axis, double value);

/// Runs every trial (concurrently up to spec.workers) and collects rows
/// in deterministic order. Failed trials carry ok=false and the error
/// text; they are never dropped.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_results_csv(const ExperimentResult& result, std::ostream& out);
void write_aggregate_csv(const ExperimentResult& result, std::ostream& out);

/// Runs the experiment and writes out_path plus the ".agg.csv" companion.
ExperimentResult run_experiment_to_files(const ExperimentSpec& spec);

/// Uniform degree grid, endpoints included.
RVector degree_grid(double start_deg = 0.0, double stop_deg = 180.0,
                    double step_deg = 0.5);

/// Per-angle beampattern rows "scheme,theta_deg,bp".
void emit_beampattern(std::ostream& out, const std::string& label,
                      const AntennaPositions& x, const Beamformer& F,
                      double wavelength, const RVector& grid_deg);

/// Per-angle CRB rows "scheme,theta_deg,crb_rad2" for a target swept over
/// the grid, using the isotropic power-scaled beamformer (F F^H =
/// P0/N * I) so the curve isolates the array geometry. Singular angles
/// emit nan.
void emit_crb_sweep(std::ostream& out, const std::string& label,
                    const Scene& scene, const AntennaPositions& x,
                    const SystemConfig& cfg, const RVector& grid_deg);

} // namespace mabeam
