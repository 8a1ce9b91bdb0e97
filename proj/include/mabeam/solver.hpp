// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mabeam/beamform_opt.hpp"
#include "mabeam/metrics.hpp"
#include "mabeam/position_opt.hpp"

namespace mabeam {

/// Experiment schemes. FPA variants never move antennas; RBF variants
/// never optimize the beamformer.
enum class Scheme { spga_fp, dga_fp, fp_fpa, spga_rbf, dga_rbf, rbf_fpa };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(std::string_view name); // throws std::invalid_argument

bool scheme_moves_antennas(Scheme s);
bool scheme_optimizes_beams(Scheme s);
bool scheme_uses_dga(Scheme s);

struct SolveResult {
    Beamformer F;
    AntennaPositions x;
    std::vector<double> objective_trace_nats; // per outer iteration
    std::vector<double> surrogate_trace_nats;
    MetricsReport metrics;
    int iterations = 0;
    double wall_seconds = 0.0;
    bool converged = false;
    bool flagged = false; // a sub-problem aborted; result is the last consistent iterate
};

/// Gaussian beamformer rescaled so tr(F^H F) equals tx_power exactly.
Beamformer random_beamformer(const SystemConfig& cfg, std::uint64_t seed);

/// Alternating optimization over the four sub-problems. x starts as the
/// half-wavelength ULA; F per cfg.f_init (RBF schemes always random);
/// auxiliaries refreshed (xi then mu) each iteration, which in
/// standard_fp mode pins the recorded surrogate to the true objective.
/// Stops when the outer surrogate improvement drops below
/// solver.outer_tol or max_outer_iters is reached.
SolveResult solve(const Scene& scene, const SystemConfig& cfg, Scheme scheme,
                  std::uint64_t seed);

} // namespace mabeam
