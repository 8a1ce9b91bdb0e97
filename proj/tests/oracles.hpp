// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

// Independent reference implementations used only by tests. Everything
// here is written as direct loop-level transcriptions, deliberately not
// sharing code with the library paths they check.

#pragma once

#include <cstdint>

#include "mabeam/beamform_opt.hpp"
#include "mabeam/fp_core.hpp"

namespace mabeam::oracle {

// direct triple-loop channel summation
CVector user_channel_direct(const Scene& scene, int user,
                            const AntennaPositions& x, double wavelength);

double sinr_direct(const Scene& scene, const AntennaPositions& x,
                   const Beamformer& F, int user, const SystemConfig& cfg);

double scnr_direct(const Scene& scene, const AntennaPositions& x,
                   const Beamformer& F, const SystemConfig& cfg);

// single-expression surrogate evaluation
double surrogate_direct(const Scene& scene, const AntennaPositions& x,
                        const Beamformer& F, const AuxiliaryState& aux,
                        const SystemConfig& cfg);

// true objective in nats, from the direct SINR/SCNR routes
double objective_nats_direct(const Scene& scene, const AntennaPositions& x,
                             const Beamformer& F, const SystemConfig& cfg);

// central finite difference of surrogate_eval along x_n
double fd_surrogate_grad(const Scene& scene, const AntennaPositions& x,
                         const Beamformer& F, const AuxiliaryState& aux,
                         const SystemConfig& cfg, int n, double h);

// accelerated projected-gradient ascent on the SP.1 objective over the
// power ball, run to (near) stationarity
Beamformer pg_solve_sp1(const QuadraticForm& qf, double p0, double stat_tol,
                        int max_iters = 500000);

// per-antenna exhaustive sweep; independent of grid_search_init
AntennaPositions exhaustive_grid_sweep(const Scene& scene, const Beamformer& F,
                                       const AuxiliaryState& aux,
                                       const SystemConfig& cfg,
                                       const AntennaPositions& x_current);

// ---- random instance helpers ----

SystemConfig small_config(std::uint64_t seed); // N<=4, K<=3, C<=2, Lp<=3

AntennaPositions random_feasible_positions(const SystemConfig& cfg,
                                           std::uint64_t seed);

Beamformer random_full_beamformer(const SystemConfig& cfg, std::uint64_t seed);

AuxiliaryState random_aux(const SystemConfig& cfg, std::uint64_t seed);

} // namespace mabeam::oracle
