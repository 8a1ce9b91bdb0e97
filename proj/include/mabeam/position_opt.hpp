// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <vector>

#include "mabeam/fp_core.hpp"

namespace mabeam {

/// Incremental surrogate evaluator for the position sub-problem.
///
/// Holds the inner products the surrogate and its position gradient are
/// built from (h_k^H f_j, a_chi^H f_j, F xi^s, per-row |F|^2) so that
/// moving a single antenna costs O(K Lp + K^2 + C K) instead of a full
/// re-evaluation. F and the auxiliaries are fixed for the lifetime of
/// the workspace; only x changes.
class SurrogateWorkspace {
public:
    SurrogateWorkspace(const Scene& scene, const SystemConfig& cfg,
                       const Beamformer& F, const AuxiliaryState& aux,
                       AntennaPositions x);

    /// Moves antenna n (0-based) to coordinate pos and patches the caches.
    void move_antenna(int n, double pos);

    /// Surrogate value in nats at the current positions.
    double value_nats() const;

    /// Analytic d(surrogate)/dx_n at the current positions.
    double gradient(int n) const;

    const AntennaPositions& positions() const { return x_; }

    /// Recomputes every cache from scratch (drift control after many
    /// incremental moves).
    void rebuild();

private:
    cplx channel_component(int user, double pos) const;

    const Scene* scene_;
    const SystemConfig* cfg_;
    const Beamformer* f_;
    const AuxiliaryState* aux_;
    AntennaPositions x_;

    int n_ant_, n_users_, n_clut_, n_streams_;
    double wavenum_; // 2 pi / lambda
    double chan_scale_; // sqrt(N / Lp)

    CMatrix hmat_;     // N x K, column k = h_k(x)
    CMatrix smat_;     // K x (K+1), (k,j) = h_k^H f_j
    CMatrix amat_;     // N x (C+1), col 0 = target steering, then clutter
    CMatrix gmat_;     // (C+1) x (K+1), (chi,j) = a_chi^H f_j
    CVector fxs_;      // F * xi^s
    RVector row_norm_; // per-antenna sum_j |F(n,j)|^2
};

/// d(surrogate)/dx_n assembled from the five derivative families
/// (channel linear term, per-stream interference quadratics, sensing
/// linear term, clutter and target quadratics). n is 0-based.
double surrogate_grad_x(const Scene& scene, const AntennaPositions& x,
                        const Beamformer& F, const AuxiliaryState& aux,
                        const SystemConfig& cfg, int n);

/// Stage i of SPGA: per-antenna sweep over a uniform grid covering
/// [region_min, region_max] (plus the current coordinate, so the result
/// never falls below the input), antennas updated in index order.
/// Constraints are ignored here; projection handles them later.
AntennaPositions grid_search_init(const Scene& scene, const Beamformer& F,
                                  const AuxiliaryState& aux,
                                  const SystemConfig& cfg,
                                  const AntennaPositions& x_current);

struct GaResult {
    AntennaPositions x;
    bool aborted = false;            // non-finite gradient encountered
    std::vector<double> visit_trace; // surrogate after each antenna visit
};

/// Stage ii: alternating per-antenna gradient ascent with backtracking
/// (step halved while the surrogate does not improve; antenna skipped
/// after max_backtracks). Unconstrained; monotone across accepted steps.
GaResult ga_inner_loop(const Scene& scene, const AntennaPositions& x0,
                       const Beamformer& F, const AuxiliaryState& aux,
                       const SystemConfig& cfg);

/// Stage iii: sort remembering the permutation, run the sequential
/// clamp recurrence, undo the permutation. Output satisfies the region
/// and min-spacing constraints; idempotent; identity on feasible input.
AntennaPositions project_positions(const AntennaPositions& x,
                                   const SystemConfig& cfg);

struct Sp2Result {
    AntennaPositions x;
    bool aborted = false;
};

/// Full position update. SPGA: grid search, gradient ascent, projection
/// (keeping x_prev if projection lands below it). DGA baseline: gradient
/// steps from x_prev with infeasible candidates rejected. Output is
/// always feasible.
Sp2Result solve_sp2(const Scene& scene, const AntennaPositions& x_prev,
                    const Beamformer& F, const AuxiliaryState& aux,
                    const SystemConfig& cfg, bool dga_mode);

/// Mode taken from cfg.ga.dga_mode.
Sp2Result solve_sp2(const Scene& scene, const AntennaPositions& x_prev,
                    const Beamformer& F, const AuxiliaryState& aux,
                    const SystemConfig& cfg);

} // namespace mabeam
