// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include "mabeam/model.hpp"

namespace mabeam {

/// True (untransformed) performance metrics of one (scene, x, F) triple.
struct MetricsReport {
    RVector sinr;       // per user, linear
    RVector rate_bits;  // log2(1 + sinr)
    double scnr = 0.0;  // linear
    double mi_bits = 0.0;
    double objective_bits = 0.0;
    double objective_nats = 0.0;

    double sum_rate_bits() const { return rate_bits.sum(); }
};

/// SINR of user k (0-based): |h_k^H f_k|^2 over interference from all
/// other streams (including the sensing stream) plus noise.
double sinr(const Scene& scene, const AntennaPositions& x, const Beamformer& F,
            int user, const SystemConfig& cfg);

/// Radar SCNR: ||alpha_s a_s^H F||^2 over clutter echo power plus noise.
/// The numerator norm runs across all K+1 columns.
double scnr(const Scene& scene, const AntennaPositions& x, const Beamformer& F,
            const SystemConfig& cfg);

/// Weighted objective of the design problem:
/// weight_comm * sum_k rate_k + weight_sense * log2(1 + SCNR).
MetricsReport objective(const Scene& scene, const AntennaPositions& x,
                        const Beamformer& F, const SystemConfig& cfg);

} // namespace mabeam
