// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include "mabeam/model.hpp"

namespace mabeam {

/// Fractional-programming auxiliaries: mu from the Lagrangian dual
/// transform (one per stream), xi_c / xi_s from the quadratic transform.
struct AuxiliaryState {
    RVector mu;   // K+1, entries >= 0
    CVector xi_c; // K
    CVector xi_s; // K+1

    static AuxiliaryState zero(int n_users);
};

/// Surrogate objective value with a per-block breakdown.
struct SurrogateValue {
    double value_nats = 0.0;
    double comm_nats = 0.0;       // weighted communication block
    double sense_nats = 0.0;      // weighted sensing block
    double constant_b_nats = 0.0; // the beamformer-independent constant B
};

/// Evaluates the transformed objective term by term, in nats. The
/// communication quadratic denominator is the full sum over all K+1
/// streams plus noise; the sensing denominator includes the clutter
/// echoes, the target echo, and noise.
SurrogateValue surrogate_eval(const Scene& scene, const AntennaPositions& x,
                              const Beamformer& F, const AuxiliaryState& aux,
                              const SystemConfig& cfg);

/// Stationary point of ln(1+mu) - mu + 2 sqrt(1+mu) r over mu >= 0:
/// (r^2 + r sqrt(r^2+4)) / 2, clamped to 0 for r < 0.
double update_mu(double r);

/// Closed-form xi update. paper_literal returns the plain quotients;
/// standard_fp additionally scales by sqrt(1 + SINR_k) (respectively
/// sqrt(1 + SCNR)), the exact maximizer of the surrogate over xi at the
/// jointly-stationary mu, which makes the subsequent mu refresh land
/// exactly on SINR/SCNR and the surrogate tight.
/// Only the xi fields of the returned state differ from aux.
AuxiliaryState update_xi(const Scene& scene, const AntennaPositions& x,
                         const Beamformer& F, const AuxiliaryState& aux,
                         const SystemConfig& cfg, XiMode mode);

/// xi update followed by the mu refresh (mu_k from R_k = Re{xi_k^c
/// h_k^H f_k}, mu_{K+1} from Re{alpha_s a_s^H F xi^s}). In standard_fp
/// mode this is the exact joint maximizer of the surrogate over the
/// auxiliaries, after which surrogate == true objective in nats.
AuxiliaryState update_aux(const Scene& scene, const AntennaPositions& x,
                          const Beamformer& F, const AuxiliaryState& aux,
                          const SystemConfig& cfg, XiMode mode);

} // namespace mabeam
