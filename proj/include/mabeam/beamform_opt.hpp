// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include "mabeam/fp_core.hpp"

namespace mabeam {

/// The beamforming sub-problem written as a per-stream quadratic:
/// sum_k ( 2 Re{phi_k^H f_k} - f_k^H Lambda f_k ) + B.
/// Lambda is identical for every stream and Hermitian PSD.
struct QuadraticForm {
    CMatrix lambda;      // N x N
    CMatrix phi;         // N x (K+1), column per stream
    double constant_b = 0.0;
};

QuadraticForm assemble_quadratic(const Scene& scene, const AntennaPositions& x,
                                 const AuxiliaryState& aux,
                                 const SystemConfig& cfg);

/// f_k = (Lambda + lambda_dual I)^-1 phi_k, with a minimum-norm
/// pseudo-inverse solve when the shifted matrix is singular.
Beamformer solve_f_given_lambda(const QuadraticForm& qf, double lambda_dual);

struct Sp1Result {
    Beamformer F;
    double lambda_dual = 0.0;
    int bisect_iters = 0;
};

/// KKT solution of the power-constrained sub-problem: returns F(0) when
/// it already meets the budget, otherwise bisects the dual variable on
/// h(lambda) = tr(F^H F) - P0 (strictly decreasing) to |h| <= eps.
Sp1Result solve_sp1(const QuadraticForm& qf, double p0, double eps_bisect,
                    int max_iters = 200);

/// 2 sum_k Re{phi_k^H f_k} - sum_k f_k^H Lambda f_k (without B).
double sp1_objective(const QuadraticForm& qf, const Beamformer& F);

} // namespace mabeam
