// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <stdexcept>

#include "mabeam/model.hpp"

namespace mabeam {

/// Raised when the Fisher information matrix is singular or too ill
/// conditioned for the angle bound to mean anything.
class singular_fim_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fisher information over zeta = [theta_s, Re alpha_s, Im alpha_s],
/// clutter echoes folded into the effective noise power.
struct FisherMatrix {
    Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
    double effective_noise = 0.0; // sigma_tilde^2
    int n_symbols = 1;
};

/// Transmit beampattern BP(theta) = ||a(theta, x)^H F||^2 per grid point.
RVector beampattern(const AntennaPositions& x, const Beamformer& F,
                    const RVector& theta_grid, double wavelength);

/// d a(theta)/d theta, element n: -j (2pi/lambda) x_n sin(theta) a_n(theta).
CVector steering_derivative(const AntennaPositions& x, double theta,
                            double wavelength);

FisherMatrix fim(const Scene& scene, const AntennaPositions& x,
                 const Beamformer& F, const SystemConfig& cfg);

/// CRB of the target angle, [J^-1]_{1,1} in radians^2. Throws
/// singular_fim_error when the FIM condition number exceeds 1e12.
double crb_theta(const FisherMatrix& fm);

} // namespace mabeam
