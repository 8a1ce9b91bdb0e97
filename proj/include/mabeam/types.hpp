// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace mabeam {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Antenna x-coordinates in meters, one entry per transmit element.
using AntennaPositions = Eigen::VectorXd;

/// Transmit beamforming matrix, N rows by K+1 columns. Column k carries
/// stream k for user k; the last column is the dedicated sensing stream.
using Beamformer = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double ln2 = 0.69314718055994530942;

inline double deg_to_rad(double deg) { return deg * (pi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / pi); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace mabeam
