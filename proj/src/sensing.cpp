// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/sensing.hpp"

#include <cmath>

namespace mabeam {

RVector beampattern(const AntennaPositions& x, const Beamformer& F,
                    const RVector& theta_grid, double wavelength)
{
    RVector bp(theta_grid.size());
    for (Eigen::Index i = 0; i < theta_grid.size(); ++i) {
        const CVector a = steering_vector(x, theta_grid[i], wavelength);
        bp[i] = (F.adjoint() * a).squaredNorm();
    }
    return bp;
}

CVector steering_derivative(const AntennaPositions& x, double theta,
                            double wavelength)
{
    const double psi = 2.0 * pi / wavelength;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    CVector da(x.size());
    for (Eigen::Index n = 0; n < x.size(); ++n)
        da[n] = cplx{0.0, -psi * x[n] * s} * std::polar(1.0, psi * x[n] * c);
    return da;
}

FisherMatrix fim(const Scene& scene, const AntennaPositions& x,
                 const Beamformer& F, const SystemConfig& cfg)
{
    FisherMatrix fm;
    fm.n_symbols = cfg.n_sense_symbols;

    double sigma_eff = cfg.noise_sense;
    for (const auto& c : scene.clutter) {
        const CVector a_c = steering_vector(x, c.angle, cfg.wavelength);
        sigma_eff += std::norm(c.coeff) * (F.adjoint() * a_c).squaredNorm();
    }
    fm.effective_noise = sigma_eff;

    const CVector a_s = steering_vector(x, scene.target_angle, cfg.wavelength);
    const CVector da_s = steering_derivative(x, scene.target_angle, cfg.wavelength);
    const CVector fa = F.adjoint() * a_s;
    const CVector fda = F.adjoint() * da_s;

    const double scale = 2.0 * cfg.n_sense_symbols / sigma_eff;
    const cplx alpha = cfg.fim_conjugate_cross ? std::conj(scene.target_coeff)
                                               : scene.target_coeff;
    const cplx cross = fda.dot(fa); // da_s^H F F^H a_s

    fm.j(0, 0) = scale * std::norm(scene.target_coeff) * fda.squaredNorm();
    fm.j(1, 1) = scale * fa.squaredNorm();
    fm.j(2, 2) = fm.j(1, 1);
    fm.j(0, 1) = fm.j(1, 0) = scale * std::real(alpha * cross);
    fm.j(0, 2) = fm.j(2, 0) = scale * std::real(cplx{0.0, -1.0} * alpha * cross);
    fm.j(1, 2) = fm.j(2, 1) = 0.0;
    return fm;
}

double crb_theta(const FisherMatrix& fm)
{
    const Eigen::Matrix3d& j = fm.j;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(j);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e12)
        throw singular_fim_error("crb_theta: FIM singular or near-singular "
                                 "(target angle unobservable)");
    const double cof = j(1, 1) * j(2, 2) - j(1, 2) * j(2, 1);
    const double det = j(0, 0) * (j(1, 1) * j(2, 2) - j(1, 2) * j(2, 1)) -
                       j(0, 1) * (j(1, 0) * j(2, 2) - j(1, 2) * j(2, 0)) +
                       j(0, 2) * (j(1, 0) * j(2, 1) - j(1, 1) * j(2, 0));
    return cof / det;
}

} // namespace mabeam
