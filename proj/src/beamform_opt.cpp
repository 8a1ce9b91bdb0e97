// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/beamform_opt.hpp"

#include <cmath>

namespace mabeam {

QuadraticForm assemble_quadratic(const Scene& scene, const AntennaPositions& x,
                                 const AuxiliaryState& aux,
                                 const SystemConfig& cfg)
{
    const int k_users = scene.n_users();
    const int n = static_cast<int>(x.size());
    const double wc = cfg.weight_comm;
    const double ws = cfg.weight_sense;

    QuadraticForm qf;
    qf.lambda = CMatrix::Zero(n, n);
    qf.phi = CMatrix::Zero(n, k_users + 1);

    const CVector a_s = steering_vector(x, scene.target_angle, cfg.wavelength);
    const double mu_s = aux.mu[k_users];
    const double xi_s_norm2 = aux.xi_s.squaredNorm();

    double dual_const = ws * (std::log1p(mu_s) - mu_s);
    for (int k = 0; k < k_users; ++k) {
        const CVector h = user_channel(scene, k, x, cfg);
        const cplx xc = aux.xi_c[k];
        qf.lambda.noalias() += (wc * std::norm(xc)) * (h * h.adjoint());
        qf.phi.col(k) = wc * std::sqrt(1.0 + aux.mu[k]) * std::conj(xc) * h;
        // sensing share of every stream's linear term
        qf.phi.col(k) += ws * std::sqrt(1.0 + mu_s) *
                         std::conj(scene.target_coeff) * std::conj(aux.xi_s[k]) *
                         a_s;
        dual_const += wc * (std::log1p(aux.mu[k]) - aux.mu[k]);
    }
    qf.phi.col(k_users) = ws * std::sqrt(1.0 + mu_s) *
                          std::conj(scene.target_coeff) *
                          std::conj(aux.xi_s[k_users]) * a_s;

    CMatrix echo = std::norm(scene.target_coeff) * (a_s * a_s.adjoint());
    for (const auto& c : scene.clutter) {
        const CVector a_c = steering_vector(x, c.angle, cfg.wavelength);
        echo.noalias() += std::norm(c.coeff) * (a_c * a_c.adjoint());
    }
    qf.lambda.noalias() += (ws * xi_s_norm2) * echo;
    // enforce exact Hermitian symmetry against accumulation noise
    qf.lambda = (qf.lambda + qf.lambda.adjoint().eval()) / 2.0;

    qf.constant_b = dual_const - wc * aux.xi_c.squaredNorm() * cfg.noise_user -
                    ws * xi_s_norm2 * cfg.noise_sense;
    return qf;
}

namespace {

// Eigendecomposition of Lambda shared across streams and bisection steps.
class ShiftedSolver {
public:
    explicit ShiftedSolver(const QuadraticForm& qf)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(qf.lambda);
        evals_ = es.eigenvalues().cwiseMax(0.0); // PSD by construction
        basis_ = es.eigenvectors();
        phi_proj_ = basis_.adjoint() * qf.phi;
    }

    Beamformer solve(double lambda_dual) const
    {
        // minimum-norm solve: drop directions where the shift is singular
        const double cutoff =
            1e-14 * std::max(evals_.maxCoeff() + lambda_dual, 1e-300);
        RVector inv(evals_.size());
        for (Eigen::Index i = 0; i < evals_.size(); ++i) {
            const double d = evals_[i] + lambda_dual;
            inv[i] = d > cutoff ? 1.0 / d : 0.0;
        }
        return basis_ * (inv.asDiagonal() * phi_proj_);
    }

    double power(double lambda_dual) const
    {
        const double cutoff =
            1e-14 * std::max(evals_.maxCoeff() + lambda_dual, 1e-300);
        double p = 0.0;
        for (Eigen::Index i = 0; i < evals_.size(); ++i) {
            const double d = evals_[i] + lambda_dual;
            if (d > cutoff)
                p += phi_proj_.row(i).squaredNorm() / (d * d);
        }
        return p;
    }

private:
    RVector evals_;
    CMatrix basis_;
    CMatrix phi_proj_;
};

} // namespace

Beamformer solve_f_given_lambda(const QuadraticForm& qf, double lambda_dual)
{
    return ShiftedSolver(qf).solve(lambda_dual);
}

Sp1Result solve_sp1(const QuadraticForm& qf, double p0, double eps_bisect,
                    int max_iters)
{
    const ShiftedSolver solver(qf);
    Sp1Result result;

    if (solver.power(0.0) <= p0) { // budget slack: complementary slackness
        result.F = solver.solve(0.0);
        result.lambda_dual = 0.0;
        return result;
    }

    double lo = 0.0;
    double hi = 1.0;
    while (solver.power(hi) > p0 && hi < 1e30) {
        lo = hi;
        hi *= 2.0;
    }

    double mid = hi;
    for (int iter = 0; iter < max_iters; ++iter) {
        mid = 0.5 * (lo + hi);
        const double h = solver.power(mid) - p0;
        ++result.bisect_iters;
        if (std::abs(h) <= eps_bisect)
            break;
        if (h > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * hi)
            break;
    }
    result.F = solver.solve(mid);
    result.lambda_dual = mid;
    return result;
}

double sp1_objective(const QuadraticForm& qf, const Beamformer& F)
{
    double val = 0.0;
    for (Eigen::Index k = 0; k < F.cols(); ++k) {
        val += 2.0 * std::real(qf.phi.col(k).dot(F.col(k)));
        val -= std::real(F.col(k).dot(qf.lambda * F.col(k)));
    }
    return val;
}

} // namespace mabeam
