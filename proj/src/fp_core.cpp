// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/fp_core.hpp"

#include <cmath>
#include <stdexcept>

namespace mabeam {

AuxiliaryState AuxiliaryState::zero(int n_users)
{
    AuxiliaryState aux;
    aux.mu = RVector::Zero(n_users + 1);
    aux.xi_c = CVector::Zero(n_users);
    aux.xi_s = CVector::Zero(n_users + 1);
    return aux;
}

namespace {

// Shared per-call products: S(k,j) = h_k^H f_j, Fᴴa for target/clutter.
struct InnerProducts {
    CMatrix s;           // K x (K+1)
    CVector target_fa;   // F^H a_s
    double target_power; // |alpha_s|^2 ||F^H a_s||^2
    double clutter_power;
};

InnerProducts compute_products(const Scene& scene, const AntennaPositions& x,
                               const Beamformer& F, const SystemConfig& cfg)
{
    const int k_users = scene.n_users();
    InnerProducts ip;
    ip.s.resize(k_users, F.cols());
    for (int k = 0; k < k_users; ++k) {
        const CVector h = user_channel(scene, k, x, cfg);
        ip.s.row(k) = (h.adjoint() * F).row(0);
    }
    const CVector a_s = steering_vector(x, scene.target_angle, cfg.wavelength);
    ip.target_fa = F.adjoint() * a_s;
    ip.target_power = std::norm(scene.target_coeff) * ip.target_fa.squaredNorm();
    ip.clutter_power = 0.0;
    for (const auto& c : scene.clutter) {
        const CVector a_c = steering_vector(x, c.angle, cfg.wavelength);
        ip.clutter_power += std::norm(c.coeff) * (F.adjoint() * a_c).squaredNorm();
    }
    return ip;
}

} // namespace

SurrogateValue surrogate_eval(const Scene& scene, const AntennaPositions& x,
                              const Beamformer& F, const AuxiliaryState& aux,
                              const SystemConfig& cfg)
{
    const int k_users = scene.n_users();
    const InnerProducts ip = compute_products(scene, x, F, cfg);

    SurrogateValue sv;
    double dual_const = 0.0; // the ln(1+mu) - mu block, reused for B
    for (int k = 0; k < k_users; ++k) {
        const double mu = aux.mu[k];
        const cplx skk = ip.s(k, k);
        const double denom = ip.s.row(k).squaredNorm() + cfg.noise_user;
        const double bracket = std::log1p(mu) - mu +
                               2.0 * std::sqrt(1.0 + mu) *
                                   std::real(aux.xi_c[k] * skk) -
                               std::norm(aux.xi_c[k]) * denom;
        sv.comm_nats += cfg.weight_comm * bracket;
        dual_const += cfg.weight_comm * (std::log1p(mu) - mu);
    }

    const double mu_s = aux.mu[k_users];
    // alpha_s a_s^H F xi^s = alpha_s (F^H a_s)^H xi^s
    const cplx q = scene.target_coeff * ip.target_fa.dot(aux.xi_s);
    const double denom_s = ip.clutter_power + ip.target_power + cfg.noise_sense;
    const double bracket_s = std::log1p(mu_s) - mu_s +
                             2.0 * std::sqrt(1.0 + mu_s) * std::real(q) -
                             aux.xi_s.squaredNorm() * denom_s;
    sv.sense_nats = cfg.weight_sense * bracket_s;
    dual_const += cfg.weight_sense * (std::log1p(mu_s) - mu_s);

    sv.value_nats = sv.comm_nats + sv.sense_nats;
    sv.constant_b_nats = dual_const -
                         cfg.weight_comm * aux.xi_c.squaredNorm() * cfg.noise_user -
                         cfg.weight_sense * aux.xi_s.squaredNorm() * cfg.noise_sense;
    return sv;
}

double update_mu(double r)
{
    if (!std::isfinite(r))
        throw std::invalid_argument("update_mu: non-finite input");
    if (r < 0.0)
        return 0.0; // stationarity root would be negative; mu stays >= 0
    return (r * r + r * std::sqrt(r * r + 4.0)) / 2.0;
}

AuxiliaryState update_xi(const Scene& scene, const AntennaPositions& x,
                         const Beamformer& F, const AuxiliaryState& aux,
                         const SystemConfig& cfg, XiMode mode)
{
    const int k_users = scene.n_users();
    const InnerProducts ip = compute_products(scene, x, F, cfg);

    AuxiliaryState next = aux;
    next.xi_c.resize(k_users);
    for (int k = 0; k < k_users; ++k) {
        const cplx skk = ip.s(k, k);
        const double denom = ip.s.row(k).squaredNorm() + cfg.noise_user;
        cplx xi = std::conj(skk) / denom; // f_k^H h_k over the full denominator
        if (mode == XiMode::standard_fp) {
            const double sinr_k = std::norm(skk) / (denom - std::norm(skk));
            xi *= std::sqrt(1.0 + sinr_k);
        }
        next.xi_c[k] = xi;
    }

    const double denom_s = ip.clutter_power + ip.target_power + cfg.noise_sense;
    CVector xi_s = std::conj(scene.target_coeff) * ip.target_fa / denom_s;
    if (mode == XiMode::standard_fp) {
        const double scnr_val = ip.target_power / (denom_s - ip.target_power);
        xi_s *= std::sqrt(1.0 + scnr_val);
    }
    next.xi_s = xi_s;
    return next;
}

AuxiliaryState update_aux(const Scene& scene, const AntennaPositions& x,
                          const Beamformer& F, const AuxiliaryState& aux,
                          const SystemConfig& cfg, XiMode mode)
{
    AuxiliaryState next = update_xi(scene, x, F, aux, cfg, mode);
    const int k_users = scene.n_users();
    const InnerProducts ip = compute_products(scene, x, F, cfg);
    for (int k = 0; k < k_users; ++k)
        next.mu[k] = update_mu(std::real(next.xi_c[k] * ip.s(k, k)));
    const cplx q = scene.target_coeff * ip.target_fa.dot(next.xi_s);
    next.mu[k_users] = update_mu(std::real(q));
    return next;
}

} // namespace mabeam
