// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/metrics.hpp"

#include <cmath>

namespace mabeam {

double sinr(const Scene& scene, const AntennaPositions& x, const Beamformer& F,
            int user, const SystemConfig& cfg)
{
    const CVector h = user_channel(scene, user, x, cfg);
    double signal = 0.0;
    double interference = 0.0;
    for (Eigen::Index j = 0; j < F.cols(); ++j) {
        const double p = std::norm(h.dot(F.col(j)));
        if (j == user)
            signal = p;
        else
            interference += p;
    }
    return signal / (interference + cfg.noise_user);
}

double scnr(const Scene& scene, const AntennaPositions& x, const Beamformer& F,
            const SystemConfig& cfg)
{
    const CVector a_s = steering_vector(x, scene.target_angle, cfg.wavelength);
    const double target = std::norm(scene.target_coeff) *
                          (F.adjoint() * a_s).squaredNorm();
    double clutter = 0.0;
    for (const auto& c : scene.clutter) {
        const CVector a_c = steering_vector(x, c.angle, cfg.wavelength);
        clutter += std::norm(c.coeff) * (F.adjoint() * a_c).squaredNorm();
    }
    return target / (clutter + cfg.noise_sense);
}

MetricsReport objective(const Scene& scene, const AntennaPositions& x,
                        const Beamformer& F, const SystemConfig& cfg)
{
    MetricsReport report;
    const int k_users = scene.n_users();
    report.sinr.resize(k_users);
    report.rate_bits.resize(k_users);
    for (int k = 0; k < k_users; ++k) {
        report.sinr[k] = sinr(scene, x, F, k, cfg);
        report.rate_bits[k] = std::log2(1.0 + report.sinr[k]);
    }
    report.scnr = scnr(scene, x, F, cfg);
    report.mi_bits = std::log2(1.0 + report.scnr);
    report.objective_bits = cfg.weight_comm * report.rate_bits.sum() +
                            cfg.weight_sense * report.mi_bits;
    report.objective_nats = ln2 * report.objective_bits;
    return report;
}

} // namespace mabeam
