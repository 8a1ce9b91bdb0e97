// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/solver.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <stdexcept>

#include "mabeam/rng.hpp"

namespace mabeam {

std::string scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::spga_fp: return "SPGA-FP";
    case Scheme::dga_fp: return "DGA-FP";
    case Scheme::fp_fpa: return "FP-FPA";
    case Scheme::spga_rbf: return "SPGA-RBF";
    case Scheme::dga_rbf: return "DGA-RBF";
    case Scheme::rbf_fpa: return "RBF-FPA";
    }
    return "?";
}

Scheme scheme_from_name(std::string_view name)
{
    std::string key;
    key.reserve(name.size());
    for (char c : name)
        key.push_back(c == '_' ? '-' : static_cast<char>(std::toupper(
                                           static_cast<unsigned char>(c))));
    if (key == "SPGA-FP") return Scheme::spga_fp;
    if (key == "DGA-FP") return Scheme::dga_fp;
    if (key == "FP-FPA") return Scheme::fp_fpa;
    if (key == "SPGA-RBF") return Scheme::spga_rbf;
    if (key == "DGA-RBF") return Scheme::dga_rbf;
    if (key == "RBF-FPA") return Scheme::rbf_fpa;
    throw std::invalid_argument("unknown scheme: " + std::string(name));
}

bool scheme_moves_antennas(Scheme s)
{
    return s != Scheme::fp_fpa && s != Scheme::rbf_fpa;
}

bool scheme_optimizes_beams(Scheme s)
{
    return s == Scheme::spga_fp || s == Scheme::dga_fp || s == Scheme::fp_fpa;
}

bool scheme_uses_dga(Scheme s)
{
    return s == Scheme::dga_fp || s == Scheme::dga_rbf;
}

Beamformer random_beamformer(const SystemConfig& cfg, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    Beamformer F(cfg.n_antennas, cfg.n_streams());
    for (Eigen::Index j = 0; j < F.cols(); ++j)
        for (Eigen::Index n = 0; n < F.rows(); ++n)
            F(n, j) = rng::gaussian_cn01(gen);
    const double norm = F.norm();
    if (norm > 0.0)
        F *= std::sqrt(cfg.tx_power) / norm;
    return F;
}

namespace {

Beamformer matched_filter_init(const Scene& scene, const AntennaPositions& x,
                               const SystemConfig& cfg, std::uint64_t seed)
{
    Beamformer F(cfg.n_antennas, cfg.n_streams());
    for (int k = 0; k < cfg.n_users; ++k)
        F.col(k) = user_channel(scene, k, x, cfg);
    F.col(cfg.n_users) = steering_vector(x, scene.target_angle, cfg.wavelength);
    const double norm = F.norm();
    if (!(norm > 1e-30))
        return random_beamformer(cfg, seed);
    F *= std::sqrt(cfg.tx_power) / norm;
    return F;
}

// Initial point search for the search-based schemes. Once the beamformer
// has been fit to a geometry, the per-antenna surrogate landscape pins the
// array there, so the whole-region search has to happen before the first
// beam update. Probe beamformers give the search independent looks at the
// spatial fading field; candidates are scored by the tight surrogate after
// the scheme's own first beam step.
AntennaPositions initial_position_search(const Scene& scene,
                                         const SystemConfig& cfg,
                                         Scheme scheme, std::uint64_t seed,
                                         const Beamformer& scheme_f)
{
    const AntennaPositions ula = project_positions(ula_positions(cfg), cfg);
    if (!scheme_moves_antennas(scheme) || scheme_uses_dga(scheme))
        return ula;

    auto search_with = [&](const Beamformer& probe) {
        const AuxiliaryState aux =
            update_aux(scene, ula, probe, AuxiliaryState::zero(cfg.n_users),
                       cfg, cfg.xi_mode);
        return solve_sp2(scene, ula, probe, aux, cfg, false).x;
    };
    auto score = [&](const AntennaPositions& x) {
        Beamformer F = scheme_optimizes_beams(scheme)
                           ? matched_filter_init(scene, x, cfg, seed)
                           : scheme_f;
        AuxiliaryState aux = update_aux(
            scene, x, F, AuxiliaryState::zero(cfg.n_users), cfg, cfg.xi_mode);
        if (scheme_optimizes_beams(scheme)) {
            const QuadraticForm qf = assemble_quadratic(scene, x, aux, cfg);
            F = solve_sp1(qf, cfg.tx_power,
                          cfg.solver.bisect_tol_rel * cfg.tx_power,
                          cfg.solver.bisect_max_iters)
                    .F;
            aux = update_aux(scene, x, F, aux, cfg, cfg.xi_mode);
        }
        return surrogate_eval(scene, x, F, aux, cfg).value_nats;
    };

    AntennaPositions best = ula;
    double best_score = score(ula);
    const int probes =
        scheme_optimizes_beams(scheme) ? cfg.solver.init_probes : 1;
    for (int r = 1; r <= probes; ++r) {
        const Beamformer probe =
            scheme_optimizes_beams(scheme)
                ? random_beamformer(cfg, seed * 1000003ULL +
                                             static_cast<std::uint64_t>(r))
                : scheme_f;
        const AntennaPositions cand = search_with(probe);
        const double s = score(cand);
        if (s > best_score) {
            best_score = s;
            best = cand;
        }
    }
    return best;
}

} // namespace

SolveResult solve(const Scene& scene, const SystemConfig& cfg, Scheme scheme,
                  std::uint64_t seed)
{
    cfg.validate();
    scene.validate(cfg);
    const auto t_start = std::chrono::steady_clock::now();

    SolveResult result;
    Beamformer F;
    if (!scheme_optimizes_beams(scheme) || cfg.f_init == BeamformerInit::random)
        F = random_beamformer(cfg, seed);
    AntennaPositions x = initial_position_search(scene, cfg, scheme, seed, F);
    if (scheme_optimizes_beams(scheme) && cfg.f_init == BeamformerInit::matched_filter)
        F = matched_filter_init(scene, x, cfg, seed);

    AuxiliaryState aux = update_aux(scene, x, F,
                                    AuxiliaryState::zero(cfg.n_users), cfg,
                                    cfg.xi_mode);
    double surrogate = surrogate_eval(scene, x, F, aux, cfg).value_nats;
    result.surrogate_trace_nats.push_back(surrogate);
    result.objective_trace_nats.push_back(
        objective(scene, x, F, cfg).objective_nats);

    const double eps_bisect = cfg.solver.bisect_tol_rel * cfg.tx_power;
    const bool dga = scheme_uses_dga(scheme);

    for (int t = 1; t <= cfg.solver.max_outer_iters; ++t) {
        if (scheme_optimizes_beams(scheme)) {
            const QuadraticForm qf = assemble_quadratic(scene, x, aux, cfg);
            F = solve_sp1(qf, cfg.tx_power, eps_bisect,
                          cfg.solver.bisect_max_iters)
                    .F;
        }
        if (scheme_moves_antennas(scheme)) {
            Sp2Result sp2 = solve_sp2(scene, x, F, aux, cfg, dga);
            x = std::move(sp2.x);
            if (sp2.aborted)
                result.flagged = true;
        }
        aux = update_aux(scene, x, F, aux, cfg, cfg.xi_mode);
        const double next = surrogate_eval(scene, x, F, aux, cfg).value_nats;
        result.surrogate_trace_nats.push_back(next);
        result.objective_trace_nats.push_back(
            objective(scene, x, F, cfg).objective_nats);
        result.iterations = t;
        if (result.flagged)
            break;
        if (next - surrogate < cfg.solver.outer_tol) {
            surrogate = next;
            result.converged = true;
            break;
        }
        surrogate = next;
    }

    result.F = std::move(F);
    result.x = std::move(x);
    result.metrics = objective(scene, result.x, result.F, cfg);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return result;
}

} // namespace mabeam
