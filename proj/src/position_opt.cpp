// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include "mabeam/position_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mabeam {

SurrogateWorkspace::SurrogateWorkspace(const Scene& scene,
                                       const SystemConfig& cfg,
                                       const Beamformer& F,
                                       const AuxiliaryState& aux,
                                       AntennaPositions x)
    : scene_(&scene), cfg_(&cfg), f_(&F), aux_(&aux), x_(std::move(x))
{
    n_ant_ = static_cast<int>(x_.size());
    n_users_ = scene.n_users();
    n_clut_ = scene.n_clutters();
    n_streams_ = static_cast<int>(F.cols());
    wavenum_ = 2.0 * pi / cfg.wavelength;
    chan_scale_ = std::sqrt(static_cast<double>(n_ant_) /
                            static_cast<double>(scene.user_paths[0].size()));
    hmat_.resize(n_ant_, n_users_);
    smat_.resize(n_users_, n_streams_);
    amat_.resize(n_ant_, n_clut_ + 1);
    gmat_.resize(n_clut_ + 1, n_streams_);
    rebuild();
}

cplx SurrogateWorkspace::channel_component(int user, double pos) const
{
    cplx v{0.0, 0.0};
    for (const auto& p : scene_->user_paths[user])
        v += p.gain * std::polar(1.0, wavenum_ * pos * std::cos(p.angle));
    return chan_scale_ * v;
}

void SurrogateWorkspace::rebuild()
{
    for (int k = 0; k < n_users_; ++k)
        for (int n = 0; n < n_ant_; ++n)
            hmat_(n, k) = channel_component(k, x_[n]);
    smat_.noalias() = hmat_.adjoint() * (*f_);

    for (int n = 0; n < n_ant_; ++n) {
        amat_(n, 0) =
            std::polar(1.0, wavenum_ * x_[n] * std::cos(scene_->target_angle));
        for (int c = 0; c < n_clut_; ++c)
            amat_(n, c + 1) = std::polar(
                1.0, wavenum_ * x_[n] * std::cos(scene_->clutter[c].angle));
    }
    gmat_.noalias() = amat_.adjoint() * (*f_);

    fxs_ = (*f_) * aux_->xi_s;
    row_norm_ = f_->rowwise().squaredNorm();
}

void SurrogateWorkspace::move_antenna(int n, double pos)
{
    for (int k = 0; k < n_users_; ++k) {
        const cplx fresh = channel_component(k, pos);
        const cplx delta = std::conj(fresh) - std::conj(hmat_(n, k));
        smat_.row(k) += delta * f_->row(n);
        hmat_(n, k) = fresh;
    }
    const double target_cos = std::cos(scene_->target_angle);
    for (int chi = 0; chi <= n_clut_; ++chi) {
        const double c = chi == 0 ? target_cos
                                  : std::cos(scene_->clutter[chi - 1].angle);
        const cplx fresh = std::polar(1.0, wavenum_ * pos * c);
        const cplx delta = std::conj(fresh) - std::conj(amat_(n, chi));
        gmat_.row(chi) += delta * f_->row(n);
        amat_(n, chi) = fresh;
    }
    x_[n] = pos;
}

double SurrogateWorkspace::value_nats() const
{
    const auto& aux = *aux_;
    const auto& cfg = *cfg_;
    double val = 0.0;
    for (int k = 0; k < n_users_; ++k) {
        const double mu = aux.mu[k];
        const double denom = smat_.row(k).squaredNorm() + cfg.noise_user;
        val += cfg.weight_comm *
               (std::log1p(mu) - mu +
                2.0 * std::sqrt(1.0 + mu) * std::real(aux.xi_c[k] * smat_(k, k)) -
                std::norm(aux.xi_c[k]) * denom);
    }
    const double mu_s = aux.mu[n_users_];
    const double target_power =
        std::norm(scene_->target_coeff) * gmat_.row(0).squaredNorm();
    double clutter_power = 0.0;
    for (int c = 0; c < n_clut_; ++c)
        clutter_power +=
            std::norm(scene_->clutter[c].coeff) * gmat_.row(c + 1).squaredNorm();
    const cplx q = scene_->target_coeff * (gmat_.row(0) * aux.xi_s)(0);
    val += cfg.weight_sense *
           (std::log1p(mu_s) - mu_s + 2.0 * std::sqrt(1.0 + mu_s) * std::real(q) -
            aux.xi_s.squaredNorm() *
                (clutter_power + target_power + cfg.noise_sense));
    return val;
}

double SurrogateWorkspace::gradient(int n) const
{
    const auto& aux = *aux_;
    const auto& cfg = *cfg_;
    const auto& F = *f_;
    const cplx minus_j_psi{0.0, -wavenum_};

    double comm = 0.0;
    for (int k = 0; k < n_users_; ++k) {
        // W = d(conj h_{k,n})/dx_n up to the -j psi factor
        cplx w{0.0, 0.0};
        for (const auto& p : scene_->user_paths[k]) {
            const double c = std::cos(p.angle);
            w += c * std::conj(p.gain) *
                 std::polar(1.0, -wavenum_ * x_[n] * c);
        }
        w *= chan_scale_;
        const cplx ds_base = minus_j_psi * w;

        const double d_lin =
            2.0 * std::real(aux.xi_c[k] * ds_base * F(n, k));
        cplx z{0.0, 0.0};
        for (int j = 0; j < n_streams_; ++j)
            z += std::conj(smat_(k, j)) * F(n, j);
        const double d_quad = 2.0 * std::real(ds_base * z);
        comm += cfg.weight_comm * (std::sqrt(1.0 + aux.mu[k]) * d_lin -
                                   std::norm(aux.xi_c[k]) * d_quad);
    }

    const double mu_s = aux.mu[n_users_];
    const double target_cos = std::cos(scene_->target_angle);
    const double d_sense_lin =
        2.0 * std::real(scene_->target_coeff * minus_j_psi * target_cos *
                        std::conj(amat_(n, 0)) * fxs_[n]);

    double d_echo = 0.0;
    for (int chi = 0; chi <= n_clut_; ++chi) {
        const double c = chi == 0 ? target_cos
                                  : std::cos(scene_->clutter[chi - 1].angle);
        const double mag2 = chi == 0 ? std::norm(scene_->target_coeff)
                                     : std::norm(scene_->clutter[chi - 1].coeff);
        cplx t{0.0, 0.0};
        for (int j = 0; j < n_streams_; ++j)
            t += gmat_(chi, j) * std::conj(F(n, j));
        t -= std::conj(amat_(n, chi)) * row_norm_[n];
        d_echo += mag2 * 2.0 *
                  std::real(cplx{0.0, wavenum_} * c * amat_(n, chi) * t);
    }

    const double sense = cfg.weight_sense * std::sqrt(1.0 + mu_s) * d_sense_lin -
                         cfg.weight_sense * aux.xi_s.squaredNorm() * d_echo;
    return comm + sense;
}

double surrogate_grad_x(const Scene& scene, const AntennaPositions& x,
                        const Beamformer& F, const AuxiliaryState& aux,
                        const SystemConfig& cfg, int n)
{
    if (n < 0 || n >= x.size())
        throw std::out_of_range("surrogate_grad_x: antenna index out of range");
    return SurrogateWorkspace(scene, cfg, F, aux, x).gradient(n);
}

namespace {

std::vector<double> search_grid(const SystemConfig& cfg)
{
    const double span = cfg.region_max - cfg.region_min;
    if (!(span > 0.0))
        return {cfg.region_min};
    const int pts = std::max(
        2, static_cast<int>(std::llround(span / cfg.wavelength *
                                         cfg.ga.grid_points_per_wavelength)) +
               1);
    std::vector<double> grid(pts);
    for (int i = 0; i < pts; ++i)
        grid[i] = cfg.region_min + span * i / (pts - 1);
    return grid;
}

// Alternating per-antenna ascent with backtracking. accept decides
// whether a candidate coordinate may be taken (DGA feasibility gate).
template <typename AcceptFn>
GaResult run_ga(SurrogateWorkspace& ws, const SystemConfig& cfg,
                const AntennaPositions& x0, AcceptFn&& accept)
{
    GaResult result;
    const int n_ant = static_cast<int>(ws.positions().size());
    double current = ws.value_nats();
    for (int round = 0; round < cfg.ga.max_inner_iters; ++round) {
        const double round_start = current;
        for (int n = 0; n < n_ant; ++n) {
            const double grad = ws.gradient(n);
            if (!std::isfinite(grad)) {
                result.x = x0;
                result.aborted = true;
                return result;
            }
            if (grad != 0.0) {
                const double home = ws.positions()[n];
                double step = cfg.ga_step_init();
                bool accepted = false;
                for (int bt = 0; bt <= cfg.ga.max_backtracks; ++bt) {
                    const double cand = home + step * grad;
                    if (accept(n, cand)) {
                        ws.move_antenna(n, cand);
                        const double val = ws.value_nats();
                        if (val > current) {
                            current = val;
                            accepted = true;
                            break;
                        }
                    }
                    step *= cfg.ga.backtrack_factor;
                }
                if (!accepted)
                    ws.move_antenna(n, home);
            }
            result.visit_trace.push_back(current);
        }
        ws.rebuild();
        current = ws.value_nats();
        if (current - round_start < cfg.ga.inner_tol)
            break;
    }
    result.x = ws.positions();
    return result;
}

} // namespace

AntennaPositions grid_search_init(const Scene& scene, const Beamformer& F,
                                  const AuxiliaryState& aux,
                                  const SystemConfig& cfg,
                                  const AntennaPositions& x_current)
{
    SurrogateWorkspace ws(scene, cfg, F, aux, x_current);
    const std::vector<double> grid = search_grid(cfg);
    const int n_ant = static_cast<int>(x_current.size());
    for (int n = 0; n < n_ant; ++n) {
        const double home = ws.positions()[n];
        double best_val = -std::numeric_limits<double>::infinity();
        double best_pos = grid.front();
        for (double p : grid) {
            ws.move_antenna(n, p);
            const double val = ws.value_nats();
            if (val > best_val) {
                best_val = val;
                best_pos = p;
            }
        }
        // current coordinate stays in the candidate set so the sweep
        // never loses value; it wins only on strict improvement
        ws.move_antenna(n, home);
        if (ws.value_nats() > best_val)
            best_pos = home;
        ws.move_antenna(n, best_pos);
        ws.rebuild();
    }
    return ws.positions();
}

GaResult ga_inner_loop(const Scene& scene, const AntennaPositions& x0,
                       const Beamformer& F, const AuxiliaryState& aux,
                       const SystemConfig& cfg)
{
    SurrogateWorkspace ws(scene, cfg, F, aux, x0);
    return run_ga(ws, cfg, x0, [](int, double) { return true; });
}

AntennaPositions project_positions(const AntennaPositions& x,
                                   const SystemConfig& cfg)
{
    const int n = static_cast<int>(x.size());
    if (n == 0)
        return x;
    const double d0 = cfg.min_spacing;
    if (cfg.region_max - cfg.region_min < (n - 1) * d0 - 1e-12)
        throw std::invalid_argument(
            "project_positions: region cannot hold the array at min spacing");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&x](int a, int b) { return x[a] < x[b]; });

    std::vector<double> s(n);
    for (int m = 0; m < n; ++m)
        s[m] = x[order[m]];

    s[0] = std::max(cfg.region_min,
                    std::min(s[0], cfg.region_max - (n - 1) * d0));
    for (int m = 1; m < n; ++m) {
        const double cap = cfg.region_max - (n - 1 - m) * d0;
        s[m] = std::max(s[m - 1] + d0, std::min(s[m], cap));
    }

    AntennaPositions out(n);
    for (int m = 0; m < n; ++m)
        out[order[m]] = s[m];
    return out;
}

Sp2Result solve_sp2(const Scene& scene, const AntennaPositions& x_prev,
                    const Beamformer& F, const AuxiliaryState& aux,
                    const SystemConfig& cfg, bool dga_mode)
{
    Sp2Result result;
    if (dga_mode) {
        SurrogateWorkspace ws(scene, cfg, F, aux, x_prev);
        AntennaPositions probe = x_prev;
        GaResult ga = run_ga(ws, cfg, x_prev, [&](int n, double cand) {
            probe = ws.positions();
            probe[n] = cand;
            return positions_feasible(probe, cfg);
        });
        result.x = ga.aborted ? x_prev : ga.x;
        result.aborted = ga.aborted;
        return result;
    }

    const AntennaPositions x_init = grid_search_init(scene, F, aux, cfg, x_prev);
    GaResult ga = ga_inner_loop(scene, x_init, F, aux, cfg);
    if (ga.aborted) {
        result.x = x_prev;
        result.aborted = true;
        return result;
    }
    AntennaPositions projected = project_positions(ga.x, cfg);

    // projection can land below the incoming feasible iterate; keep the
    // better of the two so the outer loop stays monotone
    const double v_prev =
        SurrogateWorkspace(scene, cfg, F, aux, x_prev).value_nats();
    const double v_proj =
        SurrogateWorkspace(scene, cfg, F, aux, projected).value_nats();
    result.x = v_proj >= v_prev ? std::move(projected) : x_prev;
    return result;
}

Sp2Result solve_sp2(const Scene& scene, const AntennaPositions& x_prev,
                    const Beamformer& F, const AuxiliaryState& aux,
                    const SystemConfig& cfg)
{
    return solve_sp2(scene, x_prev, F, aux, cfg, cfg.ga.dga_mode);
}

} // namespace mabeam
