// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include <doctest.h>

#include "mabeam/fp_core.hpp"
#include "mabeam/metrics.hpp"
#include "oracles.hpp"

using namespace mabeam;

TEST_CASE("surrogate vanishes at all-zero auxiliaries")
{
    SystemConfig cfg = oracle::small_config(1);
    const Scene scene = sample_scene(cfg, 2);
    const AntennaPositions x = oracle::random_feasible_positions(cfg, 3);
    const Beamformer F = oracle::random_full_beamformer(cfg, 4);
    const SurrogateValue sv =
        surrogate_eval(scene, x, F, AuxiliaryState::zero(cfg.n_users), cfg);
    CHECK(sv.value_nats == 0.0);
    CHECK(sv.constant_b_nats == 0.0);
}

TEST_CASE("surrogate matches the single-expression oracle")
{
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const SystemConfig cfg = oracle::small_config(seed + 100);
        const Scene scene = sample_scene(cfg, seed * 3 + 1);
        const AntennaPositions x =
            oracle::random_feasible_positions(cfg, seed * 3 + 2);
        const Beamformer F = oracle::random_full_beamformer(cfg, seed * 3 + 3);
        const AuxiliaryState aux = oracle::random_aux(cfg, seed * 3 + 4);
        const double ref = oracle::surrogate_direct(scene, x, F, aux, cfg);
        const double val = surrogate_eval(scene, x, F, aux, cfg).value_nats;
        CHECK(val == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("one xi-then-mu refresh makes the surrogate tight")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SystemConfig cfg = oracle::small_config(seed + 300);
        const Scene scene = sample_scene(cfg, seed * 5 + 1);
        const AntennaPositions x =
            oracle::random_feasible_positions(cfg, seed * 5 + 2);
        const Beamformer F = oracle::random_full_beamformer(cfg, seed * 5 + 3);
        // arbitrary starting auxiliaries: the refresh must not depend on them
        const AuxiliaryState aux0 = oracle::random_aux(cfg, seed * 5 + 4);
        const AuxiliaryState aux =
            update_aux(scene, x, F, aux0, cfg, XiMode::standard_fp);

        const double truth = oracle::objective_nats_direct(scene, x, F, cfg);
        const double tight = surrogate_eval(scene, x, F, aux, cfg).value_nats;
        CHECK(std::abs(tight - truth) <= 1e-9);

        // mu landed exactly on SINR / SCNR
        for (int k = 0; k < cfg.n_users; ++k)
            CHECK(aux.mu[k] ==
                  doctest::Approx(sinr(scene, x, F, k, cfg)).epsilon(1e-10));
        CHECK(aux.mu[cfg.n_users] ==
              doctest::Approx(scnr(scene, x, F, cfg)).epsilon(1e-10));
    }
}

TEST_CASE("update_mu pinned values and stationarity")
{
    CHECK(update_mu(0.0) == 0.0);
    CHECK(update_mu(2.0) ==
          doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(update_mu(-0.5) == 0.0);
    CHECK_THROWS_AS(update_mu(std::nan("")), std::invalid_argument);

    for (double r : {0.1, 0.73, 2.0, 5.5, 40.0}) {
        const double mu = update_mu(r);
        auto part = [r](double m) {
            return std::log(1.0 + m) - m + 2.0 * std::sqrt(1.0 + m) * r;
        };
        const double h = 1e-6 * (1.0 + mu);
        const double deriv = (part(mu + h) - part(mu - h)) / (2.0 * h);
        CHECK(std::abs(deriv) < 1e-8);
    }
}

TEST_CASE("update_mu is monotone for non-negative inputs")
{
    double prev = update_mu(0.0);
    for (double r = 0.05; r < 20.0; r += 0.37) {
        const double cur = update_mu(r);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("update_xi pinned values")
{
    SystemConfig cfg;
    cfg.n_antennas = 1;
    cfg.n_users = 1;
    cfg.n_clutters = 0;
    cfg.n_paths = 1;
    Scene scene;
    scene.user_paths = {{PathComponent{pi / 2.0, cplx{1.0, 0.0}}}};
    scene.target_angle = pi / 2.0;
    scene.target_coeff = {1.0, 0.0};
    AntennaPositions x(1);
    x << 0.0;

    SUBCASE("zero beamformer gives zero xi")
    {
        const Beamformer F = Beamformer::Zero(1, 2);
        const AuxiliaryState aux = update_xi(
            scene, x, F, oracle::random_aux(cfg, 9), cfg, XiMode::standard_fp);
        CHECK(aux.xi_c.norm() == 0.0);
        CHECK(aux.xi_s.norm() == 0.0);
    }

    SUBCASE("paper-literal single-user quotient")
    {
        // h^H f_1 = 1, f_2 = 0, sigma^2 = 1 -> xi_1^c = 1/(1+1)
        Beamformer F = Beamformer::Zero(1, 2);
        F(0, 0) = 1.0;
        const AuxiliaryState aux =
            update_xi(scene, x, F, AuxiliaryState::zero(1), cfg,
                      XiMode::paper_literal);
        CHECK(std::abs(aux.xi_c[0] - cplx{0.5, 0.0}) < 1e-14);
    }
}

TEST_CASE("paper-literal xi matches the printed quotients")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SystemConfig cfg = oracle::small_config(seed + 400);
        const Scene scene = sample_scene(cfg, seed * 7 + 1);
        const AntennaPositions x =
            oracle::random_feasible_positions(cfg, seed * 7 + 2);
        const Beamformer F = oracle::random_full_beamformer(cfg, seed * 7 + 3);
        const AuxiliaryState aux = update_xi(
            scene, x, F, AuxiliaryState::zero(cfg.n_users), cfg,
            XiMode::paper_literal);

        for (int k = 0; k < cfg.n_users; ++k) {
            const CVector h = oracle::user_channel_direct(scene, k, x, cfg.wavelength);
            cplx num{0.0, 0.0};
            for (Eigen::Index n = 0; n < x.size(); ++n)
                num += std::conj(F(n, k)) * h[n]; // f_k^H h_k
            double den = cfg.noise_user;
            for (Eigen::Index j = 0; j < F.cols(); ++j) {
                cplx s{0.0, 0.0};
                for (Eigen::Index n = 0; n < x.size(); ++n)
                    s += std::conj(h[n]) * F(n, j);
                den += std::norm(s);
            }
            CHECK(std::abs(aux.xi_c[k] - num / den) < 1e-12);
        }
    }
}

TEST_CASE("standard xi is stationary for the surrogate at the tight mu")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SystemConfig cfg = oracle::small_config(seed + 500);
        const Scene scene = sample_scene(cfg, seed * 11 + 1);
        const AntennaPositions x =
            oracle::random_feasible_positions(cfg, seed * 11 + 2);
        const Beamformer F = oracle::random_full_beamformer(cfg, seed * 11 + 3);
        AuxiliaryState aux = update_aux(scene, x, F,
                                        AuxiliaryState::zero(cfg.n_users), cfg,
                                        XiMode::standard_fp);

        const double h = 1e-6;
        auto check_coordinate = [&](cplx& coeff) {
            for (int part = 0; part < 2; ++part) {
                const cplx delta = part == 0 ? cplx{h, 0.0} : cplx{0.0, h};
                coeff += delta;
                const double up = surrogate_eval(scene, x, F, aux, cfg).value_nats;
                coeff -= 2.0 * delta;
                const double dn = surrogate_eval(scene, x, F, aux, cfg).value_nats;
                coeff += delta;
                CHECK(std::abs((up - dn) / (2.0 * h)) < 1e-7);
            }
        };
        for (int k = 0; k < cfg.n_users; ++k)
            check_coordinate(aux.xi_c[k]);
        for (int j = 0; j <= cfg.n_users; ++j)
            check_coordinate(aux.xi_s[j]);
    }
}

TEST_CASE("aux updates never lower the surrogate")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SystemConfig cfg = oracle::small_config(seed + 600);
        const Scene scene = sample_scene(cfg, seed * 13 + 1);
        const AntennaPositions x =
            oracle::random_feasible_positions(cfg, seed * 13 + 2);
        const Beamformer F = oracle::random_full_beamformer(cfg, seed * 13 + 3);
        AuxiliaryState aux = oracle::random_aux(cfg, seed * 13 + 4);
        const double before = surrogate_eval(scene, x, F, aux, cfg).value_nats;

        // the mu refresh alone is an exact coordinate maximizer
        {
            AuxiliaryState probe = aux;
            const CMatrix s = [&] {
                CMatrix m(cfg.n_users, cfg.n_streams());
                for (int k = 0; k < cfg.n_users; ++k) {
                    const CVector h = user_channel(scene, k, x, cfg);
                    m.row(k) = (h.adjoint() * F).row(0);
                }
                return m;
            }();
            for (int k = 0; k < cfg.n_users; ++k)
                probe.mu[k] = update_mu(std::real(probe.xi_c[k] * s(k, k)));
            const CVector a_s =
                steering_vector(x, scene.target_angle, cfg.wavelength);
            const cplx q =
                scene.target_coeff * (a_s.adjoint() * F * probe.xi_s)(0, 0);
            probe.mu[cfg.n_users] = update_mu(std::real(q));
            CHECK(surrogate_eval(scene, x, F, probe, cfg).value_nats >=
                  before - 1e-10);
        }

        // the xi-then-mu pair is the exact joint maximizer
        const AuxiliaryState next =
            update_aux(scene, x, F, aux, cfg, XiMode::standard_fp);
        CHECK(surrogate_eval(scene, x, F, next, cfg).value_nats >=
              before - 1e-10);
    }
}
