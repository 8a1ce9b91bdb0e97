// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#include <doctest.h>

#include "mabeam/io.hpp"
#include "mabeam/model.hpp"
#include "oracles.hpp"

using namespace mabeam;

TEST_CASE("steering vector pinned values")
{
    const double lambda = 0.1;

    AntennaPositions x1(1);
    x1 << 0.0;
    const CVector a1 = steering_vector(x1, 1.234, lambda);
    CHECK(std::abs(a1[0] - cplx{1.0, 0.0}) < 1e-15);

    AntennaPositions x2(2);
    x2 << 0.0, lambda / 2.0;
    const CVector broadside = steering_vector(x2, pi / 2.0, lambda);
    CHECK(std::abs(broadside[0] - cplx{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(broadside[1] - cplx{1.0, 0.0}) < 1e-12);

    const CVector endfire = steering_vector(x2, 0.0, lambda);
    CHECK(std::abs(endfire[0] - cplx{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(endfire[1] - cplx{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("steering vector entries are unit modulus")
{
    SystemConfig cfg;
    const AntennaPositions x = oracle::random_feasible_positions(cfg, 7);
    for (double theta : {0.0, 0.3, 1.1, 2.2, pi}) {
        const CVector a = steering_vector(x, theta, cfg.wavelength);
        for (Eigen::Index n = 0; n < a.size(); ++n)
            CHECK(std::abs(std::abs(a[n]) - 1.0) < 1e-14);
    }
}

TEST_CASE("steering vector rejects non-positive wavelength")
{
    AntennaPositions x(1);
    x << 0.0;
    CHECK_THROWS_AS(steering_vector(x, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector(x, 0.5, -1.0), std::invalid_argument);
}

TEST_CASE("user channel pinned values")
{
    SystemConfig cfg;
    cfg.n_users = 1;
    cfg.n_paths = 1;

    Scene scene;
    scene.user_paths = {{PathComponent{1.234, cplx{1.0, 0.0}}}};
    scene.target_coeff = {1.0, 0.0};

    AntennaPositions x1(1);
    x1 << 0.0;
    const CVector h1 = user_channel(scene, 0, x1, cfg);
    CHECK(std::abs(h1[0] - cplx{1.0, 0.0}) < 1e-15);

    scene.user_paths = {{PathComponent{pi / 2.0, cplx{1.0, 0.0}}}};
    AntennaPositions x2(2);
    x2 << 0.0, cfg.wavelength / 2.0;
    const CVector h2 = user_channel(scene, 0, x2, cfg);
    const double root2 = std::sqrt(2.0);
    CHECK(std::abs(h2[0] - cplx{root2, 0.0}) < 1e-12);
    CHECK(std::abs(h2[1] - cplx{root2, 0.0}) < 1e-12);

    CHECK_THROWS_AS(user_channel(scene, 1, x2, cfg), std::out_of_range);
    CHECK_THROWS_AS(user_channel(scene, -1, x2, cfg), std::out_of_range);
}

TEST_CASE("user channel matches direct summation oracle")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    cfg.n_users = 2;
    cfg.n_paths = 3;
    const Scene scene = sample_scene(cfg, 11);
    const AntennaPositions x = oracle::random_feasible_positions(cfg, 12);
    for (int k = 0; k < cfg.n_users; ++k) {
        const CVector h = user_channel(scene, k, x, cfg);
        const CVector ref = oracle::user_channel_direct(scene, k, x, cfg.wavelength);
        CHECK((h - ref).norm() <= 1e-12 * ref.norm());
    }
}

TEST_CASE("single-path channel norm is translation invariant")
{
    SystemConfig cfg;
    cfg.n_users = 1;
    cfg.n_paths = 1;
    const Scene scene = sample_scene(cfg, 21);
    const AntennaPositions x = oracle::random_feasible_positions(cfg, 22);
    const CVector h = user_channel(scene, 0, x, cfg);
    for (double delta : {0.013, -0.4, 2.7}) {
        const CVector shifted =
            user_channel(scene, 0, (x.array() + delta).matrix(), cfg);
        CHECK(std::abs(std::abs(shifted.dot(h)) - h.squaredNorm()) <
              1e-9 * h.squaredNorm());
    }
}

TEST_CASE("scene sampling is seed deterministic")
{
    SystemConfig cfg;
    const Scene a = sample_scene(cfg, 99);
    const Scene b = sample_scene(cfg, 99);
    REQUIRE(a.n_users() == b.n_users());
    for (int k = 0; k < a.n_users(); ++k)
        for (int l = 0; l < cfg.n_paths; ++l) {
            CHECK(a.user_paths[k][l].angle == b.user_paths[k][l].angle);
            CHECK(a.user_paths[k][l].gain == b.user_paths[k][l].gain);
        }
    CHECK(a.target_angle == b.target_angle);
    CHECK(a.target_coeff == b.target_coeff);
    for (int c = 0; c < a.n_clutters(); ++c) {
        CHECK(a.clutter[c].angle == b.clutter[c].angle);
        CHECK(a.clutter[c].coeff == b.clutter[c].coeff);
    }

    const Scene other = sample_scene(cfg, 100);
    CHECK(a.user_paths[0][0].gain != other.user_paths[0][0].gain);
}

TEST_CASE("sampled gains have unit second moment")
{
    SystemConfig cfg;
    cfg.n_users = 100;
    cfg.n_paths = 100; // 10^4 gains per scene
    double acc = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Scene scene = sample_scene(cfg, seed);
        for (const auto& paths : scene.user_paths)
            for (const auto& p : paths) {
                acc += std::norm(p.gain);
                ++count;
            }
    }
    CHECK(count == 100000);
    CHECK(acc / count == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("target angle policy")
{
    SystemConfig cfg;
    cfg.target_angle = pi / 3.0;
    const Scene fixed = sample_scene(cfg, 5);
    CHECK(fixed.target_angle == pi / 3.0);

    cfg.target_angle_random = true;
    const Scene drawn_a = sample_scene(cfg, 5);
    const Scene drawn_b = sample_scene(cfg, 6);
    CHECK(drawn_a.target_angle >= 0.0);
    CHECK(drawn_a.target_angle <= pi);
    CHECK(drawn_a.target_angle != drawn_b.target_angle);
}

TEST_CASE("config validation rejects broken setups")
{
    SystemConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    SystemConfig bad = cfg;
    bad.weight_comm = 0.7; // weights no longer sum to one
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.region_max = bad.region_min + (cfg.n_antennas - 2) * cfg.min_spacing;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.tx_power = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.wavelength = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("ULA start is feasible for the default setup")
{
    SystemConfig cfg;
    const AntennaPositions x = ula_positions(cfg);
    CHECK(positions_feasible(x, cfg));
    CHECK(x[0] == cfg.region_min);
    CHECK(x[1] - x[0] == doctest::Approx(cfg.wavelength / 2.0));
}

TEST_CASE("scene JSON round trip")
{
    SystemConfig cfg;
    const Scene scene = sample_scene(cfg, 31);
    const Scene back = scene_from_json(scene_to_json(scene));
    REQUIRE(back.n_users() == scene.n_users());
    REQUIRE(back.n_clutters() == scene.n_clutters());
    for (int k = 0; k < scene.n_users(); ++k)
        for (int l = 0; l < cfg.n_paths; ++l) {
            CHECK(back.user_paths[k][l].angle ==
                  doctest::Approx(scene.user_paths[k][l].angle).epsilon(1e-12));
            CHECK(std::abs(back.user_paths[k][l].gain -
                           scene.user_paths[k][l].gain) < 1e-12);
        }
    CHECK(back.target_angle ==
          doctest::Approx(scene.target_angle).epsilon(1e-12));
    CHECK(std::abs(back.target_coeff - scene.target_coeff) < 1e-12);
    for (int c = 0; c < scene.n_clutters(); ++c)
        CHECK(back.clutter[c].angle ==
              doctest::Approx(scene.clutter[c].angle).epsilon(1e-12));
}
