// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026-present mabeam contributors

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "mabeam/types.hpp"

// Sampling helpers on top of mt19937_64. The standard <random>
// distributions have implementation-defined output sequences; these keep
// seeded runs reproducible across compilers.

namespace mabeam::rng {

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi)
{
    return lo + (hi - lo) * uniform_unit(gen);
}

/// Standard normal pair (Box-Muller).
inline std::pair<double, double> gaussian_pair(std::mt19937_64& gen)
{
    double u1 = 1.0 - uniform_unit(gen); // (0, 1], keeps log finite
    double u2 = uniform_unit(gen);
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * pi * u2), r * std::sin(2.0 * pi * u2)};
}

/// Circularly-symmetric complex Gaussian CN(0, 1): E|z|^2 = 1.
inline cplx gaussian_cn01(std::mt19937_64& gen)
{
    auto [a, b] = gaussian_pair(gen);
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    return {a * inv_sqrt2, b * inv_sqrt2};
}

} // namespace mabeam::rng
