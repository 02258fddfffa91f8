#pragma once

#include <array>
#include <cstdint>

#include "acsplit/grid.hpp"
#include "acsplit/potential.hpp"

namespace acsplit {

struct CircleSpec {
    double x;
    double y;
    double r;
};

// Centers and radii of the seven-circle benchmark.
const std::array<CircleSpec, 7>& seven_circle_layout();

// Smoothed bump: 2 exp(-eps^2 / s^2) for s < 0, else 0.
double circle_bump(double s, double eps);

// u0 = -1 + sum_i bump(|x - c_i| - r_i).
Field seven_circles(const Grid& grid, double eps);

// 0.5 * (chi((x - pi)^2 + (y - pi)^2 <= 1.2) - 0.5), i.e. +/-0.25.
Field disk_indicator(const Grid& grid);

// u_l = phi_l / (phi_1 + phi_2 + phi_3) with phi_l i.i.d. uniform on (0, 1).
TernaryState random_ternary(const Grid& grid, std::uint64_t seed);

// Smooth random field built from modes with index below max_mode in each
// direction, rescaled so its max norm equals amplitude.
Field random_bandlimited(const Grid& grid, std::uint64_t seed, int max_mode, double amplitude);

}  // namespace acsplit
