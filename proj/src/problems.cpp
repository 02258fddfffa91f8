#include "acsplit/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "acsplit/errors.hpp"
#include "acsplit/rng.hpp"

namespace acsplit {

using std::numbers::pi;

const std::array<CircleSpec, 7>& seven_circle_layout() {
    static const std::array<CircleSpec, 7> layout{{
        {pi / 2, pi / 2, pi / 5},
        {pi / 4, 3 * pi / 4, 2 * pi / 15},
        {pi / 2, 5 * pi / 4, 2 * pi / 15},
        {pi, pi / 4, pi / 10},
        {3 * pi / 2, pi / 4, pi / 10},
        {pi, pi, pi / 4},
        {3 * pi / 2, 3 * pi / 2, pi / 4},
    }};
    return layout;
}

double circle_bump(double s, double eps) {
    if (!(s < 0.0)) return 0.0;
    return 2.0 * std::exp(-eps * eps / (s * s));
}

Field seven_circles(const Grid& grid, double eps) {
    if (!(eps > 0.0)) throw ContractError("seven_circles: eps must be positive");
    Field u(grid, -1.0);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            double v = -1.0;
            for (const auto& c : seven_circle_layout()) {
                v += circle_bump(std::hypot(grid.x(i) - c.x, grid.y(j) - c.y) - c.r, eps);
            }
            u.at(i, j) = v;
        }
    }
    return u;
}

Field disk_indicator(const Grid& grid) {
    Field u(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const double dx = grid.x(i) - pi;
            const double dy = grid.y(j) - pi;
            const double chi = (dx * dx + dy * dy <= 1.2) ? 1.0 : 0.0;
            u.at(i, j) = 0.5 * (chi - 0.5);
        }
    }
    return u;
}

TernaryState random_ternary(const Grid& grid, std::uint64_t seed) {
    const SplitMix64 rng(seed);
    TernaryState s(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        // Open-interval draws keep every phi strictly positive.
        const double p1 = rng.uniform_open(3 * k);
        const double p2 = rng.uniform_open(3 * k + 1);
        const double p3 = rng.uniform_open(3 * k + 2);
        const double total = p1 + p2 + p3;
        s.u[0][k] = p1 / total;
        s.u[1][k] = p2 / total;
        s.u[2][k] = p3 / total;
    }
    return s;
}

Field random_bandlimited(const Grid& grid, std::uint64_t seed, int max_mode, double amplitude) {
    if (max_mode < 1 || 2 * max_mode >= std::min(grid.nx(), grid.ny())) {
        throw ContractError("random_bandlimited: max_mode must lie in [1, min(nx, ny)/2)");
    }
    if (!(amplitude >= 0.0)) throw ContractError("random_bandlimited: negative amplitude");
    Field u(grid);
    if (amplitude == 0.0) return u;

    SplitMix64 rng(seed, 1);
    auto draw = [&](int k, int l) {
        return (2.0 * rng.next_uniform() - 1.0) / (1.0 + k * k + l * l);
    };

    if (grid.boundary() == Boundary::Neumann) {
        for (int l = 0; l < max_mode; ++l) {
            for (int k = 0; k < max_mode; ++k) {
                const double a = draw(k, l);
                for (int j = 0; j < grid.ny(); ++j) {
                    const double cy = std::cos(0.5 * l * grid.y(j));
                    for (int i = 0; i < grid.nx(); ++i) {
                        u.at(i, j) += a * std::cos(0.5 * k * grid.x(i)) * cy;
                    }
                }
            }
        }
    } else {
        for (int l = -max_mode + 1; l < max_mode; ++l) {
            for (int k = 0; k < max_mode; ++k) {
                if (k == 0 && l < 0) continue;
                const double a = draw(k, l);
                const double b = (k == 0 && l == 0) ? 0.0 : draw(k, l);
                for (int j = 0; j < grid.ny(); ++j) {
                    for (int i = 0; i < grid.nx(); ++i) {
                        const double phase = k * grid.x(i) + l * grid.y(j);
                        u.at(i, j) += a * std::cos(phase) + b * std::sin(phase);
                    }
                }
            }
        }
    }

    const double peak = u.max_abs();
    if (peak > 0.0) u *= amplitude / peak;
    return u;
}

}  // namespace acsplit
