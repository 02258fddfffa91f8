#pragma once

#include <array>

#include "acsplit/grid.hpp"
#include "acsplit/potential.hpp"

namespace acsplit {

/// Two-stage SDIRK used for the nonlinear sub-flows without a closed form.
///
///   a   | a      0
///   1-a | 1-2a   a
///   ----+---------
///       | 1/2  1/2
///
/// with a = 1 + sqrt(2)/2. Second order, L-stable.
struct SdirkTableau {
    static constexpr double a = 1.0 + 0.70710678118654752440084436210485;
    static constexpr std::array<std::array<double, 2>, 2> A{{{a, 0.0}, {1.0 - 2.0 * a, a}}};
    static constexpr std::array<double, 2> b{0.5, 0.5};
    static constexpr std::array<double, 2> c{a, 1.0 - a};
};

struct NewtonOptions {
    double tolerance = 1e-12;
    int max_iterations = 50;
    // Iterates are confined to (-1 + margin, 1 - margin) for the logarithmic flow.
    double margin = 1e-14;
    // Outer fixed-point loop on the nonlocal mass multipliers (ternary only).
    double outer_tolerance = 1e-12;
    int max_outer_iterations = 25;
};

// exp(t eps2 Delta) v. Throws ContractError for t < 0.
Field linear_propagate(const Field& v, double t, double eps2);
TernaryState linear_propagate(const TernaryState& s, double t, double eps2);

// S_L(tau/2) v - v - (tau/2) eps2 Delta v, evaluated per mode as phi(z) = e^z - 1 - z
// with z = eps2 mu tau / 2, so no cancellation for small z.
Field q_defect(const Field& v, double tau, double eps2);

// Exact flow of u' = u - u^3 over tau. Requires |v| <= 1 + 1e-12 everywhere.
Field nonlinear_exact(const Field& v, double tau);
// Scalar kernel of nonlinear_exact.
double nonlinear_exact_value(double v, double tau);

// One SDIRK step of u' = theta_c u - theta atanh(u), pointwise. Requires |v| < 1.
Field nonlinear_log_rk(const Field& v, double tau, const Logarithmic& params,
                       const NewtonOptions& opts = {});

// One SDIRK step of u_l' = -(f(u_l) - beta_l + Lambda) with beta_l the spatial
// mean of f(u_l) and Lambda = -(1/3) sum_l (f(u_l) - beta_l), both recomputed
// from the stage values.
TernaryState nonlinear_ternary_rk(const TernaryState& s, double tau,
                                  const NewtonOptions& opts = {});

}  // namespace acsplit
