#pragma once

#include "acsplit/grid.hpp"
#include "acsplit/potential.hpp"

// Reference solvers for tests and acceptance runs. Nothing here goes through
// the FFT-based transforms used by the production path.
namespace acsplit::oracle {

enum class SpatialOperator {
    // Second-order centered differences; Neumann via ghost reflection
    // u_{-1} = u_0, periodic via wraparound.
    FiniteDifference,
    // Dense cosine (Neumann) or Fourier (periodic) differentiation matrices
    // assembled from explicit trigonometric sums.
    Collocation,
};

struct OracleConfig {
    Grid grid{32, 32, Boundary::Neumann};
    double dt = 1e-4;
    SpatialOperator space = SpatialOperator::FiniteDifference;
    // Drop the reaction term and integrate the heat equation only.
    bool linear_only = false;
};

inline constexpr int kMaxOracleGrid = 64;
inline constexpr int kMaxDenseGrid = 8;

// Largest dt accepted for the given operator: 1 / (eps^2 rho(Delta_h)), which
// is h^2 / (8 eps^2) for the square finite-difference grid.
double stability_bound(const OracleConfig& cfg, double eps);

// Method of lines for u' = eps^2 Delta_h u - f(u) with classical RK4 from 0 to T.
// Throws ContractError on oversized grids and on dt above stability_bound.
Field mol_reference(const Field& u0, const PotentialSpec& potential, double eps, double T,
                    const OracleConfig& cfg);

struct DenseExpmReport {
    // max |exp(t eps^2 L_fd) e_j - linear_propagate(e_j)| over all point fields e_j
    double max_deviation = 0.0;
    // Same comparison on the constant field.
    double constant_deviation = 0.0;
};

// Matrix exponential of the finite-difference Laplacian via symmetric
// eigendecomposition, compared against the spectral propagator.
DenseExpmReport dense_expm_check(const Grid& grid, double eps, double t);

// Classical RK4 for the scalar reaction ODE u' = -f(u). Steps are shrunk so
// an integer number of them lands on T.
double ode_rk4(double v0, const PotentialSpec& potential, double T, double dt);

}  // namespace acsplit::oracle
