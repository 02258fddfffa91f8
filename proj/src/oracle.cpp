#include "acsplit/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "acsplit/errors.hpp"
#include "acsplit/propagators.hpp"

namespace acsplit::oracle {

namespace {

using Matrix = Eigen::MatrixXd;

// Reaction -f(u) for a scalar potential.
double reaction(double u, const PotentialSpec& p) {
    if (std::holds_alternative<Polynomial>(p)) return -potential::poly_f(u);
    if (const auto* log = std::get_if<Logarithmic>(&p)) return -potential::log_f(u, *log);
    throw ContractError("oracle: the ternary potential is not supported");
}

int steps_for(double T, double dt) {
    return std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9)));
}

// Second-derivative matrix on n collocation nodes of [0, 2 pi].
Matrix second_derivative_1d(int n, Boundary b, SpatialOperator space) {
    const double h = kTwoPi / n;
    Matrix d = Matrix::Zero(n, n);
    if (space == SpatialOperator::FiniteDifference) {
        for (int i = 0; i < n; ++i) {
            d(i, i) = -2.0 / (h * h);
            const int left = i - 1;
            const int right = i + 1;
            if (b == Boundary::Periodic) {
                d(i, (left + n) % n) += 1.0 / (h * h);
                d(i, right % n) += 1.0 / (h * h);
            } else {
                // Ghost reflection folds the missing neighbour back onto the node.
                d(i, left < 0 ? 0 : left) += 1.0 / (h * h);
                d(i, right >= n ? n - 1 : right) += 1.0 / (h * h);
            }
        }
        return d;
    }

    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = (b == Boundary::Neumann ? i + 0.5 : i) * h;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            if (b == Boundary::Neumann) {
                for (int k = 1; k < n; ++k) {
                    const double w = 0.5 * k;
                    s += -w * w * (2.0 / n) * std::cos(w * x[i]) * std::cos(w * x[j]);
                }
            } else {
                for (int k = -n / 2; k < n / 2; ++k) {
                    s += -static_cast<double>(k) * k / n * std::cos(k * (x[i] - x[j]));
                }
            }
            d(i, j) = s;
        }
    }
    return d;
}

double spectral_radius_bound(const OracleConfig& cfg) {
    const Grid& g = cfg.grid;
    if (cfg.space == SpatialOperator::FiniteDifference) {
        return 4.0 / (g.hx() * g.hx()) + 4.0 / (g.hy() * g.hy());
    }
    if (g.boundary() == Boundary::Neumann) {
        const double kx = 0.5 * (g.nx() - 1);
        const double ky = 0.5 * (g.ny() - 1);
        return kx * kx + ky * ky;
    }
    const double kx = 0.5 * g.nx();
    const double ky = 0.5 * g.ny();
    return kx * kx + ky * ky;
}

// Applies Dxx + Dyy to a row-major (y outer) nodal array.
class Laplacian2d {
public:
    Laplacian2d(const Grid& g, SpatialOperator space)
        : nx_(g.nx()), ny_(g.ny()),
          dxx_(second_derivative_1d(g.nx(), g.boundary(), space)),
          dyy_(second_derivative_1d(g.ny(), g.boundary(), space)) {}

    // Rows of the map are y, columns x, matching the Field layout.
    Matrix apply(const Matrix& u) const { return u * dxx_.transpose() + dyy_ * u; }

    Matrix dense() const {
        const int n = nx_ * ny_;
        Matrix l = Matrix::Zero(n, n);
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
                const int row = j * nx_ + i;
                for (int ii = 0; ii < nx_; ++ii) l(row, j * nx_ + ii) += dxx_(i, ii);
                for (int jj = 0; jj < ny_; ++jj) l(row, jj * nx_ + i) += dyy_(j, jj);
            }
        }
        return l;
    }

private:
    int nx_;
    int ny_;
    Matrix dxx_;
    Matrix dyy_;
};

}  // namespace

double stability_bound(const OracleConfig& cfg, double eps) {
    return 1.0 / (eps * eps * spectral_radius_bound(cfg));
}

Field mol_reference(const Field& u0, const PotentialSpec& potential, double eps, double T,
                    const OracleConfig& cfg) {
    const Grid& g = cfg.grid;
    if (!same_nodes(g, u0.grid())) throw ContractError("mol_reference: grid mismatch");
    if (g.nx() > kMaxOracleGrid || g.ny() > kMaxOracleGrid) {
        throw ContractError("mol_reference: oracle grids are limited to 64x64");
    }
    if (!(eps > 0.0) || !(T >= 0.0) || !(cfg.dt > 0.0)) {
        throw ContractError("mol_reference: needs eps > 0, T >= 0, dt > 0");
    }
    const double bound = stability_bound(cfg, eps);
    if (cfg.dt > bound) {
        throw ContractError("mol_reference: dt = " + std::to_string(cfg.dt) +
                            " exceeds the stability bound " + std::to_string(bound));
    }
    if (!cfg.linear_only) (void)reaction(0.0, potential);
    if (T == 0.0) return u0;

    const Laplacian2d lap(g, cfg.space);
    const double eps2 = eps * eps;
    auto rhs = [&](const Matrix& u) {
        Matrix r = eps2 * lap.apply(u);
        if (!cfg.linear_only) {
            for (Eigen::Index k = 0; k < u.size(); ++k) r(k) += reaction(u(k), potential);
        }
        return r;
    };

    // Row-major storage so that (j, i) maps to index j * nx + i.
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Matrix u = Eigen::Map<const RowMajor>(u0.values().data(), g.ny(), g.nx());

    const int n = steps_for(T, cfg.dt);
    const double dt = T / n;
    for (int s = 0; s < n; ++s) {
        const Matrix k1 = rhs(u);
        const Matrix k2 = rhs(u + 0.5 * dt * k1);
        const Matrix k3 = rhs(u + 0.5 * dt * k2);
        const Matrix k4 = rhs(u + dt * k3);
        u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    Field out(u0.grid());
    Eigen::Map<RowMajor>(out.values().data(), g.ny(), g.nx()) = u;
    return out;
}

DenseExpmReport dense_expm_check(const Grid& grid, double eps, double t) {
    if (grid.nx() > kMaxDenseGrid || grid.ny() > kMaxDenseGrid) {
        throw ContractError("dense_expm_check: grids are limited to 8x8");
    }
    const Matrix l = Laplacian2d(grid, SpatialOperator::FiniteDifference).dense();
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(l);
    const Eigen::VectorXd decay = (eps * eps * t * eig.eigenvalues().array()).exp();
    const Matrix expm = eig.eigenvectors() * decay.asDiagonal() * eig.eigenvectors().transpose();

    DenseExpmReport report;
    const auto n = static_cast<Eigen::Index>(grid.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        Field e(grid);
        e[static_cast<std::size_t>(j)] = 1.0;
        const Field p = linear_propagate(e, t, eps * eps);
        for (Eigen::Index i = 0; i < n; ++i) {
            report.max_deviation = std::max(
                report.max_deviation, std::abs(expm(i, j) - p[static_cast<std::size_t>(i)]));
        }
    }

    const Field ones(grid, 1.0);
    const Field p = linear_propagate(ones, t, eps * eps);
    const Eigen::VectorXd dense_ones = expm * Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        report.constant_deviation =
            std::max({report.constant_deviation, std::abs(dense_ones(i) - 1.0),
                      std::abs(p[static_cast<std::size_t>(i)] - 1.0)});
    }
    return report;
}

double ode_rk4(double v0, const PotentialSpec& potential, double T, double dt) {
    if (!(T >= 0.0) || !(dt > 0.0)) throw ContractError("ode_rk4: needs T >= 0 and dt > 0");
    if (T == 0.0) return v0;
    const int n = steps_for(T, dt);
    const double h = T / n;
    double u = v0;
    for (int s = 0; s < n; ++s) {
        const double k1 = reaction(u, potential);
        const double k2 = reaction(u + 0.5 * h * k1, potential);
        const double k3 = reaction(u + 0.5 * h * k2, potential);
        const double k4 = reaction(u + h * k3, potential);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

}  // namespace acsplit::oracle
