#include "acsplit/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "acsplit/errors.hpp"
#include "acsplit/spectral.hpp"

namespace acsplit {

namespace {

void require_finite(const Field& v, const char* where) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k])) {
            throw PreconditionError(std::string(where) + ": non-finite input value", k);
        }
    }
}

// e^z - 1 - z without cancellation near z = 0.
double phi2_numerator(double z) {
    if (std::abs(z) < 1e-2) {
        // Taylor series through z^9; truncation error below 1e-20 * z^2.
        double term = 0.5 * z * z;
        double sum = term;
        for (int n = 3; n <= 9; ++n) {
            term *= z / n;
            sum += term;
        }
        return sum;
    }
    return std::expm1(z) - z;
}

// Mean over the nodes in index order; the fixed order keeps reductions reproducible.
double node_mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Solves u - step * h(u) = rhs on (-1, 1) for the logarithmic reaction h.
// Newton with a bisection fallback on the sign-change bracket.
double solve_log_stage(double rhs, double guess, double step, const Logarithmic& p,
                       const NewtonOptions& opts, std::size_t node) {
    const double lin = 1.0 - step * p.theta_c;
    auto residual = [&](double u) { return lin * u + step * p.theta * std::atanh(u) - rhs; };
    auto slope = [&](double u) { return lin + step * p.theta / (1.0 - u * u); };

    double lo = -1.0 + opts.margin;
    double hi = 1.0 - opts.margin;
    if (!(residual(lo) < 0.0 && residual(hi) > 0.0)) {
        throw SolverError("logarithmic stage equation has no root bracket inside (-1, 1)",
                          node, std::abs(residual(std::clamp(guess, lo, hi))));
    }

    double u = std::clamp(guess, lo, hi);
    double r = residual(u);
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (std::abs(r) <= opts.tolerance) return u;
        if (r < 0.0) {
            lo = u;
        } else {
            hi = u;
        }
        const double d = slope(u);
        double next = u - r / d;
        if (!(d > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == u) return u;
        u = next;
        r = residual(u);
    }
    if (std::abs(r) <= opts.tolerance) return u;
    throw SolverError("Newton iteration for the logarithmic stage did not converge", node,
                      std::abs(r));
}

// Solves the 3x3 system m x = r by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> r) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int i = c + 1; i < 3; ++i) {
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
        }
        std::swap(m[c], m[piv]);
        std::swap(r[c], r[piv]);
        for (int i = c + 1; i < 3; ++i) {
            const double f = m[i][c] / m[c][c];
            for (int j = c; j < 3; ++j) m[i][j] -= f * m[c][j];
            r[i] -= f * r[c];
        }
    }
    std::array<double, 3> x{};
    for (int i = 2; i >= 0; --i) {
        double s = r[i];
        for (int j = i + 1; j < 3; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

// Ternary reaction -(P_l - mean_m P_m) with P_l = f(u_l) - beta_l.
std::array<double, 3> ternary_rhs(const std::array<double, 3>& u,
                                  const std::array<double, 3>& beta) {
    std::array<double, 3> p{};
    for (int l = 0; l < 3; ++l) p[l] = potential::ternary_f(u[l]) - beta[l];
    const double pbar = (p[0] + p[1] + p[2]) / 3.0;
    return {-(p[0] - pbar), -(p[1] - pbar), -(p[2] - pbar)};
}

using Stage = std::array<std::vector<double>, 3>;

std::array<double, 3> stage_beta(const Stage& u) {
    std::array<double, 3> beta{};
    std::vector<double> fv(u[0].size());
    for (int l = 0; l < 3; ++l) {
        for (std::size_t k = 0; k < fv.size(); ++k) fv[k] = potential::ternary_f(u[l][k]);
        beta[l] = node_mean(fv);
    }
    return beta;
}

// Solves U_l - step * g_l(U) = rhs_l for one implicit stage; beta is iterated
// to a fixed point around pointwise Newton solves with beta frozen.
Stage solve_ternary_stage(const Stage& rhs, double step, const NewtonOptions& opts) {
    const std::size_t n = rhs[0].size();
    Stage u = rhs;
    std::array<double, 3> beta = stage_beta(u);

    for (int outer = 0; outer < opts.max_outer_iterations; ++outer) {
        for (std::size_t k = 0; k < n; ++k) {
            std::array<double, 3> x{u[0][k], u[1][k], u[2][k]};
            const std::array<double, 3> r{rhs[0][k], rhs[1][k], rhs[2][k]};
            bool converged = false;
            double res_norm = 0.0;
            for (int it = 0; it <= opts.max_iterations; ++it) {
                const auto g = ternary_rhs(x, beta);
                std::array<double, 3> res{};
                res_norm = 0.0;
                for (int l = 0; l < 3; ++l) {
                    res[l] = x[l] - step * g[l] - r[l];
                    res_norm = std::max(res_norm, std::abs(res[l]));
                }
                if (res_norm <= opts.tolerance) {
                    converged = true;
                    break;
                }
                if (it == opts.max_iterations) break;
                // J = I + step (I - 11^T/3) diag(f'(x))
                std::array<std::array<double, 3>, 3> jac{};
                for (int i = 0; i < 3; ++i) {
                    for (int j = 0; j < 3; ++j) {
                        const double proj = (i == j ? 1.0 : 0.0) - 1.0 / 3.0;
                        jac[i][j] = (i == j ? 1.0 : 0.0) +
                                    step * proj * potential::ternary_df(x[j]);
                    }
                }
                const auto dx = solve3(jac, res);
                for (int l = 0; l < 3; ++l) x[l] -= dx[l];
                if (!std::isfinite(x[0] + x[1] + x[2])) break;
            }
            if (!converged) {
                throw SolverError("Newton iteration for the ternary stage did not converge", k,
                                  res_norm);
            }
            for (int l = 0; l < 3; ++l) u[l][k] = x[l];
        }

        const auto next = stage_beta(u);
        double change = 0.0;
        for (int l = 0; l < 3; ++l) change = std::max(change, std::abs(next[l] - beta[l]));
        beta = next;
        if (change <= opts.outer_tolerance) return u;
    }
    throw SolverError("fixed-point iteration on the ternary mass multipliers did not converge");
}

// g(U) at every node with beta recomputed from U itself, so each component of
// the result has zero mean and the three components sum to zero.
Stage ternary_stage_rhs(const Stage& u) {
    const auto beta = stage_beta(u);
    Stage g{std::vector<double>(u[0].size()), std::vector<double>(u[0].size()),
            std::vector<double>(u[0].size())};
    for (std::size_t k = 0; k < u[0].size(); ++k) {
        const auto v = ternary_rhs({u[0][k], u[1][k], u[2][k]}, beta);
        for (int l = 0; l < 3; ++l) g[l][k] = v[l];
    }
    return g;
}

}  // namespace

Field linear_propagate(const Field& v, double t, double eps2) {
    if (!(t >= 0.0)) throw ContractError("linear_propagate: negative time " + std::to_string(t));
    if (!(eps2 > 0.0)) throw ContractError("linear_propagate: eps^2 must be positive");
    require_finite(v, "linear_propagate");
    if (t == 0.0) return v;
    std::vector<double> factor = laplacian_symbol(v.grid()).mu;
    for (double& m : factor) m = std::exp(eps2 * m * t);
    return apply_multiplier(v, factor);
}

TernaryState linear_propagate(const TernaryState& s, double t, double eps2) {
    return TernaryState(linear_propagate(s.u[0], t, eps2), linear_propagate(s.u[1], t, eps2),
                        linear_propagate(s.u[2], t, eps2));
}

Field q_defect(const Field& v, double tau, double eps2) {
    if (!(tau > 0.0)) throw ContractError("q_defect: tau must be positive");
    if (!(eps2 > 0.0)) throw ContractError("q_defect: eps^2 must be positive");
    require_finite(v, "q_defect");
    std::vector<double> factor = laplacian_symbol(v.grid()).mu;
    for (double& m : factor) m = phi2_numerator(0.5 * tau * eps2 * m);
    return apply_multiplier(v, factor);
}

double nonlinear_exact_value(double v, double tau) {
    // e^tau v / sqrt(1 + (e^{2tau} - 1) v^2), rewritten with e^{-2tau} so large
    // tau does not overflow; 1 - v^2 carries the sign for |v| slightly above 1.
    return v / std::sqrt(1.0 + std::expm1(-2.0 * tau) * (1.0 - v * v));
}

Field nonlinear_exact(const Field& v, double tau) {
    if (!(tau > 0.0)) throw ContractError("nonlinear_exact: tau must be positive");
    constexpr double kSlack = 1e-12;
    Field out(v.grid());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double x = v[k];
        if (!std::isfinite(x)) throw PreconditionError("nonlinear_exact: non-finite value", k);
        if (std::abs(x) > 1.0 + kSlack) {
            throw PreconditionError(
                "nonlinear_exact: |v| = " + std::to_string(std::abs(x)) + " exceeds 1", k);
        }
        // Inputs inside the slack are roundoff of the equilibria +-1. Snapping them
        // keeps the output within [-1, 1]; the flow itself would only pull them back
        // at rate 2 tau, so tiny steps would let the excess accumulate.
        out[k] = std::abs(x) > 1.0 ? std::copysign(1.0, x) : nonlinear_exact_value(x, tau);
    }
    return out;
}

Field nonlinear_log_rk(const Field& v, double tau, const Logarithmic& params,
                       const NewtonOptions& opts) {
    if (!(tau > 0.0)) throw ContractError("nonlinear_log_rk: tau must be positive");
    validate(PotentialSpec{params});
    using T = SdirkTableau;
    const double diag = tau * T::a;
    auto h = [&](double u) { return -potential::log_f(u, params); };

    Field out(v.grid());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double x = v[k];
        if (!(std::abs(x) < 1.0)) {
            throw PreconditionError("nonlinear_log_rk: |v| must be < 1", k);
        }
        const double u1 = solve_log_stage(x, x, diag, params, opts, k);
        const double h1 = h(u1);
        const double u2 = solve_log_stage(x + tau * T::A[1][0] * h1, u1, diag, params, opts, k);
        const double h2 = h(u2);
        const double next = x + tau * (T::b[0] * h1 + T::b[1] * h2);
        if (!(std::abs(next) < 1.0)) {
            throw SolverError("nonlinear_log_rk: step left (-1, 1); reduce tau", k,
                              std::abs(next));
        }
        out[k] = next;
    }
    return out;
}

TernaryState nonlinear_ternary_rk(const TernaryState& s, double tau, const NewtonOptions& opts) {
    if (!(tau > 0.0)) throw ContractError("nonlinear_ternary_rk: tau must be positive");
    for (const auto& c : s.u) require_finite(c, "nonlinear_ternary_rk");
    using T = SdirkTableau;
    const double diag = tau * T::a;
    const std::size_t n = s.u[0].size();

    Stage v;
    for (int l = 0; l < 3; ++l) v[l].assign(s.u[l].values().begin(), s.u[l].values().end());

    const Stage u1 = solve_ternary_stage(v, diag, opts);
    const Stage g1 = ternary_stage_rhs(u1);

    Stage rhs2 = v;
    for (int l = 0; l < 3; ++l) {
        for (std::size_t k = 0; k < n; ++k) rhs2[l][k] += tau * T::A[1][0] * g1[l][k];
    }
    const Stage u2 = solve_ternary_stage(rhs2, diag, opts);
    const Stage g2 = ternary_stage_rhs(u2);

    TernaryState out(s.grid());
    for (int l = 0; l < 3; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
            out.u[l][k] = v[l][k] + tau * (T::b[0] * g1[l][k] + T::b[1] * g2[l][k]);
        }
    }
    return out;
}

}  // namespace acsplit
