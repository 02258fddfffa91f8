#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acsplit/errors.hpp"
#include "acsplit/functionals.hpp"
#include "acsplit/oracle.hpp"
#include "acsplit/problems.hpp"
#include "acsplit/propagators.hpp"
#include "acsplit/spectral.hpp"
#include "test_support.hpp"

using namespace acsplit;
using acsplit::testing::random_field;
using acsplit::testing::sample;

namespace {

const Boundary kBoundaries[] = {Boundary::Neumann, Boundary::Periodic};
const LaplacianKind kKinds[] = {LaplacianKind::CentralDifference, LaplacianKind::Spectral};

double l2(const Field& f) { return norm(f, NormKind::l2()); }

// Root of theta_c u = theta atanh(u) in (0, 1) by bisection.
double log_equilibrium(const Logarithmic& p) {
    double lo = 0.5;
    double hi = 1.0 - 1e-15;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (p.theta_c * mid - p.theta * std::atanh(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("SDIRK tableau") {
    using T = SdirkTableau;
    CHECK(T::a == doctest::Approx(1.0 + std::sqrt(2.0) / 2.0).epsilon(1e-16));
    CHECK(T::A[0][1] == 0.0);
    CHECK(T::A[0][0] == T::A[1][1]);
    CHECK(T::A[1][0] == doctest::Approx(1.0 - 2.0 * T::a));
    CHECK(T::b[0] + T::b[1] == 1.0);
    // Row sums equal the abscissae.
    CHECK(T::A[0][0] + T::A[0][1] == doctest::Approx(T::c[0]));
    CHECK(T::A[1][0] + T::A[1][1] == doctest::Approx(T::c[1]));
    // Second-order condition sum b_i c_i = 1/2.
    CHECK(T::b[0] * T::c[0] + T::b[1] * T::c[1] == doctest::Approx(0.5));
}

TEST_CASE("linear_propagate: identity, constants, errors") {
    for (Boundary b : kBoundaries) {
        const Grid g(8, 8, b);
        const Field v = random_field(g, 3);
        CHECK(acsplit::testing::rel_diff(linear_propagate(v, 0.0, 0.01), v) == 0.0);
        const Field c = linear_propagate(Field(g, -0.4), 7.0, 0.01);
        for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == doctest::Approx(-0.4).epsilon(1e-14));
        CHECK_THROWS_AS(linear_propagate(v, -1e-3, 0.01), ContractError);
    }
}

TEST_CASE("linear_propagate decays cos(x) by its eigenvalue") {
    const double eps2 = 0.01;
    SUBCASE("spectral symbol: exp(-eps^2 t)") {
        const Grid g(16, 16, Boundary::Neumann, LaplacianKind::Spectral);
        const Field u = sample(g, [](double x, double) { return std::cos(x); });
        const Field p = linear_propagate(u, 1.0, eps2);
        const Field expect = std::exp(-0.01) * u;
        CHECK(std::exp(-0.01) == doctest::Approx(0.990050).epsilon(1e-6));
        for (std::size_t k = 0; k < p.size(); ++k) CHECK(std::abs(p[k] - expect[k]) < 1e-14);
    }
    SUBCASE("central symbol: exp(-eps^2 t (4/h^2) sin^2(h/2))") {
        const Grid g(16, 16, Boundary::Neumann);
        const double h = g.hx();
        const double mu = -4.0 / (h * h) * std::pow(std::sin(0.5 * h), 2);
        const Field u = sample(g, [](double x, double) { return std::cos(x); });
        const Field p = linear_propagate(u, 1.0, eps2);
        for (std::size_t k = 0; k < p.size(); ++k) {
            CHECK(std::abs(p[k] - std::exp(eps2 * mu) * u[k]) < 1e-14);
        }
        // Within eps^2 t h^2 / 12 of the continuous decay.
        CHECK(std::abs(std::exp(eps2 * mu) - std::exp(-0.01)) < eps2 * h * h / 12 * 1.01);
    }
}

TEST_CASE("linear_propagate matches a dense matrix exponential on 8x8") {
    for (Boundary b : kBoundaries) {
        const Grid g(8, 8, b);
        const auto rep = oracle::dense_expm_check(g, 0.1, 0.1);
        // Same five-point operator: agreement to roundoff, well inside 0.1.
        CHECK(rep.max_deviation < 1e-12);
        CHECK(rep.constant_deviation < 1e-13);
        const auto spectral = oracle::dense_expm_check(g.with_laplacian(LaplacianKind::Spectral),
                                                       0.1, 0.1);
        CHECK(spectral.max_deviation < 0.1);
    }
}

TEST_CASE("linear_propagate contraction and semigroup properties") {
    for (Boundary b : kBoundaries) {
        for (LaplacianKind kind : kKinds) {
            const Grid g(32, 32, b, kind);
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const Field v = random_bandlimited(g, seed, 6, 1.0);
                for (double t : {0.01, 0.5, 3.0}) {
                    const Field p = linear_propagate(v, t, 0.01);
                    for (int k = 0; k <= 2; ++k) {
                        CHECK(norm(p, NormKind::hk(k)) <= norm(v, NormKind::hk(k)) * (1 + 1e-12));
                    }
                    const Field twice = linear_propagate(linear_propagate(v, 0.4 * t, 0.01), 0.6 * t, 0.01);
                    CHECK(acsplit::testing::rel_diff(twice, p) < 1e-12);
                }
            }
            // Max-norm contraction holds for the central-difference propagator,
            // including on rough data.
            if (kind == LaplacianKind::CentralDifference) {
                for (std::uint64_t seed = 0; seed < 20; ++seed) {
                    const Field v = random_field(g, seed);
                    for (double t : {1e-4, 0.05, 1.0, 100.0}) {
                        CHECK(linear_propagate(v, t, 0.01).max_abs() <= v.max_abs() + 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("linear_propagate on a ternary state keeps the hyperplane") {
    const Grid g(16, 16, Boundary::Periodic);
    const TernaryState s = random_ternary(g, 4);
    const TernaryState p = linear_propagate(s, 0.3, 0.0025);
    CHECK(p.hyperplane_violation() < 1e-14);
    for (int l = 0; l < 3; ++l) CHECK(mass(p.u[l]) == doctest::Approx(mass(s.u[l])).epsilon(1e-13));
}

TEST_CASE("q_defect") {
    const Grid gs(16, 16, Boundary::Neumann, LaplacianKind::Spectral);
    CHECK(q_defect(Field(gs, 0.3), 0.1, 0.01).max_abs() < 1e-16);

    // cos(x), eps = 0.1, tau = 0.1: phi(z) cos(x) with z = -eps^2 tau / 2.
    const Field u = sample(gs, [](double x, double) { return std::cos(x); });
    const Field q = q_defect(u, 0.1, 0.01);
    const double z = -0.01 * 0.1 / 2;
    const double amp = std::exp(z) - 1 - z;  // no cancellation trouble at this z
    CHECK(amp == doctest::Approx(1.2498e-7).epsilon(1e-4));
    for (std::size_t k = 0; k < q.size(); ++k) {
        CHECK(q[k] == doctest::Approx(amp * u[k]).epsilon(1e-9).scale(1e-7));
    }

    // Small z: the Taylor branch against a long-double reference.
    const Field q_small = q_defect(u, 1e-6, 0.01);
    const long double zs = -0.01L * 1e-6L / 2;
    const long double ref = zs * zs / 2 + zs * zs * zs / 6;
    for (std::size_t k = 0; k < q.size(); ++k) {
        CHECK(q_small[k] == doctest::Approx(static_cast<double>(ref) * u[k]).epsilon(1e-10).scale(1e-18));
    }
}

TEST_CASE("q_defect bound on 100 seeded band-limited fields") {
    for (LaplacianKind kind : kKinds) {
        const Grid g(32, 32, Boundary::Neumann, kind);
        const auto mu = laplacian_symbol(g).mu;
        const double eps2 = 0.01;
        std::vector<double> l2sym(mu.size());
        for (std::size_t m = 0; m < mu.size(); ++m) l2sym[m] = (eps2 * mu[m]) * (eps2 * mu[m]);
        int violations = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Field v = random_bandlimited(g, 500 + seed, 8, 1.0);
            const double rhs_norm = l2(apply_multiplier(v, l2sym));
            for (double tau : {1.0, 0.1, 0.01}) {
                if (!(l2(q_defect(v, tau, eps2)) <= tau * tau / 8 * rhs_norm * (1 + 1e-10))) {
                    ++violations;
                }
            }
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("nonlinear_exact examples") {
    const Grid g(8, 8, Boundary::Neumann);
    CHECK(nonlinear_exact(Field(g, 0.0), 0.3).max_abs() == 0.0);
    const Field one = nonlinear_exact(Field(g, 1.0), 0.3);
    const Field minus = nonlinear_exact(Field(g, -1.0), 5.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(one[k] == 1.0);
        CHECK(minus[k] == -1.0);
    }
    const double closed = nonlinear_exact_value(0.5, std::log(2.0));
    CHECK(closed == doctest::Approx(1.0 / std::sqrt(1.75)).epsilon(1e-15));
    CHECK(closed == doctest::Approx(0.7559289).epsilon(1e-7));
    const double rk4 = oracle::ode_rk4(0.5, Polynomial{}, std::log(2.0), 1e-6);
    CHECK(std::abs(closed - rk4) < 1e-10);

    // A handful of values across (-1, 1) and several tau.
    for (double v : {-0.99, -0.3, 0.1, 0.77}) {
        for (double tau : {1e-3, 0.1, 2.0}) {
            CHECK(std::abs(nonlinear_exact_value(v, tau) - oracle::ode_rk4(v, Polynomial{}, tau, 1e-5)) <
                  1e-11);
        }
    }
}

TEST_CASE("nonlinear_exact precondition and roundoff slack") {
    const Grid g(8, 8, Boundary::Neumann);
    Field v(g, 0.2);
    v[13] = 1.0 + 1e-11;
    try {
        (void)nonlinear_exact(v, 0.1);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.node() == 13);
    }
    v[13] = -1.0 - 5e-13;
    const Field out = nonlinear_exact(v, 0.1);
    CHECK(out[13] == -1.0);
    CHECK(out.max_abs() <= 1.0);
    CHECK_THROWS_AS(nonlinear_exact(v, 0.0), ContractError);
    v[2] = std::nan("");
    CHECK_THROWS_AS(nonlinear_exact(v, 0.1), PreconditionError);
}

TEST_CASE("nonlinear_exact: tiny tau keeps full precision") {
    // expm1 path: for tau = 1e-10 the step is u + tau (u - u^3) to first order.
    const double v = 0.5;
    const double tau = 1e-10;
    CHECK(nonlinear_exact_value(v, tau) - v == doctest::Approx(tau * (v - v * v * v)).epsilon(1e-6));
}

TEST_CASE("nonlinear_exact H1 growth and L2 Lipschitz bounds") {
    const Grid g(32, 32, Boundary::Neumann);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Field v1 = random_bandlimited(g, seed, 6, 1.0);
        const Field v2 = random_bandlimited(g, 1000 + seed, 6, 1.0);
        for (double tau : {0.01, 0.1, 1.0}) {
            CHECK(h1_norm(nonlinear_exact(v1, tau)) <= std::exp(tau) * h1_norm(v1) * (1 + 1e-10));
            CHECK(l2(nonlinear_exact(v1, tau) - nonlinear_exact(v2, tau)) <=
                  std::exp(4 * tau) * l2(v1 - v2));
        }
    }
}

TEST_CASE("nonlinear_log_rk") {
    const Logarithmic p{0.25, 1.0};
    const Grid g(8, 8, Boundary::Neumann);
    CHECK(nonlinear_log_rk(Field(g, 0.0), 0.01, p).max_abs() == 0.0);

    SUBCASE("equilibrium is a fixed point") {
        const double ustar = log_equilibrium(p);
        CHECK(p.theta_c * ustar == doctest::Approx(p.theta * std::atanh(ustar)).epsilon(1e-10));
        CHECK(ustar == doctest::Approx(0.9993257).epsilon(1e-6));
        Field v(g, ustar);
        for (std::size_t k = 0; k < v.size(); k += 2) v[k] = -ustar;
        const Field out = nonlinear_log_rk(v, 0.01, p);
        for (std::size_t k = 0; k < v.size(); ++k) CHECK(std::abs(out[k] - v[k]) < 1e-10);
    }
    SUBCASE("v = 0.5, tau = 0.01: tableau by hand and the RK4 flow") {
        const Field out = nonlinear_log_rk(Field(g, 0.5), 0.01, p);
        // Independent evaluation of the two stages with bisection.
        auto h = [&](double u) { return p.theta_c * u - p.theta * std::atanh(u); };
        auto stage = [&](double rhs, double d) {
            double lo = -1 + 1e-15, hi = 1 - 1e-15;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                (mid - d * h(mid) - rhs < 0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        };
        const double tau = 0.01;
        const double a = SdirkTableau::a;
        const double u1 = stage(0.5, tau * a);
        const double u2 = stage(0.5 + tau * (1 - 2 * a) * h(u1), tau * a);
        CHECK(std::abs(out[0] - (0.5 + tau * 0.5 * (h(u1) + h(u2)))) < 1e-14);

        // With a = 1 + sqrt(2)/2 the local error at this tau is 2.7e-7; the
        // gap to the exact flow is of that size, not below 1e-8.
        const double ref = oracle::ode_rk4(0.5, p, tau, 1e-6);
        CHECK(std::abs(out[0] - ref) <= 5e-7);
        CHECK(std::abs(out[0] - ref) > 1e-7);
    }
    SUBCASE("second order in tau") {
        std::vector<double> err;
        for (double tau : {0.04, 0.02, 0.01}) {
            double u = 0.3;
            const int n = static_cast<int>(std::lround(0.4 / tau));
            for (int s = 0; s < n; ++s) u = nonlinear_log_rk(Field(g, u), tau, p)[0];
            err.push_back(std::abs(u - oracle::ode_rk4(0.3, p, 0.4, 1e-5)));
        }
        CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.1));
        CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2.0).epsilon(0.1));
    }
    SUBCASE("output stays inside (-1, 1) near the bounds") {
        Field v(g);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = (k % 2 ? 1 : -1) * (1 - 1e-9 * (k + 1));
        const Field out = nonlinear_log_rk(v, 0.05, p);
        CHECK(out.max_abs() < 1.0);
    }
    SUBCASE("errors") {
        Field v(g, 0.1);
        v[5] = 1.0;
        CHECK_THROWS_AS(nonlinear_log_rk(v, 0.01, p), PreconditionError);
        CHECK_THROWS_AS(nonlinear_log_rk(Field(g, 0.1), 0.01, Logarithmic{-1.0, 1.0}), ContractError);
        NewtonOptions starved;
        starved.max_iterations = 0;
        CHECK_THROWS_AS(nonlinear_log_rk(Field(g, 0.5), 0.01, p, starved), SolverError);
    }
}

TEST_CASE("nonlinear_ternary_rk") {
    const Grid g(16, 16, Boundary::Periodic);
    SUBCASE("pure phase is an equilibrium") {
        const TernaryState s(Field(g, 1.0), Field(g, 0.0), Field(g, 0.0));
        const TernaryState out = nonlinear_ternary_rk(s, 0.1);
        for (int l = 0; l < 3; ++l) {
            CHECK(acsplit::testing::rel_diff(out.u[l], s.u[l]) < 1e-15);
        }
    }
    SUBCASE("means and hyperplane are preserved") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const TernaryState s = random_ternary(g, seed);
            for (double tau : {0.01, 0.1, 0.5}) {
                const TernaryState out = nonlinear_ternary_rk(s, tau);
                for (int l = 0; l < 3; ++l) {
                    CHECK(std::abs(mass(out.u[l]) - mass(s.u[l])) / kDomainArea <= 1e-12);
                }
                CHECK(out.hyperplane_violation() <= 1e-10);
            }
        }
    }
    SUBCASE("reduces to the local flow on a spatially uniform state") {
        // Uniform state: beta_l = f(u_l), so every reaction term vanishes.
        const TernaryState s(Field(g, 0.2), Field(g, 0.3), Field(g, 0.5));
        const TernaryState out = nonlinear_ternary_rk(s, 0.2);
        for (int l = 0; l < 3; ++l) CHECK(acsplit::testing::rel_diff(out.u[l], s.u[l]) < 1e-14);
    }
}
