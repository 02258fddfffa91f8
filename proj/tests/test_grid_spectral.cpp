#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acsplit/errors.hpp"
#include "acsplit/functionals.hpp"
#include "acsplit/spectral.hpp"
#include "test_support.hpp"

using namespace acsplit;
using acsplit::testing::random_field;
using acsplit::testing::sample;

namespace {

constexpr double pi = std::numbers::pi;

const Boundary kBoundaries[] = {Boundary::Neumann, Boundary::Periodic};

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

TEST_CASE("grid validates sizes and places nodes") {
    CHECK_THROWS_AS(Grid(3, 8, Boundary::Neumann), ContractError);
    CHECK_THROWS_AS(Grid(8, 2, Boundary::Periodic), ContractError);
    CHECK_THROWS_AS(Grid(7, 7, Boundary::Periodic), ContractError);

    const Grid n(8, 4, Boundary::Neumann);
    CHECK(n.x(0) == doctest::Approx(0.5 * 2 * pi / 8));
    CHECK(n.y(3) == doctest::Approx(3.5 * 2 * pi / 4));
    const Grid p(8, 4, Boundary::Periodic);
    CHECK(p.x(0) == 0.0);
    CHECK(p.x(5) == doctest::Approx(5 * 2 * pi / 8));
    CHECK(p.index(2, 3) == 3 * 8 + 2);
    CHECK(n.spectral_size() == 32);
    CHECK(p.spectral_size() == 4 * 5);

    CHECK(parse_boundary("periodic") == Boundary::Periodic);
    CHECK(parse_laplacian("spectral") == LaplacianKind::Spectral);
    CHECK_THROWS_AS(parse_boundary("dirichlet"), ContractError);
}

TEST_CASE("field arithmetic and grid checks") {
    const Grid g(4, 4, Boundary::Neumann);
    CHECK_THROWS_AS(Field(g, std::vector<double>(15)), ContractError);
    Field a(g, 1.5);
    const Field b(g, 0.5);
    CHECK((a - b).max_abs() == 1.0);
    a *= 2.0;
    CHECK(a[3] == 3.0);
    CHECK_THROWS_AS(a += Field(Grid(4, 4, Boundary::Periodic)), ContractError);
    // Same nodes, different Laplacian kind: not interchangeable for arithmetic.
    CHECK(same_nodes(g, g.with_laplacian(LaplacianKind::Spectral)));
    CHECK_THROWS_AS(require_same_grid(g, g.with_laplacian(LaplacianKind::Spectral), "t"),
                    ContractError);
    a[0] = std::nan("");
    CHECK_FALSE(a.all_finite());
}

TEST_CASE("forward of a constant has only the mean mode") {
    for (Boundary b : kBoundaries) {
        const Grid g(8, 6, b);
        const SpectralCoeffs c = forward(Field(g, 0.7));
        if (b == Boundary::Neumann) {
            CHECK(c.cosine()[0] == doctest::Approx(0.7).epsilon(1e-14));
            for (std::size_t m = 1; m < c.size(); ++m) CHECK(std::abs(c.cosine()[m]) < 1e-15);
        } else {
            CHECK(c.fourier()[0].real() == doctest::Approx(0.7).epsilon(1e-14));
            for (std::size_t m = 1; m < c.size(); ++m) CHECK(std::abs(c.fourier()[m]) < 1e-15);
        }
    }
}

TEST_CASE("forward of cos(x) on a 16x16 Neumann grid is the single mode (2,0)") {
    const Grid g(16, 16, Boundary::Neumann);
    const Field u = sample(g, [](double x, double) { return std::cos(x); });
    const SpectralCoeffs c = forward(u);
    const auto direct = acsplit::testing::direct_cosine(u);
    for (int l = 0; l < 16; ++l) {
        for (int k = 0; k < 16; ++k) {
            const double expect = (k == 2 && l == 0) ? 1.0 : 0.0;
            CHECK(direct[g.index(k, l)] == doctest::Approx(expect).scale(1.0).epsilon(1e-13));
            CHECK(c.cosine()[g.index(k, l)] == doctest::Approx(expect).scale(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("forward matches explicit orthogonality sums") {
    SUBCASE("neumann") {
        const Grid g(12, 8, Boundary::Neumann);
        const Field u = random_field(g, 11);
        const auto direct = acsplit::testing::direct_cosine(u);
        const SpectralCoeffs coeffs = forward(u);
        CHECK(max_abs_diff(coeffs.cosine(), direct) < 1e-13);
    }
    SUBCASE("periodic") {
        const Grid g(12, 8, Boundary::Periodic);
        const Field u = random_field(g, 12);
        const auto direct = acsplit::testing::direct_fourier(u);
        const SpectralCoeffs coeffs = forward(u);
        const auto c = coeffs.fourier();
        double m = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) m = std::max(m, std::abs(c[k] - direct[k]));
        CHECK(m < 1e-13);
    }
}

TEST_CASE("inverse of zero and of the mean mode") {
    for (Boundary b : kBoundaries) {
        const Grid g(8, 8, b);
        SpectralCoeffs c(g);
        CHECK(inverse(c).max_abs() == 0.0);
        if (b == Boundary::Neumann) {
            c.cosine()[0] = -0.3;
        } else {
            c.fourier()[0] = -0.3;
        }
        const Field u = inverse(c);
        for (std::size_t k = 0; k < u.size(); ++k) CHECK(u[k] == doctest::Approx(-0.3));
    }
}

TEST_CASE("roundtrip inverse(forward(v)) on 100 seeded fields") {
    for (Boundary b : kBoundaries) {
        const Grid g(16, 12, b);
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Field v = random_field(g, seed);
            worst = std::max(worst, acsplit::testing::rel_diff(inverse(forward(v)), v));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("roundtrip forward(inverse(c)) on random coefficients") {
    const SplitMix64 rng(5);
    SUBCASE("neumann") {
        const Grid g(10, 8, Boundary::Neumann);
        SpectralCoeffs c(g);
        for (std::size_t m = 0; m < c.size(); ++m) c.cosine()[m] = 2 * rng.uniform(m) - 1;
        const SpectralCoeffs back = forward(inverse(c));
        CHECK(max_abs_diff(back.cosine(), c.cosine()) < 1e-12);
    }
    SUBCASE("periodic") {
        // Random real field's spectrum is a valid (Hermitian) coefficient set.
        const Grid g(10, 8, Boundary::Periodic);
        const SpectralCoeffs c = forward(random_field(g, 9));
        const SpectralCoeffs back = forward(inverse(c));
        double m = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            m = std::max(m, std::abs(back.fourier()[k] - c.fourier()[k]));
        }
        CHECK(m < 1e-12);
    }
}

TEST_CASE("Parseval on 100 seeded fields") {
    for (Boundary b : kBoundaries) {
        const Grid g(16, 16, b);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Field v = random_field(g, 1000 + seed);
            std::vector<double> sq(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) sq[k] = v[k] * v[k];
            const double quad = integrate(sq);
            double spec = 0.0;
            for (double e : coefficient_energy(forward(v))) spec += e;
            CHECK(spec == doctest::Approx(quad).epsilon(1e-12));
        }
    }
}

TEST_CASE("spectral Laplacian symbol") {
    SUBCASE("neumann") {
        const Grid g(16, 16, Boundary::Neumann, LaplacianKind::Spectral);
        const auto mu = laplacian_symbol(g).mu;
        CHECK(mu[g.index(0, 0)] == 0.0);
        CHECK(mu[g.index(2, 0)] == -1.0);
        CHECK(mu[g.index(3, 5)] == doctest::Approx(-(2.25 + 6.25)));
        for (double m : mu) CHECK(m <= 0.0);
    }
    SUBCASE("periodic") {
        const Grid g(16, 16, Boundary::Periodic, LaplacianKind::Spectral);
        const auto mu = laplacian_symbol(g).mu;
        const auto w = wavenumbers(g);
        CHECK(mu[0] == 0.0);
        bool found = false;
        for (std::size_t m = 0; m < mu.size(); ++m) {
            if (w.kx[m] == 3 && w.ky[m] == 4) {
                CHECK(mu[m] == -25.0);
                found = true;
            }
            CHECK(mu[m] <= 0.0);
        }
        CHECK(found);
    }
}

TEST_CASE("Laplacian symbols agree with a finite-difference eigenvalue fit") {
    // Apply a second-order FD Laplacian to the eigenfunction on a fine grid and
    // read off the ratio at an interior point.
    const double h = 1e-3;
    auto fd_eigen = [&](auto fn, double x, double y) {
        const double lap = (fn(x + h, y) + fn(x - h, y) + fn(x, y + h) + fn(x, y - h) -
                            4 * fn(x, y)) / (h * h);
        return lap / fn(x, y);
    };
    const double neumann =
        fd_eigen([](double x, double) { return std::cos(x); }, 0.3, 0.7);
    const Grid gn(16, 16, Boundary::Neumann, LaplacianKind::Spectral);
    CHECK(laplacian_symbol(gn).mu[gn.index(2, 0)] == doctest::Approx(neumann).epsilon(1e-6));

    // exp(i(3x + 4y)): the real part suffices away from its zeros.
    const double periodic =
        fd_eigen([](double x, double y) { return std::cos(3 * x + 4 * y); }, 0.1, 0.05);
    CHECK(periodic == doctest::Approx(-25.0).epsilon(1e-5));
}

TEST_CASE("central-difference symbol is the five-point stencil eigenvalue") {
    for (Boundary b : kBoundaries) {
        const Grid g(12, 8, b);
        const auto mu = laplacian_symbol(g).mu;
        CHECK(mu[0] == 0.0);
        // Apply the stencil (ghost reflection / wraparound) to each eigenfunction.
        const auto w = wavenumbers(g);
        for (std::size_t m = 0; m < mu.size(); m += 7) {
            CHECK(mu[m] <= 0.0);
            auto mode = [&](int i, int j) {
                auto wrap = [&](int v, int n) {
                    if (b == Boundary::Periodic) return (v % n + n) % n;
                    return v < 0 ? 0 : (v >= n ? n - 1 : v);
                };
                i = wrap(i, g.nx());
                j = wrap(j, g.ny());
                return std::cos(w.kx[m] * g.x(i)) * std::cos(w.ky[m] * g.y(j));
            };
            // Pick the node where the mode is largest to avoid dividing by ~0.
            int bi = 0, bj = 0;
            for (int j = 0; j < g.ny(); ++j)
                for (int i = 0; i < g.nx(); ++i)
                    if (std::abs(mode(i, j)) > std::abs(mode(bi, bj))) bi = i, bj = j;
            const double hx = g.hx(), hy = g.hy();
            const double lap =
                (mode(bi + 1, bj) - 2 * mode(bi, bj) + mode(bi - 1, bj)) / (hx * hx) +
                (mode(bi, bj + 1) - 2 * mode(bi, bj) + mode(bi, bj - 1)) / (hy * hy);
            CHECK(lap / mode(bi, bj) == doctest::Approx(mu[m]).epsilon(1e-10));
        }
    }
}

TEST_CASE("derivative weights") {
    const Grid g(16, 16, Boundary::Neumann);
    for (double w : derivative_weight(g, 0, 0)) CHECK(w == 1.0);
    CHECK_THROWS_AS(derivative_weight(g, 4, 3), UnsupportedOrderError);
    CHECK_NOTHROW(derivative_weight(g, 3, 3));

    const Field u = sample(g, [](double x, double) { return std::cos(x); });
    const auto e = coefficient_energy(forward(u));
    auto weighted = [&](int ax, int ay) {
        const auto w = derivative_weight(g, ax, ay);
        double s = 0.0;
        for (std::size_t m = 0; m < e.size(); ++m) s += w[m] * e[m];
        return s;
    };
    // ||d_x cos x||^2 = ||sin x||^2 = 2 pi^2; cross-check by quadrature.
    const Field sinx = sample(g, [](double x, double) { return std::sin(x); });
    std::vector<double> sq(sinx.size());
    for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = sinx[k] * sinx[k];
    CHECK(weighted(1, 0) == doctest::Approx(2 * pi * pi).epsilon(1e-12));
    CHECK(integrate(sq) == doctest::Approx(2 * pi * pi).epsilon(1e-12));
    CHECK(std::abs(weighted(0, 1)) < 1e-12);

    const Grid p(16, 16, Boundary::Periodic);
    const auto wp = derivative_weight(p, 1, 2);
    const auto k = wavenumbers(p);
    for (std::size_t m = 0; m < wp.size(); ++m) {
        CHECK(wp[m] == doctest::Approx(k.kx[m] * k.kx[m] * std::pow(k.ky[m], 4)));
    }
}

TEST_CASE("periodic derivative weights reproduce analytic norms") {
    const Grid g(16, 16, Boundary::Periodic);
    // u = sin(2x) cos(3y): ||d_x d_y u||^2 = 36 * pi^2.
    const Field u = sample(g, [](double x, double y) { return std::sin(2 * x) * std::cos(3 * y); });
    const auto e = coefficient_energy(forward(u));
    const auto w = derivative_weight(g, 1, 1);
    double s = 0.0;
    for (std::size_t m = 0; m < e.size(); ++m) s += w[m] * e[m];
    CHECK(s == doctest::Approx(36 * pi * pi).epsilon(1e-12));
}
