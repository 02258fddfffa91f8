#pragma once

#include <complex>
#include <span>
#include <vector>

#include "acsplit/grid.hpp"

namespace acsplit {

/**
 * Spectral representation of a Field.
 *
 * Neumann: amplitudes a[k,l] of the cosine expansion
 *     u(x, y) = sum a[k,l] cos(k x / 2) cos(l y / 2),   k < nx, l < ny,
 * stored row-major (l outer).
 * Periodic: normalized complex amplitudes c[k,l] of
 *     u(x, y) = sum c[k,l] exp(i (k x + l y))
 * over the real-FFT half spectrum, k in [0, nx/2], l in [0, ny), stored as
 * l * (nx/2 + 1) + k. Signed y wavenumbers wrap at ny/2.
 */
class SpectralCoeffs {
public:
    explicit SpectralCoeffs(const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return grid_.spectral_size(); }

    std::span<double> cosine() noexcept { return cosine_; }
    std::span<const double> cosine() const noexcept { return cosine_; }
    std::span<std::complex<double>> fourier() noexcept { return fourier_; }
    std::span<const std::complex<double>> fourier() const noexcept { return fourier_; }

    // Multiply mode m by factor[m]; factor uses the grid's spectral layout.
    void scale(std::span<const double> factor);

private:
    Grid grid_;
    std::vector<double> cosine_;
    std::vector<std::complex<double>> fourier_;
};

SpectralCoeffs forward(const Field& field);
Field inverse(const SpectralCoeffs& coeffs);

// Per-mode wavenumbers in the spectral layout: (k/2, l/2) for Neumann,
// signed integers for periodic (Nyquist reported as -n/2).
struct Wavenumbers {
    std::vector<double> kx;
    std::vector<double> ky;
};
Wavenumbers wavenumbers(const Grid& grid);

// Eigenvalues of the grid's discrete Laplacian per mode; all <= 0 and exactly 0
// at (0,0). Spectral: -(kx^2 + ky^2). CentralDifference:
// -(4/hx^2) sin^2(kx hx / 2) - (4/hy^2) sin^2(ky hy / 2).
struct LaplacianSymbol {
    std::vector<double> mu;
};
LaplacianSymbol laplacian_symbol(const Grid& grid);

// Plancherel weight of D^alpha: ||D^alpha u||^2 = sum w[m] * energy[m] with
// energy from coefficient_energy. Supports |alpha| <= 6.
std::vector<double> derivative_weight(const Grid& grid, int alpha_x, int alpha_y);

// L2(Omega) energy carried by each mode; sums to the quadrature L2 norm squared.
std::vector<double> coefficient_energy(const SpectralCoeffs& coeffs);

// inverse(factor .* forward(v)).
Field apply_multiplier(const Field& v, std::span<const double> factor);

}  // namespace acsplit
