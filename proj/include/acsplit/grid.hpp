#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acsplit {

enum class Boundary { Neumann, Periodic };

// Discrete Laplacian whose exponential drives the linear sub-flow. Both are
// diagonal in the cosine / Fourier basis of the grid.
enum class LaplacianKind {
    // Five-point stencil (ghost reflection for Neumann). Its exponential is a
    // nonnegative averaging operator, so the discrete maximum principle holds.
    CentralDifference,
    // Exact eigenvalues of the truncated cosine / Fourier basis.
    Spectral,
};

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view s);
std::string_view to_string(LaplacianKind k);
LaplacianKind parse_laplacian(std::string_view s);

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
// |Omega| for Omega = [0, 2 pi]^2.
inline constexpr double kDomainArea = kTwoPi * kTwoPi;

/**
 * Collocation grid on [0, 2 pi]^2.
 *
 * Neumann grids sit on cell midpoints, x_i = (i + 1/2) h; periodic grids on
 * x_i = i h, with h = 2 pi / n in both cases. Both sizes must be even and >= 4.
 * The Laplacian kind selects the symbol used by the linear propagator; norms
 * and transforms do not depend on it.
 */
class Grid {
public:
    Grid(int nx, int ny, Boundary boundary,
         LaplacianKind laplacian = LaplacianKind::CentralDifference);

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    Boundary boundary() const noexcept { return boundary_; }
    LaplacianKind laplacian() const noexcept { return laplacian_; }
    Grid with_laplacian(LaplacianKind k) const { return Grid(nx_, ny_, boundary_, k); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }

    double hx() const noexcept { return kTwoPi / nx_; }
    double hy() const noexcept { return kTwoPi / ny_; }
    double x(int i) const noexcept;
    double y(int j) const noexcept;

    // Row-major with the y index outer.
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * nx_ + i;
    }

    // Number of entries in the spectral layout: nx*ny cosine amplitudes for
    // Neumann, ny*(nx/2+1) complex half-spectrum slots for periodic.
    std::size_t spectral_size() const noexcept;
    int half_nx() const noexcept { return nx_ / 2 + 1; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int nx_;
    int ny_;
    Boundary boundary_;
    LaplacianKind laplacian_;
};

// Nodal samples of one scalar unknown.
class Field {
public:
    explicit Field(const Grid& grid, double fill = 0.0);
    Field(const Grid& grid, std::vector<double> values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator[](std::size_t k) noexcept { return values_[k]; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }
    double& at(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
    double at(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

    bool all_finite() const noexcept;
    double max_abs() const noexcept;

private:
    Grid grid_;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

// Throws ContractError when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, std::string_view where);
// Same nodes (sizes and boundary), regardless of the Laplacian kind.
bool same_nodes(const Grid& a, const Grid& b) noexcept;

}  // namespace acsplit
