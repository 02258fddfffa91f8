#include "acsplit/grid.hpp"

#include <algorithm>
#include <cmath>

#include "acsplit/errors.hpp"

namespace acsplit {

std::string_view to_string(Boundary b) {
    return b == Boundary::Neumann ? "neumann" : "periodic";
}

Boundary parse_boundary(std::string_view s) {
    if (s == "neumann") return Boundary::Neumann;
    if (s == "periodic") return Boundary::Periodic;
    throw ContractError("unknown boundary kind '" + std::string(s) + "'");
}

std::string_view to_string(LaplacianKind k) {
    return k == LaplacianKind::CentralDifference ? "central" : "spectral";
}

LaplacianKind parse_laplacian(std::string_view s) {
    if (s == "central") return LaplacianKind::CentralDifference;
    if (s == "spectral") return LaplacianKind::Spectral;
    throw ContractError("unknown Laplacian kind '" + std::string(s) + "'");
}

Grid::Grid(int nx, int ny, Boundary boundary, LaplacianKind laplacian)
    : nx_(nx), ny_(ny), boundary_(boundary), laplacian_(laplacian) {
    if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0) {
        throw ContractError("grid sizes must be even and >= 4, got " + std::to_string(nx) +
                            "x" + std::to_string(ny));
    }
}

double Grid::x(int i) const noexcept {
    return boundary_ == Boundary::Neumann ? (i + 0.5) * hx() : i * hx();
}

double Grid::y(int j) const noexcept {
    return boundary_ == Boundary::Neumann ? (j + 0.5) * hy() : j * hy();
}

std::size_t Grid::spectral_size() const noexcept {
    if (boundary_ == Boundary::Neumann) return size();
    return static_cast<std::size_t>(ny_) * half_nx();
}

bool same_nodes(const Grid& a, const Grid& b) noexcept {
    return a.nx() == b.nx() && a.ny() == b.ny() && a.boundary() == b.boundary();
}

Field::Field(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ContractError("field has " + std::to_string(values_.size()) +
                            " values but grid has " + std::to_string(grid_.size()) + " nodes");
    }
}

void require_same_grid(const Grid& a, const Grid& b, std::string_view where) {
    if (!(a == b)) throw ContractError(std::string(where) + ": grid mismatch");
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(grid_, other.grid_, "Field::operator+=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(grid_, other.grid_, "Field::operator-=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

bool Field::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

}  // namespace acsplit
