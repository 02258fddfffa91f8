#pragma once

#include <array>
#include <string>
#include <variant>

#include "acsplit/grid.hpp"

namespace acsplit {

// F(u) = (u^2 - 1)^2 / 4, f(u) = u^3 - u.
struct Polynomial {};

// F(u) = theta/2 [(1+u) ln(1+u) + (1-u) ln(1-u)] - theta_c/2 u^2 on (-1, 1).
struct Logarithmic {
    double theta = 0.25;
    double theta_c = 1.0;
};

// Three-phase conservative system with F(u) = u^2 (1-u)^2 / 2 per component.
struct TernaryConservative {};

using PotentialSpec = std::variant<Polynomial, Logarithmic, TernaryConservative>;

std::string describe(const PotentialSpec& p);
// Throws ContractError for theta <= 0 or theta_c <= 0.
void validate(const PotentialSpec& p);

namespace potential {

double poly_F(double u);
double poly_f(double u);

// Throws DomainError for |u| >= 1.
double log_F(double u, const Logarithmic& p);
double log_f(double u, const Logarithmic& p);

double ternary_F(double u);
double ternary_f(double u);
double ternary_df(double u);

}  // namespace potential

// The three order parameters of the ternary system.
struct TernaryState {
    std::array<Field, 3> u;

    explicit TernaryState(const Grid& grid) : u{Field(grid), Field(grid), Field(grid)} {}
    TernaryState(Field u1, Field u2, Field u3);

    const Grid& grid() const noexcept { return u[0].grid(); }
    // max_x |u1 + u2 + u3 - 1|
    double hyperplane_violation() const noexcept;
};

}  // namespace acsplit
