#pragma once

#include "acsplit/grid.hpp"
#include "acsplit/potential.hpp"

namespace acsplit {

struct NormKind {
    enum class Type { L2, Linf, Hk };
    Type type = Type::L2;
    int k = 0;

    static NormKind l2() { return {Type::L2, 0}; }
    static NormKind linf() { return {Type::Linf, 0}; }
    static NormKind hk(int k) { return {Type::Hk, k}; }
};

// E(u) = int eps^2/2 |grad u|^2 + F(u). The gradient term is -<u, Delta_h u>
// for the grid's Laplacian kind, F uses collocation quadrature. Throws ContractError for the ternary potential (use
// the TernaryState overload) and DomainError for logarithmic F at |u| >= 1.
double energy(const Field& u, const PotentialSpec& potential, double eps);
double energy(const TernaryState& s, double eps);

// ||u||_{H^k}^2 = sum_{|alpha| <= k} ||D^alpha u||^2, k <= 6.
double norm(const Field& u, NormKind kind);
double h1_norm(const Field& u);

// Collocation quadrature of u over Omega.
double mass(const Field& u);
// Collocation quadrature of any nodal function: mean * |Omega|.
double integrate(std::span<const double> values);

// ||ref - num||_{H^1}
double error_eN(const Field& ref, const Field& num);
// ||ref - num||_{H^1} / ||ref||_{H^1}
double relative_error(const Field& ref, const Field& num);

// log(e1 / e2) / log(tau1_max / tau2_max)
double convergence_rate(double e1, double e2, double tau1_max, double tau2_max);

}  // namespace acsplit
