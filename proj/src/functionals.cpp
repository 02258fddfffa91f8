#include "acsplit/functionals.hpp"

#include <cmath>

#include "acsplit/errors.hpp"
#include "acsplit/spectral.hpp"

namespace acsplit {

namespace {

double sum_weighted(const std::vector<double>& energy, const std::vector<double>& weight) {
    double s = 0.0;
    for (std::size_t m = 0; m < energy.size(); ++m) s += weight[m] * energy[m];
    return s;
}

// ||grad u||^2 = -<u, Delta_h u> with the grid's Laplacian, so the energy is the
// one the discrete flow dissipates. For the spectral kind this equals the
// Plancherel sum with the |alpha| = 1 derivative weights.
double gradient_energy(const Field& u) {
    const auto e = coefficient_energy(forward(u));
    const auto mu = laplacian_symbol(u.grid()).mu;
    double s = 0.0;
    for (std::size_t m = 0; m < e.size(); ++m) s -= mu[m] * e[m];
    return s;
}

}  // namespace

double integrate(std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size()) * kDomainArea;
}

double mass(const Field& u) { return integrate(u.values()); }

double energy(const Field& u, const PotentialSpec& potential, double eps) {
    if (!(eps > 0.0)) throw ContractError("energy: eps must be positive");
    std::vector<double> F(u.size());
    if (std::holds_alternative<Polynomial>(potential)) {
        for (std::size_t k = 0; k < u.size(); ++k) F[k] = potential::poly_F(u[k]);
    } else if (const auto* log = std::get_if<Logarithmic>(&potential)) {
        for (std::size_t k = 0; k < u.size(); ++k) F[k] = potential::log_F(u[k], *log);
    } else {
        throw ContractError("energy: the ternary potential needs a TernaryState");
    }
    return 0.5 * eps * eps * gradient_energy(u) + integrate(F);
}

double energy(const TernaryState& s, double eps) {
    if (!(eps > 0.0)) throw ContractError("energy: eps must be positive");
    double total = 0.0;
    std::vector<double> F(s.u[0].size());
    for (const Field& c : s.u) {
        for (std::size_t k = 0; k < c.size(); ++k) F[k] = potential::ternary_F(c[k]);
        total += 0.5 * eps * eps * gradient_energy(c) + integrate(F);
    }
    return total;
}

double norm(const Field& u, NormKind kind) {
    switch (kind.type) {
        case NormKind::Type::Linf:
            return u.max_abs();
        case NormKind::Type::L2: {
            std::vector<double> sq(u.size());
            for (std::size_t k = 0; k < u.size(); ++k) sq[k] = u[k] * u[k];
            return std::sqrt(integrate(sq));
        }
        case NormKind::Type::Hk:
            break;
    }
    if (kind.k < 0 || kind.k > 6) {
        throw UnsupportedOrderError("H^k norm requested for k = " + std::to_string(kind.k) +
                                    "; supported range is 0..6");
    }
    if (kind.k == 0) return norm(u, NormKind::l2());

    const auto e = coefficient_energy(forward(u));
    std::vector<double> w(e.size(), 0.0);
    for (int ax = 0; ax <= kind.k; ++ax) {
        for (int ay = 0; ax + ay <= kind.k; ++ay) {
            const auto d = derivative_weight(u.grid(), ax, ay);
            for (std::size_t m = 0; m < w.size(); ++m) w[m] += d[m];
        }
    }
    return std::sqrt(sum_weighted(e, w));
}

double h1_norm(const Field& u) { return norm(u, NormKind::hk(1)); }

double error_eN(const Field& ref, const Field& num) {
    require_same_grid(ref.grid(), num.grid(), "error_eN");
    return h1_norm(ref - num);
}

double relative_error(const Field& ref, const Field& num) {
    const double denom = h1_norm(ref);
    if (!(denom > 0.0)) throw UndefinedRateError("relative_error: reference has zero H1 norm");
    return error_eN(ref, num) / denom;
}

double convergence_rate(double e1, double e2, double tau1_max, double tau2_max) {
    if (!(e1 > 0.0) || !(e2 > 0.0)) {
        throw UndefinedRateError("convergence rate needs positive errors");
    }
    if (!(tau1_max > 0.0) || !(tau2_max > 0.0) || tau1_max == tau2_max) {
        throw UndefinedRateError("convergence rate needs distinct positive step sizes");
    }
    return std::log(e1 / e2) / std::log(tau1_max / tau2_max);
}

}  // namespace acsplit
