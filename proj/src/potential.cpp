#include "acsplit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "acsplit/errors.hpp"

namespace acsplit {

std::string describe(const PotentialSpec& p) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Polynomial>) {
                return "polynomial";
            } else if constexpr (std::is_same_v<T, Logarithmic>) {
                std::ostringstream os;
                os.precision(17);
                os << "logarithmic(theta=" << v.theta << ",theta_c=" << v.theta_c << ")";
                return os.str();
            } else {
                return "ternary";
            }
        },
        p);
}

void validate(const PotentialSpec& p) {
    if (const auto* log = std::get_if<Logarithmic>(&p)) {
        if (!(log->theta > 0.0) || !(log->theta_c > 0.0)) {
            throw ContractError("logarithmic potential requires theta > 0 and theta_c > 0");
        }
    }
}

namespace potential {

double poly_F(double u) {
    const double w = u * u - 1.0;
    return 0.25 * w * w;
}

double poly_f(double u) { return u * u * u - u; }

namespace {
void require_open_interval(double u) {
    if (!(std::abs(u) < 1.0)) {
        throw DomainError("logarithmic potential evaluated at u = " + std::to_string(u) +
                          " outside (-1, 1)");
    }
}
}  // namespace

double log_F(double u, const Logarithmic& p) {
    require_open_interval(u);
    return 0.5 * p.theta * ((1.0 + u) * std::log1p(u) + (1.0 - u) * std::log1p(-u)) -
           0.5 * p.theta_c * u * u;
}

double log_f(double u, const Logarithmic& p) {
    require_open_interval(u);
    return p.theta * std::atanh(u) - p.theta_c * u;
}

double ternary_F(double u) {
    const double w = u * (1.0 - u);
    return 0.5 * w * w;
}

double ternary_f(double u) { return u * (1.0 - u) * (1.0 - 2.0 * u); }

double ternary_df(double u) { return 1.0 - 6.0 * u + 6.0 * u * u; }

}  // namespace potential

TernaryState::TernaryState(Field u1, Field u2, Field u3)
    : u{std::move(u1), std::move(u2), std::move(u3)} {
    require_same_grid(u[0].grid(), u[1].grid(), "TernaryState");
    require_same_grid(u[0].grid(), u[2].grid(), "TernaryState");
}

double TernaryState::hyperplane_violation() const noexcept {
    double worst = 0.0;
    for (std::size_t k = 0; k < u[0].size(); ++k) {
        worst = std::max(worst, std::abs(u[0][k] + u[1][k] + u[2][k] - 1.0));
    }
    return worst;
}

}  // namespace acsplit
