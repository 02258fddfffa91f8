#include "acsplit/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "acsplit/errors.hpp"
#include "acsplit/functionals.hpp"
#include "acsplit/rng.hpp"

namespace acsplit {

namespace {

constexpr double kResampleFloor = 1e-8;
constexpr int kMaxResample = 1000;
constexpr double kBoundSlack = 1e-12;

void validate_config(const SimConfig& cfg) {
    if (!(cfg.eps > 0.0)) throw ContractError("eps must be positive");
    if (!(cfg.horizon >= 0.0) || !std::isfinite(cfg.horizon)) {
        throw ContractError("horizon must be a finite non-negative time");
    }
    if (cfg.record_every < 1) throw ContractError("record_every must be >= 1");
    validate(cfg.potential);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, UniformPlan>) {
                if (!(p.tau > 0.0)) throw ContractError("uniform plan needs tau > 0");
            } else if constexpr (std::is_same_v<T, RandomNormalizedPlan>) {
                if (p.n_steps < 1) throw ContractError("random plan needs n_steps >= 1");
                if (std::abs(p.horizon - cfg.horizon) > 1e-12 * std::max(1.0, cfg.horizon)) {
                    throw ContractError("random plan horizon differs from the run horizon");
                }
            } else {
                if (!(p.tau_min > 0.0) || !(p.tau_max >= p.tau_min) || !(p.alpha >= 0.0)) {
                    throw ContractError("adaptive plan needs 0 < tau_min <= tau_max, alpha >= 0");
                }
            }
        },
        cfg.plan);
}

// Emits step sizes that land exactly on the horizon.
class StepSchedule {
public:
    explicit StepSchedule(const SimConfig& cfg) : plan_(cfg.plan), horizon_(cfg.horizon) {
        if (const auto* r = std::get_if<RandomNormalizedPlan>(&plan_)) {
            random_steps_ = generate_random_steps(r->seed, r->n_steps, r->horizon);
        } else if (const auto* u = std::get_if<UniformPlan>(&plan_)) {
            uniform_count_ = static_cast<std::size_t>(
                std::max(1.0, std::ceil(horizon_ / u->tau - 1e-9)));
        }
    }

    bool adaptive() const { return std::holds_alternative<AdaptivePlan>(plan_); }

    // Time reached after step number `step` (1-based), given the energies of
    // the two most recent states for the adaptive plan.
    double next_time(std::size_t step, double t, double prev_tau, double prev_energy,
                     double curr_energy) const {
        if (const auto* u = std::get_if<UniformPlan>(&plan_)) {
            return step >= uniform_count_ ? horizon_ : static_cast<double>(step) * u->tau;
        }
        if (std::holds_alternative<RandomNormalizedPlan>(plan_)) {
            return step >= random_steps_.size() ? horizon_ : t + random_steps_[step - 1];
        }
        const auto& a = std::get<AdaptivePlan>(plan_);
        const double tau =
            step == 1 ? a.tau_min : adaptive_next_tau(prev_energy, curr_energy, prev_tau, a);
        const double target = t + tau;
        return target >= horizon_ * (1.0 - 1e-14) ? horizon_ : target;
    }

private:
    StepPlan plan_;
    double horizon_;
    std::vector<double> random_steps_;
    std::size_t uniform_count_ = 0;
};

struct ScalarOps {
    // Reject a bad initial state up front: the initial energy would otherwise
    // fail with a domain error before the first step gets to say why.
    static void check_initial(const Field& u, const SimConfig& cfg) {
        const bool log = std::holds_alternative<Logarithmic>(cfg.potential);
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double x = u[k];
            if (!std::isfinite(x)) throw PreconditionError("run: non-finite initial value", k);
            if (log ? !(std::abs(x) < 1.0) : std::abs(x) > 1.0 + kBoundSlack) {
                throw PreconditionError("run: initial value outside the potential's range", k);
            }
        }
    }
    static double energy_of(const Field& u, const SimConfig& cfg) {
        return energy(u, cfg.potential, cfg.eps);
    }
    static double max_norm(const Field& u) { return u.max_abs(); }
    static std::vector<double> masses(const Field& u) { return {mass(u)}; }
    static double hyperplane(const Field&) { return 0.0; }
};

struct TernaryOps {
    static void check_initial(const TernaryState&, const SimConfig&) {}
    static double energy_of(const TernaryState& s, const SimConfig& cfg) {
        return energy(s, cfg.eps);
    }
    static double max_norm(const TernaryState& s) {
        return std::max({s.u[0].max_abs(), s.u[1].max_abs(), s.u[2].max_abs()});
    }
    static std::vector<double> masses(const TernaryState& s) {
        return {mass(s.u[0]), mass(s.u[1]), mass(s.u[2])};
    }
    static double hyperplane(const TernaryState& s) { return s.hyperplane_violation(); }
};

template <class Ops, class State>
RunResult<State> run_impl(const SimConfig& cfg, const State& u0,
                          const StepObserver<State>& observer) {
    validate_config(cfg);
    require_same_grid(cfg.grid, u0.grid(), "run");
    Ops::check_initial(u0, cfg);
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    const StepSchedule schedule(cfg);
    const std::vector<double> mass0 = Ops::masses(u0);

    RunResult<State> result{u0, {}, {}};
    State& u = result.state;
    RunStats& stats = result.stats;

    auto make_record = [&](double t, double tau, double e) {
        TraceRecord r;
        r.t = t;
        r.tau = tau;
        r.energy = e;
        r.max_norm = Ops::max_norm(u);
        r.wall_seconds = elapsed();
        const auto m = Ops::masses(u);
        for (std::size_t l = 0; l < m.size(); ++l) {
            r.mass_drift = std::max(r.mass_drift, std::abs(m[l] - mass0[l]));
        }
        r.hyperplane = Ops::hyperplane(u);
        return r;
    };

    double curr_energy = Ops::energy_of(u, cfg);
    double prev_energy = curr_energy;
    result.trace.push_back(make_record(0.0, 0.0, curr_energy));
    stats.max_norm = result.trace.back().max_norm;
    stats.hyperplane = result.trace.back().hyperplane;
    if (observer) observer(0.0, u);

    double t = 0.0;
    double tau = 0.0;
    std::size_t step = 0;
    while (t < cfg.horizon) {
        if (cfg.max_steps != 0 && step >= cfg.max_steps) break;
        ++step;
        const double t_next = schedule.next_time(step, t, tau, prev_energy, curr_energy);
        tau = t_next - t;
        if (!(tau > 0.0)) throw Error("step schedule produced a non-positive step");
        u = strang_step(u, tau, cfg);
        t = t_next;

        stats.steps = step;
        stats.tau_max = std::max(stats.tau_max, tau);
        stats.tau_min = step == 1 ? tau : std::min(stats.tau_min, tau);

        const bool last = !(t < cfg.horizon) || (cfg.max_steps != 0 && step >= cfg.max_steps);
        const bool record = last || step % static_cast<std::size_t>(cfg.record_every) == 0;
        if (schedule.adaptive() || record) {
            prev_energy = curr_energy;
            curr_energy = Ops::energy_of(u, cfg);
        }
        const TraceRecord r = make_record(t, tau, curr_energy);
        stats.max_norm = std::max(stats.max_norm, r.max_norm);
        stats.mass_drift = std::max(stats.mass_drift, r.mass_drift);
        stats.hyperplane = std::max(stats.hyperplane, r.hyperplane);
        if (record) result.trace.push_back(r);
        if (observer) observer(t, u);
    }
    stats.wall_seconds = elapsed();
    return result;
}

}  // namespace

std::string describe(const StepPlan& plan) {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, UniformPlan>) {
                os << "uniform(tau=" << p.tau << ")";
            } else if constexpr (std::is_same_v<T, RandomNormalizedPlan>) {
                os << "random(seed=" << p.seed << ",n=" << p.n_steps << ",T=" << p.horizon << ")";
            } else {
                os << "adaptive(tau_min=" << p.tau_min << ",tau_max=" << p.tau_max
                   << ",alpha=" << p.alpha << ")";
            }
        },
        plan);
    return os.str();
}

Field strang_step(const Field& u, double tau, const SimConfig& cfg) {
    if (!(tau > 0.0)) throw ContractError("strang_step: tau must be positive");
    const double half = 0.5 * tau;
    const Field w = linear_propagate(u, half, cfg.eps2());
    Field n(cfg.grid);
    if (std::holds_alternative<Polynomial>(cfg.potential)) {
        n = nonlinear_exact(w, tau);
    } else if (const auto* log = std::get_if<Logarithmic>(&cfg.potential)) {
        n = nonlinear_log_rk(w, tau, *log, cfg.newton);
    } else {
        throw ContractError("strang_step: the ternary potential needs a TernaryState");
    }
    return linear_propagate(n, half, cfg.eps2());
}

TernaryState strang_step(const TernaryState& s, double tau, const SimConfig& cfg) {
    if (!(tau > 0.0)) throw ContractError("strang_step: tau must be positive");
    if (!std::holds_alternative<TernaryConservative>(cfg.potential)) {
        throw ContractError("strang_step: a TernaryState needs the ternary potential");
    }
    const double half = 0.5 * tau;
    const TernaryState w = linear_propagate(s, half, cfg.eps2());
    const TernaryState n = nonlinear_ternary_rk(w, tau, cfg.newton);
    return linear_propagate(n, half, cfg.eps2());
}

std::vector<double> generate_random_steps(std::uint64_t seed, int n_steps, double horizon) {
    if (n_steps < 1) throw ContractError("generate_random_steps: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw ContractError("generate_random_steps: horizon must be positive");
    SplitMix64 rng(seed);
    std::vector<double> sigma(static_cast<std::size_t>(n_steps));
    for (double& s : sigma) {
        int tries = 0;
        do {
            if (++tries > kMaxResample) {
                throw DegenerateDrawError("random step draws stayed below the resample floor");
            }
            s = rng.next_uniform();
        } while (s < kResampleFloor);
    }
    double total = 0.0;
    for (double s : sigma) total += s;
    std::vector<double> tau(sigma.size());
    for (std::size_t k = 0; k < tau.size(); ++k) tau[k] = sigma[k] * horizon / total;
    return tau;
}

double adaptive_next_tau(double prev_energy, double curr_energy, double prev_tau,
                         const AdaptivePlan& plan) {
    if (!(prev_tau > 0.0)) throw ContractError("adaptive_next_tau: prev_tau must be positive");
    const double dE = (curr_energy - prev_energy) / prev_tau;
    const double tau = plan.tau_max / std::sqrt(1.0 + plan.alpha * dE * dE);
    if (!std::isfinite(tau)) return plan.tau_min;
    return std::clamp(tau, plan.tau_min, plan.tau_max);
}

RunResult<Field> run(const SimConfig& cfg, const Field& u0, const StepObserver<Field>& observer) {
    if (std::holds_alternative<TernaryConservative>(cfg.potential)) {
        throw ContractError("run: the ternary potential needs a TernaryState");
    }
    return run_impl<ScalarOps>(cfg, u0, observer);
}

RunResult<TernaryState> run(const SimConfig& cfg, const TernaryState& u0,
                            const StepObserver<TernaryState>& observer) {
    return run_impl<TernaryOps>(cfg, u0, observer);
}

}  // namespace acsplit
