#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "acsplit/grid.hpp"
#include "acsplit/potential.hpp"
#include "acsplit/propagators.hpp"

namespace acsplit {

struct UniformPlan {
    double tau = 1e-3;
};

// tau_k = sigma_k T / sum(sigma), sigma_k ~ U[0, 1).
struct RandomNormalizedPlan {
    std::uint64_t seed = 0;
    int n_steps = 1;
    double horizon = 1.0;
};

// tau = max(tau_min, tau_max / sqrt(1 + alpha |E'|^2)).
struct AdaptivePlan {
    double tau_min = 1e-3;
    double tau_max = 0.1;
    double alpha = 100.0;
};

using StepPlan = std::variant<UniformPlan, RandomNormalizedPlan, AdaptivePlan>;

std::string describe(const StepPlan& plan);

struct SimConfig {
    Grid grid{64, 64, Boundary::Neumann};
    PotentialSpec potential = Polynomial{};
    double eps = 0.1;
    StepPlan plan = UniformPlan{};
    double horizon = 1.0;
    int record_every = 1;
    // Stop after this many steps even if the horizon is not reached; 0 disables.
    std::size_t max_steps = 0;
    NewtonOptions newton{};

    double eps2() const noexcept { return eps * eps; }
};

struct TraceRecord {
    double t = 0.0;
    double tau = 0.0;
    double energy = 0.0;
    double max_norm = 0.0;
    double wall_seconds = 0.0;
    // Largest |mass(u_l) - mass(u_l at t=0)| over components.
    double mass_drift = 0.0;
    // max |u1 + u2 + u3 - 1|; zero for scalar runs.
    double hyperplane = 0.0;
};

using Trace = std::vector<TraceRecord>;

// Extremes over every step of a run, recorded or not.
struct RunStats {
    std::size_t steps = 0;
    double tau_max = 0.0;
    double tau_min = 0.0;
    double max_norm = 0.0;
    double mass_drift = 0.0;
    double hyperplane = 0.0;
    double wall_seconds = 0.0;
};

template <class State>
struct RunResult {
    State state;
    Trace trace;
    RunStats stats;
};

// Called with (t, state) at t = 0 and after every step.
template <class State>
using StepObserver = std::function<void(double, const State&)>;

// S_L(tau/2) S_N(tau) S_L(tau/2) u.
Field strang_step(const Field& u, double tau, const SimConfig& cfg);
TernaryState strang_step(const TernaryState& s, double tau, const SimConfig& cfg);

std::vector<double> generate_random_steps(std::uint64_t seed, int n_steps, double horizon);

// E' is the backward difference (curr - prev) / prev_tau.
double adaptive_next_tau(double prev_energy, double curr_energy, double prev_tau,
                         const AdaptivePlan& plan);

RunResult<Field> run(const SimConfig& cfg, const Field& u0,
                     const StepObserver<Field>& observer = {});
RunResult<TernaryState> run(const SimConfig& cfg, const TernaryState& u0,
                            const StepObserver<TernaryState>& observer = {});

}  // namespace acsplit
