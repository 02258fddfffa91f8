#include "acsplit/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "acsplit/errors.hpp"
#include "acsplit/functionals.hpp"
#include "acsplit/problems.hpp"
#include "acsplit/rng.hpp"

namespace acsplit {

namespace {

constexpr std::string_view kExperimentNames[] = {"converge-poly", "converge-log", "simulate",
                                                 "adapt-compare", "ternary"};

std::string join(const auto& values) {
    std::string s;
    for (const auto& v : values) {
        if (!s.empty()) s += ',';
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
            s += format_number(v);
        } else {
            s += std::to_string(v);
        }
    }
    return s;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open output file '" + path + "'");
    return os;
}

std::string snapshot_path(const std::string& out, std::size_t k) {
    return out + ".snap" + std::to_string(k) + ".txt";
}

// Writes each requested snapshot once, from the first state at or past its time.
template <class State>
class SnapshotWriter {
public:
    SnapshotWriter(const ExperimentSpec& spec, std::ostream& log,
                   Field (*project)(const State&))
        : spec_(spec), log_(log), project_(project), times_(spec.snapshot_times) {
        std::sort(times_.begin(), times_.end());
    }

    void operator()(double t, const State& s) {
        while (next_ < times_.size() && t >= times_[next_] - 1e-12) {
            const std::string path = snapshot_path(spec_.out, next_);
            auto os = open_output(path);
            write_snapshot(os, project_(s));
            log_ << "snapshot " << next_ << " requested t=" << format_number(times_[next_])
                 << " written at t=" << format_number(t) << " -> " << path << '\n';
            ++next_;
        }
    }

private:
    const ExperimentSpec& spec_;
    std::ostream& log_;
    Field (*project_)(const State&);
    std::vector<double> times_;
    std::size_t next_ = 0;
};

Field identity_projection(const Field& f) { return f; }

// 1/2 u1 - u2, the phase indicator plotted for the ternary system.
Field ternary_projection(const TernaryState& s) { return 0.5 * s.u[0] - s.u[1]; }

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view to_string(Experiment e) { return kExperimentNames[static_cast<int>(e)]; }

Experiment parse_experiment(std::string_view s) {
    for (int i = 0; i < 5; ++i) {
        if (kExperimentNames[i] == s) return static_cast<Experiment>(i);
    }
    throw ContractError("unknown experiment '" + std::string(s) + "'");
}

ExperimentSpec default_spec(Experiment e, PotentialKind potential) {
    ExperimentSpec s;
    s.experiment = e;
    s.potential = potential;
    switch (e) {
        case Experiment::ConvergePoly:
            s.potential = PotentialKind::Polynomial;
            break;
        case Experiment::ConvergeLog:
            s.potential = PotentialKind::Logarithmic;
            s.eps = 0.01;
            break;
        case Experiment::Simulate:
        case Experiment::AdaptCompare:
            s.t_final = 10.0;
            s.tau = 1e-3;
            if (potential == PotentialKind::Logarithmic) {
                s.eps = 0.01;
                s.tau_max = 0.01;
            }
            break;
        case Experiment::Ternary:
            s.boundary = Boundary::Periodic;
            s.eps = 0.05;
            s.t_final = 10.0;
            s.tau = 1e-3;
            break;
    }
    s.out = std::string(to_string(e)) + ".csv";
    return s;
}

PotentialSpec potential_of(const ExperimentSpec& spec) {
    if (spec.experiment == Experiment::Ternary) return TernaryConservative{};
    if (spec.potential == PotentialKind::Logarithmic) {
        return Logarithmic{spec.theta, spec.theta_c};
    }
    return Polynomial{};
}

std::string config_header(const ExperimentSpec& spec) {
    std::ostringstream os;
    auto kv = [&](std::string_view k, const std::string& v) { os << "# " << k << '=' << v << '\n'; };
    kv("version", std::string(kVersion));
    kv("experiment", std::string(to_string(spec.experiment)));
    kv("seed", std::to_string(spec.seed));
    kv("prng", std::string(SplitMix64::name));
    kv("grid", std::to_string(spec.grid) + "x" + std::to_string(spec.grid));
    kv("boundary", std::string(to_string(spec.boundary)));
    kv("laplacian", std::string(to_string(spec.laplacian)));
    kv("potential", describe(potential_of(spec)));
    kv("eps", format_number(spec.eps));
    kv("t_final", format_number(spec.t_final));
    switch (spec.experiment) {
        case Experiment::ConvergePoly:
        case Experiment::ConvergeLog:
            kv("plan", "reference " + describe(StepPlan{UniformPlan{spec.tau}}) +
                           "; random(seed=" + std::to_string(spec.seed) + ",n=" +
                           join(spec.n_list) + ")");
            break;
        case Experiment::AdaptCompare:
            kv("plan", "reference " + describe(StepPlan{UniformPlan{spec.tau_min}}) + "; " +
                           describe(StepPlan{AdaptivePlan{spec.tau_min, spec.tau_max, spec.alpha}}));
            break;
        default:
            kv("plan", describe(sim_config(spec).plan));
            break;
    }
    kv("record_every", std::to_string(spec.record_every));
    kv("max_steps", std::to_string(spec.max_steps));
    kv("snapshot_times", join(spec.snapshot_times));
    kv("timing", spec.timing ? "on" : "off");
    return os.str();
}

SimConfig sim_config(const ExperimentSpec& spec) {
    SimConfig cfg;
    cfg.grid = Grid(spec.grid, spec.grid, spec.boundary, spec.laplacian);
    cfg.potential = potential_of(spec);
    cfg.eps = spec.eps;
    cfg.horizon = spec.t_final;
    cfg.record_every = spec.record_every;
    cfg.max_steps = spec.max_steps;
    cfg.plan = AdaptivePlan{spec.tau_min, spec.tau_max, spec.alpha};
    return cfg;
}

Field initial_field(const ExperimentSpec& spec, const Grid& grid) {
    if (spec.experiment == Experiment::Ternary) {
        throw ContractError("initial_field: the ternary experiment has a TernaryState");
    }
    if (spec.potential == PotentialKind::Logarithmic) return disk_indicator(grid);
    return seven_circles(grid, spec.eps);
}

ConvergenceResult run_convergence(const ExperimentSpec& spec) {
    const auto& n = spec.n_list;
    if (n.empty()) throw ContractError("converge: empty N list");
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 1 || (i > 0 && n[i] <= n[i - 1])) {
            throw ContractError("converge: N list must be strictly increasing and >= 1");
        }
    }
    SimConfig cfg = sim_config(spec);
    cfg.record_every = std::numeric_limits<int>::max();
    const Field u0 = initial_field(spec, cfg.grid);

    ConvergenceResult result;
    cfg.plan = UniformPlan{spec.tau};
    RunResult<Field> ref = [&] {
        try {
            return run(cfg, u0);
        } catch (const Error& e) {
            throw Error(std::string("reference run failed: ") + e.what());
        }
    }();
    result.reference_steps = ref.stats.steps;
    result.max_norm = ref.stats.max_norm;

    for (int steps : n) {
        cfg.plan = RandomNormalizedPlan{spec.seed, steps, spec.t_final};
        const RunResult<Field> r = run(cfg, u0);
        ConvergenceRow row;
        row.n = steps;
        row.tau_max = r.stats.tau_max;
        row.h1_error = error_eN(ref.state, r.state);
        if (!result.rows.empty()) {
            const auto& prev = result.rows.back();
            row.rate = convergence_rate(prev.h1_error, row.h1_error, prev.tau_max, row.tau_max);
        }
        result.max_norm = std::max(result.max_norm, r.stats.max_norm);
        result.rows.push_back(row);
    }
    return result;
}

AdaptCompareResult run_adapt_compare(const ExperimentSpec& spec) {
    SimConfig cfg = sim_config(spec);
    cfg.record_every = std::numeric_limits<int>::max();
    const Field u0 = initial_field(spec, cfg.grid);

    cfg.plan = UniformPlan{spec.tau_min};
    const RunResult<Field> uniform = run(cfg, u0);
    cfg.plan = AdaptivePlan{spec.tau_min, spec.tau_max, spec.alpha};
    const RunResult<Field> adaptive = run(cfg, u0);

    AdaptCompareResult r;
    r.e_rel = relative_error(uniform.state, adaptive.state);
    r.uniform_steps = uniform.stats.steps;
    r.adaptive_steps = adaptive.stats.steps;
    r.uniform_wall = uniform.stats.wall_seconds;
    r.adaptive_wall = adaptive.stats.wall_seconds;
    return r;
}

void write_convergence_csv(std::ostream& os, const ExperimentSpec& spec,
                           const ConvergenceResult& r) {
    os << config_header(spec);
    os << "N,tau_max,h1_error,rate\n";
    for (const auto& row : r.rows) {
        os << row.n << ',' << format_number(row.tau_max) << ',' << format_number(row.h1_error)
           << ',' << (row.rate ? format_number(*row.rate) : "") << '\n';
    }
}

void write_trace_csv(std::ostream& os, const ExperimentSpec& spec, const Trace& trace,
                     bool ternary) {
    os << config_header(spec);
    os << "t,tau,energy,max_norm";
    if (ternary) os << ",mass_drift,hyperplane";
    if (spec.timing) os << ",wall_seconds";
    os << '\n';
    for (const auto& r : trace) {
        os << format_number(r.t) << ',' << format_number(r.tau) << ',' << format_number(r.energy)
           << ',' << format_number(r.max_norm);
        if (ternary) os << ',' << format_number(r.mass_drift) << ',' << format_number(r.hyperplane);
        if (spec.timing) os << ',' << format_number(r.wall_seconds);
        os << '\n';
    }
}

void write_adapt_compare_csv(std::ostream& os, const ExperimentSpec& spec,
                             const AdaptCompareResult& r) {
    os << config_header(spec);
    os << "e_rel,uniform_steps,adaptive_steps";
    if (spec.timing) os << ",uniform_wall_seconds,adaptive_wall_seconds";
    os << '\n';
    os << format_number(r.e_rel) << ',' << r.uniform_steps << ',' << r.adaptive_steps;
    if (spec.timing) os << ',' << format_number(r.uniform_wall) << ',' << format_number(r.adaptive_wall);
    os << '\n';
}

void write_snapshot(std::ostream& os, const Field& f) {
    const Grid& g = f.grid();
    os << g.nx() << ' ' << g.ny() << ' ' << to_string(g.boundary()) << '\n';
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            if (i > 0) os << ' ';
            os << format_number(f.at(i, j));
        }
        os << '\n';
    }
}

void run_experiment(const ExperimentSpec& spec, std::ostream& log) {
    if (spec.out.empty()) throw ContractError("no output path given");
    log << config_header(spec);

    switch (spec.experiment) {
        case Experiment::ConvergePoly:
        case Experiment::ConvergeLog: {
            const ConvergenceResult r = run_convergence(spec);
            auto os = open_output(spec.out);
            write_convergence_csv(os, spec, r);
            for (const auto& row : r.rows) {
                log << "N=" << row.n << " tau_max=" << format_number(row.tau_max)
                    << " e=" << format_number(row.h1_error)
                    << " rate=" << (row.rate ? format_number(*row.rate) : "-") << '\n';
            }
            break;
        }
        case Experiment::Simulate: {
            const SimConfig cfg = sim_config(spec);
            SnapshotWriter<Field> snaps(spec, log, &identity_projection);
            const auto r = run(cfg, initial_field(spec, cfg.grid), std::ref(snaps));
            auto os = open_output(spec.out);
            write_trace_csv(os, spec, r.trace, false);
            log << "steps=" << r.stats.steps << " final_energy=" << format_number(r.trace.back().energy)
                << " max_norm=" << format_number(r.stats.max_norm) << '\n';
            break;
        }
        case Experiment::AdaptCompare: {
            const AdaptCompareResult r = run_adapt_compare(spec);
            auto os = open_output(spec.out);
            write_adapt_compare_csv(os, spec, r);
            log << "e_rel=" << format_number(r.e_rel) << " uniform_steps=" << r.uniform_steps
                << " adaptive_steps=" << r.adaptive_steps
                << " uniform_wall=" << format_number(r.uniform_wall)
                << " adaptive_wall=" << format_number(r.adaptive_wall) << '\n';
            break;
        }
        case Experiment::Ternary: {
            const SimConfig cfg = sim_config(spec);
            SnapshotWriter<TernaryState> snaps(spec, log, &ternary_projection);
            const auto r = run(cfg, random_ternary(cfg.grid, spec.seed), std::ref(snaps));
            auto os = open_output(spec.out);
            write_trace_csv(os, spec, r.trace, true);
            os << "# summary.steps=" << r.stats.steps << '\n';
            os << "# summary.max_mass_drift=" << format_number(r.stats.mass_drift) << '\n';
            os << "# summary.max_hyperplane_violation=" << format_number(r.stats.hyperplane)
               << '\n';
            log << "steps=" << r.stats.steps
                << " max_mass_drift=" << format_number(r.stats.mass_drift)
                << " max_hyperplane_violation=" << format_number(r.stats.hyperplane) << '\n';
            break;
        }
    }
}

}  // namespace acsplit
