// Command-line front end for the Strang splitting experiments.
//
// Exit codes: 0 success, 1 precondition or solver failure, 2 bad flags.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acsplit/errors.hpp"
#include "acsplit/experiments.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadFlags = 2;

struct Flags {
    std::string experiment;
    std::string potential = "polynomial";
    std::optional<int> grid;
    std::optional<std::string> boundary;
    std::optional<std::string> laplacian;
    std::optional<double> eps, theta, theta_c, t_final, tau, tau_min, tau_max, alpha;
    std::optional<std::vector<int>> n_list;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::vector<double>> snapshot_times;
    std::optional<int> record_every;
    std::optional<std::size_t> max_steps;
    bool timing = false;
};

template <class T>
void override_if(T& target, const std::optional<T>& value) {
    if (value) target = *value;
}

acsplit::ExperimentSpec resolve(const Flags& f) {
    using namespace acsplit;
    const PotentialKind kind =
        f.potential == "logarithmic" ? PotentialKind::Logarithmic : PotentialKind::Polynomial;
    ExperimentSpec spec = default_spec(parse_experiment(f.experiment), kind);
    override_if(spec.grid, f.grid);
    if (f.boundary) spec.boundary = parse_boundary(*f.boundary);
    if (f.laplacian) spec.laplacian = parse_laplacian(*f.laplacian);
    override_if(spec.eps, f.eps);
    override_if(spec.theta, f.theta);
    override_if(spec.theta_c, f.theta_c);
    override_if(spec.t_final, f.t_final);
    override_if(spec.tau, f.tau);
    override_if(spec.tau_min, f.tau_min);
    override_if(spec.tau_max, f.tau_max);
    override_if(spec.alpha, f.alpha);
    override_if(spec.n_list, f.n_list);
    override_if(spec.seed, f.seed);
    override_if(spec.out, f.out);
    override_if(spec.snapshot_times, f.snapshot_times);
    override_if(spec.record_every, f.record_every);
    override_if(spec.max_steps, f.max_steps);
    spec.timing = f.timing;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable-step Strang splitting for Allen-Cahn: convergence, simulation, "
                 "adaptivity and ternary experiments"};
    Flags f;

    const std::vector<std::string> experiments{"converge-poly", "converge-log", "simulate",
                                               "adapt-compare", "ternary"};
    app.add_option("--experiment", f.experiment, "Experiment to run")
        ->required()
        ->check(CLI::IsMember(experiments));
    app.add_option("--potential", f.potential, "Scalar potential for simulate/adapt-compare")
        ->check(CLI::IsMember({"polynomial", "logarithmic"}));
    app.add_option("--grid", f.grid, "Modes per dimension (even, >= 4)");
    app.add_option("--boundary", f.boundary)->check(CLI::IsMember({"neumann", "periodic"}));
    app.add_option("--laplacian", f.laplacian,
                   "Symbol of the linear propagator (central keeps the maximum principle)")
        ->check(CLI::IsMember({"central", "spectral"}));
    app.add_option("--eps", f.eps, "Interface parameter; eps^2 is the mobility")
        ->check(CLI::PositiveNumber);
    app.add_option("--theta", f.theta)->check(CLI::PositiveNumber);
    app.add_option("--theta-c", f.theta_c)->check(CLI::PositiveNumber);
    app.add_option("--t-final", f.t_final)->check(CLI::NonNegativeNumber);
    app.add_option("--tau", f.tau, "Uniform / reference step")->check(CLI::PositiveNumber);
    app.add_option("--tau-min", f.tau_min)->check(CLI::PositiveNumber);
    app.add_option("--tau-max", f.tau_max)->check(CLI::PositiveNumber);
    app.add_option("--alpha", f.alpha)->check(CLI::NonNegativeNumber);
    app.add_option("--n-list", f.n_list, "Comma-separated step counts")->delimiter(',');
    app.add_option("--seed", f.seed);
    app.add_option("--out", f.out, "Output CSV path");
    app.add_option("--snapshot-times", f.snapshot_times, "Comma-separated snapshot times")
        ->delimiter(',');
    app.add_option("--record-every", f.record_every)->check(CLI::PositiveNumber);
    app.add_option("--max-steps", f.max_steps, "Stop after this many steps (0: no cap)");
    app.add_flag("--timing", f.timing, "Add wall-clock columns (output no longer reproducible)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadFlags;
    }

    acsplit::ExperimentSpec spec;
    try {
        spec = resolve(f);
        // Constructing the grid validates the size/boundary combination up front.
        (void)acsplit::sim_config(spec);
    } catch (const acsplit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadFlags;
    }

    try {
        acsplit::run_experiment(spec, std::cout);
    } catch (const acsplit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
