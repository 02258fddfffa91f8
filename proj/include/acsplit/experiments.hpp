#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acsplit/grid.hpp"
#include "acsplit/potential.hpp"
#include "acsplit/stepper.hpp"

namespace acsplit {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Experiment { ConvergePoly, ConvergeLog, Simulate, AdaptCompare, Ternary };

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view s);

enum class PotentialKind { Polynomial, Logarithmic };

/// Fully resolved description of one harness run. Every field is echoed into
/// the header of each output file.
struct ExperimentSpec {
    Experiment experiment = Experiment::ConvergePoly;
    PotentialKind potential = PotentialKind::Polynomial;
    int grid = 64;
    Boundary boundary = Boundary::Neumann;
    LaplacianKind laplacian = LaplacianKind::CentralDifference;
    double eps = 0.1;
    double theta = 0.25;
    double theta_c = 1.0;
    double t_final = 1.0;
    // Uniform step: the reference step for converge-*, the plain step otherwise.
    double tau = 1e-4;
    double tau_min = 1e-3;
    double tau_max = 0.1;
    double alpha = 100.0;
    std::vector<int> n_list{50, 100, 200, 400};
    std::uint64_t seed = 1;
    std::string out;
    std::vector<double> snapshot_times;
    int record_every = 1;
    std::size_t max_steps = 0;
    // Wall-clock columns are opt-in; they are the only non-reproducible output.
    bool timing = false;
};

// Desk-scale defaults for an experiment (grid, eps, horizon, plan parameters).
ExperimentSpec default_spec(Experiment e, PotentialKind potential = PotentialKind::Polynomial);

// '#'-prefixed key=value lines describing every field of an ExperimentSpec.
std::string config_header(const ExperimentSpec& spec);

PotentialSpec potential_of(const ExperimentSpec& spec);

struct ConvergenceRow {
    int n = 0;
    double tau_max = 0.0;
    double h1_error = 0.0;
    std::optional<double> rate;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    std::size_t reference_steps = 0;
    // Largest max norm seen in any of the runs, reference included.
    double max_norm = 0.0;
};

// Reference at t_final with the uniform step spec.tau, then one random
// normalized run per entry of n_list; rates use measured tau_max values.
ConvergenceResult run_convergence(const ExperimentSpec& spec);

struct AdaptCompareResult {
    double e_rel = 0.0;
    std::size_t uniform_steps = 0;
    std::size_t adaptive_steps = 0;
    double uniform_wall = 0.0;
    double adaptive_wall = 0.0;
};

// Uniform run with tau = tau_min against the adaptive plan, both to t_final.
AdaptCompareResult run_adapt_compare(const ExperimentSpec& spec);

// Initial condition used by an experiment for scalar potentials.
Field initial_field(const ExperimentSpec& spec, const Grid& grid);
SimConfig sim_config(const ExperimentSpec& spec);

void write_convergence_csv(std::ostream& os, const ExperimentSpec& spec,
                           const ConvergenceResult& r);
void write_trace_csv(std::ostream& os, const ExperimentSpec& spec, const Trace& trace,
                     bool ternary);
void write_adapt_compare_csv(std::ostream& os, const ExperimentSpec& spec,
                             const AdaptCompareResult& r);
// "nx ny boundary" header, then one grid row (fixed y) per line.
void write_snapshot(std::ostream& os, const Field& f);

// Runs the experiment and writes spec.out (plus snapshot files next to it).
// Progress and summaries go to `log`.
void run_experiment(const ExperimentSpec& spec, std::ostream& log);

// Fixed 17-significant-digit formatting used in every output file.
std::string format_number(double v);

}  // namespace acsplit
