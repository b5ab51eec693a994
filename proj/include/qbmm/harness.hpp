#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbmm/riemann.hpp"
#include "qbmm/solver.hpp"

namespace qbmm {

// Cell-averaged analytic solution evaluator: x is the cell center, dx the
// cell width (for point-mass spreading), t the evaluation time.
using OracleFn = std::function<MomentVector(double x, double dx, double t)>;

// L1 error per moment: dx * sum_j |cells_j - oracle(x_j, dx, t)|. Throws
// CaseError if the field's time differs from t beyond round-off.
std::array<double, 4> l1_error(const FieldState& field, const OracleFn& oracle, double t);

// L1 norm of the oracle itself on the field's grid (denominators for errors
// relative to the analytic solution).
std::array<double, 4> l1_norm_oracle(const FieldState& field, const OracleFn& oracle, double t);

// Per-moment least-squares slope of log2(error) against log2(n_cells),
// negated. Needs at least two grids; throws CaseError otherwise.
std::array<double, 4> convergence_order(const std::vector<int>& n_cells,
                                        const std::vector<std::array<double, 4>>& errors);

// The analytic oracle of a case (throws CaseError when none is valid at t).
OracleFn case_oracle(CaseId id);

// Everything one solve produces, serializable to JSON losslessly.
struct RunReport {
    std::string case_name;
    int n_cells = 0;
    double cfl = 0.0;
    double t_end = 0.0;
    double eps1 = default_eps1;
    double eta = 2.0;
    std::string boundary;
    long steps = 0;
    double duration_seconds = 0.0;
    std::optional<std::array<double, 4>> l1_abs;  // absent when no oracle applies
    std::optional<std::array<double, 4>> l1_rel;
    long clamp_events = 0;
    double max_cone_ratio = 0.0;
    double max_conservation_defect = 0.0;
    double min_e_scaled = 0.0;
    std::array<double, 4> total_moments{};  // domain sums at t_end, times dx
};

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

// One row per cell: x, M0..M3, rho1, rho2, v1, v2, e, q, q/(m0 e), q/e^(3/2).
// Vacuum cells leave the quadrature and ratio columns empty; frontier cells
// (e/m0^2 <= eps1) leave the two ratio columns empty. %.17g, LF endings.
void write_fields_csv(const FieldState& state, const std::string& path,
                      double eps1 = default_eps1);

// Reader for the writer's output; returns the cells (moments only are needed
// to reconstruct the field; the remaining columns are validated as parseable).
std::vector<MomentVector> read_fields_csv(const std::string& path);

// Command-line driver (subcommands: run, convergence, riemann). Returns the
// process exit code: 0 success, 1 usage, 2 numerical failure, 3 I/O.
int cli_main(int argc, char** argv);

}  // namespace qbmm
