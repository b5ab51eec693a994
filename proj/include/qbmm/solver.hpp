#pragma once

#include <array>
#include <string>
#include <vector>

#include "qbmm/frontier.hpp"
#include "qbmm/moments.hpp"

namespace qbmm {

// Uniform 1D mesh on [x_min, x_max].
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 0;

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int j) const { return x_min + (j + 0.5) * dx(); }
};

// Ghost-cell policy. `outflow` copies the adjacent interior cell (far-field
// supply for data filling the whole domain); `vacuum` uses empty ghosts (open
// boundary into a vacuum exterior, the ambient of compact-support data);
// `periodic` wraps.
enum class BoundaryKind { outflow, periodic, vacuum };

struct SolverConfig {
    double cfl = 1.0;  // Courant number in (0, 1]
    ConeParameters cone;
    BoundaryKind boundary = BoundaryKind::outflow;
    double t_end = 0.0;
};

// Cell-averaged moment field plus running diagnostics.
struct FieldState {
    Grid1D grid;
    std::vector<MomentVector> cells;
    double time = 0.0;

    // Reference density for the vacuum threshold: cells with
    // m0 <= 1e-12 * rho_ref are skipped by inversion and diagnostics and
    // contribute zero flux (their content is kept, never zeroed).
    double rho_ref = 1.0;

    long steps = 0;
    long clamp_events = 0;              // cone clamps applied so far
    double max_cone_ratio = 0.0;        // max |q|/(m0 e) over interior cells, all steps
    double max_conservation_defect = 0.0;  // max per-step defect of sum(M) vs boundary fluxes, relative
    double min_e_scaled = 0.0;  // most negative e / (m0|m2| + m1^2) seen (0 if e never went negative)

    bool is_vacuum(const MomentVector& m) const { return m.m0 <= 1e-12 * rho_ref; }
};

enum class CaseId { two_packets, four_packets, free_boundary };

// Throws CaseError for an unknown name.
CaseId case_from_name(const std::string& name);
std::string case_name(CaseId id);

// Ghost policy the reference runs need: copy-ghosts for the full-domain
// four-packet datum, vacuum ghosts for the compact-support cases.
BoundaryKind default_boundary(CaseId id);

// Cell averages of the case's initial datum on `grid`. Piecewise-constant
// pieces are integrated exactly (length-weighted); the free-boundary
// rarefaction is sampled at cell centers by default or integrated exactly per
// cell with exact_init = true.
FieldState initialize_case(CaseId id, const Grid1D& grid, bool exact_init = false);

// Kinetic upwind flux through one interface: component k in 0..3 sums
// rho*max(0,v)*v^k over the left state's nodes plus rho*min(0,v)*v^k over the
// right state's nodes. Vacuum is passed as a zero-weight state and
// contributes nothing.
MomentVector interface_flux(const QuadratureState& left_u, const QuadratureState& right_u);

// One conservative step: dt = cfl*dx / max_j max(|v1|,|v2|) (capped so the
// run lands exactly on t_end; a zero-velocity field jumps straight to t_end),
// kinetic upwind fluxes on the inverted states, then the cone clamp on every
// updated cell. Returns the dt taken. Throws DomainError if a cell leaves
// the moment space beyond the round-off tolerance.
double step(FieldState& state, const SolverConfig& config);

// Repeated steps until state.time == t_end exactly.
void advance_to_time(FieldState& state, const SolverConfig& config);

// Ghost states for both ends under the configured policy (index 0 = left
// ghost, 1 = right ghost).
std::array<MomentVector, 2> apply_boundary(const FieldState& state, const SolverConfig& config);

}  // namespace qbmm
