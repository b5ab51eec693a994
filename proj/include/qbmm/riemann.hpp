#pragma once

#include <array>

#include "qbmm/moments.hpp"

namespace qbmm {

// Riemann datum: two constant states, both in the closed moment space.
struct RiemannData {
    MomentVector left;
    MomentVector right;
};

// One wave of a measure solution: trajectory x = speed * t carrying a point
// mass growing linearly in time (mass_rate = m(t)/t >= 0; 0 means a plain
// contact with no concentration). The mass's moment vector at time t is
// mass_rate * t * (1, speed, speed^2, speed^3).
struct DeltaWave {
    double speed = 0.0;
    double mass_rate = 0.0;
};

// Star state between two delta-waves (left_wave.speed <= right_wave.speed).
struct MeasureSolution {
    MomentVector star;
    DeltaWave left_wave;
    DeltaWave right_wave;
};

// Solution of the symmetric four-packet configuration: two counter-propagating
// two-node states collapse onto a star state bracketed by delta-shocks at
// x = +-sigma*t, each accreting mass at rate mu.
struct FourPacketStar {
    double rho_star = 0.0;
    double v_star = 0.0;
    double sigma = 0.0;
    double mu = 0.0;
};

// Generalized jump conditions of both waves, per unit time. Components 0..3:
//   sigma_L (M_L - M*) - (F(M_L) - F(M*)) + mu_L (1, s, s^2, s^3),
// components 4..7 the same with sigma_R (M* - M_R) - (F(M*) - F(M_R)) + ...
// All-zero iff (data, sol) is a measure solution.
std::array<double, 8> generalized_rh_residual(const RiemannData& data, const MeasureSolution& sol,
                                              double eps1 = default_eps1);

// Left/right states and the measure solution of the symmetric four-packet
// configuration built from a solved star (oracle geometry is centered at 0).
MomentVector four_packet_left_state(double rho, double v1, double v2);
MomentVector four_packet_right_state(double rho, double v1, double v2);
MomentVector four_packet_star_state(const FourPacketStar& star);
MeasureSolution four_packet_measure_solution(const FourPacketStar& star);

// Damped-Newton solve of the four nontrivial jump equations for
// (rho_star, v_star, sigma, mu), to residual < 1e-12, then verified entropic
// (dissipation <= 0 for S = v^4, v^6, v^8). Requires v2 > v1 > 0, rho > 0.
// Throws ConvergenceError on failure or a non-entropic root.
FourPacketStar solve_four_packet_star(double rho, double v1, double v2);

// A monokinetic slab [x_left, x_right] with density rho and velocity v at
// t = 0, transported freely.
struct Packet {
    double rho = 0.0;
    double v = 0.0;
    double x_left = 0.0;
    double x_right = 0.0;
};

// Exact moment field of two freely crossing monokinetic packets: vacuum
// outside the supports, a single-node state where one packet sits, the
// two-node superposition in the overlap.
MomentVector two_packet_solution_at(double x, double t, const Packet& left, const Packet& right);

// Pointwise four-packet measure solution (geometry centered at x = 0):
// M_L for x < -sigma t, the star state for |x| < sigma t, M_R beyond; on the
// shock trajectories the point mass is reported via the marker fields.
struct FourPacketSample {
    MomentVector moments;
    bool on_delta = false;
    double delta_mass = 0.0;   // mu * t
    double delta_speed = 0.0;  // +-sigma
};

FourPacketSample four_packet_solution_at(double x, double t, const FourPacketStar& star, double rho,
                                         double v1, double v2);

// Exact cell average of the four-packet solution over
// [x_center - dx/2, x_center + dx/2): length-weighted plateau averages plus
// mu*t*(1, s, s^2, s^3)/dx for a delta contained in the half-open cell.
MomentVector four_packet_cell_average(double x_center, double dx, double t,
                                      const FourPacketStar& star, double rho, double v1, double v2);

// Piecewise-linear free-boundary solution (valid for 0 <= t <= 0.2): node 2
// is the square wave rho = 0.5, v = 1 translated from [0, 0.5]; node 1
// carries rho = 0.5 on its v = 1 and v = 2 sub-packets and the rarefaction
// rho = 0.15/(0.3+t), v = 1 + (x - 0.1 - t)/(0.3+t) on [0.1+t, 0.4+2t].
// Throws CaseError outside the validity window.
MomentVector free_boundary_solution_at(double x, double t);

}  // namespace qbmm
