#pragma once

#include <utility>
#include <vector>

#include "qbmm/moments.hpp"

namespace qbmm {

// Entropy generator S(v) = v^(2*alpha) plus an optional polynomial tail
// (tail[k] multiplies v^k). Half-integer alpha is encoded by the integer
// power two_alpha = 2*alpha. Derivatives are analytic. S must have a
// nonnegative fourth derivative for the admissibility claims, i.e.
// two_alpha in {0, 1, 2, 3} (conservation pairs) or two_alpha >= 4.
struct EntropySpec {
    int two_alpha = 0;
    std::vector<double> tail;

    double value(double v) const;
    double d1(double v) const;
    double d2(double v) const;
};

// (rho1 S(v1) + rho2 S(v2), rho1 v1 S(v1) + rho2 v2 S(v2)). For
// two_alpha = k in {0,1,2,3} with no tail this is bitwise equal to
// (m_k, m_{k+1}) of moments_from_quadrature(u).
std::pair<double, double> entropy_pair_eval(const QuadratureState& u, const EntropySpec& s);

// Left-hand sides of the sufficient admissibility condition:
//   F1 = 6(S1 - S2) - 4(v1 - v2) S1' - 2(v1 - v2) S2' + (v1 - v2)^2 S1''
// and F2 = F1 with v1 and v2 exchanged. Both are >= 0 whenever S'''' >= 0.
std::pair<double, double> entropy_condition_residuals(double v1, double v2, const EntropySpec& s);

enum class WaveSide { left, right };

// Per-unit-time entropy production of one wave of a measure solution:
//   sigma*[eta] - [G] + mass_rate*S(sigma),
// where [A] = A(left of the wave) - A(right of the wave); `inner` is the star
// state, `outer` the data state beyond the wave. Entropic solutions require
// <= 0 for strict entropies (two_alpha >= 4) and exactly 0 for the
// conservation pairs two_alpha in {0, 1}.
double riemann_dissipation(double sigma, const MomentVector& inner, const MomentVector& outer,
                           double mass_rate, const EntropySpec& s, WaveSide side,
                           double eps1 = default_eps1);

}  // namespace qbmm
