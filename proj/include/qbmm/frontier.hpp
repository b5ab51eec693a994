#pragma once

#include "qbmm/moments.hpp"

namespace qbmm {

// Sign trichotomy of the reduced third moment governing the e -> 0+ limits.
enum class RegimeKind { positive_q, negative_q, zero_q, interior };

// Limiting two-node representation as e -> 0+ at fixed (m0, m1, q). An
// unbounded abscissa (v1 -> +inf for q > 0, v2 -> -inf for q < 0) is flagged;
// its value field is meaningless then.
struct FrontierRegime {
    RegimeKind kind = RegimeKind::interior;
    double rho1_limit = 0.0;
    double rho2_limit = 0.0;
    double v1_limit = 0.0;
    double v2_limit = 0.0;
    bool v1_unbounded = false;
    bool v2_unbounded = false;
};

// Admissible-cone parameters: |q| <= eta * m0 * e, plus the dispersion
// threshold eps1 on e/m0^2 below which a state is treated as monokinetic.
struct ConeParameters {
    double eta = 2.0;
    double eps1 = default_eps1;
};

// e -> 0+ limits at fixed (m0, m1, q). Throws DomainError if m0 <= 0.
FrontierRegime frontier_regime_limits(double m0, double m1, double q);

// True iff |q| <= eta * m0 * e. Throws DomainError if e <= 0.
bool cone_membership(const ReducedMoments& r, const ConeParameters& cone);

// Projects m onto the cone: m0, m1, m2 are preserved bitwise; if |q| exceeds
// eta*m0*e, m3 is recomputed from q_clamped = sign(q)*eta*m0*e via the exact
// inverse of the q definition. Idempotent. Throws DomainError if e <= 0.
MomentVector cone_clamp(const MomentVector& m, const ConeParameters& cone);

// (m0, m1, m1^2/m0, m1^3/m0^2): the moment vector of a single velocity group.
// Throws DomainError if m0 <= 0.
MomentVector monokinetic_state(double m0, double m1);

}  // namespace qbmm
