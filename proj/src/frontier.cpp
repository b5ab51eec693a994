#include "qbmm/frontier.hpp"

#include <cmath>
#include <string>

#include "qbmm/errors.hpp"

namespace qbmm {

FrontierRegime frontier_regime_limits(double m0, double m1, double q) {
    if (!(m0 > 0.0)) {
        throw DomainError("frontier_regime_limits: nonpositive density m0 = " +
                          std::to_string(m0));
    }
    double v = m1 / m0;
    FrontierRegime r;
    if (q > 0.0) {
        // The light fast node escapes to +inf; all mass ends on the slow node.
        r.kind = RegimeKind::positive_q;
        r.rho1_limit = 0.0;
        r.rho2_limit = m0;
        r.v1_unbounded = true;
        r.v2_limit = v;
    } else if (q < 0.0) {
        r.kind = RegimeKind::negative_q;
        r.rho1_limit = m0;
        r.rho2_limit = 0.0;
        r.v1_limit = v;
        r.v2_unbounded = true;
    } else {
        r.kind = RegimeKind::zero_q;
        r.rho1_limit = 0.5 * m0;
        r.rho2_limit = 0.5 * m0;
        r.v1_limit = v;
        r.v2_limit = v;
    }
    return r;
}

bool cone_membership(const ReducedMoments& r, const ConeParameters& cone) {
    if (!(r.e > 0.0)) {
        throw DomainError("cone_membership: frontier state (e = " + std::to_string(r.e) + ")");
    }
    return std::fabs(r.q) <= cone.eta * r.m0 * r.e;
}

MomentVector cone_clamp(const MomentVector& m, const ConeParameters& cone) {
    ReducedMoments r = reduced_from_moments(m);
    if (!(r.e > 0.0)) {
        throw DomainError("cone_clamp: frontier state (e = " + std::to_string(r.e) + ")");
    }
    if (std::fabs(r.q) <= cone.eta * r.m0 * r.e) {
        return m;
    }
    double q_clamped = std::copysign(cone.eta * r.m0 * r.e, r.q);
    // Exact inverse of q(m3): reproduces q_clamped and leaves m0, m1, m2 alone.
    double m3 = (q_clamped + 3.0 * m.m1 * m.m0 * m.m2 - 2.0 * m.m1 * m.m1 * m.m1) / (m.m0 * m.m0);
    return {m.m0, m.m1, m.m2, m3};
}

MomentVector monokinetic_state(double m0, double m1) {
    if (!(m0 > 0.0)) {
        throw DomainError("monokinetic_state: nonpositive density m0 = " + std::to_string(m0));
    }
    double v = m1 / m0;
    return {m0, m1, m1 * v, m1 * v * v};
}

}  // namespace qbmm
