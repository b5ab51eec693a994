#pragma once

#include <array>

namespace qbmm {

// Default dispersion threshold: states with e/m0^2 at or below this are
// treated as monokinetic by the inversion and the flux closure.
inline constexpr double default_eps1 = 1e-9;

// Conserved state M = (M0, M1, M2, M3): number density, momentum, second and
// third velocity moments.
struct MomentVector {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;

    double& operator[](int i) { return (&m0)[i]; }
    double operator[](int i) const { return (&m0)[i]; }
};

inline MomentVector operator+(const MomentVector& a, const MomentVector& b) {
    return {a.m0 + b.m0, a.m1 + b.m1, a.m2 + b.m2, a.m3 + b.m3};
}
inline MomentVector operator-(const MomentVector& a, const MomentVector& b) {
    return {a.m0 - b.m0, a.m1 - b.m1, a.m2 - b.m2, a.m3 - b.m3};
}
inline MomentVector operator*(double c, const MomentVector& m) {
    return {c * m.m0, c * m.m1, c * m.m2, c * m.m3};
}

// Two-node kinetic representation U = (rho1, rho2, v1, v2) with nonnegative
// weights and the canonical ordering v1 >= v2 (equality only for monokinetic
// states).
struct QuadratureState {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
};

// Frontier-adapted coordinates. Both e and q are unnormalized:
//   e = m0*m2 - m1^2,   q = (m3*m0^2 - m1^3) - 3*m1*e.
// Interior of the moment space: e > 0; frontier: e = 0.
struct ReducedMoments {
    double m0 = 0.0;
    double m1 = 0.0;
    double e = 0.0;
    double q = 0.0;
};

// Closure coefficients: sigma0 = v1*v2, sigma1 = -(v1 + v2).
struct SigmaCoefficients {
    double sigma0 = 0.0;
    double sigma1 = 0.0;
};

// v^k by repeated multiplication. Used for moments and entropy pairs alike so
// that the conservation identities hold bitwise.
double int_pow(double v, int k);

// (rho1 + rho2, rho1 v1 + rho2 v2, rho1 v1^2 + rho2 v2^2, rho1 v1^3 + rho2 v2^3).
MomentVector moments_from_quadrature(const QuadratureState& u);

// Throws DomainError if m0 <= 0.
ReducedMoments reduced_from_moments(const MomentVector& m);

// Two-node inversion. Interior states (e/m0^2 > eps1) get the unique
// representation with v1 > v2; at or below eps1 the monokinetic convention
// rho1 = rho2 = m0/2, v1 = v2 = m1/m0 is returned. Throws DomainError for
// m0 <= 0 or e below the negativity tolerance.
QuadratureState quadrature_from_moments(const MomentVector& m, double eps1 = default_eps1);

// sigma0 = (m1 m3 - m2^2)/e, sigma1 = (m1 m2 - m0 m3)/e. Throws DomainError
// at the frontier (e <= 0).
SigmaCoefficients sigma_coefficients(const MomentVector& m);

// Closing flux moment: -m2 sigma0 - m3 sigma1 in the interior, m1^4/m0^3 at
// the frontier (e/m0^2 <= eps1).
double closure_m4(const MomentVector& m, double eps1 = default_eps1);

// F(M) = (m1, m2, m3, closure_m4(m)).
MomentVector flux_vector(const MomentVector& m, double eps1 = default_eps1);

// The closing flux moment evaluated from (m0, m1, e, q) only; equals
// closure_m4 on interior states. Throws DomainError if e <= 0.
double flux_from_reduced(const ReducedMoments& r);

// Companion-form Jacobian dF/dM; rows 0..2 are the shift, last row is
// (-sigma0^2, -2 sigma0 sigma1, -2 sigma0 - sigma1^2, -2 sigma1). Its
// characteristic polynomial is (x^2 + sigma1 x + sigma0)^2 = (x-v1)^2 (x-v2)^2.
std::array<std::array<double, 4>, 4> flux_jacobian(const MomentVector& m);

}  // namespace qbmm
