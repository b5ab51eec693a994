#include "qbmm/moments.hpp"

#include <cmath>
#include <string>

#include "qbmm/errors.hpp"

namespace qbmm {

namespace {

// a*b - c*d with one compensated rounding (Kahan): exact to ~1.5 ulp even
// under heavy cancellation.
double diff_of_products(double a, double b, double c, double d) {
    double cd = c * d;
    double err = std::fma(-c, d, cd);
    double dif = std::fma(a, b, -cd);
    return dif + err;
}

void require_positive_density(double m0, const char* who) {
    if (!(m0 > 0.0)) {
        throw DomainError(std::string(who) + ": nonpositive density m0 = " + std::to_string(m0));
    }
}

// Negativity tolerance for e: round-off on the cancellation m0*m2 - m1^2.
double e_tolerance(const MomentVector& m) {
    return 1e-12 * (m.m0 * std::fabs(m.m2) + m.m1 * m.m1);
}

}  // namespace

double int_pow(double v, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= v;
    return r;
}

MomentVector moments_from_quadrature(const QuadratureState& u) {
    MomentVector m;
    for (int k = 0; k < 4; ++k) {
        m[k] = u.rho1 * int_pow(u.v1, k) + u.rho2 * int_pow(u.v2, k);
    }
    return m;
}

ReducedMoments reduced_from_moments(const MomentVector& m) {
    require_positive_density(m.m0, "reduced_from_moments");
    double e = diff_of_products(m.m0, m.m2, m.m1, m.m1);
    // q = m0^2 m3 - m1^3 - 3 m1 e, with the leading cancellation compensated.
    double a = diff_of_products(m.m0 * m.m0, m.m3, m.m1 * m.m1, m.m1);
    double q = a - 3.0 * m.m1 * e;
    return {m.m0, m.m1, e, q};
}

QuadratureState quadrature_from_moments(const MomentVector& m, double eps1) {
    ReducedMoments r = reduced_from_moments(m);
    double e = r.e;
    if (e < 0.0) {
        if (e < -e_tolerance(m)) {
            throw DomainError("quadrature_from_moments: unrealizable moments, e = " +
                              std::to_string(e));
        }
        e = 0.0;
    }
    double u = m.m1 / m.m0;
    double ebar = e / (m.m0 * m.m0);
    if (ebar <= eps1) {
        return {0.5 * m.m0, 0.5 * m.m0, u, u};
    }
    // Centered abscissas vb1 > 0 > vb2 solve vb^2 - (q/(m0 e)) vb - e/m0^2 = 0;
    // both branches below avoid cancellation in the quadratic formula.
    double qbar = r.q / (m.m0 * m.m0 * m.m0);
    double s = qbar / ebar;
    double d = std::sqrt(s * s + 4.0 * ebar);
    double vb1, vb2;
    if (s >= 0.0) {
        vb1 = 0.5 * (s + d);
        vb2 = -2.0 * ebar / (s + d);
    } else {
        vb2 = 0.5 * (s - d);
        vb1 = 2.0 * ebar / (d - s);
    }
    double rho1 = m.m0 * (-vb2 / d);
    double rho2 = m.m0 * (vb1 / d);
    return {rho1, rho2, u + vb1, u + vb2};
}

SigmaCoefficients sigma_coefficients(const MomentVector& m) {
    require_positive_density(m.m0, "sigma_coefficients");
    double e = diff_of_products(m.m0, m.m2, m.m1, m.m1);
    if (e <= 0.0) {
        throw DomainError("sigma_coefficients: frontier state (e = " + std::to_string(e) + ")");
    }
    double sigma0 = diff_of_products(m.m1, m.m3, m.m2, m.m2) / e;
    double sigma1 = diff_of_products(m.m1, m.m2, m.m0, m.m3) / e;
    return {sigma0, sigma1};
}

double closure_m4(const MomentVector& m, double eps1) {
    require_positive_density(m.m0, "closure_m4");
    double e = diff_of_products(m.m0, m.m2, m.m1, m.m1);
    if (e < -e_tolerance(m)) {
        throw DomainError("closure_m4: unrealizable moments, e = " + std::to_string(e));
    }
    if (!(e / (m.m0 * m.m0) > eps1)) {
        double v = m.m1 / m.m0;
        return m.m1 * v * v * v;  // m1^4 / m0^3
    }
    SigmaCoefficients s = sigma_coefficients(m);
    return -m.m2 * s.sigma0 - m.m3 * s.sigma1;
}

MomentVector flux_vector(const MomentVector& m, double eps1) {
    return {m.m1, m.m2, m.m3, closure_m4(m, eps1)};
}

double flux_from_reduced(const ReducedMoments& r) {
    require_positive_density(r.m0, "flux_from_reduced");
    if (r.e <= 0.0) {
        throw DomainError("flux_from_reduced: frontier state (e = " + std::to_string(r.e) + ")");
    }
    double u = r.m1 / r.m0;
    double ebar = r.e / (r.m0 * r.m0);
    double qbar = r.q / (r.m0 * r.m0 * r.m0);
    double s = qbar / ebar;
    double m4_over_m0 = -(s * u + u * u - ebar) * (ebar + u * u) +
                        (s + 2.0 * u) * (qbar + u * u * u + 3.0 * u * ebar);
    return r.m0 * m4_over_m0;
}

std::array<std::array<double, 4>, 4> flux_jacobian(const MomentVector& m) {
    SigmaCoefficients s = sigma_coefficients(m);
    std::array<std::array<double, 4>, 4> j{};
    j[0][1] = 1.0;
    j[1][2] = 1.0;
    j[2][3] = 1.0;
    j[3][0] = -s.sigma0 * s.sigma0;
    j[3][1] = -2.0 * s.sigma0 * s.sigma1;
    j[3][2] = -2.0 * s.sigma0 - s.sigma1 * s.sigma1;
    j[3][3] = -2.0 * s.sigma1;
    return j;
}

}  // namespace qbmm
