#include "qbmm/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbmm/entropy.hpp"
#include "qbmm/errors.hpp"
#include "qbmm/frontier.hpp"

namespace qbmm {

namespace {

// Solves a 4x4 linear system in place by Gaussian elimination with partial
// pivoting. Throws ConvergenceError on a (numerically) singular matrix.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        }
        if (a[piv][col] == 0.0) {
            throw ConvergenceError("solve4: singular Jacobian");
        }
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 4; ++r) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, 4> x{};
    for (int r = 3; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 4; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

std::array<double, 4> jump_residual(double sigma, const MomentVector& ahead,
                                    const MomentVector& behind, double mass_rate, double eps1) {
    MomentVector dm = ahead - behind;
    MomentVector df = flux_vector(ahead, eps1) - flux_vector(behind, eps1);
    std::array<double, 4> r{};
    for (int k = 0; k < 4; ++k) {
        r[k] = sigma * dm[k] - df[k] + mass_rate * int_pow(sigma, k);
    }
    return r;
}

}  // namespace

std::array<double, 8> generalized_rh_residual(const RiemannData& data, const MeasureSolution& sol,
                                              double eps1) {
    auto left = jump_residual(sol.left_wave.speed, data.left, sol.star, sol.left_wave.mass_rate,
                              eps1);
    auto right = jump_residual(sol.right_wave.speed, sol.star, data.right,
                               sol.right_wave.mass_rate, eps1);
    std::array<double, 8> r{};
    std::copy(left.begin(), left.end(), r.begin());
    std::copy(right.begin(), right.end(), r.begin() + 4);
    return r;
}

MomentVector four_packet_left_state(double rho, double v1, double v2) {
    return {rho, 0.5 * rho * (v1 + v2), 0.5 * rho * (v1 * v1 + v2 * v2),
            0.5 * rho * (v1 * v1 * v1 + v2 * v2 * v2)};
}

MomentVector four_packet_right_state(double rho, double v1, double v2) {
    MomentVector m = four_packet_left_state(rho, v1, v2);
    return {m.m0, -m.m1, m.m2, -m.m3};
}

MomentVector four_packet_star_state(const FourPacketStar& star) {
    return {star.rho_star, 0.0, star.rho_star * star.v_star * star.v_star, 0.0};
}

MeasureSolution four_packet_measure_solution(const FourPacketStar& star) {
    return {four_packet_star_state(star), {-star.sigma, star.mu}, {star.sigma, star.mu}};
}

FourPacketStar solve_four_packet_star(double rho, double v1, double v2) {
    if (!(rho > 0.0) || !(v1 > 0.0) || !(v2 > v1)) {
        throw DomainError("solve_four_packet_star: requires rho > 0 and v2 > v1 > 0");
    }
    double p1 = v1 + v2;
    double p2 = v1 * v1 + v2 * v2;
    double p3 = v1 * v1 * v1 + v2 * v2 * v2;
    double p4 = v1 * v1 * v1 * v1 + v2 * v2 * v2 * v2;

    // Unknowns z = (rho_star, v_star, sigma, mu): the four nontrivial scalar
    // jump equations of the symmetric configuration.
    auto residual = [&](const std::array<double, 4>& z) {
        auto [rs, vs, sg, mu] = z;
        return std::array<double, 4>{
            2.0 * sg * rs - 2.0 * sg * rho - rho * p1 + 2.0 * mu,
            2.0 * sg * rs * vs * vs - sg * rho * p2 - rho * p3 + 2.0 * mu * sg * sg,
            2.0 * rs * vs * vs - sg * rho * p1 - rho * p2 - 2.0 * mu * sg,
            2.0 * rs * vs * vs * vs * vs - sg * rho * p3 - rho * p4 - 2.0 * mu * sg * sg * sg};
    };
    auto jacobian = [&](const std::array<double, 4>& z) {
        auto [rs, vs, sg, mu] = z;
        std::array<std::array<double, 4>, 4> j{};
        j[0] = {2.0 * sg, 0.0, 2.0 * rs - 2.0 * rho, 2.0};
        j[1] = {2.0 * sg * vs * vs, 4.0 * sg * rs * vs,
                2.0 * rs * vs * vs - rho * p2 + 4.0 * mu * sg, 2.0 * sg * sg};
        j[2] = {2.0 * vs * vs, 4.0 * rs * vs, -rho * p1 - 2.0 * mu, -2.0 * sg};
        j[3] = {2.0 * vs * vs * vs * vs, 8.0 * rs * vs * vs * vs,
                -rho * p3 - 6.0 * mu * sg * sg, -2.0 * sg * sg * sg};
        return j;
    };
    auto norm_inf = [](const std::array<double, 4>& r) {
        return std::max(std::max(std::fabs(r[0]), std::fabs(r[1])),
                        std::max(std::fabs(r[2]), std::fabs(r[3])));
    };

    std::array<double, 4> z = {2.0 * rho, 0.5 * p1, 0.5 * p1, 0.25 * rho * (v2 - v1)};
    constexpr double tol = 1e-12;
    double rnorm = norm_inf(residual(z));
    for (int iter = 0; iter < 100 && rnorm >= tol; ++iter) {
        auto r = residual(z);
        auto d = solve4(jacobian(z), {-r[0], -r[1], -r[2], -r[3]});
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= 0x1p-30) {
            std::array<double, 4> trial = {z[0] + lambda * d[0], z[1] + lambda * d[1],
                                           z[2] + lambda * d[2], z[3] + lambda * d[3]};
            double tnorm = norm_inf(residual(trial));
            if (tnorm < rnorm) {
                z = trial;
                rnorm = tnorm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }
    if (!(rnorm < tol)) {
        throw ConvergenceError("solve_four_packet_star: no convergence, residual = " +
                               std::to_string(rnorm));
    }

    FourPacketStar star{z[0], z[1], z[2], z[3]};
    MomentVector ms = four_packet_star_state(star);
    MomentVector ml = four_packet_left_state(rho, v1, v2);
    MomentVector mr = four_packet_right_state(rho, v1, v2);
    for (int two_alpha : {4, 6, 8}) {
        EntropySpec s{two_alpha, {}};
        double d_right = riemann_dissipation(star.sigma, ms, mr, star.mu, s, WaveSide::right);
        double d_left = riemann_dissipation(-star.sigma, ms, ml, star.mu, s, WaveSide::left);
        if (d_right > 1e-10 || d_left > 1e-10) {
            throw ConvergenceError("solve_four_packet_star: non-entropic root, D(" +
                                   std::to_string(two_alpha / 2) + ") = " +
                                   std::to_string(std::max(d_right, d_left)));
        }
    }
    return star;
}

MomentVector two_packet_solution_at(double x, double t, const Packet& left, const Packet& right) {
    auto inside = [x, t](const Packet& p) {
        double a = p.x_left + p.v * t;
        double b = p.x_right + p.v * t;
        return x >= a && x < b;
    };
    bool in_left = inside(left);
    bool in_right = inside(right);
    if (in_left && in_right) {
        QuadratureState u = left.v >= right.v
                                ? QuadratureState{left.rho, right.rho, left.v, right.v}
                                : QuadratureState{right.rho, left.rho, right.v, left.v};
        return moments_from_quadrature(u);
    }
    if (in_left) return monokinetic_state(left.rho, left.rho * left.v);
    if (in_right) return monokinetic_state(right.rho, right.rho * right.v);
    return {};
}

FourPacketSample four_packet_solution_at(double x, double t, const FourPacketStar& star,
                                         double rho, double v1, double v2) {
    if (!(star.rho_star > 0.0)) {
        throw DomainError("four_packet_solution_at: unsolved star state");
    }
    double xs = star.sigma * t;
    FourPacketSample sample;
    if (x == -xs || x == xs) {
        sample.on_delta = true;
        sample.delta_mass = star.mu * t;
        sample.delta_speed = x < 0.0 ? -star.sigma : star.sigma;
        sample.moments = four_packet_star_state(star);  // plateau underneath the point mass
        return sample;
    }
    if (x < -xs) {
        sample.moments = four_packet_left_state(rho, v1, v2);
    } else if (x > xs) {
        sample.moments = four_packet_right_state(rho, v1, v2);
    } else {
        sample.moments = four_packet_star_state(star);
    }
    return sample;
}

MomentVector four_packet_cell_average(double x_center, double dx, double t,
                                      const FourPacketStar& star, double rho, double v1,
                                      double v2) {
    if (!(star.rho_star > 0.0)) {
        throw DomainError("four_packet_cell_average: unsolved star state");
    }
    double xl = x_center - 0.5 * dx;
    double xr = x_center + 0.5 * dx;
    double xs = star.sigma * t;
    double len_left = std::max(0.0, std::min(xr, -xs) - xl);
    double len_right = std::max(0.0, xr - std::max(xl, xs));
    double len_mid = std::max(0.0, dx - len_left - len_right);
    MomentVector avg = (len_left / dx) * four_packet_left_state(rho, v1, v2) +
                       (len_mid / dx) * four_packet_star_state(star) +
                       (len_right / dx) * four_packet_right_state(rho, v1, v2);
    for (double speed : {-star.sigma, star.sigma}) {
        double pos = speed * t;
        if (pos >= xl && pos < xr) {
            double mass = star.mu * t / dx;
            avg = avg + MomentVector{mass, mass * speed, mass * speed * speed,
                                     mass * speed * speed * speed};
        }
    }
    return avg;
}

MomentVector free_boundary_solution_at(double x, double t) {
    if (!(t >= 0.0) || t > 0.2 + 1e-9) {
        throw CaseError("free_boundary_solution_at: valid for 0 <= t <= 0.2, got t = " +
                        std::to_string(t));
    }
    MomentVector m;
    auto add_node = [&m](double rho, double v) {
        m = m + MomentVector{rho, rho * v, rho * v * v, rho * v * v * v};
    };
    // Node 2: square wave rho = 0.5, v = 1 on [t, 0.5 + t).
    if (x >= t && x < 0.5 + t) add_node(0.5, 1.0);
    // Node 1: v = 1 packet, stretched rarefaction, v = 2 packet.
    if (x >= t && x < 0.1 + t) {
        add_node(0.5, 1.0);
    } else if (x >= 0.1 + t && x < 0.4 + 2.0 * t) {
        add_node(0.15 / (0.3 + t), 1.0 + (x - 0.1 - t) / (0.3 + t));
    } else if (x >= 0.4 + 2.0 * t && x < 0.5 + 2.0 * t) {
        add_node(0.5, 2.0);
    }
    return m;
}

}  // namespace qbmm
