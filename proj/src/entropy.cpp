#include "qbmm/entropy.hpp"

namespace qbmm {

namespace {

double tail_value(const std::vector<double>& tail, double v) {
    double r = 0.0;
    for (std::size_t i = tail.size(); i-- > 0;) r = r * v + tail[i];
    return r;
}

double tail_d1(const std::vector<double>& tail, double v) {
    double r = 0.0;
    for (std::size_t i = tail.size(); i-- > 1;) r = r * v + static_cast<double>(i) * tail[i];
    return r;
}

double tail_d2(const std::vector<double>& tail, double v) {
    double r = 0.0;
    for (std::size_t i = tail.size(); i-- > 2;) {
        r = r * v + static_cast<double>(i) * static_cast<double>(i - 1) * tail[i];
    }
    return r;
}

}  // namespace

double EntropySpec::value(double v) const {
    double s = int_pow(v, two_alpha);
    return tail.empty() ? s : s + tail_value(tail, v);
}

double EntropySpec::d1(double v) const {
    double s = two_alpha == 0 ? 0.0 : two_alpha * int_pow(v, two_alpha - 1);
    return tail.empty() ? s : s + tail_d1(tail, v);
}

double EntropySpec::d2(double v) const {
    double s = two_alpha < 2 ? 0.0 : two_alpha * (two_alpha - 1) * int_pow(v, two_alpha - 2);
    return tail.empty() ? s : s + tail_d2(tail, v);
}

std::pair<double, double> entropy_pair_eval(const QuadratureState& u, const EntropySpec& s) {
    double s1 = s.value(u.v1);
    double s2 = s.value(u.v2);
    // Grouped so that for S = v^k the pair is bitwise the (m_k, m_{k+1}) sums
    // of moments_from_quadrature.
    double eta = u.rho1 * s1 + u.rho2 * s2;
    double flux = u.rho1 * (u.v1 * s1) + u.rho2 * (u.v2 * s2);
    return {eta, flux};
}

std::pair<double, double> entropy_condition_residuals(double v1, double v2, const EntropySpec& s) {
    auto one_side = [&s](double a, double b) {
        double dv = a - b;
        return 6.0 * (s.value(a) - s.value(b)) - 4.0 * dv * s.d1(a) - 2.0 * dv * s.d1(b) +
               dv * dv * s.d2(a);
    };
    return {one_side(v1, v2), one_side(v2, v1)};
}

double riemann_dissipation(double sigma, const MomentVector& inner, const MomentVector& outer,
                           double mass_rate, const EntropySpec& s, WaveSide side, double eps1) {
    auto [eta_in, g_in] = entropy_pair_eval(quadrature_from_moments(inner, eps1), s);
    auto [eta_out, g_out] = entropy_pair_eval(quadrature_from_moments(outer, eps1), s);
    // Jumps are taken left-of-wave minus right-of-wave: the outer state sits
    // left of a left wave and right of a right wave.
    double jump_eta = side == WaveSide::left ? eta_out - eta_in : eta_in - eta_out;
    double jump_g = side == WaveSide::left ? g_out - g_in : g_in - g_out;
    return sigma * jump_eta - jump_g + mass_rate * s.value(sigma);
}

}  // namespace qbmm
