#include "qbmm/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qbmm/errors.hpp"

namespace qbmm {

namespace {

void require_time_match(const FieldState& field, double t) {
    if (std::fabs(field.time - t) > 1e-12 * std::max(1.0, std::fabs(t))) {
        throw CaseError("l1_error: field is at t = " + std::to_string(field.time) +
                        ", oracle requested at t = " + std::to_string(t));
    }
}

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::array<double, 4> l1_error(const FieldState& field, const OracleFn& oracle, double t) {
    require_time_match(field, t);
    double dx = field.grid.dx();
    std::array<double, 4> err{};
    for (int j = 0; j < field.grid.n_cells; ++j) {
        MomentVector ref = oracle(field.grid.center(j), dx, t);
        for (int k = 0; k < 4; ++k) err[k] += std::fabs(field.cells[j][k] - ref[k]);
    }
    for (double& e : err) e *= dx;
    return err;
}

std::array<double, 4> l1_norm_oracle(const FieldState& field, const OracleFn& oracle, double t) {
    double dx = field.grid.dx();
    std::array<double, 4> norm{};
    for (int j = 0; j < field.grid.n_cells; ++j) {
        MomentVector ref = oracle(field.grid.center(j), dx, t);
        for (int k = 0; k < 4; ++k) norm[k] += std::fabs(ref[k]);
    }
    for (double& v : norm) v *= dx;
    return norm;
}

std::array<double, 4> convergence_order(const std::vector<int>& n_cells,
                                        const std::vector<std::array<double, 4>>& errors) {
    if (n_cells.size() != errors.size() || n_cells.size() < 2) {
        throw CaseError("convergence_order: need matching errors for at least two grids");
    }
    std::size_t n = n_cells.size();
    std::array<double, 4> order{};
    for (int k = 0; k < 4; ++k) {
        double xbar = 0.0, ybar = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(errors[i][k] > 0.0)) {
                throw CaseError("convergence_order: nonpositive error in the fit");
            }
            xbar += std::log2(static_cast<double>(n_cells[i]));
            ybar += std::log2(errors[i][k]);
        }
        xbar /= n;
        ybar /= n;
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double dxi = std::log2(static_cast<double>(n_cells[i])) - xbar;
            sxy += dxi * (std::log2(errors[i][k]) - ybar);
            sxx += dxi * dxi;
        }
        order[k] = -sxy / sxx;
    }
    return order;
}

OracleFn case_oracle(CaseId id) {
    switch (id) {
        case CaseId::two_packets:
            return [](double x, double, double t) {
                return two_packet_solution_at(x, t, Packet{1.0, 1.0, 0.1, 0.5},
                                              Packet{1.0, -1.0, 0.5, 0.9});
            };
        case CaseId::four_packets: {
            FourPacketStar star = solve_four_packet_star(1.0, 0.8, 1.2);
            return [star](double x, double dx, double t) {
                // The measure-solution geometry is centered; the run's domain
                // puts the initial discontinuity at 0.5.
                return four_packet_cell_average(x - 0.5, dx, t, star, 1.0, 0.8, 1.2);
            };
        }
        case CaseId::free_boundary:
            return [](double x, double, double t) { return free_boundary_solution_at(x, t); };
    }
    throw CaseError("case_oracle: unknown case");
}

std::string report_to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["case"] = r.case_name;
    j["n_cells"] = r.n_cells;
    j["cfl"] = r.cfl;
    j["t_end"] = r.t_end;
    j["eps1"] = r.eps1;
    j["eta"] = r.eta;
    j["boundary"] = r.boundary;
    j["steps"] = r.steps;
    j["duration_seconds"] = r.duration_seconds;
    if (r.l1_abs) {
        j["l1_abs"] = *r.l1_abs;
        j["l1_rel"] = r.l1_rel ? nlohmann::ordered_json(*r.l1_rel)
                               : nlohmann::ordered_json(nullptr);
    } else {
        j["l1_abs"] = nullptr;
        j["l1_rel"] = nullptr;
    }
    j["clamp_events"] = r.clamp_events;
    j["max_cone_ratio"] = r.max_cone_ratio;
    j["max_conservation_defect"] = r.max_conservation_defect;
    j["min_e_scaled"] = r.min_e_scaled;
    j["total_moments"] = r.total_moments;
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
    RunReport r;
    r.case_name = j.at("case").get<std::string>();
    r.n_cells = j.at("n_cells").get<int>();
    r.cfl = j.at("cfl").get<double>();
    r.t_end = j.at("t_end").get<double>();
    r.eps1 = j.at("eps1").get<double>();
    r.eta = j.at("eta").get<double>();
    r.boundary = j.at("boundary").get<std::string>();
    r.steps = j.at("steps").get<long>();
    r.duration_seconds = j.at("duration_seconds").get<double>();
    if (!j.at("l1_abs").is_null()) r.l1_abs = j.at("l1_abs").get<std::array<double, 4>>();
    if (!j.at("l1_rel").is_null()) r.l1_rel = j.at("l1_rel").get<std::array<double, 4>>();
    r.clamp_events = j.at("clamp_events").get<long>();
    r.max_cone_ratio = j.at("max_cone_ratio").get<double>();
    r.max_conservation_defect = j.at("max_conservation_defect").get<double>();
    r.min_e_scaled = j.at("min_e_scaled").get<double>();
    r.total_moments = j.at("total_moments").get<std::array<double, 4>>();
    return r;
}

void write_fields_csv(const FieldState& state, const std::string& path, double eps1) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) {
        throw IoError("write_fields_csv: cannot open " + path);
    }
    out << "x,M0,M1,M2,M3,rho1,rho2,v1,v2,e,q,q_over_m0e,q_over_e32\n";
    for (int j = 0; j < state.grid.n_cells; ++j) {
        const MomentVector& m = state.cells[j];
        out << fmt17(state.grid.center(j));
        for (int k = 0; k < 4; ++k) out << ',' << fmt17(m[k]);
        // e and q are polynomial in M, defined for vacuum cells too.
        double e = m.m0 * m.m2 - m.m1 * m.m1;
        double q = (m.m3 * m.m0 * m.m0 - m.m1 * m.m1 * m.m1) - 3.0 * m.m1 * e;
        if (state.is_vacuum(m)) {
            out << ",,,,," << fmt17(e) << ',' << fmt17(q) << ",,\n";
            continue;
        }
        QuadratureState u = quadrature_from_moments(m, eps1);
        out << ',' << fmt17(u.rho1) << ',' << fmt17(u.rho2) << ',' << fmt17(u.v1) << ','
            << fmt17(u.v2) << ',' << fmt17(e) << ',' << fmt17(q);
        if (e / (m.m0 * m.m0) > eps1) {
            out << ',' << fmt17(q / (m.m0 * e)) << ',' << fmt17(q / std::pow(e, 1.5)) << '\n';
        } else {
            out << ",,\n";
        }
    }
    if (!out) {
        throw IoError("write_fields_csv: write failed for " + path);
    }
}

std::vector<MomentVector> read_fields_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("read_fields_csv: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,M0,M1,M2,M3", 0) != 0) {
        throw IoError("read_fields_csv: missing header in " + path);
    }
    std::vector<MomentVector> cells;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string field;
        MomentVector m;
        for (int col = 0; col < 5 && std::getline(row, field, ','); ++col) {
            double value = field.empty() ? 0.0 : std::strtod(field.c_str(), nullptr);
            if (col >= 1) m[col - 1] = value;
        }
        cells.push_back(m);
    }
    return cells;
}

}  // namespace qbmm
