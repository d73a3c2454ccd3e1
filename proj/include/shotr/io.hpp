#pragma once
/**
 * @file io.hpp
 * @brief Report writers. Reals are printed with 17 significant digits.
 */

#include "shotr/kinematics.hpp"
#include "shotr/recon.hpp"
#include "shotr/studies.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace shotr {

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr const char* kAxisNames[3] = {"x", "y", "z"};

inline const char* limiter_name(Limiter l) noexcept { return l == Limiter::cweno ? "cweno" : "none"; }

struct TrackReconstruction {
    std::string track_id;
    std::vector<PiecewisePoly> axes;
};

inline nlohmann::ordered_json to_json(const PiecewisePoly& pp) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const CellPoly& c : pp.cells)
        cells.push_back({{"center", c.basis.center()}, {"width", c.basis.width()}, {"coeffs", c.coeffs}});
    return cells;
}

/// {"tracks": [{"track", "degree", "limiter", "axes": {"x": [{center, width, coeffs}, ...], ...}}]}
inline void write_reconstruction_json(std::ostream& out, std::span<const TrackReconstruction> tracks) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const TrackReconstruction& tr : tracks) {
        nlohmann::ordered_json axes = nlohmann::ordered_json::object();
        for (std::size_t a = 0; a < tr.axes.size(); ++a) axes[kAxisNames[a]] = to_json(tr.axes[a]);
        list.push_back({{"track", tr.track_id},
                        {"degree", tr.axes.front().degree},
                        {"requested_degree", tr.axes.front().requested_degree},
                        {"limiter", limiter_name(tr.axes.front().limiter)},
                        {"axes", std::move(axes)}});
    }
    out << nlohmann::ordered_json{{"tracks", std::move(list)}}.dump(2) << '\n';
}

namespace detail {

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) out << (k ? "," : "") << fields[k];
    out << '\n';
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace detail

/// Header: track,t,x[,y[,z]],vx..,ax..,speed (one column per present axis).
inline void write_kinematics_header(std::ostream& out, int dim) {
    std::vector<std::string> h{"track", "t"};
    for (const char* prefix : {"", "v", "a"})
        for (int a = 0; a < dim; ++a) h.push_back(std::string(prefix) + kAxisNames[a]);
    h.emplace_back("speed");
    detail::write_row(out, h);
}

inline void write_kinematics_rows(std::ostream& out, const std::string& track_id,
                                  std::span<const KinematicSample> samples) {
    for (const KinematicSample& s : samples) {
        std::vector<std::string> f{detail::csv_field(track_id), format_real(s.t)};
        for (const Point* p : {&s.position, &s.velocity, &s.acceleration})
            for (int a = 0; a < s.dim; ++a) f.push_back(format_real((*p)[static_cast<std::size_t>(a)]));
        f.push_back(format_real(s.speed()));
        detail::write_row(out, f);
    }
}

inline void write_summary_header(std::ostream& out, int dim) {
    std::vector<std::string> h{"track", "vL"};
    for (int a = 0; a < dim; ++a) h.push_back(std::string("vD_") + kAxisNames[a]);
    for (int a = 0; a < dim; ++a) h.push_back(std::string("vM_") + kAxisNames[a]);
    h.emplace_back("L");
    h.emplace_back("duration");
    detail::write_row(out, h);
}

inline void write_summary_row(std::ostream& out, const std::string& track_id, const VelocitySummary& s) {
    std::vector<std::string> f{detail::csv_field(track_id), format_real(s.v_L)};
    for (int a = 0; a < s.dim; ++a) f.push_back(format_real(s.v_D[static_cast<std::size_t>(a)]));
    for (int a = 0; a < s.dim; ++a) f.push_back(format_real(s.v_M[static_cast<std::size_t>(a)]));
    f.push_back(format_real(s.length));
    f.push_back(format_real(s.duration));
    detail::write_row(out, f);
}

inline void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
    detail::write_row(out, {"case", "N", "dt", "axis", "norm", "error", "order"});
    for (const ConvergenceRow& r : rows)
        for (int a = 0; a < r.dim; ++a)
            for (int q = 0; q < 3; ++q) {
                const auto ua = static_cast<std::size_t>(a);
                detail::write_row(out, {r.case_name, std::to_string(r.degree), format_real(r.dt), kAxisNames[a],
                                        kNormNames[q], format_real(r.errors[ua].get(q)),
                                        r.orders ? format_real((*r.orders)[ua][static_cast<std::size_t>(q)]) : ""});
            }
}

inline void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows) {
    detail::write_row(out, {"case", "method", "points", "dt", "axis", "pos_L1", "pos_L2", "pos_Linf", "vel_L1",
                            "vel_L2", "vel_Linf"});
    for (const CompareRow& r : rows)
        detail::write_row(out, {r.case_name, r.method, std::to_string(r.points), format_real(r.dt),
                                kAxisNames[r.axis], format_real(r.position.l1), format_real(r.position.l2),
                                format_real(r.position.linf), format_real(r.velocity.l1),
                                format_real(r.velocity.l2), format_real(r.velocity.linf)});
}

inline void write_backtrace_csv(std::ostream& out, std::span<const BacktraceResult> rows) {
    detail::write_row(out, {"track", "method", "endpoint_err", "L1", "L2", "Linf"});
    for (const BacktraceResult& r : rows)
        detail::write_row(out, {detail::csv_field(r.track_id), r.method, format_real(r.endpoint_error),
                                format_real(r.norms.l1), format_real(r.norms.l2), format_real(r.norms.linf)});
}

}  // namespace shotr
