#pragma once
/**
 * @file studies.hpp
 * @brief Convergence study, P1-vs-P3 comparison and backward RK trajectory check.
 */

#include "shotr/cweno.hpp"
#include "shotr/errors.hpp"
#include "shotr/norms.hpp"
#include "shotr/parallel.hpp"
#include "shotr/recon.hpp"
#include "shotr/reference_data.hpp"
#include "shotr/runge_kutta.hpp"
#include "shotr/synthetic.hpp"
#include "shotr/trajdata.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shotr {

using AxisNorms = std::array<ErrorNorms, kMaxDim>;

struct ConvergenceRow {
    std::string case_name;
    int degree = 1;
    std::size_t cells = 0;
    double dt = 0.0;  ///< cell width
    int dim = 1;
    AxisNorms errors{};
    /// orders[axis][norm]; absent on the coarsest mesh of a degree.
    std::optional<std::array<std::array<double, 3>, kMaxDim>> orders;
};

namespace detail {

inline double axis_of(const Point& p, int a) { return p[static_cast<std::size_t>(a)]; }

inline void check_study_inputs(std::span<const int> degrees, std::span<const std::size_t> sizes, std::size_t min_size) {
    if (degrees.empty() || sizes.empty()) throw InvalidInput("a study needs at least one degree and one mesh");
    for (int n : degrees)
        if (n < 1 || n > kMaxDegree) throw UnsupportedDegree("degree " + std::to_string(n) + " is outside 1..9");
    for (std::size_t s : sizes)
        if (s < min_size) throw InvalidInput("mesh size " + std::to_string(s) + " is too small");
}

}  // namespace detail

/**
 * Position errors of the unlimited reconstruction against the exact trajectory.
 * `cell_counts` are numbers of cells (points - 1). Norms integrate with N+1
 * Gauss points per cell. Rows are grouped by degree, then by mesh.
 */
inline std::vector<ConvergenceRow> run_convergence(const SyntheticCase& c, std::span<const int> degrees,
                                                   std::span<const std::size_t> cell_counts, unsigned workers = 0) {
    detail::check_study_inputs(degrees, cell_counts, 1);
    const std::size_t nm = cell_counts.size();
    auto rows = parallel_map(
        degrees.size() * nm,
        [&](std::size_t job) {
            const int n = degrees[job / nm];
            const std::size_t cells = cell_counts[job % nm];
            const TrackSeries track = c.sample(cells + 1);
            const auto axes = reconstruct_track(track, n, Limiter::none);
            ConvergenceRow row;
            row.case_name = c.name;
            row.degree = n;
            row.cells = cells;
            row.dt = (c.t_end - c.t_begin) / static_cast<double>(cells);
            row.dim = c.dim;
            const StaggeredMesh& mesh = axes.front().mesh;
            for (int a = 0; a < c.dim; ++a) {
                const PiecewisePoly& pp = axes[static_cast<std::size_t>(a)];
                row.errors[static_cast<std::size_t>(a)] = error_norms(
                    [&](double t) { return detail::axis_of(c.position(t), a); },
                    [&](double t) { return pp.value(t); }, mesh, std::min(pp.degree + 1, kMaxGaussPoints));
            }
            return row;
        },
        workers);

    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k % nm == 0) continue;
        const ConvergenceRow& prev = rows[k - 1];
        ConvergenceRow& row = rows[k];
        std::array<std::array<double, 3>, kMaxDim> ord{};
        for (std::size_t a = 0; a < static_cast<std::size_t>(row.dim); ++a)
            for (int q = 0; q < 3; ++q)
                ord[a][static_cast<std::size_t>(q)] =
                    empirical_order(prev.errors[a].get(q), row.errors[a].get(q), prev.dt, row.dt);
        row.orders = ord;
    }
    return rows;
}

struct CompareRow {
    std::string case_name;
    std::string method;  ///< "P1" (linear linking) or "P3"
    int degree = 1;
    std::size_t points = 0;
    double dt = 0.0;
    int axis = 0;
    ErrorNorms position;
    ErrorNorms velocity;
};

/**
 * Linear linking (P1) against the degree-3 reconstruction on the given point
 * counts. Rows are ordered by method, point count, axis.
 */
inline std::vector<CompareRow> compare_spt(const SyntheticCase& c, std::span<const std::size_t> point_counts,
                                           Limiter p3_limiter = Limiter::none, const CwenoConfig& cfg = {},
                                           int quad_points = 4, unsigned workers = 0) {
    static constexpr std::array<int, 2> kDegrees = {1, 3};
    detail::check_study_inputs(kDegrees, point_counts, 2);
    const std::size_t nm = point_counts.size();
    auto blocks = parallel_map(
        kDegrees.size() * nm,
        [&](std::size_t job) {
            const int n = kDegrees[job / nm];
            const std::size_t points = point_counts[job % nm];
            const TrackSeries track = c.sample(points);
            const auto axes = reconstruct_track(track, n, n == 1 ? Limiter::none : p3_limiter, cfg);
            const StaggeredMesh& mesh = axes.front().mesh;
            std::vector<CompareRow> out;
            for (int a = 0; a < c.dim; ++a) {
                const PiecewisePoly& pp = axes[static_cast<std::size_t>(a)];
                CompareRow r;
                r.case_name = c.name;
                r.method = n == 1 ? "P1" : "P3";
                r.degree = pp.degree;
                r.points = points;
                r.dt = (c.t_end - c.t_begin) / static_cast<double>(points - 1);
                r.axis = a;
                r.position = error_norms([&](double t) { return detail::axis_of(c.position(t), a); },
                                         [&](double t) { return pp.value(t); }, mesh, quad_points);
                r.velocity = error_norms([&](double t) { return detail::axis_of(c.velocity(t), a); },
                                         [&](double t) { return pp.derivative(t, 1); }, mesh, quad_points);
                out.push_back(std::move(r));
            }
            return out;
        },
        workers);
    std::vector<CompareRow> rows;
    for (auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
    return rows;
}

struct BacktraceStep {
    double tau = 0.0;
    double t = 0.0;  ///< physical time t_last - tau
    Point x{};
};

struct BacktraceOptions {
    double dtau = 0.5;
    Limiter limiter = Limiter::none;
    CwenoConfig cweno{};
    std::optional<RkOrder> order;  ///< default: rk2 for N = 1, rk4 otherwise
    /// Reference trajectory; defaults to the unlimited degree-3 reconstruction of the track.
    std::function<Point(double)> reference;
};

struct BacktraceResult {
    std::string track_id;
    std::string method;  ///< e.g. "RK4+P3"
    int degree = 1;
    RkOrder order = RkOrder::rk2;
    int dim = 1;
    Point endpoint{};
    double endpoint_error = 0.0;  ///< distance of the endpoint to the first sample
    AxisNorms axis_norms{};
    ErrorNorms norms;  ///< on the Euclidean distance to the reference
    std::vector<BacktraceStep> path;
};

inline RkOrder rk_order_for(int degree) noexcept { return degree <= 1 ? RkOrder::rk2 : RkOrder::rk4; }

namespace detail {

inline std::function<Point(double)> reconstruction_curve(const TrackSeries& track, int degree, Limiter limiter,
                                                         const CwenoConfig& cfg) {
    auto axes = std::make_shared<const std::vector<PiecewisePoly>>(reconstruct_track(track, degree, limiter, cfg));
    return [axes](double t) {
        Point p{};
        const auto& mesh = axes->front().mesh;
        const double tc = std::clamp(t, mesh.t_begin(), mesh.t_end());
        for (std::size_t a = 0; a < axes->size(); ++a) p[a] = (*axes)[a].value(tc);
        return p;
    };
}

}  // namespace detail

/**
 * Integrates dx/dtau = -v(t_last - tau) from the last sample over the track
 * duration (final step shortened to land on it). v comes from the degree-N
 * reconstruction with query times clamped to the track; RK2 for N = 1, RK4
 * otherwise. The path is scored at the RK step times.
 */
inline BacktraceResult backtrace(const TrackSeries& track, int degree, const BacktraceOptions& opt = {}) {
    if (!(opt.dtau > 0.0)) throw InvalidInput("dtau must be positive");
    const auto axes = reconstruct_track(track, degree, opt.limiter, opt.cweno);
    const auto times = track.times();
    const double t_last = times.back();
    const double duration = track.duration();

    BacktraceResult r;
    r.track_id = track.id();
    r.degree = axes.front().degree;
    r.order = opt.order.value_or(rk_order_for(degree));
    static constexpr const char* kNames[] = {"RK2", "RK2m", "RK4"};
    r.method = std::string(kNames[static_cast<int>(r.order)]) + "+P" + std::to_string(degree);
    r.dim = track.dim();

    auto field = [&](const Point&, double tau) {
        Point v{};
        for (std::size_t a = 0; a < axes.size(); ++a) v[a] = axes[a].derivative_clamped(t_last - tau, 1);
        return v;
    };

    Point x = track.coords().back();
    double tau = 0.0;
    r.path.push_back({0.0, t_last, x});
    const auto steps = static_cast<std::size_t>(std::ceil(duration / opt.dtau - 1e-12));
    for (std::size_t n = 0; n < steps; ++n) {
        const double h = n + 1 == steps ? duration - tau : opt.dtau;
        x = rk_step(x, tau, h, field, r.order);
        tau = n + 1 == steps ? duration : tau + h;
        r.path.push_back({tau, t_last - tau, x});
    }
    r.endpoint = x;

    const Point& first = track.coords().front();
    double e2 = 0.0;
    for (int a = 0; a < r.dim; ++a) e2 += std::pow(x[static_cast<std::size_t>(a)] - first[static_cast<std::size_t>(a)], 2);
    r.endpoint_error = std::sqrt(e2);

    const auto reference = opt.reference ? opt.reference
                                         : detail::reconstruction_curve(track, 3, Limiter::none, CwenoConfig{});
    std::vector<double> taus;
    std::vector<std::array<double, kMaxDim + 1>> errs;
    for (const BacktraceStep& s : r.path) {
        const Point ref = reference(std::max(s.t, times.front()));
        std::array<double, kMaxDim + 1> e{};
        double d2 = 0.0;
        for (int a = 0; a < r.dim; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            e[ua] = s.x[ua] - ref[ua];
            d2 += e[ua] * e[ua];
        }
        e[kMaxDim] = std::sqrt(d2);
        taus.push_back(s.tau);
        errs.push_back(e);
    }
    auto column = [&](std::size_t k) {
        std::vector<double> col;
        for (const auto& e : errs) col.push_back(e[k]);
        return discrete_norms(taus, col);
    };
    for (int a = 0; a < r.dim; ++a) r.axis_norms[static_cast<std::size_t>(a)] = column(static_cast<std::size_t>(a));
    r.norms = column(kMaxDim);
    return r;
}

/// Backtraces of a synthetic case sampled at `points`, scored against the analytic trajectory.
inline BacktraceResult backtrace_synthetic(const SyntheticCase& c, std::size_t points, int degree,
                                           BacktraceOptions opt = {}) {
    opt.reference = c.position;
    return backtrace(c.sample(points, c.name), degree, opt);
}

// ---------------------------------------------------------------------------
// Acceptance gates used by --check.

/// Reference-table agreement (5% relative) and orders on the two finest refinements (+-0.25 of N+1, L1 and L2).
inline std::vector<std::string> check_convergence(std::span<const ConvergenceRow> rows) {
    std::vector<std::string> bad;
    const char* axis_name = "xyz";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const ConvergenceRow& r = rows[k];
        if (r.case_name == "conv3d") {
            for (int a = 0; a < r.dim; ++a)
                for (int q = 0; q < 3; ++q) {
                    const double ref = reference_convergence_error(r.degree, r.cells, a, q);
                    if (ref <= 0.0) continue;
                    const double got = r.errors[static_cast<std::size_t>(a)].get(q);
                    if (std::abs(got - ref) > 0.05 * ref)
                        bad.push_back("N=" + std::to_string(r.degree) + " cells=" + std::to_string(r.cells) + " " +
                                      axis_name[a] + " " + kNormNames[q] + ": " + std::to_string(got) +
                                      " vs reference " + std::to_string(ref));
                }
        }
        // Orders of the last two refinements of each degree.
        const bool last_of_degree = k + 1 == rows.size() || rows[k + 1].degree != r.degree;
        if (!last_of_degree || k < 1 || !r.orders || !rows[k - 1].orders || rows[k - 1].degree != r.degree) continue;
        for (int a = 0; a < r.dim; ++a)
            for (int q = 0; q < 2; ++q) {
                const auto ua = static_cast<std::size_t>(a);
                const auto uq = static_cast<std::size_t>(q);
                for (const ConvergenceRow* row : {&rows[k - 1], &r}) {
                    const double p = (*row->orders)[ua][uq];
                    if (std::abs(p - (r.degree + 1)) > 0.25)
                        bad.push_back("N=" + std::to_string(r.degree) + " cells=" + std::to_string(row->cells) + " " +
                                      axis_name[a] + " " + kNormNames[q] + " order " + std::to_string(p));
                }
            }
    }
    return bad;
}

/// P3 velocity L2 at least 10x below P1 on every mesh and axis; both methods' errors non-increasing.
inline std::vector<std::string> check_compare(std::span<const CompareRow> rows) {
    std::vector<std::string> bad;
    for (const CompareRow& p3 : rows) {
        if (p3.method != "P3") continue;
        for (const CompareRow& p1 : rows) {
            if (p1.method != "P1" || p1.points != p3.points || p1.axis != p3.axis) continue;
            if (!(p3.velocity.l2 * 10.0 <= p1.velocity.l2))
                bad.push_back("points=" + std::to_string(p3.points) + " axis=" + std::to_string(p3.axis) +
                              ": P1/P3 velocity L2 ratio " + std::to_string(p1.velocity.l2 / p3.velocity.l2));
        }
    }
    for (const CompareRow& fine : rows)
        for (const CompareRow& coarse : rows) {
            if (fine.method != coarse.method || fine.axis != coarse.axis || fine.points <= coarse.points) continue;
            for (int q = 0; q < 3; ++q) {
                if (fine.position.get(q) > coarse.position.get(q) || fine.velocity.get(q) > coarse.velocity.get(q))
                    bad.push_back(fine.method + " axis=" + std::to_string(fine.axis) + " " + kNormNames[q] +
                                  " error grows from " + std::to_string(coarse.points) + " to " +
                                  std::to_string(fine.points) + " points");
            }
        }
    return bad;
}

/// Every higher-degree backtrace must beat the degree-1 one of the same track in L1, L2 and Linf.
inline std::vector<std::string> check_backtrace(std::span<const BacktraceResult> results) {
    std::vector<std::string> bad;
    for (const BacktraceResult& hi : results) {
        if (hi.degree <= 1) continue;
        for (const BacktraceResult& lo : results) {
            if (lo.track_id != hi.track_id || lo.degree != 1) continue;
            for (int q = 0; q < 3; ++q)
                if (!(hi.norms.get(q) < lo.norms.get(q)))
                    bad.push_back("track " + hi.track_id + ": " + hi.method + " " + kNormNames[q] + " not below " +
                                  lo.method);
        }
    }
    return bad;
}

}  // namespace shotr
