#pragma once

#include "shotr/geometry.hpp"
#include "shotr/quadrature.hpp"
#include "shotr/recon.hpp"
#include "shotr/trajdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace shotr {

struct KinematicSample {
    double t = 0.0;
    int dim = 1;
    Point position{};
    Point velocity{};
    Point acceleration{};

    /// Euclidean norm of the velocity.
    double speed() const noexcept {
        return std::sqrt(velocity[0] * velocity[0] + velocity[1] * velocity[1] + velocity[2] * velocity[2]);
    }
};

struct VelocitySummary {
    int dim = 1;
    double v_L = 0.0;   ///< path length over duration
    Point v_D{};        ///< net displacement over duration
    Point v_M{};        ///< mean of per-cell secant velocities
    double length = 0.0;
    double duration = 0.0;
};

namespace detail {

inline KinematicSample eval_in_cell(std::span<const PiecewisePoly> axes, std::size_t cell, double t) {
    KinematicSample k;
    k.t = t;
    k.dim = static_cast<int>(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
        const CellPoly& p = axes[a].cells[cell];
        k.position[a] = p.value(t);
        k.velocity[a] = p.derivative(t, 1);
        k.acceleration[a] = p.derivative(t, 2);
    }
    return k;
}

}  // namespace detail

/// Position, velocity and acceleration at t (left cell at interior interfaces).
inline KinematicSample eval_at(std::span<const PiecewisePoly> axes, double t) {
    detail::check_axes(axes);
    return detail::eval_in_cell(axes, axes.front().mesh.locate_cell(t), t);
}

/// Samples at the N+1 Gauss points of every cell, ordered by time.
inline std::vector<KinematicSample> sample_dense(std::span<const PiecewisePoly> axes) {
    detail::check_axes(axes);
    const StaggeredMesh& mesh = axes.front().mesh;
    const GaussRule& rule = gauss_legendre(std::min(axes.front().degree + 1, kMaxGaussPoints));
    std::vector<KinematicSample> out;
    out.reserve(mesh.cell_count() * static_cast<std::size_t>(rule.points));
    for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
        const double t0 = mesh.interfaces()[i];
        const double t1 = mesh.interfaces()[i + 1];
        for (int q = 0; q < rule.points; ++q)
            out.push_back(detail::eval_in_cell(axes, i, map_abscissa(rule.nodes[q], t0, t1)));
    }
    return out;
}

/// Summary velocities of a track. The length uses trajectory_length with `geom_degree`.
inline VelocitySummary summarize(std::span<const PiecewisePoly> axes, std::span<const AxisSeries> series,
                                 int geom_degree) {
    detail::check_axes(axes);
    if (series.size() != axes.size()) throw InvalidInput("series and reconstruction dimensions differ");
    VelocitySummary s;
    s.dim = static_cast<int>(axes.size());
    const auto t = series.front().times();
    s.duration = t.back() - t.front();
    s.length = trajectory_length(axes, geom_degree);
    s.v_L = s.length / s.duration;
    const std::size_t cells = t.size() - 1;
    for (std::size_t a = 0; a < series.size(); ++a) {
        const auto v = series[a].values();
        s.v_D[a] = (v.back() - v.front()) / s.duration;
        double sum = 0.0;
        for (std::size_t i = 0; i < cells; ++i) sum += (v[i + 1] - v[i]) / (t[i + 1] - t[i]);
        s.v_M[a] = sum / static_cast<double>(cells);
    }
    return s;
}

}  // namespace shotr
