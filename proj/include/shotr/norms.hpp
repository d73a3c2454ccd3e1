#pragma once

#include "shotr/mesh.hpp"
#include "shotr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace shotr {

struct ErrorNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;

    double get(int which) const noexcept { return which == 0 ? l1 : which == 1 ? l2 : linf; }
};

inline constexpr const char* kNormNames[3] = {"L1", "L2", "Linf"};

/**
 * L1 / L2 / Linf distance between two functions of time over `window`
 * (default: the whole mesh). Integrals use `points`-point Gauss rules on each
 * cell (clipped to the window); the maximum is taken over the quadrature
 * nodes and the clipped cell end points.
 */
template <class Ref, class Cand>
ErrorNorms error_norms(Ref&& reference, Cand&& candidate, const StaggeredMesh& mesh, int points,
                       std::optional<std::pair<double, double>> window = std::nullopt) {
    const GaussRule& rule = gauss_legendre(points);
    const double wa = window ? window->first : mesh.t_begin();
    const double wb = window ? window->second : mesh.t_end();
    ErrorNorms n;
    double l1 = 0.0;
    double l2 = 0.0;
    auto err = [&](double t) { return std::abs(reference(t) - candidate(t)); };
    for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
        const double a = std::max(wa, mesh.interfaces()[i]);
        const double b = std::min(wb, mesh.interfaces()[i + 1]);
        if (!(b > a)) continue;
        const double half = 0.5 * (b - a);
        for (int q = 0; q < rule.points; ++q) {
            const double e = err(map_abscissa(rule.nodes[q], a, b));
            l1 += half * rule.weights[q] * e;
            l2 += half * rule.weights[q] * e * e;
            n.linf = std::max(n.linf, e);
        }
        n.linf = std::max({n.linf, err(a), err(b)});
    }
    n.l1 = l1;
    n.l2 = std::sqrt(l2);
    return n;
}

/// Norms of errors known only at discrete, increasing times (trapezoidal weights).
inline ErrorNorms discrete_norms(std::span<const double> times, std::span<const double> errors) {
    ErrorNorms n;
    double l2 = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double e = std::abs(errors[k]);
        double w = 0.0;
        if (k > 0) w += 0.5 * (times[k] - times[k - 1]);
        if (k + 1 < times.size()) w += 0.5 * (times[k + 1] - times[k]);
        n.l1 += w * e;
        l2 += w * e * e;
        n.linf = std::max(n.linf, e);
    }
    n.l2 = std::sqrt(l2);
    return n;
}

/// Empirical order of accuracy between two meshes.
inline double empirical_order(double err_coarse, double err_fine, double dt_coarse, double dt_fine) {
    return std::log(err_fine / err_coarse) / std::log(dt_fine / dt_coarse);
}

}  // namespace shotr
