#pragma once
/**
 * @file geometry.hpp
 * @brief Curvilinear trajectory length through isoparametric cell maps.
 *
 * Each cell is mapped to xi in [0, 1]. The position along every axis is
 * represented with the Lagrange basis through the equispaced nodes m / N_g,
 * whose nodal values are the reconstruction evaluated at the matching times.
 * The cell length is int_0^1 |J| dxi with |J| the Euclidean norm of ds/dxi.
 */

#include "shotr/errors.hpp"
#include "shotr/quadrature.hpp"
#include "shotr/recon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace shotr {

inline constexpr int kMaxGeometryDegree = 3;

class NodalBasis {
public:
    explicit NodalBasis(int degree) : degree_(degree) {
        if (degree < 1 || degree > kMaxGeometryDegree)
            throw UnsupportedDegree("nodal geometry basis of degree " + std::to_string(degree) +
                                    " is not available (1..3)");
    }

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(degree_) + 1; }
    double node(int m) const noexcept { return static_cast<double>(m) / degree_; }

    double value(int m, double xi) const noexcept {
        const auto& c = coefficients()[static_cast<std::size_t>(m)];
        double v = 0.0;
        for (int p = degree_; p >= 0; --p) v = v * xi + c[static_cast<std::size_t>(p)];
        return v;
    }

    double derivative(int m, double xi) const noexcept {
        const auto& c = coefficients()[static_cast<std::size_t>(m)];
        double v = 0.0;
        for (int p = degree_; p >= 1; --p) v = v * xi + p * c[static_cast<std::size_t>(p)];
        return v;
    }

private:
    // Monomial coefficients (xi^0 .. xi^3) of each basis function.
    using Table = std::array<std::array<double, 4>, 4>;

    const Table& coefficients() const noexcept {
        static constexpr Table linear{{{1.0, -1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}}};
        static constexpr Table quadratic{{{1.0, -3.0, 2.0, 0.0}, {0.0, 4.0, -4.0, 0.0}, {0.0, -1.0, 2.0, 0.0}}};
        static constexpr Table cubic{{{1.0, -11.0 / 2.0, 9.0, -9.0 / 2.0},
                                      {0.0, 9.0, -45.0 / 2.0, 27.0 / 2.0},
                                      {0.0, -9.0 / 2.0, 18.0, -27.0 / 2.0},
                                      {0.0, 1.0, -9.0 / 2.0, 9.0 / 2.0}}};
        switch (degree_) {
            case 1: return linear;
            case 2: return quadratic;
            default: return cubic;
        }
    }

    int degree_;
};

/// d theta_m / d xi for m = 0..N at xi.
inline std::vector<double> nodal_basis_derivatives(int degree, double xi) {
    const NodalBasis basis(degree);
    std::vector<double> d(basis.size());
    for (int m = 0; m <= degree; ++m) d[static_cast<std::size_t>(m)] = basis.derivative(m, xi);
    return d;
}

namespace detail {

inline void check_axes(std::span<const PiecewisePoly> axes) {
    if (axes.empty() || axes.size() > static_cast<std::size_t>(kMaxDim))
        throw InvalidInput("between one and three axes are required");
    for (const auto& a : axes)
        if (!(a.mesh == axes.front().mesh)) throw InvalidInput("axes do not share one mesh");
}

}  // namespace detail

/// Length of the trajectory over one cell with a geometry degree in 1..3.
inline double cell_length(std::span<const PiecewisePoly> axes, std::size_t cell, int geom_degree) {
    detail::check_axes(axes);
    const NodalBasis basis(geom_degree);
    const StaggeredMesh& mesh = axes.front().mesh;
    const double t0 = mesh.interfaces()[cell];
    const double h = mesh.widths()[cell];

    std::array<std::array<double, 4>, kMaxDim> nodal{};
    for (std::size_t a = 0; a < axes.size(); ++a)
        for (int m = 0; m <= geom_degree; ++m)
            nodal[a][static_cast<std::size_t>(m)] = axes[a].cells[cell].value(t0 + basis.node(m) * h);

    const GaussRule& rule = gauss_legendre(std::max(geom_degree + 1, 3));
    double length = 0.0;
    for (int q = 0; q < rule.points; ++q) {
        const double xi = 0.5 * (rule.nodes[q] + 1.0);
        double j2 = 0.0;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            double ds = 0.0;
            for (int m = 0; m <= geom_degree; ++m) ds += basis.derivative(m, xi) * nodal[a][static_cast<std::size_t>(m)];
            j2 += ds * ds;
        }
        length += 0.5 * rule.weights[q] * std::sqrt(j2);
    }
    return length;
}

/// Sum of the cell lengths in cell order. Geometry degrees above 3 use 3.
inline double trajectory_length(std::span<const PiecewisePoly> axes, int geom_degree) {
    detail::check_axes(axes);
    if (geom_degree < 1) throw UnsupportedDegree("geometry degree must be at least 1");
    const int g = std::min(geom_degree, kMaxGeometryDegree);
    double total = 0.0;
    for (std::size_t i = 0; i < axes.front().mesh.cell_count(); ++i) total += cell_length(axes, i, g);
    return total;
}

}  // namespace shotr
