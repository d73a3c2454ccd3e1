#pragma once
/**
 * @file recon.hpp
 * @brief Piecewise polynomial trajectory reconstruction by constrained least squares.
 *
 * For every cell i a degree-N polynomial in the cell's Taylor basis is fitted
 * to the samples of a stencil of neighbouring interfaces, subject to exact
 * interpolation of the two samples bounding the cell. The KKT system
 *
 *     [ 2 M^T M   -C^T ] [ s  ]   [ 2 M^T B ]
 *     [   C        0   ] [ mu ] = [    d    ]
 *
 * is solved once per cell for a unit right-hand side basis, so the
 * coefficients of any data on the same mesh follow from one matrix-vector
 * product (ReconstructionOperator).
 */

#include "shotr/cweno.hpp"
#include "shotr/errors.hpp"
#include "shotr/linalg.hpp"
#include "shotr/mesh.hpp"
#include "shotr/poly.hpp"
#include "shotr/trajdata.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace shotr {

enum class Limiter { none, cweno };

struct Stencil {
    std::size_t cell = 0;
    std::vector<std::size_t> interfaces;  ///< sample indices, ascending
};

/// Degree actually used for a track with `samples` points.
inline int effective_degree(std::size_t samples, int requested) {
    if (requested < 1 || requested > kMaxDegree)
        throw UnsupportedDegree("reconstruction degree " + std::to_string(requested) + " outside 1.." +
                                std::to_string(kMaxDegree));
    if (samples < 2) throw InvalidInput("reconstruction needs at least two samples");
    return std::min(requested, static_cast<int>(samples) - 1);
}

/**
 * Stencil of 2N+3 consecutive interfaces i-N-1 .. i+N+1 (the 2(N+1) cells
 * around cell i), shifted inward near the track ends and truncated to the
 * whole track when it is shorter.
 */
inline Stencil build_stencil(const StaggeredMesh& mesh, std::size_t cell, int degree) {
    const std::size_t nk = mesh.interface_count();
    const std::size_t n = static_cast<std::size_t>(degree);
    const std::size_t size = std::min(2 * n + 3, nk);
    const std::size_t reach = n + 1;
    std::size_t lo = cell > reach ? cell - reach : 0;
    lo = std::min(lo, nk - size);
    Stencil st;
    st.cell = cell;
    st.interfaces.resize(size);
    for (std::size_t r = 0; r < size; ++r) st.interfaces[r] = lo + r;
    return st;
}

inline TaylorBasis cell_basis(const StaggeredMesh& mesh, std::size_t cell, int degree) {
    return TaylorBasis(degree, mesh.barycenters()[cell], mesh.widths()[cell]);
}

struct ClsqSystem {
    DenseMatrix m;              ///< stencil rows of basis values
    std::vector<double> b;      ///< stencil samples
    DenseMatrix c;              ///< rows of the two cell interfaces
    std::array<double, 2> d{};  ///< samples at the cell interfaces
};

inline ClsqSystem assemble_clsq(const AxisSeries& series, const StaggeredMesh& mesh, const Stencil& stencil,
                                const TaylorBasis& basis) {
    const auto t = mesh.interfaces();
    const auto s = series.values();
    const std::size_t cols = basis.size();
    ClsqSystem sys;
    sys.m = DenseMatrix(stencil.interfaces.size(), cols);
    sys.b.resize(stencil.interfaces.size());
    for (std::size_t r = 0; r < stencil.interfaces.size(); ++r) {
        const std::size_t k = stencil.interfaces[r];
        const auto phi = basis.row(t[k]);
        std::copy(phi.begin(), phi.end(), sys.m.row(r).begin());
        sys.b[r] = s[k];
    }
    sys.c = DenseMatrix(2, cols);
    for (std::size_t j = 0; j < 2; ++j) {
        const std::size_t k = stencil.cell + j;
        const auto phi = basis.row(t[k]);
        std::copy(phi.begin(), phi.end(), sys.c.row(j).begin());
        sys.d[j] = s[k];
    }
    return sys;
}

namespace detail {

// KKT block [[2 M^T M, -C^T], [C, 0]].
inline DenseMatrix kkt_matrix(const DenseMatrix& m, const DenseMatrix& c) {
    const std::size_t n = m.cols();
    DenseMatrix k(n + 2, n + 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            double s = 0.0;
            for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, a) * m(r, b);
            k(a, b) = 2.0 * s;
        }
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t a = 0; a < n; ++a) {
            k(a, n + j) = -c(j, a);
            k(n + j, a) = c(j, a);
        }
    return k;
}

// Equilibrates the columns of M (and C alike) to unit max-norm; returns the
// factors, so the solution of the scaled system maps back as s = S y.
inline std::vector<double> scale_columns(DenseMatrix& m, DenseMatrix& c) {
    std::vector<double> f(m.cols(), 1.0);
    for (std::size_t a = 0; a < m.cols(); ++a) {
        double big = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) big = std::max(big, std::abs(m(r, a)));
        if (big > 0.0) f[a] = 1.0 / big;
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, a) *= f[a];
        for (std::size_t r = 0; r < c.rows(); ++r) c(r, a) *= f[a];
    }
    return f;
}

}  // namespace detail

/// Minimizes |M s - B| subject to C s = d. Throws SingularSystem.
inline std::vector<double> solve_clsq(DenseMatrix m, std::span<const double> b, DenseMatrix c,
                                      std::span<const double> d, std::size_t cell = 0) {
    const std::size_t n = m.cols();
    const auto f = detail::scale_columns(m, c);
    DenseMatrix rhs(n + 2, 1);
    for (std::size_t a = 0; a < n; ++a) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, a) * b[r];
        rhs(a, 0) = 2.0 * s;
    }
    rhs(n, 0) = d[0];
    rhs(n + 1, 0) = d[1];
    if (auto err = solve_in_place(detail::kkt_matrix(m, c), rhs)) throw SingularSystem(cell, *err);
    std::vector<double> coeffs(n);
    for (std::size_t a = 0; a < n; ++a) coeffs[a] = f[a] * rhs(a, 0);
    return coeffs;
}

/**
 * Piecewise polynomial reconstruction of one spatial direction.
 * Evaluation outside [t_first, t_last] throws OutOfDomain; an interior
 * interface is evaluated with the cell on its left.
 */
struct PiecewisePoly {
    StaggeredMesh mesh;
    std::vector<CellPoly> cells;
    int degree = 1;
    int requested_degree = 1;
    Limiter limiter = Limiter::none;

    double value(double t) const { return cells[mesh.locate_cell(t)].value(t); }
    double derivative(double t, int k) const { return cells[mesh.locate_cell(t)].derivative(t, k); }

    /// Evaluation with t clamped to the time domain (boundary cell polynomial at the clamped time).
    double derivative_clamped(double t, int k) const {
        const double tc = std::clamp(t, mesh.t_begin(), mesh.t_end());
        return cells[mesh.locate_cell_clamped(tc)].derivative(tc, k);
    }
};

/**
 * Reconstruction matrices R (one (N+1) x |stencil| block per cell) for a
 * fixed mesh and degree. Reused for every axis sharing the time stamps.
 */
class ReconstructionOperator {
public:
    ReconstructionOperator(StaggeredMesh mesh, int degree) : mesh_(std::move(mesh)), degree_(degree) {
        const std::size_t cells = mesh_.cell_count();
        stencils_.reserve(cells);
        matrices_.reserve(cells);
        for (std::size_t i = 0; i < cells; ++i) {
            Stencil st = build_stencil(mesh_, i, degree_);
            matrices_.push_back(cell_matrix(st));
            stencils_.push_back(std::move(st));
        }
    }

    /// Operator for the requested degree, lowered to what the track supports and
    /// further on singular systems (down to degree 1).
    static ReconstructionOperator build(const StaggeredMesh& mesh, int requested) {
        int degree = effective_degree(mesh.interface_count(), requested);
        for (;;) {
            try {
                return ReconstructionOperator(mesh, degree);
            } catch (const SingularSystem&) {
                if (degree <= 1) throw;
                --degree;
            }
        }
    }

    const StaggeredMesh& mesh() const noexcept { return mesh_; }
    int degree() const noexcept { return degree_; }
    const Stencil& stencil(std::size_t cell) const { return stencils_[cell]; }
    const DenseMatrix& matrix(std::size_t cell) const { return matrices_[cell]; }

    /// Unlimited coefficients of one cell for the given samples.
    CellPoly apply_cell(std::span<const double> values, std::size_t cell) const {
        const Stencil& st = stencils_[cell];
        const DenseMatrix& r = matrices_[cell];
        std::vector<double> b(st.interfaces.size());
        for (std::size_t j = 0; j < b.size(); ++j) b[j] = values[st.interfaces[j]];
        return CellPoly(cell_basis(mesh_, cell, degree_), r.multiply(b));
    }

    std::vector<CellPoly> apply(std::span<const double> values) const {
        if (values.size() != mesh_.interface_count())
            throw InvalidInput("sample count does not match the reconstruction mesh");
        std::vector<CellPoly> cells;
        cells.reserve(mesh_.cell_count());
        for (std::size_t i = 0; i < mesh_.cell_count(); ++i) cells.push_back(apply_cell(values, i));
        return cells;
    }

private:
    // The KKT block is assembled in monomials of u = (t - m) / H centred on the
    // stencil (|u| <= 1), which keeps the normal equations far better
    // conditioned than the cell's Taylor basis on wide or boundary stencils.
    // The solution is mapped to the Taylor basis exactly afterwards.
    DenseMatrix cell_matrix(const Stencil& st) const {
        const auto t = mesh_.interfaces();
        const std::size_t n = static_cast<std::size_t>(degree_) + 1;
        const std::size_t rows = st.interfaces.size();
        const double lo = t[st.interfaces.front()];
        const double hi = t[st.interfaces.back()];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);

        DenseMatrix m(rows, n);
        std::array<std::size_t, 2> constrained{};
        for (std::size_t r = 0; r < rows; ++r) {
            const std::size_t k = st.interfaces[r];
            const double u = (t[k] - mid) / half;
            double p = 1.0;
            for (std::size_t a = 0; a < n; ++a, p *= u) m(r, a) = p;
            if (k == st.cell) constrained[0] = r;
            if (k == st.cell + 1) constrained[1] = r;
        }
        DenseMatrix c(2, n);
        for (std::size_t j = 0; j < 2; ++j)
            std::copy(m.row(constrained[j]).begin(), m.row(constrained[j]).end(), c.row(j).begin());

        // Right-hand side [2 M^T; D] for unit data vectors; D picks the constrained samples.
        DenseMatrix rhs(n + 2, rows);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t r = 0; r < rows; ++r) rhs(a, r) = 2.0 * m(r, a);
        rhs(n, constrained[0]) = 1.0;
        rhs(n + 1, constrained[1]) = 1.0;
        if (auto err = solve_in_place(detail::kkt_matrix(m, c), rhs)) throw SingularSystem(st.cell, *err);

        // u^l = sum_k binom(l, k) a^(l-k) q^k xi^k with xi = (t - c) / h = k! phi_k,
        // a = (c - mid) / H, q = h / H.
        const TaylorBasis basis = cell_basis(mesh_, st.cell, degree_);
        const double a = (basis.center() - mid) / half;
        const double q = basis.width() / half;
        DenseMatrix conv(n, n);
        for (std::size_t l = 0; l < n; ++l) {
            double binom = 1.0;  // binom(l, k)
            for (std::size_t k = 0; k <= l; ++k) {
                double v = binom;
                for (std::size_t j = 0; j < l - k; ++j) v *= a;
                for (std::size_t j = 1; j <= k; ++j) v *= q * static_cast<double>(j);
                conv(k, l) = v;
                binom = binom * static_cast<double>(l - k) / static_cast<double>(k + 1);
            }
        }
        DenseMatrix out(n, rows);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t r = 0; r < rows; ++r) {
                double sum = 0.0;
                for (std::size_t l = k; l < n; ++l) sum += conv(k, l) * rhs(l, r);
                out(k, r) = sum;
            }
        return out;
    }

    StaggeredMesh mesh_;
    int degree_;
    std::vector<Stencil> stencils_;
    std::vector<DenseMatrix> matrices_;
};

/// Applies an operator to one axis, with optional CWENO limiting.
inline PiecewisePoly reconstruct_with(const ReconstructionOperator& op, const AxisSeries& series, int requested,
                                      Limiter limiter, const CwenoConfig& cfg = {}) {
    PiecewisePoly pp;
    pp.mesh = op.mesh();
    pp.degree = op.degree();
    pp.requested_degree = requested;
    pp.limiter = limiter;
    pp.cells = op.apply(series.values());
    if (limiter == Limiter::cweno) {
        cfg.validate();
        for (std::size_t i = 0; i < pp.cells.size(); ++i)
            pp.cells[i] = limit_cell(pp.cells[i], series, pp.mesh, i, cfg);
    }
    return pp;
}

inline PiecewisePoly reconstruct_axis(const AxisSeries& series, int degree, Limiter limiter,
                                      const CwenoConfig& cfg = {}) {
    const ReconstructionOperator op = ReconstructionOperator::build(StaggeredMesh(series.times()), degree);
    return reconstruct_with(op, series, degree, limiter, cfg);
}

/// Reconstructs every axis of a track; the axes share one operator.
inline std::vector<PiecewisePoly> reconstruct_track(const TrackSeries& track, int degree, Limiter limiter,
                                                    const CwenoConfig& cfg = {}) {
    const ReconstructionOperator op = ReconstructionOperator::build(StaggeredMesh(track.times()), degree);
    std::vector<PiecewisePoly> axes;
    for (const AxisSeries& a : split_axes(track)) axes.push_back(reconstruct_with(op, a, degree, limiter, cfg));
    return axes;
}

}  // namespace shotr
