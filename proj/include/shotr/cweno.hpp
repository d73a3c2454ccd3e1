#pragma once
/**
 * @file cweno.hpp
 * @brief Pointwise CWENO limiting of a cell's optimal polynomial.
 *
 * The optimal (unlimited) polynomial is split into a central part and two
 * one-sided linear polynomials,
 *
 *     p_opt = l0 p0 + l1 p_left + l2 p_right,
 *
 * and recombined with nonlinear weights w_m ~ l_m / (sigma_m + eps)^r, where
 * sigma_m measures the roughness of candidate m on the cell. On smooth data the
 * weights stay close to the linear ones and p_opt is recovered; near a jump the
 * smooth one-sided line dominates.
 *
 * Both one-sided lines pass through the sample at the cell's left interface
 * k = i: the left one through (t_{k-1}, s_{k-1}), the right one through
 * (t_{k+1}, s_{k+1}). Cell 0 has no left neighbour and uses its own
 * interpolating line instead.
 */

#include "shotr/errors.hpp"
#include "shotr/mesh.hpp"
#include "shotr/poly.hpp"
#include "shotr/quadrature.hpp"
#include "shotr/trajdata.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace shotr {

/// How derivative integrals in the oscillation indicator are weighted.
enum class IndicatorScaling {
    reference,  ///< derivatives in the cell's reference coordinate: term a scaled by h^(2a-1)
    physical,   ///< raw time derivatives integrated in time
};

struct CwenoConfig {
    double lambda_central = 200.0 / 202.0;
    double lambda_side = 1.0 / 202.0;
    double epsilon = 1e-14;
    int exponent = 4;
    IndicatorScaling scaling = IndicatorScaling::reference;

    /// Config with the given central weight; the remainder is split evenly between the sides.
    static CwenoConfig with_lambda_central(double lambda0) {
        CwenoConfig cfg;
        cfg.lambda_central = lambda0;
        cfg.lambda_side = 0.5 * (1.0 - lambda0);
        return cfg;
    }

    void validate() const {
        if (!(lambda_central > 0.0 && lambda_central < 1.0))
            throw InvalidInput("CWENO central weight must lie in (0, 1)");
        if (!(lambda_side > 0.0) || std::abs(lambda_central + 2.0 * lambda_side - 1.0) > 1e-14)
            throw InvalidInput("CWENO linear weights must be positive and sum to one");
        if (!(epsilon > 0.0)) throw InvalidInput("CWENO epsilon must be positive");
        if (exponent < 1) throw InvalidInput("CWENO exponent must be at least 1");
    }

    std::array<double, 3> linear_weights() const noexcept {
        return {lambda_central, lambda_side, lambda_side};
    }
};

enum class Side { left, right };

/// Line through the samples at `a` and `b`, expressed in `basis` (degree >= 1).
inline CellPoly line_in_basis(double ta, double sa, double tb, double sb, const TaylorBasis& basis) {
    const double slope = (sb - sa) / (tb - ta);
    std::vector<double> c(basis.size(), 0.0);
    c[0] = sa + slope * (basis.center() - ta);
    if (c.size() > 1) c[1] = slope * basis.width();
    return CellPoly(basis, std::move(c));
}

/**
 * One-sided linear polynomial of cell `cell`, re-expressed in `basis`.
 * Throws MissingNeighbor when the requested neighbour sample does not exist.
 */
inline CellPoly one_sided_p1(const AxisSeries& series, const StaggeredMesh& mesh, std::size_t cell,
                             Side side, const TaylorBasis& basis) {
    const auto t = mesh.interfaces();
    const auto s = series.values();
    const std::size_t k = cell;
    if (side == Side::left) {
        if (k == 0) throw MissingNeighbor("cell 0 has no left neighbour");
        return line_in_basis(t[k - 1], s[k - 1], t[k], s[k], basis);
    }
    if (k + 1 >= t.size())
        throw MissingNeighbor("cell " + std::to_string(cell) + " has no right neighbour");
    return line_in_basis(t[k], s[k], t[k + 1], s[k + 1], basis);
}

/// p0 = (p_opt - l1 p_left - l2 p_right) / l0, coefficient-wise.
inline CellPoly central_poly(const CellPoly& optimal, const CellPoly& left, const CellPoly& right,
                             const CwenoConfig& cfg) {
    const auto lam = cfg.linear_weights();
    std::vector<double> c(optimal.coeffs.size());
    for (std::size_t l = 0; l < c.size(); ++l) {
        const double lc = l < left.coeffs.size() ? left.coeffs[l] : 0.0;
        const double rc = l < right.coeffs.size() ? right.coeffs[l] : 0.0;
        c[l] = (optimal.coeffs[l] - lam[1] * lc - lam[2] * rc) / lam[0];
    }
    return CellPoly(optimal.basis, std::move(c));
}

/**
 * Oscillation indicator sum_{a=1..N} int_{t0}^{t1} (d^a p / dt^a)^2 dt.
 * The integrands have degree <= 2(N-1), so an (N+1)-point rule is exact.
 */
inline double oscillation_indicator(const CellPoly& poly, double t0, double t1,
                                    IndicatorScaling scaling = IndicatorScaling::reference) {
    const int n = poly.degree();
    if (n < 1) return 0.0;
    const GaussRule& rule = gauss_legendre(std::min(n + 1, kMaxGaussPoints));
    const double h = t1 - t0;
    double sigma = 0.0;
    double h_pow = h;  // h^(2a-1)
    for (int a = 1; a <= n; ++a) {
        double integral = 0.0;
        for (int q = 0; q < rule.points; ++q) {
            const double d = poly.derivative(map_abscissa(rule.nodes[q], t0, t1), a);
            integral += rule.weights[q] * d * d;
        }
        integral *= 0.5 * h;
        sigma += scaling == IndicatorScaling::reference ? integral * h_pow : integral;
        h_pow *= h * h;
    }
    return sigma;
}

struct CandidateSet {
    CellPoly central;
    CellPoly left;
    CellPoly right;
    std::array<double, 3> sigmas{};
};

/// Normalized nonlinear weights. Evaluated relative to the smallest (sigma + eps) to avoid overflow.
inline std::array<double, 3> nonlinear_weights(const std::array<double, 3>& sigmas, const CwenoConfig& cfg) {
    const auto lam = cfg.linear_weights();
    double base = sigmas[0] + cfg.epsilon;
    for (double s : sigmas) base = std::min(base, s + cfg.epsilon);
    std::array<double, 3> w{};
    double sum = 0.0;
    for (std::size_t m = 0; m < 3; ++m) {
        const double ratio = base / (sigmas[m] + cfg.epsilon);
        w[m] = lam[m] * std::pow(ratio, cfg.exponent);
        sum += w[m];
    }
    for (double& v : w) v /= sum;
    return w;
}

inline CellPoly blend(const CandidateSet& cand, const CwenoConfig& cfg) {
    const auto w = nonlinear_weights(cand.sigmas, cfg);
    std::vector<double> c(cand.central.coeffs.size(), 0.0);
    for (std::size_t l = 0; l < c.size(); ++l) {
        const double lc = l < cand.left.coeffs.size() ? cand.left.coeffs[l] : 0.0;
        const double rc = l < cand.right.coeffs.size() ? cand.right.coeffs[l] : 0.0;
        c[l] = w[0] * cand.central.coeffs[l] + w[1] * lc + w[2] * rc;
    }
    return CellPoly(cand.central.basis, std::move(c));
}

/// Builds the three candidates of a cell, with boundary substitution for missing neighbours.
inline CandidateSet cweno_candidates(const CellPoly& optimal, const AxisSeries& series,
                                     const StaggeredMesh& mesh, std::size_t cell, const CwenoConfig& cfg) {
    const TaylorBasis& basis = optimal.basis;
    const auto t = mesh.interfaces();
    const auto s = series.values();
    const CellPoly own = line_in_basis(t[cell], s[cell], t[cell + 1], s[cell + 1], basis);

    auto side_or_own = [&](Side side) {
        try {
            return one_sided_p1(series, mesh, cell, side, basis);
        } catch (const MissingNeighbor&) {
            return own;
        }
    };

    CandidateSet cand;
    cand.left = side_or_own(Side::left);
    cand.right = side_or_own(Side::right);
    cand.central = central_poly(optimal, cand.left, cand.right, cfg);
    const double t0 = t[cell];
    const double t1 = t[cell + 1];
    cand.sigmas = {oscillation_indicator(cand.central, t0, t1, cfg.scaling),
                   oscillation_indicator(cand.left, t0, t1, cfg.scaling),
                   oscillation_indicator(cand.right, t0, t1, cfg.scaling)};
    return cand;
}

/// Limited replacement for the optimal polynomial of one cell.
inline CellPoly limit_cell(const CellPoly& optimal, const AxisSeries& series, const StaggeredMesh& mesh,
                           std::size_t cell, const CwenoConfig& cfg) {
    return blend(cweno_candidates(optimal, series, mesh, cell, cfg), cfg);
}

}  // namespace shotr
