#pragma once
/**
 * @file poly.hpp
 * @brief Normalized Taylor basis and single-cell polynomials.
 *
 * On a cell with barycenter c and width h the basis functions are
 *
 *     phi_l(t) = (t - c)^l / (l! h^l),   l = 0..N,
 *
 * so coefficient 0 is the value at the barycenter and coefficient l is the
 * l-th time derivative there scaled by h^l.
 */

#include "shotr/errors.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace shotr {

inline constexpr int kMaxDegree = 9;

class TaylorBasis {
public:
    TaylorBasis() = default;

    TaylorBasis(int degree, double center, double width) : degree_(degree), center_(center), width_(width) {
        if (degree_ < 0 || degree_ > kMaxDegree)
            throw UnsupportedDegree("polynomial degree " + std::to_string(degree_) +
                                    " outside 0.." + std::to_string(kMaxDegree));
        if (!(width_ > 0.0)) throw InvalidInput("basis width must be positive");
    }

    int degree() const noexcept { return degree_; }
    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(degree_) + 1; }

    double phi(int l, double t) const noexcept { return phi_derivative(l, 0, t); }

    /// k-th time derivative of phi_l at t.
    double phi_derivative(int l, int k, double t) const noexcept {
        if (k > l) return 0.0;
        const double x = (t - center_) / width_;
        double term = 1.0;  // x^(l-k) / (l-k)!
        for (int j = 1; j <= l - k; ++j) term *= x / j;
        double scale = 1.0;
        for (int j = 0; j < k; ++j) scale /= width_;
        return term * scale;
    }

    /// Row [phi_0(t) ... phi_N(t)].
    std::vector<double> row(double t) const {
        std::vector<double> r(size());
        const double x = (t - center_) / width_;
        double term = 1.0;
        for (int l = 0; l <= degree_; ++l) {
            if (l > 0) term *= x / l;
            r[static_cast<std::size_t>(l)] = term;
        }
        return r;
    }

    TaylorBasis with_degree(int degree) const { return TaylorBasis(degree, center_, width_); }

private:
    int degree_ = 0;
    double center_ = 0.0;
    double width_ = 1.0;
};

/// A polynomial on one cell, expressed in the cell's Taylor basis.
struct CellPoly {
    TaylorBasis basis;
    std::vector<double> coeffs;

    CellPoly() = default;
    CellPoly(TaylorBasis b, std::vector<double> c) : basis(b), coeffs(std::move(c)) {
        if (coeffs.size() != basis.size())
            throw InvalidInput("coefficient count does not match the basis degree");
    }

    int degree() const noexcept { return basis.degree(); }

    double value(double t) const noexcept { return derivative(t, 0); }

    /// k-th time derivative at t: h^-k * sum_{l>=k} c_l x^(l-k) / (l-k)!, x = (t-c)/h.
    double derivative(double t, int k) const noexcept {
        const int n = basis.degree();
        if (k > n) return 0.0;
        const double x = (t - basis.center()) / basis.width();
        double acc = 0.0;
        for (int l = n; l >= k; --l) {
            acc = acc * x / static_cast<double>(l - k + 1) + coeffs[static_cast<std::size_t>(l)];
        }
        return acc * inverse_width_power(k);
    }

    /// Same polynomial in a higher-degree basis (zero padded).
    CellPoly embedded(int degree) const {
        std::vector<double> c = coeffs;
        c.resize(static_cast<std::size_t>(degree) + 1, 0.0);
        return CellPoly(basis.with_degree(degree), std::move(c));
    }

private:
    double inverse_width_power(int k) const noexcept {
        double s = 1.0;
        for (int j = 0; j < k; ++j) s /= basis.width();
        return s;
    }
};

}  // namespace shotr
