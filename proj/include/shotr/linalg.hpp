#pragma once
/**
 * @file linalg.hpp
 * @brief Tiny row-major dense matrix and a partial-pivoting solver.
 *
 * Systems here are at most (kMaxDegree + 3) square, so nothing beyond plain
 * Gaussian elimination is needed.
 */

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shotr {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const noexcept {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::vector<double> multiply(std::span<const double> x) const {
        assert(x.size() == cols_);
        std::vector<double> y(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
            y[r] = s;
        }
        return y;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// LU factors (unit lower part below the diagonal) of P A, with the row permutation.
struct LuFactors {
    DenseMatrix lu;
    std::vector<std::size_t> perm;

    /// Overwrites B with A^{-1} B.
    void solve(DenseMatrix& b) const {
        const std::size_t n = lu.rows();
        DenseMatrix x(n, b.cols());
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) x(r, c) = b(perm[r], c);
        for (std::size_t c = 0; c < b.cols(); ++c) {
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < k; ++j) x(k, c) -= lu(k, j) * x(j, c);
            for (std::size_t k = n; k-- > 0;) {
                for (std::size_t j = k + 1; j < n; ++j) x(k, c) -= lu(k, j) * x(j, c);
                x(k, c) /= lu(k, k);
            }
        }
        b = std::move(x);
    }
};

/**
 * Gaussian elimination with partial pivoting. Returns a description of the
 * failure when a pivot is negligible relative to the largest entry of A.
 */
inline std::optional<std::string> lu_factor(DenseMatrix a, LuFactors& out) {
    const std::size_t n = a.rows();
    assert(a.cols() == n);
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));
    if (!(scale > 0.0) || !std::isfinite(scale)) return "matrix is zero or not finite";
    const double tiny = scale * static_cast<double>(n) * std::numeric_limits<double>::epsilon();

    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(pivot, k))) pivot = r;
        if (std::abs(a(pivot, k)) <= tiny)
            return "negligible pivot in column " + std::to_string(k);
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
            std::swap(perm[k], perm[pivot]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a(r, k) / a(k, k);
            a(r, k) = f;
            if (f == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
        }
    }
    out.lu = std::move(a);
    out.perm = std::move(perm);
    return std::nullopt;
}

/**
 * Solves A X = B in place (B holds X on return) by partial-pivoting
 * elimination followed by `refinements` steps of iterative refinement, which
 * recover most of the accuracy lost to pivot growth in the badly scaled
 * constrained least-squares blocks.
 */
inline std::optional<std::string> solve_in_place(const DenseMatrix& a, DenseMatrix& b, int refinements = 2) {
    assert(a.rows() == b.rows());
    LuFactors f;
    if (auto err = lu_factor(a, f)) return err;
    DenseMatrix x = b;
    f.solve(x);
    for (int it = 0; it < refinements; ++it) {
        DenseMatrix r = b;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                long double s = r(i, c);
                for (std::size_t j = 0; j < a.cols(); ++j)
                    s -= static_cast<long double>(a(i, j)) * x(j, c);
                r(i, c) = static_cast<double>(s);
            }
        f.solve(r);
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t c = 0; c < x.cols(); ++c) x(i, c) += r(i, c);
    }
    b = std::move(x);
    return std::nullopt;
}

}  // namespace shotr
