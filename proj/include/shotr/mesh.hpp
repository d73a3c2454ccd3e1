#pragma once

#include "shotr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace shotr {

/**
 * Staggered time mesh: sample times are the cell interfaces, the unknown
 * polynomials live at the cell barycenters. Cell i spans
 * [interfaces[i], interfaces[i+1]].
 */
class StaggeredMesh {
public:
    StaggeredMesh() = default;

    explicit StaggeredMesh(std::span<const double> times) : interfaces_(times.begin(), times.end()) {
        if (interfaces_.size() < 2)
            throw NonMonotoneTimes("mesh needs at least two time stamps");
        widths_.reserve(interfaces_.size() - 1);
        barycenters_.reserve(interfaces_.size() - 1);
        for (std::size_t i = 0; i + 1 < interfaces_.size(); ++i) {
            const double left = interfaces_[i];
            const double right = interfaces_[i + 1];
            if (!std::isfinite(left) || !std::isfinite(right) || !(right > left))
                throw NonMonotoneTimes("mesh times must be finite and strictly increasing (index " +
                                       std::to_string(i + 1) + ")");
            widths_.push_back(right - left);
            barycenters_.push_back(0.5 * (left + right));
        }
    }

    std::span<const double> interfaces() const noexcept { return interfaces_; }
    std::span<const double> widths() const noexcept { return widths_; }
    std::span<const double> barycenters() const noexcept { return barycenters_; }

    std::size_t cell_count() const noexcept { return widths_.size(); }
    std::size_t interface_count() const noexcept { return interfaces_.size(); }

    double t_begin() const noexcept { return interfaces_.front(); }
    double t_end() const noexcept { return interfaces_.back(); }

    bool contains(double t) const noexcept {
        return !interfaces_.empty() && t >= interfaces_.front() && t <= interfaces_.back();
    }

    /// Cell containing t. An interior interface belongs to the cell on its left.
    std::size_t locate_cell(double t) const {
        if (!contains(t)) throw OutOfDomain("time " + std::to_string(t) + " outside the mesh");
        const auto it = std::lower_bound(interfaces_.begin(), interfaces_.end(), t);
        const auto idx = static_cast<std::size_t>(it - interfaces_.begin());
        return idx == 0 ? 0 : idx - 1;
    }

    /// Like locate_cell, but times outside the mesh map to the nearest boundary cell.
    std::size_t locate_cell_clamped(double t) const noexcept {
        if (t <= interfaces_.front()) return 0;
        if (t >= interfaces_.back()) return cell_count() - 1;
        const auto it = std::lower_bound(interfaces_.begin(), interfaces_.end(), t);
        return static_cast<std::size_t>(it - interfaces_.begin()) - 1;
    }

    friend bool operator==(const StaggeredMesh&, const StaggeredMesh&) = default;

private:
    std::vector<double> interfaces_;
    std::vector<double> widths_;
    std::vector<double> barycenters_;
};

inline StaggeredMesh build_mesh(std::span<const double> times) { return StaggeredMesh(times); }

}  // namespace shotr
