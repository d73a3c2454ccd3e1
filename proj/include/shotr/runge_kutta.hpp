#pragma once

#include "shotr/trajdata.hpp"

namespace shotr {

/**
 * rk2 is the two-stage scheme in the form used by the backward trajectory
 * check: x + dtau/2 (k1 + k2) with k2 taken at the half step. For fields that
 * vary along the path it is only first-order accurate; rk2_midpoint is the
 * textbook second-order midpoint rule.
 */
enum class RkOrder { rk2, rk2_midpoint, rk4 };

/// One explicit step of dx/dtau = -v(x, tau). `field(x, tau)` returns v.
template <class Field>
Point rk_step(const Point& x, double tau, double dtau, Field&& field, RkOrder order) {
    auto axpy = [](const Point& a, double s, const Point& b) {
        return Point{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
    };
    auto rhs = [&](const Point& y, double s) {
        const Point v = field(y, s);
        return Point{-v[0], -v[1], -v[2]};
    };
    const Point k1 = rhs(x, tau);
    const Point k2 = rhs(axpy(x, 0.5 * dtau, k1), tau + 0.5 * dtau);
    switch (order) {
        case RkOrder::rk2: return axpy(axpy(x, 0.5 * dtau, k1), 0.5 * dtau, k2);
        case RkOrder::rk2_midpoint: return axpy(x, dtau, k2);
        case RkOrder::rk4: break;
    }
    const Point k3 = rhs(axpy(x, 0.5 * dtau, k2), tau + 0.5 * dtau);
    const Point k4 = rhs(axpy(x, dtau, k3), tau + dtau);
    Point out = x;
    for (int a = 0; a < 3; ++a) out[a] += dtau / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    return out;
}

}  // namespace shotr
