#pragma once

#include "shotr/errors.hpp"
#include "shotr/trajdata.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace shotr {

/// Analytic trajectory with its exact velocity, used by the validation studies.
struct SyntheticCase {
    using Fn = std::function<Point(double)>;

    std::string name;
    int dim = 1;
    double t_begin = 0.0;
    double t_end = 1.0;
    Fn position;
    Fn velocity;

    /// `points` equidistant samples including both end points.
    TrackSeries sample(std::size_t points, std::string track_id = "0") const {
        if (points < 2) throw InvalidInput("synthetic sampling needs at least two points");
        std::vector<double> t(points);
        std::vector<Point> x(points);
        const double step = (t_end - t_begin) / static_cast<double>(points - 1);
        for (std::size_t k = 0; k < points; ++k) {
            t[k] = k + 1 == points ? t_end : t_begin + static_cast<double>(k) * step;
            x[k] = position(t[k]);
        }
        return TrackSeries(std::move(track_id), std::move(t), std::move(x), dim);
    }
};

/// Smooth 3D test trajectory on [-1, 1].
inline SyntheticCase conv3d_case() {
    constexpr double pi = std::numbers::pi;
    SyntheticCase c;
    c.name = "conv3d";
    c.dim = 3;
    c.t_begin = -1.0;
    c.t_end = 1.0;
    c.position = [](double t) {
        return Point{std::sin(pi * t) * std::cos(2 * pi * t), 3 * std::cos(2 * pi * t) - 2 * std::sin(pi * t),
                     -6 * std::sin(pi * t) + 2 * std::cos(3 * pi * t)};
    };
    c.velocity = [](double t) {
        return Point{pi * std::cos(pi * t) * std::cos(2 * pi * t) - 2 * pi * std::sin(pi * t) * std::sin(2 * pi * t),
                     -6 * pi * std::sin(2 * pi * t) - 2 * pi * std::cos(pi * t),
                     -6 * pi * std::cos(pi * t) - 6 * pi * std::sin(3 * pi * t)};
    };
    return c;
}

/// 2D trajectory on [0, 2] whose x-velocity is a smoothed step, 1 + tanh(5(t - 1)).
inline SyntheticCase tanhcos2d_case() {
    constexpr double pi = std::numbers::pi;
    SyntheticCase c;
    c.name = "tanhcos2d";
    c.dim = 2;
    c.t_begin = 0.0;
    c.t_end = 2.0;
    c.position = [](double t) {
        // log(tanh(u) + 1), evaluated without overflow for either sign of u.
        const double u = 5.0 * (t - 1.0);
        const double log_tanh_p1 = u >= 0.0 ? std::numbers::ln2 - std::log1p(std::exp(-2.0 * u))
                                            : std::numbers::ln2 + 2.0 * u - std::log1p(std::exp(2.0 * u));
        return Point{2.0 * t - log_tanh_p1 / 5.0, std::sin(2 * pi * t), 0.0};
    };
    c.velocity = [](double t) { return Point{1.0 + std::tanh(5.0 * (t - 1.0)), 2 * pi * std::cos(2 * pi * t), 0.0}; };
    return c;
}

inline SyntheticCase custom_case(std::string name, int dim, double t_begin, double t_end, SyntheticCase::Fn position,
                                 SyntheticCase::Fn velocity) {
    if (dim < 1 || dim > kMaxDim) throw InvalidInput("synthetic case dimension must be 1..3");
    if (!(t_end > t_begin)) throw InvalidInput("synthetic case needs t_end > t_begin");
    return SyntheticCase{std::move(name), dim, t_begin, t_end, std::move(position), std::move(velocity)};
}

inline SyntheticCase synthetic_case(const std::string& name) {
    if (name == "conv3d") return conv3d_case();
    if (name == "tanhcos2d") return tanhcos2d_case();
    throw InvalidInput("unknown synthetic case '" + name + "' (expected conv3d or tanhcos2d)");
}

}  // namespace shotr
