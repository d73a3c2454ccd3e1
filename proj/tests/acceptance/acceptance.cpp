// Acceptance gate: one PASS/FAIL line per criterion; non-zero exit if any fails.
#include "shotr/cweno.hpp"
#include "shotr/geometry.hpp"
#include "shotr/kinematics.hpp"
#include "shotr/studies.hpp"
#include "shotr/synthetic.hpp"

#include "../unit/test_support.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace shotr;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome from_violations(const std::vector<std::string>& bad, const std::string& ok) {
    if (bad.empty()) return {true, ok};
    std::string d = std::to_string(bad.size()) + " violation(s), first: " + bad.front();
    return {false, d};
}

Outcome convergence_table() {
    const std::vector<int> degrees{1, 2, 3, 4, 5};
    const auto rows = run_convergence(conv3d_case(), degrees, kReferenceCells);
    return from_violations(check_convergence(rows), "reference errors within 5%, L1/L2 orders within 0.25 of N+1");
}

Outcome spt_comparison() {
    const std::vector<std::size_t> points{21, 41, 81};
    const auto rows = compare_spt(tanhcos2d_case(), points);
    return from_violations(check_compare(rows), "P3 velocity L2 >= 10x below P1, errors non-increasing");
}

Outcome backtrace_ranking() {
    const SyntheticCase c = tanhcos2d_case();
    std::vector<BacktraceResult> r{backtrace_synthetic(c, 41, 1), backtrace_synthetic(c, 41, 3)};
    std::ostringstream d;
    d << "RK4+P3 L1/L2/Linf " << r[1].norms.l1 << '/' << r[1].norms.l2 << '/' << r[1].norms.linf << " vs RK2+P1 "
      << r[0].norms.l1 << '/' << r[0].norms.l2 << '/' << r[0].norms.linf;
    auto out = from_violations(check_backtrace(r), d.str());
    if (!out.pass) out.detail += "; " + d.str();
    return out;
}

Outcome polynomial_exactness() {
    test::Rng rng(20240601);
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const auto t = test::random_times(rng, static_cast<std::size_t>(n + 2 + trial % 10), 0.0, 0.1, 1.0);
            const auto p = test::random_poly(rng, n);
            const auto axes = std::vector<PiecewisePoly>{reconstruct_axis(test::sample_axis(t, p), n, Limiter::none)};
            for (int k = 0; k < 50; ++k) {
                const double s = std::min(t.back(), t.front() + (t.back() - t.front()) * k / 49.0);
                const KinematicSample q = eval_at(axes, s);
                const double got[3] = {q.position[0], q.velocity[0], q.acceleration[0]};
                for (int d = 0; d < 3; ++d) {
                    const double exact = p.derivative(s, d);
                    worst = std::max(worst, std::abs(got[d] - exact) / std::max(1.0, std::abs(exact)));
                }
            }
        }
    std::ostringstream d;
    d << "worst relative error " << worst;
    return {worst <= 1e-9, d.str()};
}

Outcome limiter_behaviour() {
    test::Rng rng(77);
    const CwenoConfig cfg;
    double sum_err = 0.0;
    bool convex = true;
    for (int k = 0; k < 1000; ++k) {
        const std::array<double, 3> sig{test::uniform(rng, 0, 10), test::uniform(rng, 0, 10),
                                        std::pow(10.0, test::uniform(rng, -12, 3))};
        const auto w = nonlinear_weights(sig, cfg);
        sum_err = std::max(sum_err, std::abs(w[0] + w[1] + w[2] - 1.0));
        for (double x : w) convex = convex && x >= 0.0 && x <= 1.0;
    }

    const std::size_t points = 401;
    std::vector<double> t(points);
    for (std::size_t k = 0; k < points; ++k) t[k] = -1.0 + 2.0 * static_cast<double>(k) / (points - 1);
    const AxisSeries smooth = test::sample_axis(t, [](double x) { return 1.0 + x + x * x / 2.0 + x * x * x / 6.0; });
    const PiecewisePoly raw = reconstruct_axis(smooth, 3, Limiter::none);
    const PiecewisePoly lim = reconstruct_axis(smooth, 3, Limiter::cweno);
    double smooth_dev = 0.0;
    for (std::size_t i = 0; i < raw.cells.size(); ++i)
        for (double f : {0.1, 0.5, 0.9}) {
            const double x = t[i] + f * (t[i + 1] - t[i]);
            smooth_dev = std::max(smooth_dev, std::abs(lim.cells[i].value(x) - raw.cells[i].value(x)));
        }

    std::vector<double> ts, vs;
    for (int k = 0; k < 12; ++k) {
        ts.push_back(k);
        vs.push_back(k <= 5 ? 0.0 : 1.0);
    }
    const AxisSeries step(ts, vs);
    const StaggeredMesh mesh(ts);
    const PiecewisePoly sraw = reconstruct_axis(step, 3, Limiter::none);
    const CellPoly limited = limit_cell(sraw.cells[5], step, mesh, 5, cfg);
    const CellPoly left = one_sided_p1(step, mesh, 5, Side::left, sraw.cells[5].basis);
    double step_dev = 0.0;
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9})
        step_dev = std::max(step_dev, std::abs(limited.value(5.0 + f) - left.value(5.0 + f)));

    std::ostringstream d;
    d << "weight sum error " << sum_err << ", smooth deviation " << smooth_dev << ", step deviation " << step_dev;
    return {sum_err <= 1e-14 && convex && smooth_dev < 1e-8 && step_dev <= 0.01, d.str()};
}

TrackSeries quarter_circle(std::size_t points) {
    std::vector<double> t(points);
    std::vector<Point> x(points);
    for (std::size_t k = 0; k < points; ++k) {
        t[k] = static_cast<double>(k) / static_cast<double>(points - 1);
        const double th = 0.5 * std::numbers::pi * t[k];
        x[k] = {std::cos(th), std::sin(th), 0.0};
    }
    return TrackSeries("arc", t, x, 2);
}

Outcome length_properties() {
    test::Rng rng(99);
    double poly_err = 0.0;
    int chord_bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 15;
        const int dim = 1 + static_cast<int>(rng() % 3);
        const auto t = test::random_times(rng, n);
        std::vector<Point> x(n);
        for (auto& p : x)
            for (int a = 0; a < dim; ++a) p[static_cast<std::size_t>(a)] = test::uniform(rng, -5, 5);
        const TrackSeries track("r", t, x, dim);
        double polyline = 0.0, chord = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            double d2 = 0.0;
            for (int a = 0; a < 3; ++a) d2 += std::pow(x[k + 1][static_cast<std::size_t>(a)] - x[k][static_cast<std::size_t>(a)], 2);
            polyline += std::sqrt(d2);
        }
        for (int a = 0; a < 3; ++a) chord += std::pow(x.back()[static_cast<std::size_t>(a)] - x.front()[static_cast<std::size_t>(a)], 2);
        chord = std::sqrt(chord);
        const auto lin = reconstruct_track(track, 1, Limiter::none);
        poly_err = std::max(poly_err, std::abs(trajectory_length(lin, 1) - polyline) / std::max(1.0, polyline));
        // The limited blend gives up continuity at interfaces, so only the
        // unlimited reconstruction is a curve joining the first and last sample.
        const auto cubic = reconstruct_track(track, 3, Limiter::none);
        if (trajectory_length(cubic, 3) < chord * (1.0 - 1e-12)) ++chord_bad;
    }
    std::vector<double> err;
    for (std::size_t points : {41u, 81u, 161u, 321u})
        err.push_back(std::abs(trajectory_length(reconstruct_track(quarter_circle(points), 3, Limiter::none), 3) -
                               0.5 * std::numbers::pi));
    double min_order = 1e300;
    for (std::size_t k = 1; k < err.size(); ++k) min_order = std::min(min_order, std::log2(err[k - 1] / err[k]));
    std::ostringstream d;
    d << "polyline error " << poly_err << ", quarter-circle min order " << min_order << ", chord violations "
      << chord_bad;
    return {poly_err <= 1e-12 && min_order >= 3.5 && chord_bad == 0, d.str()};
}

Outcome linear_equivalence() {
    test::Rng rng(4242);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 30;
        const int dim = 1 + static_cast<int>(rng() % 3);
        const auto t = test::random_times(rng, n, test::uniform(rng, -10, 10), 0.01, 2.0);
        std::vector<Point> x(n);
        for (auto& p : x)
            for (int a = 0; a < dim; ++a) p[static_cast<std::size_t>(a)] = test::uniform(rng, -100, 100);
        const auto axes = reconstruct_track(TrackSeries("s", t, x, dim), 1, Limiter::none);
        for (const KinematicSample& s : sample_dense(axes)) {
            std::size_t i = 0;
            while (i + 2 < n && s.t > t[i + 1]) ++i;
            for (int a = 0; a < dim; ++a) {
                const auto ua = static_cast<std::size_t>(a);
                const double slope = (x[i + 1][ua] - x[i][ua]) / (t[i + 1] - t[i]);
                const double naive = x[i][ua] + slope * (s.t - t[i]);
                worst = std::max(worst, std::abs(s.position[ua] - naive) / std::max(1.0, std::abs(naive)));
                worst = std::max(worst, std::abs(s.velocity[ua] - slope) / std::max(1.0, std::abs(slope)));
            }
        }
    }
    std::ostringstream d;
    d << "worst relative deviation " << worst;
    return {worst <= 1e-12, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"convergence table", convergence_table},   {"P3 vs P1 comparison", spt_comparison},
        {"backward trajectory", backtrace_ranking}, {"polynomial exactness", polynomial_exactness},
        {"limiter behaviour", limiter_behaviour},   {"trajectory length", length_properties},
        {"linear equivalence", linear_equivalence},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    o.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
