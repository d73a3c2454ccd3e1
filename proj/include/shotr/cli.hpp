#pragma once
/**
 * @file cli.hpp
 * @brief Command-line front end. run_cli() is the whole program; main() only forwards to it.
 *
 * Exit codes: 0 success, 1 input or processing error, 2 a --check gate failed.
 */

#include "shotr/errors.hpp"
#include "shotr/geometry.hpp"
#include "shotr/io.hpp"
#include "shotr/kinematics.hpp"
#include "shotr/parallel.hpp"
#include "shotr/recon.hpp"
#include "shotr/studies.hpp"
#include "shotr/synthetic.hpp"
#include "shotr/trajdata.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace shotr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;  ///< empty: standard output
    TrackFormat format = TrackFormat::generic_csv;
    int degree = 3;
    std::optional<Limiter> limiter;  ///< unset: cweno for track commands, none for studies
    std::optional<int> geom_degree;  ///< unset: min(degree, 3)
    double dtau = 0.5;
    std::string case_name;
    std::vector<std::size_t> meshes;
    std::vector<int> degrees;
    bool check = false;
    CwenoConfig cweno{};
    unsigned workers = 0;

    Limiter track_limiter() const { return limiter.value_or(Limiter::cweno); }
    Limiter study_limiter() const { return limiter.value_or(Limiter::none); }
    int geometry_degree() const { return geom_degree.value_or(std::min(degree, kMaxGeometryDegree)); }
};

/// Raised when --check gates are violated; carries the violations.
class CheckFailed : public Error {
public:
    explicit CheckFailed(std::vector<std::string> violations)
        : Error(std::to_string(violations.size()) + " acceptance check(s) failed"), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

namespace detail {

inline TrackSet load_tracks(const RunConfig& cfg, std::ostream& err) {
    if (cfg.input.empty()) throw InvalidInput("--input is required for '" + cfg.command + "'");
    TrackSet set = parse_tracks(cfg.input, cfg.format);
    for (const auto& w : set.warnings) err << "warning: " << w << '\n';
    if (set.tracks.empty()) throw InvalidInput("no usable tracks in " + cfg.input);
    return set;
}

inline void warn_degree(std::ostream& err, const std::string& id, const PiecewisePoly& pp) {
    if (pp.degree < pp.requested_degree)
        err << "warning: track '" << id << "': degree reduced from " << pp.requested_degree << " to " << pp.degree
            << " (" << pp.mesh.interface_count() << " samples)\n";
}

/// Runs fn on every track in a worker pool; results come back in track order.
/// Errors are re-raised with the track id prepended.
template <class Fn>
auto per_track(const TrackSet& set, const RunConfig& cfg, Fn&& fn) {
    std::vector<const TrackSeries*> tracks;
    for (const auto& [id, t] : set.tracks) tracks.push_back(&t);
    return parallel_map(
        tracks.size(),
        [&](std::size_t i) {
            try {
                return fn(*tracks[i]);
            } catch (const Error& e) {
                throw InvalidInput("track '" + tracks[i]->id() + "': " + e.what());
            }
        },
        cfg.workers);
}

struct TrackOutput {
    std::string text;
    std::vector<std::string> warnings;
};

template <class Emit>
std::vector<TrackOutput> track_reports(const TrackSet& set, const RunConfig& cfg, Emit&& emit) {
    return per_track(set, cfg, [&](const TrackSeries& track) {
        const auto axes = reconstruct_track(track, cfg.degree, cfg.track_limiter(), cfg.cweno);
        std::ostringstream text;
        std::ostringstream warn;
        warn_degree(warn, track.id(), axes.front());
        emit(text, track, axes, cfg);
        TrackOutput out{text.str(), {}};
        if (!warn.str().empty()) out.warnings.push_back(warn.str());
        return out;
    });
}

inline void flush(std::ostream& out, std::ostream& err, const std::vector<TrackOutput>& parts) {
    for (const auto& p : parts) {
        for (const auto& w : p.warnings) err << w;
        out << p.text;
    }
}

inline void check_or_throw(std::vector<std::string> violations) {
    if (!violations.empty()) throw CheckFailed(std::move(violations));
}

inline int cmd_reconstruct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const TrackSet set = load_tracks(cfg, err);
    auto recs = per_track(set, cfg, [&](const TrackSeries& track) {
        return TrackReconstruction{track.id(), reconstruct_track(track, cfg.degree, cfg.track_limiter(), cfg.cweno)};
    });
    for (const auto& r : recs) warn_degree(err, r.track_id, r.axes.front());
    write_reconstruction_json(out, recs);
    return kExitOk;
}

inline int cmd_kinematics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const TrackSet set = load_tracks(cfg, err);
    write_kinematics_header(out, set.dim);
    flush(out, err, track_reports(set, cfg, [](std::ostream& o, const TrackSeries& t, const auto& axes, const RunConfig&) {
              write_kinematics_rows(o, t.id(), sample_dense(axes));
          }));
    return kExitOk;
}

inline int cmd_length(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const TrackSet set = load_tracks(cfg, err);
    detail::write_row(out, {"track", "L", "duration"});
    flush(out, err, track_reports(set, cfg, [](std::ostream& o, const TrackSeries& t, const auto& axes, const RunConfig& c) {
              write_row(o, {csv_field(t.id()), format_real(trajectory_length(axes, c.geometry_degree())),
                            format_real(t.duration())});
          }));
    return kExitOk;
}

inline int cmd_summary(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const TrackSet set = load_tracks(cfg, err);
    write_summary_header(out, set.dim);
    flush(out, err, track_reports(set, cfg, [](std::ostream& o, const TrackSeries& t, const auto& axes, const RunConfig& c) {
              write_summary_row(o, t.id(), summarize(axes, split_axes(t), c.geometry_degree()));
          }));
    return kExitOk;
}

inline int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const SyntheticCase c = synthetic_case(cfg.case_name.empty() ? "conv3d" : cfg.case_name);
    const std::vector<int> degrees = cfg.degrees.empty() ? std::vector<int>{1, 2, 3, 4, 5} : cfg.degrees;
    const std::vector<std::size_t> meshes =
        cfg.meshes.empty() ? std::vector<std::size_t>(kReferenceCells.begin(), kReferenceCells.end()) : cfg.meshes;
    const auto rows = run_convergence(c, degrees, meshes, cfg.workers);
    write_convergence_csv(out, rows);
    if (cfg.check) check_or_throw(check_convergence(rows));
    return kExitOk;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const SyntheticCase c = synthetic_case(cfg.case_name.empty() ? "tanhcos2d" : cfg.case_name);
    const std::vector<std::size_t> meshes = cfg.meshes.empty() ? std::vector<std::size_t>{21, 41, 81} : cfg.meshes;
    const auto rows = compare_spt(c, meshes, cfg.study_limiter(), cfg.cweno, 4, cfg.workers);
    write_compare_csv(out, rows);
    if (cfg.check) check_or_throw(check_compare(rows));
    return kExitOk;
}

inline int cmd_backtrace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    BacktraceOptions opt;
    opt.dtau = cfg.dtau;
    opt.limiter = cfg.study_limiter();
    opt.cweno = cfg.cweno;
    const int high = std::max(cfg.degree, 2);

    std::vector<BacktraceResult> rows;
    if (!cfg.case_name.empty()) {
        const SyntheticCase c = synthetic_case(cfg.case_name);
        const std::vector<std::size_t> meshes = cfg.meshes.empty() ? std::vector<std::size_t>{41} : cfg.meshes;
        auto pairs = parallel_map(
            meshes.size(),
            [&](std::size_t m) {
                const std::string id = c.name + "@" + std::to_string(meshes[m]);
                std::vector<BacktraceResult> pair;
                for (int n : {1, high}) {
                    BacktraceOptions o = opt;
                    o.reference = c.position;
                    pair.push_back(backtrace(c.sample(meshes[m], id), n, o));
                }
                return pair;
            },
            cfg.workers);
        for (auto& p : pairs) rows.insert(rows.end(), p.begin(), p.end());
    } else {
        const TrackSet set = load_tracks(cfg, err);
        auto pairs = per_track(set, cfg, [&](const TrackSeries& track) {
            return std::vector<BacktraceResult>{backtrace(track, 1, opt), backtrace(track, high, opt)};
        });
        for (auto& p : pairs) rows.insert(rows.end(), p.begin(), p.end());
    }
    write_backtrace_csv(out, rows);
    if (cfg.check) check_or_throw(check_backtrace(rows));
    return kExitOk;
}

}  // namespace detail

/// Dispatches a parsed configuration. Output goes to `out` unless cfg.output names a file.
inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    using Cmd = int (*)(const RunConfig&, std::ostream&, std::ostream&);
    static const std::map<std::string, Cmd> commands = {
        {"reconstruct", detail::cmd_reconstruct}, {"kinematics", detail::cmd_kinematics},
        {"length", detail::cmd_length},           {"summary", detail::cmd_summary},
        {"convergence", detail::cmd_convergence}, {"compare", detail::cmd_compare},
        {"backtrace", detail::cmd_backtrace},
    };
    const auto it = commands.find(cfg.command);
    if (it == commands.end()) {
        err << "error: unknown command '" << cfg.command << "'\n";
        return kExitError;
    }
    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (cfg.degree < 1) throw UnsupportedDegree("--degree must be at least 1");
        if (!(cfg.dtau > 0.0)) throw InvalidInput("--dtau must be positive");
        cfg.cweno.validate();
        code = it->second(cfg, buffer, err);
    } catch (const CheckFailed& e) {
        for (const auto& v : e.violations()) err << "check failed: " << v << '\n';
        code = kExitCheckFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    if (cfg.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.output, std::ios::binary);
        if (!(file << buffer.str())) {
            err << "error: cannot write " << cfg.output << '\n';
            return kExitError;
        }
    }
    return code;
}

/// Parses argv and runs the selected command.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"High-order reconstruction of particle trajectories"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "generic";
    std::string limiter;
    std::string scaling = "reference";
    double lambda0 = cfg.cweno.lambda_central;
    int geom = 0;

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"reconstruct", "Piecewise polynomial coefficients per track and axis (JSON)"},
        {"kinematics", "Position, velocity and acceleration at N+1 Gauss points per cell (CSV)"},
        {"length", "Curvilinear trajectory length per track (CSV)"},
        {"summary", "v_L, v_D, v_M, length and duration per track (CSV)"},
        {"convergence", "Convergence study on a synthetic case (CSV)"},
        {"compare", "Linear linking vs degree-3 reconstruction on a synthetic case (CSV)"},
        {"backtrace", "Backward RK integration of reconstructed velocities (CSV)"},
    };
    for (const auto& [name, help] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->callback([&cfg, n = name] { cfg.command = n; });
        sub->add_option("--input,-i", cfg.input, "Track CSV file");
        sub->add_option("--output,-o", cfg.output, "Output file (default: standard output)");
        sub->add_option("--format", format, "Input layout")->check(CLI::IsMember({"generic", "trackmate"}));
        sub->add_option("--degree,-N", cfg.degree, "Reconstruction degree")->check(CLI::Range(1, kMaxDegree));
        sub->add_option("--limiter", limiter, "none or cweno (default: cweno; none for studies)")
            ->check(CLI::IsMember({"none", "cweno"}));
        sub->add_option("--geom-degree", geom, "Geometry degree for lengths (1..3, default min(N,3))")
            ->check(CLI::PositiveNumber);
        sub->add_option("--dtau", cfg.dtau, "Backtrace time step")->check(CLI::PositiveNumber);
        sub->add_option("--case", cfg.case_name, "Synthetic case: conv3d or tanhcos2d");
        sub->add_option("--meshes", cfg.meshes,
                        "Cell counts (convergence) or point counts (compare, backtrace)")
            ->delimiter(',');
        sub->add_option("--degrees", cfg.degrees, "Degrees for the convergence study")->delimiter(',');
        sub->add_flag("--check", cfg.check, "Apply acceptance tolerances; exit 2 on violation");
        sub->add_option("--cweno-eps", cfg.cweno.epsilon, "CWENO epsilon")->check(CLI::PositiveNumber);
        sub->add_option("--cweno-r", cfg.cweno.exponent, "CWENO exponent")->check(CLI::PositiveNumber);
        sub->add_option("--cweno-lambda0", lambda0, "CWENO central linear weight")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--cweno-scaling", scaling, "Oscillation indicator scaling")
            ->check(CLI::IsMember({"reference", "physical"}));
        sub->add_option("--threads", cfg.workers, "Worker threads (0: hardware concurrency)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, m;
        const int code = app.exit(e, o, m);
        out << o.str();
        err << m.str();
        return code == 0 ? kExitOk : kExitError;
    }

    cfg.format = format == "trackmate" ? TrackFormat::trackmate_csv : TrackFormat::generic_csv;
    if (!limiter.empty()) cfg.limiter = limiter == "cweno" ? Limiter::cweno : Limiter::none;
    if (geom > 0) cfg.geom_degree = geom;
    const int exponent = cfg.cweno.exponent;
    const double epsilon = cfg.cweno.epsilon;
    cfg.cweno = CwenoConfig::with_lambda_central(lambda0);
    cfg.cweno.exponent = exponent;
    cfg.cweno.epsilon = epsilon;
    cfg.cweno.scaling = scaling == "physical" ? IndicatorScaling::physical : IndicatorScaling::reference;
    return run_command(cfg, out, err);
}

}  // namespace shotr
