#pragma once
/**
 * @file trajdata.hpp
 * @brief Particle track containers and CSV ingestion.
 *
 * Two input layouts are understood:
 *  - generic: header `track,t,x[,y[,z]]`, dimensionality taken from the header;
 *  - TrackMate spot tables: columns TRACK_ID, POSITION_T, POSITION_X/Y/Z are
 *    picked by name and every other column is ignored.
 *
 * Rows are grouped by track and sorted by time. Tracks with fewer than two
 * samples are dropped and reported through TrackSet::warnings.
 */

#include "shotr/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace shotr {

/// Spatial point; components beyond the track dimension are zero.
using Point = std::array<double, 3>;

inline constexpr int kMaxDim = 3;

/// One spatial direction of a track: the 1D input of the reconstruction.
class AxisSeries {
public:
    AxisSeries() = default;

    AxisSeries(std::vector<double> times, std::vector<double> values)
        : times_(std::move(times)), values_(std::move(values)) {
        if (times_.size() != values_.size())
            throw InvalidInput("axis series: times and values differ in length");
        for (std::size_t k = 1; k < times_.size(); ++k)
            if (!(times_[k] > times_[k - 1]))
                throw NonMonotoneTimes("axis series: times must be strictly increasing");
    }

    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return times_.size(); }

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

/// One particle's ordered samples.
class TrackSeries {
public:
    TrackSeries() = default;

    TrackSeries(std::string track_id, std::vector<double> times, std::vector<Point> coords, int dim)
        : id_(std::move(track_id)), times_(std::move(times)), coords_(std::move(coords)), dim_(dim) {
        if (dim_ < 1 || dim_ > kMaxDim)
            throw InvalidInput("track '" + id_ + "': dimension must be 1, 2 or 3");
        if (times_.size() != coords_.size())
            throw InvalidInput("track '" + id_ + "': times and coordinates differ in length");
        if (times_.size() < 2)
            throw InvalidInput("track '" + id_ + "': at least two samples are required");
        for (std::size_t k = 1; k < times_.size(); ++k) {
            if (times_[k] == times_[k - 1]) throw DuplicateTimestamp(id_, times_[k]);
            if (!(times_[k] > times_[k - 1]))
                throw NonMonotoneTimes("track '" + id_ + "': times must be strictly increasing");
        }
        for (auto& p : coords_)
            for (int a = dim_; a < kMaxDim; ++a) p[a] = 0.0;
    }

    const std::string& id() const noexcept { return id_; }
    std::span<const double> times() const noexcept { return times_; }
    std::span<const Point> coords() const noexcept { return coords_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return times_.size(); }

    double duration() const noexcept { return times_.back() - times_.front(); }

private:
    std::string id_;
    std::vector<double> times_;
    std::vector<Point> coords_;
    int dim_ = 1;
};

/// Orders integer ids numerically ("2" < "10") and everything else lexically.
struct TrackIdLess {
    bool operator()(const std::string& a, const std::string& b) const {
        long long ia = 0, ib = 0;
        const bool na = parse_int(a, ia);
        const bool nb = parse_int(b, ib);
        if (na && nb) return ia != ib ? ia < ib : a < b;
        if (na != nb) return na;
        return a < b;
    }

private:
    static bool parse_int(const std::string& s, long long& out) {
        if (s.empty()) return false;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && ptr == s.data() + s.size();
    }
};

struct TrackSet {
    std::map<std::string, TrackSeries, TrackIdLess> tracks;
    std::string source;
    std::map<std::string, std::string> units;
    int dim = 0;
    std::vector<std::string> warnings;
};

enum class TrackFormat { generic_csv, trackmate_csv };

/// Splits a track into one series per spatial direction.
inline std::vector<AxisSeries> split_axes(const TrackSeries& track) {
    std::vector<AxisSeries> axes;
    axes.reserve(static_cast<std::size_t>(track.dim()));
    const std::vector<double> times(track.times().begin(), track.times().end());
    for (int a = 0; a < track.dim(); ++a) {
        std::vector<double> values;
        values.reserve(track.size());
        for (const auto& p : track.coords()) values.push_back(p[static_cast<std::size_t>(a)]);
        axes.emplace_back(times, std::move(values));
    }
    return axes;
}

/// Inverse of split_axes. All axes must share their time stamps.
inline TrackSeries merge_axes(std::span<const AxisSeries> axes, std::string track_id) {
    if (axes.empty() || axes.size() > kMaxDim)
        throw InvalidInput("merge_axes: between one and three axes are required");
    const auto times = axes.front().times();
    std::vector<Point> coords(times.size(), Point{});
    for (std::size_t a = 0; a < axes.size(); ++a) {
        if (!std::equal(times.begin(), times.end(), axes[a].times().begin(), axes[a].times().end()))
            throw InvalidInput("merge_axes: axes do not share time stamps");
        for (std::size_t k = 0; k < times.size(); ++k) coords[k][a] = axes[a].values()[k];
    }
    return TrackSeries(std::move(track_id), std::vector<double>(times.begin(), times.end()),
                       std::move(coords), static_cast<int>(axes.size()));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                          s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

// Comma split honoring double-quoted fields ("" is an escaped quote).
inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.emplace_back(trim(cur));
    return fields;
}

inline std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

struct RawRow {
    std::string track;
    double t;
    Point x;
    std::size_t line;
};

struct Layout {
    std::size_t track_col = 0;
    std::size_t t_col = 0;
    std::array<std::size_t, kMaxDim> x_col{};
    int dim = 0;
    std::size_t min_fields = 0;
};

inline Layout generic_layout(const std::vector<std::string>& header) {
    static const std::array<const char*, 5> expected{"track", "t", "x", "y", "z"};
    if (header.size() < 3 || header.size() > 5)
        throw MalformedRow(1, "generic header must be track,t,x[,y[,z]]");
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] != expected[c])
            throw MalformedRow(1, "generic header must be track,t,x[,y[,z]] (column '" +
                                      header[c] + "')");
    Layout layout;
    layout.track_col = 0;
    layout.t_col = 1;
    layout.dim = static_cast<int>(header.size()) - 2;
    for (int a = 0; a < layout.dim; ++a) layout.x_col[static_cast<std::size_t>(a)] = 2 + static_cast<std::size_t>(a);
    layout.min_fields = header.size();
    return layout;
}

inline Layout trackmate_layout(const std::vector<std::string>& header) {
    auto find = [&](const char* name) -> std::optional<std::size_t> {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name) return c;
        return std::nullopt;
    };
    const auto track = find("TRACK_ID");
    const auto t = find("POSITION_T");
    const auto x = find("POSITION_X");
    if (!track || !t || !x)
        throw MalformedRow(1, "TrackMate header needs TRACK_ID, POSITION_T and POSITION_X");
    Layout layout;
    layout.track_col = *track;
    layout.t_col = *t;
    layout.x_col[0] = *x;
    layout.dim = 1;
    if (const auto y = find("POSITION_Y")) {
        layout.x_col[1] = *y;
        layout.dim = 2;
        if (const auto z = find("POSITION_Z")) {
            layout.x_col[2] = *z;
            layout.dim = 3;
        }
    }
    layout.min_fields = 1 + std::max({layout.track_col, layout.t_col, layout.x_col[0],
                                      layout.x_col[1], layout.x_col[2]});
    return layout;
}

}  // namespace detail

/**
 * Parses a track table from a stream. `source` is only used for metadata.
 *
 * TrackMate exports carry up to three descriptive rows below the header
 * (labels, short names, units); they are skipped, and a units row such as
 * `(micron)` / `(sec)` is recorded in TrackSet::units. Spots without a track
 * id are ignored. A POSITION_Z column that is zero everywhere is treated as a
 * planar (2D) acquisition.
 */
inline TrackSet parse_tracks(std::istream& in, TrackFormat format, std::string source = "<stream>") {
    TrackSet set;
    set.source = std::move(source);

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        header = detail::split_csv_line(line);
        break;
    }
    if (header.empty()) throw MalformedRow(line_no == 0 ? 1 : line_no, "missing header row");
    if (header.front().rfind("\xEF\xBB\xBF", 0) == 0)
        header.front().erase(0, 3);

    const detail::Layout layout = format == TrackFormat::generic_csv
                                      ? detail::generic_layout(header)
                                      : detail::trackmate_layout(header);

    std::vector<detail::RawRow> rows;
    bool in_preamble = format == TrackFormat::trackmate_csv;
    std::size_t skipped_unassigned = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() < layout.min_fields ||
            (format == TrackFormat::generic_csv && fields.size() != layout.min_fields))
            throw MalformedRow(line_no, "expected " + std::to_string(layout.min_fields) +
                                            " fields, found " + std::to_string(fields.size()));

        const auto t = detail::parse_real(fields[layout.t_col]);
        if (in_preamble) {
            if (!t) {
                const std::string& tcell = fields[layout.t_col];
                if (tcell.size() > 2 && tcell.front() == '(' && tcell.back() == ')') {
                    set.units["t"] = tcell.substr(1, tcell.size() - 2);
                    const std::string& xcell = fields[layout.x_col[0]];
                    if (xcell.size() > 2 && xcell.front() == '(' && xcell.back() == ')')
                        set.units["x"] = xcell.substr(1, xcell.size() - 2);
                }
                continue;
            }
            in_preamble = false;
        }

        const std::string& track = fields[layout.track_col];
        if (track.empty() || (format == TrackFormat::trackmate_csv && track == "None")) {
            if (format == TrackFormat::generic_csv) throw MalformedRow(line_no, "empty track id");
            ++skipped_unassigned;
            continue;
        }
        if (!t) throw MalformedRow(line_no, "time '" + fields[layout.t_col] + "' is not a number");

        detail::RawRow row{track, *t, Point{}, line_no};
        for (int a = 0; a < layout.dim; ++a) {
            const auto& cell = fields[layout.x_col[static_cast<std::size_t>(a)]];
            const auto v = detail::parse_real(cell);
            if (!v) throw MalformedRow(line_no, "coordinate '" + cell + "' is not a number");
            row.x[static_cast<std::size_t>(a)] = *v;
        }
        const bool finite = std::isfinite(row.t) && std::all_of(row.x.begin(), row.x.end(),
                                                               [](double v) { return std::isfinite(v); });
        if (!finite) {
            set.warnings.push_back("line " + std::to_string(line_no) +
                                   ": non-finite value, row rejected");
            continue;
        }
        rows.push_back(std::move(row));
    }

    int dim = layout.dim;
    if (format == TrackFormat::trackmate_csv && dim == 3 &&
        std::all_of(rows.begin(), rows.end(), [](const detail::RawRow& r) { return r.x[2] == 0.0; }))
        dim = 2;
    set.dim = dim;

    if (skipped_unassigned > 0)
        set.warnings.push_back(std::to_string(skipped_unassigned) +
                               " spot(s) without a track id ignored");

    std::map<std::string, std::vector<detail::RawRow>, TrackIdLess> grouped;
    for (auto& r : rows) grouped[r.track].push_back(std::move(r));

    for (auto& [id, group] : grouped) {
        // Sort by time; file line breaks ties so equal inputs always give equal output.
        std::sort(group.begin(), group.end(), [](const detail::RawRow& a, const detail::RawRow& b) {
            return a.t != b.t ? a.t < b.t : a.line < b.line;
        });
        for (std::size_t k = 1; k < group.size(); ++k)
            if (group[k].t == group[k - 1].t) throw DuplicateTimestamp(id, group[k].t);
        if (group.size() < 2) {
            set.warnings.push_back("track '" + id + "' has fewer than 2 samples, dropped");
            continue;
        }
        std::vector<double> times;
        std::vector<Point> coords;
        times.reserve(group.size());
        coords.reserve(group.size());
        for (const auto& r : group) {
            times.push_back(r.t);
            coords.push_back(r.x);
        }
        set.tracks.emplace(id, TrackSeries(id, std::move(times), std::move(coords), dim));
    }
    return set;
}

inline TrackSet parse_tracks(const std::string& path, TrackFormat format) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    return parse_tracks(in, format, path);
}

}  // namespace shotr
