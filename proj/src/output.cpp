// output.cpp - CSV and SVG emission

#include "qcorr/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qcorr {

namespace {

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fixed2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto '" + path.string() + "': " + ec.message());
    }
}

std::string format_csv(const SweepResult& result) {
    std::vector<CorrelationRecord> rows = result.records;
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.partition != b.partition) return a.partition < b.partition;
        return a.source < b.source;
    });
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += format_real(r.time);
        out += ',';
        out += to_string(r.partition);
        out += ',';
        out += to_string(r.source);
        for (double v : {r.mutual_info, r.classical, r.quantum, r.concurrence}) {
            out += ',';
            out += format_real(v);
        }
        out += ',';
        out += to_string(r.measured_side);
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    write_file_atomic(path, format_csv(result));
}

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 700.0;
constexpr double kPanelW = 330.0;
constexpr double kPanelH = 230.0;
constexpr std::array<Partition, 4> kPanels = {Partition::s1s2, Partition::r1r2, Partition::s1r1,
                                              Partition::s1r2};

struct Style {
    const char* colour;
    const char* marker;  // diamond, square, triangle, circle, cross
};

// Series 0 follows blue diamonds (Q) / magenta squares (C); series 1 dark
// triangles (Q) / red circles (C).
Style style_for(std::size_t series, Measure m) {
    static const Style table[2][3] = {
        {{"#1f3fd0", "diamond"}, {"#d020c0", "square"}, {"#20a040", "cross"}},
        {{"#303030", "triangle"}, {"#e02020", "circle"}, {"#e08000", "cross"}},
    };
    return table[series % 2][static_cast<int>(m)];
}

std::string marker(const Style& s, double x, double y) {
    std::ostringstream os;
    const std::string cx = fixed2(x);
    const std::string cy = fixed2(y);
    const double r = 3.5;
    if (std::string(s.marker) == "circle") {
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << fixed2(r)
           << "\" fill=\"" << s.colour << "\"/>";
    } else if (std::string(s.marker) == "square") {
        os << "<rect x=\"" << fixed2(x - r) << "\" y=\"" << fixed2(y - r) << "\" width=\""
           << fixed2(2 * r) << "\" height=\"" << fixed2(2 * r) << "\" fill=\"" << s.colour << "\"/>";
    } else if (std::string(s.marker) == "diamond") {
        os << "<polygon points=\"" << fixed2(x) << "," << fixed2(y - r - 1) << " " << fixed2(x + r + 1)
           << "," << fixed2(y) << " " << fixed2(x) << "," << fixed2(y + r + 1) << " "
           << fixed2(x - r - 1) << "," << fixed2(y) << "\" fill=\"" << s.colour << "\"/>";
    } else if (std::string(s.marker) == "triangle") {
        os << "<polygon points=\"" << fixed2(x) << "," << fixed2(y - r - 1) << " " << fixed2(x + r + 1)
           << "," << fixed2(y + r) << " " << fixed2(x - r - 1) << "," << fixed2(y + r)
           << "\" fill=\"" << s.colour << "\"/>";
    } else {
        os << "<polyline points=\"" << fixed2(x - r) << "," << fixed2(y - r) << " " << fixed2(x + r)
           << "," << fixed2(y + r) << "\" stroke=\"" << s.colour << "\" fill=\"none\"/>"
           << "<polyline points=\"" << fixed2(x - r) << "," << fixed2(y + r) << " "
           << fixed2(x + r) << "," << fixed2(y - r) << "\" stroke=\"" << s.colour
           << "\" fill=\"none\"/>";
    }
    return os.str();
}

std::vector<const CorrelationRecord*> panel_records(const SweepResult& r, Partition p) {
    std::vector<const CorrelationRecord*> brute, closed;
    for (const auto& rec : r.records) {
        if (rec.partition != p) continue;
        (rec.source == RecordSource::brute ? brute : closed).push_back(&rec);
    }
    return brute.empty() ? closed : brute;
}

double nice_ceiling(double v) {
    if (!(v > 0.0)) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (step * mag >= v) return step * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string render_svg(std::span<const PlotSeries> series, std::span<const Measure> measures,
                       const std::string& title) {
    bool any = false;
    for (const auto& s : series) any = any || !s.result.records.empty();
    if (!any) throw std::invalid_argument("render_svg: no records to plot");

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
        << "text-anchor=\"middle\">" << title << "</text>\n";

    // Legend.
    double lx = 60.0;
    for (std::size_t si = 0; si < series.size(); ++si) {
        for (Measure m : measures) {
            const Style st = style_for(si, m);
            svg << marker(st, lx, 46.0) << "<text x=\"" << fixed2(lx + 9) << "\" y=\"50\" "
                << "font-family=\"sans-serif\" font-size=\"12\">" << to_string(m) << " ("
                << series[si].label << ")</text>\n";
            lx += 140.0;
        }
    }

    for (std::size_t pi = 0; pi < kPanels.size(); ++pi) {
        const Partition part = kPanels[pi];
        const double ox = 70.0 + (pi % 2) * (kPanelW + 90.0);
        const double oy = 80.0 + (pi / 2) * (kPanelH + 80.0);

        double tmin = std::numeric_limits<double>::infinity();
        double tmax = -std::numeric_limits<double>::infinity();
        double vmax = 0.0;
        for (const auto& s : series) {
            for (const auto* rec : panel_records(s.result, part)) {
                tmin = std::min(tmin, rec->time);
                tmax = std::max(tmax, rec->time);
                for (Measure m : measures) vmax = std::max(vmax, rec->value(m));
            }
        }
        if (!std::isfinite(tmin)) {
            tmin = 0.0;
            tmax = 1.0;
        }
        if (tmax <= tmin) tmax = tmin + 1.0;
        const double ytop = nice_ceiling(vmax * 1.05);
        auto px = [&](double t) { return ox + (t - tmin) / (tmax - tmin) * kPanelW; };
        auto py = [&](double v) { return oy + kPanelH - std::clamp(v / ytop, 0.0, 1.0) * kPanelH; };

        const char letter = static_cast<char>('a' + pi);
        svg << "<g>\n<rect x=\"" << fixed2(ox) << "\" y=\"" << fixed2(oy) << "\" width=\""
            << fixed2(kPanelW) << "\" height=\"" << fixed2(kPanelH)
            << "\" fill=\"none\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed2(ox + 8) << "\" y=\"" << fixed2(oy + 18)
            << "\" font-family=\"sans-serif\" font-size=\"13\">(" << letter << ") "
            << to_string(part) << "</text>\n";
        for (int k = 0; k <= 4; ++k) {
            const double t = tmin + (tmax - tmin) * k / 4.0;
            const double v = ytop * k / 4.0;
            svg << "<text x=\"" << fixed2(px(t)) << "\" y=\"" << fixed2(oy + kPanelH + 16)
                << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
                << format_real(std::round(t * 1000.0) / 1000.0) << "</text>\n"
                << "<text x=\"" << fixed2(ox - 6) << "\" y=\"" << fixed2(py(v) + 3)
                << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
                << format_real(std::round(v * 10000.0) / 10000.0) << "</text>\n";
        }
        svg << "<text x=\"" << fixed2(ox + kPanelW / 2) << "\" y=\"" << fixed2(oy + kPanelH + 34)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << "dimensionless time</text>\n"
            << "<text x=\"" << fixed2(ox - 42) << "\" y=\"" << fixed2(oy + kPanelH / 2)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
            << "transform=\"rotate(-90 " << fixed2(ox - 42) << " " << fixed2(oy + kPanelH / 2)
            << ")\">bits</text>\n";

        for (std::size_t si = 0; si < series.size(); ++si) {
            const auto recs = panel_records(series[si].result, part);
            if (recs.empty()) continue;
            const std::size_t stride = std::max<std::size_t>(1, recs.size() / 25);
            for (Measure m : measures) {
                const Style st = style_for(si, m);
                if (recs.size() >= 2) {
                    svg << "<path d=\"";
                    for (std::size_t k = 0; k < recs.size(); ++k) {
                        svg << (k == 0 ? "M" : " L") << fixed2(px(recs[k]->time)) << ","
                            << fixed2(py(recs[k]->value(m)));
                    }
                    svg << "\" fill=\"none\" stroke=\"" << st.colour << "\" stroke-width=\"1\"/>\n";
                }
                for (std::size_t k = 0; k < recs.size(); k += stride) {
                    svg << marker(st, px(recs[k]->time), py(recs[k]->value(m))) << "\n";
                }
            }
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg_plot(std::span<const PlotSeries> series, std::span<const Measure> measures,
                   const std::string& title, const std::filesystem::path& path) {
    write_file_atomic(path, render_svg(series, measures, title));
}

std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir,
                                                 const SweepOptions& options) {
    static constexpr Measure kMeasures[] = {Measure::quantum, Measure::classical};
    const Pipeline pipeline = options.side == Side::second ? Pipeline::both : Pipeline::brute_force;
    std::vector<std::filesystem::path> written;
    for (const FigureSpec& fig : builtin_figures()) {
        std::vector<PlotSeries> series;
        for (const FigureOverlay& overlay : fig.overlays) {
            SweepResult result = run_sweep(overlay.scenario, kAllPartitions, pipeline, options);
            const auto csv = dir / (fig.name + "_" + overlay.label + ".csv");
            emit_csv(result, csv);
            written.push_back(csv);
            series.push_back({overlay.label, std::move(result)});
        }
        const auto svg = dir / (fig.name + ".svg");
        emit_svg_plot(series, kMeasures, fig.title, svg);
        written.push_back(svg);
    }
    return written;
}

}  // namespace qcorr
