#include "sweep/report.hpp"

#include "sweep/errors.hpp"
#include "sweep/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace sweep {

namespace {

// Fixed-precision coordinates keep the documents compact and deterministic.
std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Human-facing numbers (ticks, annotations): %g trims trailing zeros.
std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string svg_escape(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Rect {
    double x, y, w, h;
};

void render_panel(std::ostringstream& svg, const Rect& area, Indicator indicator,
                  const IndicatorBand& band) {
    const double axis_left = 34.0;
    const double axis_bottom = 16.0;
    const double title_height = 14.0;
    Rect plot{area.x + axis_left, area.y + title_height, area.w - axis_left - 6.0,
              area.h - title_height - axis_bottom};

    const std::size_t steps = band.rows.size();
    double y_max = 0.0;
    for (const auto& row : band.rows) {
        y_max = std::max(y_max, row[4]);
    }
    if (y_max <= 0.0) {
        y_max = 1.0; // degenerate scale: a constant-zero series spans [0,1]
    }
    const double x_max = steps > 1 ? static_cast<double>(steps - 1) : 1.0;

    auto sx = [&](double step) { return plot.x + step / x_max * plot.w; };
    auto sy = [&](double value) { return plot.y + (1.0 - value / y_max) * plot.h; };

    svg << "<g class=\"panel\">\n";
    svg << "<text class=\"panel-title\" x=\"" << coord(plot.x + plot.w / 2) << "\" y=\""
        << coord(area.y + 10.0) << "\" text-anchor=\"middle\" font-size=\"11\">"
        << kIndicatorNames[static_cast<std::size_t>(indicator)] << "</text>\n";

    // frame and ticks
    svg << "<rect x=\"" << coord(plot.x) << "\" y=\"" << coord(plot.y) << "\" width=\""
        << coord(plot.w) << "\" height=\"" << coord(plot.h)
        << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double frac = static_cast<double>(tick) / 4.0;
        svg << "<text class=\"y-tick\" x=\"" << coord(plot.x - 3.0) << "\" y=\""
            << coord(sy(frac * y_max) + 3.0)
            << "\" text-anchor=\"end\" font-size=\"8\">" << label(frac * y_max)
            << "</text>\n";
        if (tick > 0 && tick < 4) {
            svg << "<line x1=\"" << coord(plot.x) << "\" y1=\""
                << coord(sy(frac * y_max)) << "\" x2=\"" << coord(plot.x + plot.w)
                << "\" y2=\"" << coord(sy(frac * y_max))
                << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
        }
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const double step = x_max * static_cast<double>(tick) / 4.0;
        svg << "<text class=\"x-tick\" x=\"" << coord(sx(step)) << "\" y=\""
            << coord(plot.y + plot.h + 11.0)
            << "\" text-anchor=\"middle\" font-size=\"8\">" << label(step)
            << "</text>\n";
    }

    // min..max band
    svg << "<polygon class=\"band\" fill=\"#c6dbef\" stroke=\"none\" points=\"";
    for (std::size_t s = 0; s < steps; ++s) {
        svg << coord(sx(static_cast<double>(s))) << ','
            << coord(sy(band.rows[s][4])) << ' ';
    }
    for (std::size_t s = steps; s-- > 0;) {
        svg << coord(sx(static_cast<double>(s))) << ','
            << coord(sy(band.rows[s][0]));
        if (s > 0) {
            svg << ' ';
        }
    }
    svg << "\"/>\n";

    // q1, median, q3
    const struct {
        std::size_t stat;
        const char* cls;
        const char* color;
        const char* width;
    } lines[] = {
        {1, "q1", "#6baed6", "1"},
        {2, "median", "#08519c", "1.5"},
        {3, "q3", "#6baed6", "1"},
    };
    for (const auto& line : lines) {
        svg << "<polyline class=\"" << line.cls << "\" fill=\"none\" stroke=\""
            << line.color << "\" stroke-width=\"" << line.width << "\" points=\"";
        for (std::size_t s = 0; s < steps; ++s) {
            svg << coord(sx(static_cast<double>(s))) << ','
                << coord(sy(band.rows[s][line.stat]));
            if (s + 1 < steps) {
                svg << ' ';
            }
        }
        svg << "\"/>\n";
    }
    svg << "</g>\n";
}

// RGB linear interpolation over a light-to-dark sequential ramp.
std::string scale_color(double t) {
    const int r0 = 255, g0 = 245, b0 = 235; // near-white warm
    const int r1 = 127, g1 = 39, b1 = 4;    // dark burnt orange
    auto mix = [t](int a, int b) {
        return static_cast<int>(std::lround(static_cast<double>(a) +
                                            t * static_cast<double>(b - a)));
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", mix(r0, r1), mix(g0, g1),
                  mix(b0, b1));
    return buf;
}

} // namespace

std::string render_timeseries(const ReplicationSummary& summary,
                              const std::string& title, int width, int height) {
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";
    svg << "<text class=\"title\" x=\"" << width / 2
        << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << svg_escape(title)
        << "</text>\n";

    // 2 + 3 + 3 panels over three rows
    static constexpr Indicator layout[3][3] = {
        {Indicator::Susceptible, Indicator::Recovered, Indicator::Recovered},
        {Indicator::Presymptomatic, Indicator::Asymptomatic, Indicator::Symptomatic},
        {Indicator::Hospitalized, Indicator::Icu, Indicator::Deaths},
    };
    static constexpr int panels_per_row[3] = {2, 3, 3};

    const double top = 32.0;
    const double margin = 8.0;
    const double row_height = (static_cast<double>(height) - top - margin) / 3.0;
    for (int row = 0; row < 3; ++row) {
        const int n = panels_per_row[row];
        const double panel_width =
            (static_cast<double>(width) - 2.0 * margin) / static_cast<double>(n);
        for (int col = 0; col < n; ++col) {
            const Indicator indicator = layout[row][col];
            const Rect area{margin + panel_width * col, top + row_height * row,
                            panel_width, row_height};
            render_panel(svg, area, indicator,
                         summary.indicators[static_cast<std::size_t>(indicator)]);
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_heatmap(const GridSummary& grid, const std::string& title,
                           int width, int height) {
    const std::size_t nx = grid.x_values.size();
    const std::size_t ny = grid.y_values.size();

    double v_min = grid.cells[0][0];
    double v_max = v_min;
    for (const auto& row : grid.cells) {
        for (double v : row) {
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
    }
    // a flat grid still gets a legend with a nonzero span
    const double legend_max = v_max > v_min ? v_max : v_min + 1.0;
    const double span = v_max - v_min;

    const double top = 40.0;
    const double left = 70.0;
    const double bottom = 46.0;
    const double legend_width = 64.0;
    const Rect plot{left, top, static_cast<double>(width) - left - legend_width - 24.0,
                    static_cast<double>(height) - top - bottom};
    const double cell_w = plot.w / static_cast<double>(nx);
    const double cell_h = plot.h / static_cast<double>(ny);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "<defs>\n<linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\n"
        << "<stop offset=\"0\" stop-color=\"" << scale_color(0.0) << "\"/>\n"
        << "<stop offset=\"1\" stop-color=\"" << scale_color(1.0) << "\"/>\n"
        << "</linearGradient>\n</defs>\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";
    svg << "<text class=\"title\" x=\"" << width / 2
        << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << svg_escape(title)
        << "</text>\n";

    // cells, y ascending upward
    for (std::size_t yi = 0; yi < ny; ++yi) {
        const double y = plot.y + plot.h - cell_h * static_cast<double>(yi + 1);
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const double x = plot.x + cell_w * static_cast<double>(xi);
            const double value = grid.cells[yi][xi];
            const double t = span > 0.0 ? (value - v_min) / span : 0.0;
            svg << "<rect class=\"cell\" x=\"" << coord(x) << "\" y=\"" << coord(y)
                << "\" width=\"" << coord(cell_w) << "\" height=\"" << coord(cell_h)
                << "\" fill=\"" << scale_color(t) << "\"/>\n";
            svg << "<text class=\"cell-label\" x=\"" << coord(x + cell_w / 2)
                << "\" y=\"" << coord(y + cell_h / 2 + 3.0)
                << "\" text-anchor=\"middle\" font-size=\"10\" fill=\""
                << (t > 0.6 ? "#ffffff" : "#000000") << "\">" << label(value)
                << "</text>\n";
        }
    }

    // axis tick labels at cell centers
    for (std::size_t xi = 0; xi < nx; ++xi) {
        svg << "<text class=\"x-tick\" x=\""
            << coord(plot.x + cell_w * (static_cast<double>(xi) + 0.5)) << "\" y=\""
            << coord(plot.y + plot.h + 14.0)
            << "\" text-anchor=\"middle\" font-size=\"9\">" << label(grid.x_values[xi])
            << "</text>\n";
    }
    for (std::size_t yi = 0; yi < ny; ++yi) {
        svg << "<text class=\"y-tick\" x=\"" << coord(plot.x - 5.0) << "\" y=\""
            << coord(plot.y + plot.h - cell_h * (static_cast<double>(yi) + 0.5) + 3.0)
            << "\" text-anchor=\"end\" font-size=\"9\">" << label(grid.y_values[yi])
            << "</text>\n";
    }
    svg << "<text class=\"x-axis\" x=\"" << coord(plot.x + plot.w / 2) << "\" y=\""
        << coord(static_cast<double>(height) - 12.0)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << svg_escape(grid.x_param)
        << "</text>\n";
    svg << "<text class=\"y-axis\" x=\"14\" y=\"" << coord(plot.y + plot.h / 2)
        << "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 14 "
        << coord(plot.y + plot.h / 2) << ")\">" << svg_escape(grid.y_param)
        << "</text>\n";

    // legend
    const double lx = plot.x + plot.w + 16.0;
    svg << "<rect class=\"legend\" x=\"" << coord(lx) << "\" y=\"" << coord(plot.y)
        << "\" width=\"14\" height=\"" << coord(plot.h)
        << "\" fill=\"url(#scale)\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n";
    svg << "<text class=\"legend-max\" x=\"" << coord(lx + 18.0) << "\" y=\""
        << coord(plot.y + 8.0) << "\" font-size=\"9\">" << label(legend_max)
        << "</text>\n";
    svg << "<text class=\"legend-min\" x=\"" << coord(lx + 18.0) << "\" y=\""
        << coord(plot.y + plot.h) << "\" font-size=\"9\">" << label(v_min)
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::filesystem::path write_summary_csv(const ReplicationSummary& summary,
                                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << "step,indicator,min,q1,median,q3,max\n";
    for (int ind = 0; ind < kIndicatorCount; ++ind) {
        const auto& band = summary.indicators[static_cast<std::size_t>(ind)];
        for (std::size_t step = 0; step < band.rows.size(); ++step) {
            out << step << ',' << kIndicatorNames[static_cast<std::size_t>(ind)];
            for (double stat : band.rows[step]) {
                out << ',' << format_double(stat);
            }
            out << '\n';
        }
    }
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
    return path;
}

std::filesystem::path write_grid_csv(const GridSummary& grid,
                                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << grid.y_param << '\\' << grid.x_param;
    for (double x : grid.x_values) {
        out << ',' << format_double(x);
    }
    out << '\n';
    for (std::size_t yi = 0; yi < grid.y_values.size(); ++yi) {
        out << format_double(grid.y_values[yi]);
        for (double cell : grid.cells[yi]) {
            out << ',' << format_double(cell);
        }
        out << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
    return path;
}

GridSummary read_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    const std::string file = path.filename().string();
    auto fail = [&](int line, const std::string& message) -> void {
        throw FormatError(file + ":" + std::to_string(line) + ": " + message);
    };

    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::size_t begin = 0;
        while (begin <= line.size()) {
            const std::size_t end = std::min(line.find(',', begin), line.size());
            cells.emplace_back(line.substr(begin, end - begin));
            begin = end + 1;
        }
        return cells;
    };

    GridSummary grid;
    std::string line;
    if (!std::getline(in, line)) {
        fail(1, "empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    auto header = split(line);
    if (header.size() < 2) {
        fail(1, "header must contain at least one x value");
    }
    const auto sep = header[0].find('\\');
    if (sep == std::string::npos) {
        fail(1, "corner cell must be 'yParam\\xParam'");
    }
    grid.y_param = header[0].substr(0, sep);
    grid.x_param = header[0].substr(sep + 1);
    for (std::size_t i = 1; i < header.size(); ++i) {
        try {
            grid.x_values.push_back(parse_double(header[i]));
        } catch (const FormatError&) {
            fail(1, "x value '" + header[i] + "' is not numeric");
        }
    }

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        auto cells = split(line);
        if (cells.size() != grid.x_values.size() + 1) {
            fail(line_no, "expected " + std::to_string(grid.x_values.size() + 1) +
                              " fields, got " + std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(grid.x_values.size());
        try {
            grid.y_values.push_back(parse_double(cells[0]));
            for (std::size_t i = 1; i < cells.size(); ++i) {
                row.push_back(parse_double(cells[i]));
            }
        } catch (const FormatError&) {
            fail(line_no, "non-numeric cell");
        }
        grid.cells.push_back(std::move(row));
    }
    if (grid.y_values.empty()) {
        fail(1, "grid has no rows");
    }
    return grid;
}

std::filesystem::path write_text_file(const std::string& content,
                                      const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
    return path;
}

} // namespace sweep
