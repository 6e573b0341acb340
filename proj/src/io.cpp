#include "cqnc/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cqnc {

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::size_t column_index(const Table& t, const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    if (it == t.columns.end())
        throw std::invalid_argument("no such column: " + name);
    return static_cast<std::size_t>(it - t.columns.begin());
}
}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt(row[i]);
        out << "\n";
    }
}

void write_jsonl(const Table& table, std::ostream& out) {
    for (const auto& row : table.rows) {
        out << "{";
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << "\"" << table.columns[i] << "\":";
            if (std::isfinite(row[i]))
                out << fmt(row[i]);
            else
                out << "null";
        }
        out << "}\n";
    }
}

std::string render_svg(const Table& table, const std::string& x_col,
                       const std::string& y_col, const std::string& group_col,
                       bool log_y) {
    const std::size_t xi = column_index(table, x_col);
    const std::size_t yi = column_index(table, y_col);
    const bool grouped = !group_col.empty();
    const std::size_t gi = grouped ? column_index(table, group_col) : 0;

    std::map<double, std::vector<std::pair<double, double>>> series;
    for (const auto& row : table.rows) {
        double y = row[yi];
        if (log_y) {
            if (y <= 0) continue;
            y = std::log10(y);
        }
        series[grouped ? row[gi] : 0.0].push_back({row[xi], y});
    }
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [key, pts] : series)
        for (auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax <= xmin || series.empty()) return "<svg/>";
    if (ymax <= ymin) ymax = ymin + 1;

    const int w = 720, h = 480, pad = 48;
    auto sx = [&](double x) {
        return pad + (x - xmin) / (xmax - xmin) * (w - 2 * pad);
    };
    auto sy = [&](double y) {
        return h - pad - (y - ymin) / (ymax - ymin) * (h - 2 * pad);
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
       << "\" height=\"" << h << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    int ci = 0;
    for (auto& [key, pts] : series) {
        std::sort(pts.begin(), pts.end());
        os << "<polyline fill=\"none\" stroke=\"" << palette[ci++ % 6]
           << "\" stroke-width=\"1.5\" points=\"";
        for (auto& [x, y] : pts) os << sx(x) << "," << sy(y) << " ";
        os << "\"/>\n";
    }
    os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << x_col
       << "</text>\n"
       << "<text x=\"14\" y=\"" << h / 2
       << "\" font-size=\"12\" transform=\"rotate(-90 14," << h / 2 << ")\">"
       << (log_y ? "log10 " : "") << y_col << "</text>\n</svg>\n";
    return os.str();
}

}  // namespace cqnc
