#include "noisy_ea_cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace noisy_ea::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

struct Point {
  double x;
  double y;
  double err;
};

struct Series {
  std::string name;
  std::vector<Point> points;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string coord(double v) { return fmt("%.2f", v); }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double parse_number(const std::string& text, const std::string& column) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("column '" + column + "' has non-numeric value '" + text + "'");
  }
  return value;
}

// Axis mapping in transformed space (log or linear).
struct Axis {
  bool log = false;
  double base = 10.0;
  double lo = 0.0;
  double hi = 1.0;

  double transform(double v) const { return log ? std::log(v) / std::log(base) : v; }
};

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

// Tick positions in transformed space with their labels.
std::vector<std::pair<double, std::string>> ticks(const Axis& axis) {
  std::vector<std::pair<double, std::string>> out;
  if (axis.log) {
    for (double k = std::ceil(axis.lo - 1e-9); k <= axis.hi + 1e-9; k += 1.0) {
      const int b = static_cast<int>(axis.base);
      out.emplace_back(k, std::to_string(b) + "^" + std::to_string(static_cast<int>(k)));
    }
    return out;
  }
  const double step = nice_step(axis.hi - axis.lo);
  for (double t = std::ceil(axis.lo / step) * step; t <= axis.hi + step * 1e-9; t += step) {
    out.emplace_back(t, fmt("%.4g", std::abs(t) < step * 1e-9 ? 0.0 : t));
  }
  return out;
}

void fit(Axis& axis, double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double pad = (hi - lo) * 0.05;
  axis.lo = lo - pad;
  axis.hi = hi + pad;
}

}  // namespace

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
  for (const std::string* name : {&spec.x, &spec.y, &spec.series}) {
    if (!table.has_column(*name)) throw std::invalid_argument("column '" + *name + "' not found");
  }
  if (spec.yerr && !table.has_column(*spec.yerr)) {
    throw std::invalid_argument("column '" + *spec.yerr + "' not found");
  }
  if (spec.log_x_base && *spec.log_x_base < 2) {
    throw std::invalid_argument("log-x base must be at least 2");
  }
  if (table.rows.empty()) throw std::invalid_argument("input has no data rows");

  const std::size_t xc = table.column(spec.x);
  const std::size_t yc = table.column(spec.y);
  const std::size_t sc = table.column(spec.series);
  const std::optional<std::size_t> ec =
      spec.yerr ? std::optional<std::size_t>(table.column(*spec.yerr)) : std::nullopt;

  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const auto [it, inserted] = index.emplace(row[sc], series.size());
    if (inserted) series.push_back({row[sc], {}});
    Point p{parse_number(row[xc], spec.x), parse_number(row[yc], spec.y),
            ec ? parse_number(row[*ec], *spec.yerr) : 0.0};
    if (spec.log_x_base && !(p.x > 0.0)) throw std::invalid_argument("log x axis needs x > 0");
    if (spec.log_y && !(p.y > 0.0)) throw std::invalid_argument("log y axis needs y > 0");
    series[it->second].points.push_back(p);
  }
  for (auto& s : series) {
    std::stable_sort(s.points.begin(), s.points.end(),
                     [](const Point& a, const Point& b) { return a.x < b.x; });
  }

  Axis ax{spec.log_x_base.has_value(), spec.log_x_base ? double(*spec.log_x_base) : 10.0};
  Axis ay{spec.log_y, 10.0};
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      xlo = std::min(xlo, ax.transform(p.x));
      xhi = std::max(xhi, ax.transform(p.x));
      const double top = p.y + std::abs(p.err);
      const double bottom = p.y - std::abs(p.err);
      yhi = std::max(yhi, ay.transform(top));
      ylo = std::min(ylo, ay.transform(spec.log_y && bottom <= 0.0 ? p.y : bottom));
    }
  }
  fit(ax, xlo, xhi);
  fit(ay, ylo, yhi);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py_t = [&](double t) { return kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph; };
  auto py = [&](double v) { return py_t(ay.transform(v)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // Grid and ticks.
  for (const auto& [t, label] : ticks(ax)) {
    const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw;
    svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kTop) << "\" x2=\"" << coord(x)
        << "\" y2=\"" << coord(kTop + ph) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << escape(label) << "</text>\n";
  }
  for (const auto& [t, label] : ticks(ay)) {
    const double y = py_t(t);
    svg << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(y) << "\" x2=\""
        << coord(kLeft + pw) << "\" y2=\"" << coord(y) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << coord(kLeft - 6) << "\" y=\"" << coord(y + 4)
        << "\" text-anchor=\"end\">" << escape(label) << "</text>\n";
  }
  svg << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(pw)
      << "\" height=\"" << coord(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(spec.x) << "</text>\n";
  svg << "<text transform=\"translate(18," << coord(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    const auto& s = series[i];
    svg << "<g stroke=\"" << color << "\" fill=\"" << color << "\">\n";
    svg << "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      svg << (k ? " " : "") << coord(px(s.points[k].x)) << ',' << coord(py(s.points[k].y));
    }
    svg << "\"/>\n";
    for (const auto& p : s.points) {
      const double x = px(p.x);
      if (ec && p.err != 0.0) {
        const double e = std::abs(p.err);
        const double top = py(p.y + e);
        const double bottom = spec.log_y && p.y - e <= 0.0 ? kTop + ph : py(p.y - e);
        svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(top) << "\" x2=\"" << coord(x)
            << "\" y2=\"" << coord(bottom) << "\"/>\n";
        svg << "<line x1=\"" << coord(x - 4) << "\" y1=\"" << coord(top) << "\" x2=\""
            << coord(x + 4) << "\" y2=\"" << coord(top) << "\"/>\n";
        svg << "<line x1=\"" << coord(x - 4) << "\" y1=\"" << coord(bottom) << "\" x2=\""
            << coord(x + 4) << "\" y2=\"" << coord(bottom) << "\"/>\n";
      }
      svg << "<circle cx=\"" << coord(x) << "\" cy=\"" << coord(py(p.y)) << "\" r=\"3\"/>\n";
    }
    svg << "</g>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    const double lx = kLeft + pw + 15;
    svg << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(lx + 20)
        << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << coord(lx + 26) << "\" y=\"" << coord(ly + 4) << "\">"
        << escape(s.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace noisy_ea::cli
