#include "colscale/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "colscale/errors.hpp"

namespace col {
namespace {

constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};
constexpr double kMargin = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

struct Axis {
  double lo, hi, px_lo, px_hi;
  double operator()(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

Axis padded(double lo, double hi, double px_lo, double px_hi) {
  if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad, px_lo, px_hi};
}

class Svg {
 public:
  explicit Svg(const PlotOptions& o) : o_(o) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height
         << "\" viewBox=\"0 0 " << o.width << ' ' << o.height << "\">\n";
    out_ << "<rect x=\"0\" y=\"0\" width=\"" << o.width << "\" height=\"" << o.height << "\" fill=\"white\"/>\n";
    if (!o.title.empty()) text(o.width / 2.0, kMargin / 2.0, o.title, "middle", 16);
    if (!o.x_label.empty()) text(o.width / 2.0, o.height - 15.0, o.x_label, "middle", 12);
    if (!o.y_label.empty())
      out_ << "<text x=\"15\" y=\"" << num(o.height / 2.0) << "\" font-family=\"sans-serif\" font-size=\"12\" "
           << "text-anchor=\"middle\" transform=\"rotate(-90 15 " << num(o.height / 2.0) << ")\">"
           << escape(o.y_label) << "</text>\n";
  }

  void text(double x, double y, const std::string& s, const char* anchor, int size) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"" << size
         << "\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
  }
  void line(double x1, double y1, double x2, double y2, const char* stroke = "black", const char* cls = nullptr) {
    out_ << "<line";
    if (cls) out_ << " class=\"" << cls << "\"";
    out_ << " x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
         << "\" stroke=\"" << stroke << "\"/>\n";
  }
  std::ostringstream& raw() { return out_; }
  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }
  double left() const { return kMargin; }
  double right() const { return o_.width - kMargin / 2.0; }
  double top() const { return kMargin; }
  double bottom() const { return o_.height - kMargin; }

  void frame(const Axis& x, const Axis* y) {
    line(left(), bottom(), right(), bottom());
    line(left(), top(), left(), bottom());
    for (int i = 0; i <= 4; ++i) {
      const double v = x.lo + (x.hi - x.lo) * i / 4.0;
      text(x(v), bottom() + 16, num(std::round(v * 100) / 100), "middle", 10);
    }
    if (!y) return;
    for (int i = 0; i <= 4; ++i) {
      const double v = y->lo + (y->hi - y->lo) * i / 4.0;
      text(left() - 6, (*y)(v) + 3, num(std::round(v * 100) / 100), "end", 10);
    }
  }

 private:
  PlotOptions o_;
  std::ostringstream out_;
};

}  // namespace

std::string scatter_svg(const std::vector<ScatterPoint>& points, const PlotOptions& opts) {
  if (points.empty()) throw ArgumentError("scatter plot: no points");
  Svg svg(opts);
  auto [xmin, xmax] = std::minmax_element(points.begin(), points.end(),
                                          [](const auto& a, const auto& b) { return a.x < b.x; });
  auto [ymin, ymax] = std::minmax_element(points.begin(), points.end(),
                                          [](const auto& a, const auto& b) { return a.y < b.y; });
  const Axis x = padded(xmin->x, xmax->x, svg.left(), svg.right());
  const Axis y = padded(ymin->y, ymax->y, svg.bottom(), svg.top());
  svg.frame(x, &y);
  if (x.lo < 0 && x.hi > 0) svg.line(x(0), svg.top(), x(0), svg.bottom(), "#bbbbbb");
  if (y.lo < 0 && y.hi > 0) svg.line(svg.left(), y(0), svg.right(), y(0), "#bbbbbb");
  for (const auto& p : points) {
    const char* color = kPalette[static_cast<std::size_t>(std::abs(p.group)) % std::size(kPalette)];
    svg.raw() << "<circle class=\"point\" data-label=\"" << escape(p.label) << "\" data-group=\"" << p.group
              << "\" cx=\"" << num(x(p.x)) << "\" cy=\"" << num(y(p.y)) << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    if (!p.label.empty()) svg.text(x(p.x) + 7, y(p.y) - 4, p.label, "start", 9);
  }
  return svg.finish();
}

std::string histogram_svg(const Histogram& h, const PlotOptions& opts) {
  if (h.counts.empty()) throw ArgumentError("histogram plot: no bins");
  Svg svg(opts);
  const Axis x = {h.edges.front(), h.edges.back(), svg.left(), svg.right()};
  const double top = static_cast<double>(*std::max_element(h.counts.begin(), h.counts.end()));
  const Axis y = {0.0, std::max(top, 1.0) * 1.05, svg.bottom(), svg.top()};
  svg.frame(x, &y);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double x0 = x(h.edges[i]), x1 = x(h.edges[i + 1]);
    const double y0 = y(static_cast<double>(h.counts[i]));
    svg.raw() << "<rect class=\"bar\" data-count=\"" << h.counts[i] << "\" x=\"" << num(x0) << "\" y=\"" << num(y0)
              << "\" width=\"" << num(std::max(x1 - x0 - 1.0, 0.5)) << "\" height=\"" << num(svg.bottom() - y0)
              << "\" fill=\"" << kPalette[0] << "\"/>\n";
  }
  return svg.finish();
}

std::string boxplot_svg(const std::vector<BoxSeries>& series, const PlotOptions& opts) {
  if (series.empty()) throw ArgumentError("box plot: no series");
  Svg svg(opts);
  double lo = series.front().min, hi = series.front().max;
  for (const auto& s : series) {
    lo = std::min({lo, s.min, s.marker.value_or(s.min)});
    hi = std::max({hi, s.max, s.marker.value_or(s.max)});
  }
  // Horizontal boxes, one row per series.
  const Axis x = padded(lo, hi, svg.left() + 120, svg.right());
  svg.frame(x, nullptr);
  const double row = (svg.bottom() - svg.top()) / static_cast<double>(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const double cy = svg.top() + row * (static_cast<double>(i) + 0.5);
    const double hh = std::min(row * 0.35, 12.0);
    svg.text(svg.left() + 114, cy + 4, s.name, "end", 10);
    svg.line(x(s.min), cy, x(s.q1), cy, "black", "whisker");
    svg.line(x(s.q3), cy, x(s.max), cy, "black", "whisker");
    svg.raw() << "<rect class=\"box\" data-name=\"" << escape(s.name) << "\" x=\"" << num(x(s.q1)) << "\" y=\""
              << num(cy - hh) << "\" width=\"" << num(std::max(x(s.q3) - x(s.q1), 0.5)) << "\" height=\""
              << num(2 * hh) << "\" fill=\"" << kPalette[2] << "\" fill-opacity=\"0.4\" stroke=\"black\"/>\n";
    svg.line(x(s.median), cy - hh, x(s.median), cy + hh, "black", "median");
    if (s.marker)
      svg.raw() << "<circle class=\"marker\" cx=\"" << num(x(*s.marker)) << "\" cy=\"" << num(cy)
                << "\" r=\"4\" fill=\"red\"/>\n";
  }
  return svg.finish();
}

std::vector<BoxSeries> boxes_from_categories(const std::vector<CategorySummary>& cats) {
  std::vector<BoxSeries> out;
  for (const auto& c : cats) out.push_back({c.category, c.min, c.q1, c.median, c.q3, c.max, std::nullopt});
  return out;
}

}  // namespace col
