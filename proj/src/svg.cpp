#include "hoti/svg.hpp"

#include "hoti/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace hoti {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 130, kTop = 40, kBottom = 60;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const std::array<const char*, 3> kClassColors{"#d62728", "#1f77b4", "#2ca02c"}; // bulk, edge, corner
const std::array<const char*, 4> kSeriesColors{"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

std::string hex_color(double r, double g, double b) {
  char buf[8];
  auto c = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255)); };
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
  return buf;
}

// Five-stop approximation of the viridis colour map.
std::string magnitude_color(double t) {
  static const double stops[5][3] = {
      {0.267, 0.005, 0.329}, {0.229, 0.322, 0.546}, {0.128, 0.567, 0.551}, {0.369, 0.789, 0.383}, {0.993, 0.906, 0.144}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 4;
  int i = std::min(3, static_cast<int>(t));
  double f = t - i;
  return hex_color(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]), stops[i][1] + f * (stops[i + 1][1] - stops[i][1]),
                   stops[i][2] + f * (stops[i + 1][2] - stops[i][2]));
}

const char* count_color(double count) {
  int c = static_cast<int>(std::lround(count));
  if (c <= 0) return "#f2c84b";
  if (c <= 2) return "#8fb8de";
  return "#2b5fa8";
}

class Canvas {
public:
  Canvas(const FigureSpec& spec, double x0, double x1, double y0, double y1)
      : x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1), y0_(y0), y1_(y1 > y0 ? y1 : y0 + 1) {
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
            "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" data-kind=\"" +
            figure_kind_name(spec.kind) + "\">\n";
    out_ += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
    out_ += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"15\">" + escape(spec.title) + "</text>\n";
    out_ += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"" + num(kHeight - 15) +
            "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(spec.x_label) + "</text>\n";
    out_ += "<text x=\"18\" y=\"" + num(kTop + kPlotH / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"13\" transform=\"rotate(-90 18 " + num(kTop + kPlotH / 2) + ")\">" + escape(spec.y_label) +
            "</text>\n";
  }

  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * kPlotW; }
  double py(double y) const { return kTop + kPlotH - (y - y0_) / (y1_ - y0_) * kPlotH; }

  void raw(const std::string& s) { out_ += s; }

  void axes() {
    out_ += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kPlotW) + "\" height=\"" +
            num(kPlotH) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      double xv = x0_ + (x1_ - x0_) * i / 4, yv = y0_ + (y1_ - y0_) * i / 4;
      out_ += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + kPlotH + 16) +
              "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick(xv) + "</text>\n";
      out_ += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(yv) + 4) +
              "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick(yv) + "</text>\n";
    }
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 10;
    for (const auto& [label, color] : entries) {
      out_ += "<rect x=\"" + num(kLeft + kPlotW + 12) + "\" y=\"" + num(y - 9) + "\" width=\"10\" height=\"10\" fill=\"" +
              color + "\"/>\n";
      out_ += "<text x=\"" + num(kLeft + kPlotW + 28) + "\" y=\"" + num(y) +
              "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(label) + "</text>\n";
      y += 18;
    }
  }

  std::string finish() {
    out_ += "</svg>\n";
    return out_;
  }

private:
  double x0_, x1_, y0_, y1_;
  std::string out_;
};

std::string render_butterfly(const FigureSpec& spec, const FigureData& d) {
  if (d.points.empty()) throw Error(ErrorCode::invalid_argument, "butterfly figure needs at least one point");
  double x0 = d.points[0].x, x1 = x0, y0 = d.points[0].y, y1 = y0;
  for (const auto& p : d.points) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  double pad = 0.02 * std::max(1e-9, y1 - y0);
  Canvas c(spec, x0, x1, y0 - pad, y1 + pad);
  c.axes();
  // Corner modes last so they stay visible on top of the bulk bands.
  for (int cat = 0; cat < 3; ++cat) {
    c.raw("<g fill=\"" + std::string(kClassColors[static_cast<std::size_t>(cat)]) + "\" data-class=\"" +
          (static_cast<std::size_t>(cat) < d.category_names.size() ? d.category_names[static_cast<std::size_t>(cat)] : std::to_string(cat)) +
          "\">\n");
    for (const auto& p : d.points)
      if (p.category == cat)
        c.raw("<circle cx=\"" + num(c.px(p.x)) + "\" cy=\"" + num(c.py(p.y)) + "\" r=\"" + (cat == 2 ? "1.6" : "0.8") + "\"/>\n");
    c.raw("</g>\n");
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t k = 0; k < 3; ++k)
    legend.emplace_back(k < d.category_names.size() ? d.category_names[k] : std::to_string(k), kClassColors[k]);
  c.legend(legend);
  return c.finish();
}

std::string render_heatmap(const FigureSpec& spec, const FigureData& d) {
  if (d.grid.size() == 0) throw Error(ErrorCode::invalid_argument, "heatmap needs a non-empty grid");
  const auto rows = d.grid.rows(), cols = d.grid.cols();
  Canvas c(spec, d.x_min, d.x_max, d.y_min, d.y_max);
  const double lo = d.grid.minCoeff(), hi = d.grid.maxCoeff();
  const double cw = kPlotW / static_cast<double>(cols), ch = kPlotH / static_cast<double>(rows);
  c.raw("<g data-rows=\"" + std::to_string(rows) + "\" data-cols=\"" + std::to_string(cols) + "\">\n");
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      double v = d.grid(r, k);
      std::string color = d.categorical ? count_color(v) : magnitude_color(hi > lo ? (v - lo) / (hi - lo) : 0.0);
      c.raw("<rect x=\"" + num(kLeft + static_cast<double>(k) * cw) + "\" y=\"" +
            num(kTop + kPlotH - static_cast<double>(r + 1) * ch) + "\" width=\"" + num(cw + 0.05) + "\" height=\"" +
            num(ch + 0.05) + "\" fill=\"" + color + "\"/>\n");
    }
  }
  c.raw("</g>\n");
  c.axes();
  if (d.categorical) {
    c.legend({{"0 corner modes", count_color(0)}, {"2 corner modes", count_color(2)}, {"4 corner modes", count_color(4)}});
  } else {
    c.legend({{"min " + tick(lo), magnitude_color(0)}, {"max " + tick(hi), magnitude_color(1)}});
  }
  return c.finish();
}

std::string render_r_curve(const FigureSpec& spec, const FigureData& d) {
  if (d.x.empty() || d.series.empty()) throw Error(ErrorCode::invalid_argument, "R curve needs at least one point");
  for (const auto& s : d.series)
    if (s.y.size() != d.x.size()) throw Error(ErrorCode::size, "series '" + s.name + "' length differs from x");
  double x0 = *std::min_element(d.x.begin(), d.x.end()), x1 = *std::max_element(d.x.begin(), d.x.end());
  for (double v : d.v_lines) x0 = std::min(x0, v), x1 = std::max(x1, v);
  Canvas c(spec, x0, x1, 0.0, 1.0);
  c.axes();
  for (double h : d.h_lines)
    c.raw("<line x1=\"" + num(c.px(x0)) + "\" y1=\"" + num(c.py(h)) + "\" x2=\"" + num(c.px(x1)) + "\" y2=\"" +
          num(c.py(h)) + "\" stroke=\"black\" stroke-dasharray=\"6 4\" data-ref=\"h\" data-value=\"" + tick(h) + "\"/>\n");
  for (double v : d.v_lines)
    c.raw("<line x1=\"" + num(c.px(v)) + "\" y1=\"" + num(c.py(0)) + "\" x2=\"" + num(c.px(v)) + "\" y2=\"" +
          num(c.py(1)) + "\" stroke=\"gray\" stroke-dasharray=\"2 3\" data-ref=\"v\" data-value=\"" + tick(v) + "\"/>\n");
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t k = 0; k < d.series.size(); ++k) {
    const char* color = kSeriesColors[k % kSeriesColors.size()];
    std::string pts;
    for (std::size_t i = 0; i < d.x.size(); ++i) {
      if (i) pts += ' ';
      pts += num(c.px(d.x[i])) + "," + num(c.py(std::clamp(d.series[k].y[i], 0.0, 1.0)));
    }
    c.raw("<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n");
    legend.emplace_back(d.series[k].name, color);
  }
  c.legend(legend);
  return c.finish();
}

} // namespace

const char* figure_kind_name(FigureKind k) {
  switch (k) {
  case FigureKind::butterfly_scatter: return "butterfly-scatter";
  case FigureKind::phase_heatmap: return "phase-heatmap";
  case FigureKind::lattice_heatmap: return "lattice-heatmap";
  case FigureKind::r_curve: return "r-curve";
  }
  return "unknown";
}

std::string render_figure(const FigureSpec& spec, const FigureData& data) {
  switch (spec.kind) {
  case FigureKind::butterfly_scatter: return render_butterfly(spec, data);
  case FigureKind::phase_heatmap:
  case FigureKind::lattice_heatmap: return render_heatmap(spec, data);
  case FigureKind::r_curve: return render_r_curve(spec, data);
  }
  throw Error(ErrorCode::invalid_argument, "unknown figure kind");
}

} // namespace hoti
