#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hoti {

enum class FigureKind { butterfly_scatter, phase_heatmap, lattice_heatmap, r_curve };

const char* figure_kind_name(FigureKind k);

struct FigureSpec {
  FigureKind kind = FigureKind::butterfly_scatter;
  std::string title;
  std::string x_label;
  std::string y_label;
};

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  int category = 0; // mode class for butterflies
};

struct Series {
  std::string name;
  std::vector<double> y;
};

struct FigureData {
  // butterfly-scatter
  std::vector<ScatterPoint> points;
  std::vector<std::string> category_names;
  // phase-heatmap and lattice-heatmap; row 0 is drawn at the bottom
  Eigen::MatrixXd grid;
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool categorical = false; // phase maps colour by corner-mode count
  // r-curve
  std::vector<double> x;
  std::vector<Series> series;
  std::vector<double> h_lines;
  std::vector<double> v_lines;
};

std::string render_figure(const FigureSpec& spec, const FigureData& data);

} // namespace hoti
