#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gm {

// Figure on the square [-pi/2, pi/2]^2 of arctan coordinates.
class SvgCanvas {
 public:
  explicit SvgCanvas(int pixels = 800) : px_(pixels) {}

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width,
                bool dashed = false);
  void dot(double u, double v, double radius, const std::string& color);
  void text(double u, double v, const std::string& s);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  double sx(double u) const;
  double sy(double v) const;
  int px_;
  std::vector<std::string> items_;
};

}  // namespace gm
