#include "goldenmap/svg.hpp"

#include <cmath>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gm {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
}

double SvgCanvas::sx(double u) const { return (u + kHalfPi) / (2 * kHalfPi) * px_; }
double SvgCanvas::sy(double v) const { return (kHalfPi - v) / (2 * kHalfPi) * px_; }

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                         double width, bool dashed) {
  if (pts.size() < 2) return;
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << '"';
  if (dashed) os << " stroke-dasharray=\"4 3\"";
  os << " points=\"";
  char buf[64];
  double lx = 0, ly = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = sx(pts[i].first), y = sy(pts[i].second);
    // Points closer than a quarter pixel to the last one drawn add nothing.
    if (i > 0 && i + 1 < pts.size() && std::abs(x - lx) < 0.25 && std::abs(y - ly) < 0.25) continue;
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", x, y);
    os << buf;
    lx = x, ly = y;
  }
  os << "\"/>";
  items_.push_back(os.str());
}

void SvgCanvas::dot(double u, double v, double radius, const std::string& color) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>", sx(u), sy(v), radius,
                color.c_str());
  items_.push_back(buf);
}

void SvgCanvas::text(double u, double v, const std::string& s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">", sx(u), sy(v));
  items_.push_back(buf + s + "</text>");
}

std::string SvgCanvas::str() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_ << "\" height=\"" << px_
     << "\" viewBox=\"0 0 " << px_ << ' ' << px_ << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\" stroke=\"black\"/>\n";
  // Axes x = 0 and y = 0.
  os << "<line x1=\"" << sx(0) << "\" y1=\"0\" x2=\"" << sx(0) << "\" y2=\"" << px_
     << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  os << "<line x1=\"0\" y1=\"" << sy(0) << "\" x2=\"" << px_ << "\" y2=\"" << sy(0)
     << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  for (const auto& s : items_) os << s << '\n';
  os << "</svg>\n";
  return os.str();
}

void SvgCanvas::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << str();
}

}  // namespace gm
