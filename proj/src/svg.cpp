#include "outer_rates/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace outer_rates {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double eval(const std::vector<double>& c, double x) {
  double r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

}  // namespace

std::string svg_poly_plot(const std::vector<CurveSpec>& curves, double xmin,
                          double xmax, int samples, int width, int height) {
  if (curves.empty() || xmax <= xmin || samples < 2)
    return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>";

  std::vector<std::vector<std::pair<double, double>>> pts(curves.size());
  double ymin = 0, ymax = 0;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (int s = 0; s < samples; ++s) {
      double x = xmin + (xmax - xmin) * s / (samples - 1);
      double y = eval(curves[c].coeffs, x);
      pts[c].emplace_back(x, y);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (ymax == ymin) ymax = ymin + 1;
  double yspan = ymax - ymin;
  ymin -= 0.05 * yspan;
  ymax += 0.05 * yspan;

  const double ml = 46, mr = 12, mt = 12, mb = 30;
  double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes through the origin when it is inside the view.
  if (xmin <= 0 && 0 <= xmax)
    out += "<line x1=\"" + fmt(px(0)) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
           fmt(px(0)) + "\" y2=\"" + fmt(mt + ph) +
           "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  if (ymin <= 0 && 0 <= ymax)
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(py(0)) + "\" x2=\"" +
           fmt(ml + pw) + "\" y2=\"" + fmt(py(0)) +
           "\" stroke=\"#888\" stroke-width=\"1\"/>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    out += "<polyline fill=\"none\" stroke=\"" + curves[c].color +
           "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts[c])
      out += fmt(px(x)) + "," + fmt(py(y)) + " ";
    out += "\"/>\n";
    out += "<text x=\"" + fmt(ml + 8) + "\" y=\"" +
           fmt(mt + 16 + 16 * static_cast<double>(c)) + "\" fill=\"" +
           curves[c].color + "\" font-size=\"13\">" + curves[c].label +
           "</text>\n";
  }

  // Corner ticks with the data range.
  out += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(height - 8.0) +
         "\" fill=\"#444\" font-size=\"11\">x: " + fmt(xmin) + " .. " +
         fmt(xmax) + "</text>\n";
  out += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 8.0) +
         "\" fill=\"#444\" font-size=\"11\">y: " + fmt(ymin) + " .. " +
         fmt(ymax) + "</text>\n";
  out += "</svg>\n";
  return out;
}

std::string svg_root_scatter(const std::vector<std::complex<double>>& roots,
                             int size) {
  double extent = 1.2;
  for (const auto& z : roots) extent = std::max(extent, std::abs(z) * 1.1);

  double half = size / 2.0;
  auto px = [&](double x) { return half + x / extent * (half - 10); };
  auto py = [&](double y) { return half - y / extent * (half - 10); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(size) + "\" height=\"" + std::to_string(size) +
         "\" viewBox=\"0 0 " + std::to_string(size) + " " +
         std::to_string(size) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<line x1=\"0\" y1=\"" + fmt(half) + "\" x2=\"" +
         std::to_string(size) + "\" y2=\"" + fmt(half) +
         "\" stroke=\"#ccc\"/>\n";
  out += "<line x1=\"" + fmt(half) + "\" y1=\"0\" x2=\"" + fmt(half) +
         "\" y2=\"" + std::to_string(size) + "\" stroke=\"#ccc\"/>\n";
  out += "<circle cx=\"" + fmt(half) + "\" cy=\"" + fmt(half) + "\" r=\"" +
         fmt(px(1) - px(0)) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (const auto& z : roots)
    out += "<circle cx=\"" + fmt(px(z.real())) + "\" cy=\"" +
           fmt(py(z.imag())) +
           "\" r=\"4\" fill=\"crimson\" fill-opacity=\"0.8\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace outer_rates
