#pragma once

#include <complex>
#include <string>
#include <vector>

namespace outer_rates {

struct CurveSpec {
  std::string label;
  std::string color;
  std::vector<double> coeffs;  // ascending-degree polynomial coefficients
};

// Polynomial curves over [xmin, xmax] with axes through the origin.
// Hand-emitted, fixed-precision coordinates; byte-identical per input.
std::string svg_poly_plot(const std::vector<CurveSpec>& curves, double xmin,
                          double xmax, int samples = 200, int width = 640,
                          int height = 480);

// Complex roots against the unit circle.
std::string svg_root_scatter(const std::vector<std::complex<double>>& roots,
                             int size = 480);

}  // namespace outer_rates
