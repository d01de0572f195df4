#pragma once

#include <vector>

#include "outer_rates/outer_geometry.hpp"
#include "outer_rates/traintrack.hpp"
#include "outer_rates/words.hpp"

namespace outer_rates {

struct LengthTrajectory {
  std::vector<Word> window;               // canonical class forms
  std::vector<std::vector<double>> rows;  // rows[n][c] = length of aut^n(w_c)
  int n_max = 0;
  bool overflowed = false;  // hit the word-length cap before n_max
};

// Exact word iteration with lengths read off at the base point; stops early
// (overflowed = true) when an iterate passes the length cap.
LengthTrajectory iterate_lengths(const Automorphism& aut,
                                 const std::vector<Word>& window, int n_max,
                                 const RosePoint& base,
                                 long long cap = kDefaultLengthCap);

struct RateEstimate {
  double ratio = 0;       // estimated lambda_1 / |lambda_2|
  double dispersion = 0;  // fit misfit (projective) or log-growth spread (power)
  int usable = 0;         // rows (or iterates) that entered the fit
};

// Normalize rows to sup-norm 1 and fit the decay of the residuals against
// the final row.  A complex second eigenvalue makes per-step error ratios
// oscillate around the true decay, so the residual signals are fitted with a
// short linear recurrence (order 1 reduces to a plain geometric mean) whose
// maximal root modulus is the decay rate.
RateEstimate projective_rate(const LengthTrajectory& t);

// Matrix surrogate: power iteration restricted to the complement of the
// dominant direction (oblique projection via the left Perron vector); the
// mean renormalized growth converges to |lambda_2| and the report is the
// inverted ratio, comparable with SpectralReport.ratio.
RateEstimate power_rate(const IntMatrix& m, int max_iters = 400);

}  // namespace outer_rates
