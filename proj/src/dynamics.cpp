#include "outer_rates/dynamics.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace outer_rates {

LengthTrajectory iterate_lengths(const Automorphism& aut,
                                 const std::vector<Word>& window, int n_max,
                                 const RosePoint& base, long long cap) {
  if (window.empty())
    throw std::invalid_argument("iterate_lengths: empty class window");
  LengthTrajectory t;
  t.n_max = n_max;
  for (const Word& w : window) t.window.push_back(canonical_class_form(w));

  std::vector<Word> cur = t.window;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<double> row;
    row.reserve(cur.size());
    for (const Word& w : cur) row.push_back(class_length(base, w));
    t.rows.push_back(std::move(row));
    if (n == n_max) break;
    try {
      for (auto& w : cur) w = apply(aut, w, cap);
    } catch (const LengthOverflowError&) {
      t.overflowed = true;
      break;
    }
  }
  return t;
}

namespace {

// Roots of x^m - c_0 x^{m-1} - ... - c_{m-1} for m <= 3, by Durand-Kerner on
// doubles; only the maximal modulus is consumed.
double max_root_modulus(const std::vector<double>& rec) {
  const std::size_t m = rec.size();
  std::vector<std::complex<double>> coeffs(m + 1);
  coeffs[m] = 1.0;
  for (std::size_t j = 0; j < m; ++j) coeffs[m - 1 - j] = -rec[j];
  std::vector<std::complex<double>> z(m);
  for (std::size_t i = 0; i < m; ++i)
    z[i] = std::polar(1.0, 2.0 * 3.141592653589793 * static_cast<double>(i) / static_cast<double>(m) + 0.4);
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = 0;
    for (std::size_t i = m + 1; i-- > 0;) r = r * x + coeffs[i];
    return r;
  };
  for (int it = 0; it < 500; ++it) {
    double upd = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::complex<double> den = 1.0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) den *= z[i] - z[j];
      std::complex<double> d = eval(z[i]) / den;
      z[i] -= d;
      upd = std::max(upd, std::abs(d));
    }
    if (upd < 1e-14) break;
  }
  double best = 0;
  for (const auto& r : z) best = std::max(best, std::abs(r));
  return best;
}

// Fit s_{n+m} = sum_j c_j s_{n+m-1-j} across all coordinate signals jointly
// (least squares via normal equations, m <= 3) and return the maximal root
// modulus of the fitted recurrence together with the relative misfit.
struct RecurrenceFit {
  double rate = 0;        // max root modulus
  double misfit = 0;      // relative RMS residual of the fit
  int order = 0;
};

RecurrenceFit fit_recurrence(const std::vector<std::vector<double>>& signals,
                             std::size_t order) {
  std::size_t rows = signals.front().size();
  std::size_t m = std::min<std::size_t>(order, rows >= 2 ? rows - 1 : 0);
  if (m == 0) throw ConvergenceError("rate fit: too few residual rows", 0.0);

  // Each equation is scaled to unit magnitude: the signals decay
  // geometrically, and without row scaling the first rows would be the only
  // ones the normal equations can see.
  std::vector<std::vector<double>> ata(m, std::vector<double>(m, 0.0));
  std::vector<double> atb(m, 0.0);
  double bnorm = 0;
  for (const auto& s : signals) {
    for (std::size_t n = 0; n + m < s.size(); ++n) {
      double scale = 0;
      for (std::size_t i = 0; i <= m; ++i)
        scale = std::max(scale, std::abs(s[n + i]));
      if (scale <= 0) continue;
      double inv = 1.0 / scale;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
          ata[i][j] += s[n + m - 1 - i] * inv * s[n + m - 1 - j] * inv;
        atb[i] += s[n + m - 1 - i] * inv * s[n + m] * inv;
      }
      bnorm += s[n + m] * inv * s[n + m] * inv;
    }
  }
  // Gaussian elimination with partial pivoting on the m x m system.
  std::vector<double> c(m, 0.0);
  {
    std::vector<std::vector<double>> a = ata;
    std::vector<double> b = atb;
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < m; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      std::swap(a[col], a[piv]);
      std::swap(b[col], b[piv]);
      if (std::abs(a[col][col]) < 1e-300)
        throw ConvergenceError("rate fit: singular recurrence system", 0.0);
      for (std::size_t r = col + 1; r < m; ++r) {
        double f = a[r][col] / a[col][col];
        for (std::size_t cc = col; cc < m; ++cc) a[r][cc] -= f * a[col][cc];
        b[r] -= f * b[col];
      }
    }
    for (std::size_t col = m; col-- > 0;) {
      double s = b[col];
      for (std::size_t cc = col + 1; cc < m; ++cc) s -= a[col][cc] * c[cc];
      c[col] = s / a[col][col];
    }
  }

  double res = 0;
  for (const auto& s : signals)
    for (std::size_t n = 0; n + m < s.size(); ++n) {
      double scale = 0;
      for (std::size_t i = 0; i <= m; ++i)
        scale = std::max(scale, std::abs(s[n + i]));
      if (scale <= 0) continue;
      double pred = 0;
      for (std::size_t i = 0; i < m; ++i) pred += c[i] * s[n + m - 1 - i];
      res += (s[n + m] - pred) * (s[n + m] - pred) / (scale * scale);
    }

  RecurrenceFit fit;
  fit.rate = max_root_modulus(c);
  fit.misfit = bnorm > 0 ? std::sqrt(res / bnorm) : 0.0;
  fit.order = static_cast<int>(m);
  return fit;
}

}  // namespace

RateEstimate projective_rate(const LengthTrajectory& t) {
  if (t.rows.size() < 6)
    throw std::invalid_argument("projective_rate: need at least 6 rows");
  for (const auto& row : t.rows)
    for (double v : row)
      if (v <= 0) throw std::invalid_argument("projective_rate: non-positive length");

  // Normalize rows to sup-norm 1; residuals against the final row decay like
  // (|lambda_2|/lambda_1)^n with an oscillating factor when lambda_2 is
  // complex, so the decay is recovered by fitting a short linear recurrence
  // to the residual signals (order 1 would be a plain geometric mean).
  std::vector<std::vector<double>> rows = t.rows;
  for (auto& row : rows) {
    double sup = 0;
    for (double v : row) sup = std::max(sup, std::abs(v));
    for (auto& v : row) v /= sup;
  }
  const auto& last = rows.back();
  const double floor_ = 10 * std::numeric_limits<double>::epsilon();

  std::size_t usable = 0;
  for (std::size_t n = 0; n + 1 < rows.size(); ++n) {
    double e = 0;
    for (std::size_t c = 0; c < last.size(); ++c)
      e = std::max(e, std::abs(rows[n][c] - last[c]));
    if (e <= floor_) break;
    ++usable;
  }
  if (usable < 3)
    throw ConvergenceError("projective_rate: trajectory has no usable decay", 0.0);

  std::vector<std::vector<double>> signals;
  for (std::size_t c = 0; c < last.size(); ++c) {
    std::vector<double> s;
    for (std::size_t n = 0; n < usable; ++n) s.push_back(rows[n][c] - last[c]);
    signals.push_back(std::move(s));
  }

  // The residual of a rank-N trajectory carries at most N-1 secondary modes,
  // so the recurrence order is pinned to that (data permitting); lower orders
  // are the fallback when the fitted recurrence fails to decay.
  std::size_t rank_order = static_cast<std::size_t>(t.window.front().rank()) - 1;
  std::size_t max_order =
      std::min(rank_order, usable >= 4 ? usable - 2 : std::size_t{1});
  RecurrenceFit best;
  bool have = false;
  for (std::size_t order = std::max<std::size_t>(max_order, 1); order >= 1;
       --order) {
    RecurrenceFit fit;
    try {
      fit = fit_recurrence(signals, order);
    } catch (const ConvergenceError&) {
      continue;
    }
    if (fit.rate > 0 && fit.rate < 1) {
      best = fit;
      have = true;
      break;
    }
  }
  if (!have)
    throw ConvergenceError("projective_rate: residual fit did not decay", 0.0);

  RateEstimate r;
  r.ratio = 1.0 / best.rate;
  r.dispersion = best.misfit;
  r.usable = static_cast<int>(usable);
  return r;
}

RateEstimate power_rate(const IntMatrix& m, int max_iters) {
  PFData pf = pf_eigen(m);
  const std::size_t n = m.size();

  // Left Perron vector for the oblique projection.
  IntMatrix mt(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mt[i][j] = m[j][i];
  PFData pfl = pf_eigen(mt);

  auto mul = [&](const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        y[i] += static_cast<double>(m[i][j]) * x[j];
    return y;
  };
  double uv = 0;
  for (std::size_t i = 0; i < n; ++i) uv += pfl.v[i] * pf.v[i];
  auto deflate = [&](std::vector<double>& w) {
    double uw = 0;
    for (std::size_t i = 0; i < n; ++i) uw += pfl.v[i] * w[i];
    double f = uw / uv;
    for (std::size_t i = 0; i < n; ++i) w[i] -= f * pf.v[i];
  };

  // Power iteration on the complement of the dominant direction: the
  // renormalized growth converges to |lambda_2|, re-projecting every step so
  // the dominant component cannot regrow.
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = (i % 2 == 0) ? 1.0 : -1.0;
  deflate(w);
  double sup = 0;
  for (double x : w) sup = std::max(sup, std::abs(x));
  if (sup < 1e-12) {
    w.assign(n, 0.0);
    w[0] = 1.0;
    deflate(w);
  }

  const int burn = std::min(60, max_iters / 4);
  std::vector<double> logs;
  for (int it = 0; it < max_iters; ++it) {
    w = mul(w);
    deflate(w);
    double g = 0;
    for (double x : w) g = std::max(g, std::abs(x));
    if (g <= 0)
      throw ConvergenceError("power_rate: deflated iterate vanished", 0.0);
    if (it >= burn) logs.push_back(std::log(g));
    for (auto& x : w) x /= g;
  }
  if (logs.size() < 8)
    throw ConvergenceError("power_rate: too few iterations", 0.0);

  double mean = 0;
  for (double l : logs) mean += l;
  mean /= static_cast<double>(logs.size());
  double var = 0;
  for (double l : logs) var += (l - mean) * (l - mean);
  var /= static_cast<double>(logs.size() - 1);

  RateEstimate r;
  r.ratio = pf.lambda / std::exp(mean);
  r.dispersion = std::sqrt(var);
  r.usable = static_cast<int>(logs.size());
  return r;
}

}  // namespace outer_rates
