#include "outer_rates/outer_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace outer_rates {

RosePoint make_rose_point(std::vector<double> lengths, Automorphism marking,
                          Automorphism marking_inverse) {
  RosePoint x;
  x.rank = marking.rank();
  if (static_cast<int>(lengths.size()) != x.rank)
    throw std::invalid_argument("RosePoint: expected one length per petal");
  double sum = 0;
  for (double l : lengths) {
    if (l <= 0) throw std::invalid_argument("RosePoint: lengths must be positive");
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("RosePoint: lengths must sum to 1");
  if (marking_inverse.rank() != x.rank)
    throw std::invalid_argument("RosePoint: marking rank mismatch");
  x.lengths = std::move(lengths);
  x.marking = std::move(marking);
  x.marking_inverse = std::move(marking_inverse);
  return x;
}

RosePoint uniform_rose(int rank) {
  std::vector<double> l(static_cast<std::size_t>(rank), 1.0 / rank);
  // Nudge the last entry so the sum is exactly representable as 1.
  double sum = std::accumulate(l.begin(), l.end(), 0.0);
  l.back() += 1.0 - sum;
  return make_rose_point(std::move(l), Automorphism::identity(rank),
                         Automorphism::identity(rank));
}

std::vector<Word> candidate_set(int rank) {
  std::vector<Word> cs;
  for (int i = 1; i <= rank; ++i) cs.push_back(Word::generator(rank, i));
  for (int i = 1; i <= rank; ++i)
    for (int j = i + 1; j <= rank; ++j) {
      cs.push_back(concat(Word::generator(rank, i), Word::generator(rank, j)));
      cs.push_back(concat(Word::generator(rank, i), Word::generator(rank, j, true)));
    }
  return cs;
}

namespace {

double weighted_length(const std::vector<double>& lengths, const Word& w) {
  double s = 0;
  for (const auto& r : w.runs())
    s += lengths[static_cast<std::size_t>(r.gen - 1)] *
         static_cast<double>(r.exp < 0 ? -r.exp : r.exp);
  return s;
}

}  // namespace

double class_length(const RosePoint& x, const Word& w) {
  if (w.rank() != x.rank)
    throw std::invalid_argument("class_length: rank mismatch");
  if (w.empty()) return 0;
  Word marked = x.marking.is_identity() ? cyclic_reduce(w)
                                        : cyclic_reduce(apply_exact(x.marking, w));
  return weighted_length(x.lengths, marked);
}

LipschitzResult lipschitz_distance(const RosePoint& x, const RosePoint& y) {
  if (x.rank != y.rank)
    throw std::invalid_argument("lipschitz_distance: rank mismatch");
  // d(X, Y) = log sup_w len_Y(w)/len_X(w); the sup is attained on the
  // candidate loops of X's graph, i.e. on petals and figure-eights seen
  // through the change of marking sigma = marking_Y o marking_X^{-1}.
  Automorphism sigma = compose_exact(y.marking, x.marking_inverse);
  LipschitzResult best;
  best.max_ratio = -1;
  for (const Word& u : candidate_set(x.rank)) {
    double den = weighted_length(x.lengths, u);
    double num = weighted_length(y.lengths, cyclic_reduce(apply_exact(sigma, u)));
    if (num <= 0)
      throw std::invalid_argument("lipschitz_distance: candidate image collapsed");
    double ratio = num / den;
    if (ratio > best.max_ratio) {
      best.max_ratio = ratio;
      best.witness = u;
    }
  }
  best.log_distance = std::log(best.max_ratio);
  return best;
}

namespace {

std::vector<double> normalized_powers(int rank, double base, bool descending) {
  std::vector<double> l(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    int e = descending ? rank - 1 - i : i;
    l[static_cast<std::size_t>(i)] = std::pow(base, e);
  }
  double sum = std::accumulate(l.begin(), l.end(), 0.0);
  for (auto& v : l) v /= sum;
  // Absorb the rounding slack into the largest entry.
  double resid = 1.0 - std::accumulate(l.begin(), l.end(), 0.0);
  auto it = std::max_element(l.begin(), l.end());
  *it += resid;
  return l;
}

void check_eigen_residual(const IntMatrix& m, double lambda,
                          const std::vector<double>& v, double tol,
                          const std::string& label) {
  double res = 0, vmax = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double mi = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
      mi += static_cast<double>(m[i][j]) * v[j];
    res = std::max(res, std::abs(mi - lambda * v[i]));
    vmax = std::max(vmax, std::abs(v[i]));
  }
  if (res > tol * lambda * vmax)
    throw std::invalid_argument("axis_points: eigenvector residual " +
                                std::to_string(res) + " too large for " + label);
}

}  // namespace

AxisFamily axis_points(int N, long long k, int i_lo, int i_hi, int j_lo,
                       int j_hi, double residual_tol) {
  if (i_lo > i_hi || j_lo > j_hi)
    throw std::invalid_argument("axis_points: empty index range");
  FamilyPair fam = shift_twist_family(N, k);

  AxisFamily ax;
  ax.N = N;
  ax.k = k;
  ax.i_lo = i_lo;
  ax.j_lo = j_lo;

  IntPolynomial p = poly_family(N, k, PolyKind::P);
  IntPolynomial q = poly_family(N, k, PolyKind::Q);
  ax.lambda = bracket_real_root(p, k, k + 1).mid();
  SqrtBounds lo_b = sqrt_outer_bounds(k - 1);
  SqrtBounds hi_b = sqrt_outer_bounds(k + 1);
  ax.lambda_bar =
      bracket_real_root(q, lo_b.lo_num, lo_b.den, hi_b.hi_num, hi_b.den).mid();

  std::vector<double> x0 = normalized_powers(N, ax.lambda, true);
  std::vector<double> y0 = normalized_powers(N, ax.lambda_bar, false);
  check_eigen_residual(transition_matrix(fam.forward), ax.lambda, x0,
                       residual_tol, "forward");
  check_eigen_residual(transition_matrix(fam.reverse), ax.lambda_bar, y0,
                       residual_tol, "reverse");

  Automorphism fwd_inv = forward_inverse(N, k);
  Automorphism rev_inv = reverse_inverse(N, k);

  auto build = [](const std::vector<double>& lengths, const Automorphism& step,
                  const Automorphism& step_inv, int lo,
                  int hi) {
    std::vector<RosePoint> pts;
    int rank = step.rank();
    Automorphism pos = Automorphism::identity(rank);
    Automorphism pos_inv = pos;
    std::vector<std::pair<Automorphism, Automorphism>> markings;
    for (int i = 0; i <= std::max(hi, 0); ++i) {
      if (i > 0) {
        pos = compose(step, pos);
        pos_inv = compose(pos_inv, step_inv);
      }
      markings.emplace_back(pos, pos_inv);
    }
    Automorphism neg = Automorphism::identity(rank);
    Automorphism neg_inv = neg;
    std::vector<std::pair<Automorphism, Automorphism>> neg_markings;
    for (int i = 0; i <= std::max(-lo, 0); ++i) {
      if (i > 0) {
        neg = compose(step_inv, neg);
        neg_inv = compose(neg_inv, step);
      }
      neg_markings.emplace_back(neg, neg_inv);
    }
    for (int i = lo; i <= hi; ++i) {
      const auto& mk = i >= 0 ? markings[static_cast<std::size_t>(i)]
                              : neg_markings[static_cast<std::size_t>(-i)];
      pts.push_back(make_rose_point(lengths, mk.first, mk.second));
    }
    return pts;
  };

  ax.xs = build(x0, fam.forward, fwd_inv, i_lo, i_hi);
  ax.ys = build(y0, fam.reverse, rev_inv, j_lo, j_hi);
  return ax;
}

FormulaValue axis_distance_formula(int N, long long k) {
  IntPolynomial p = poly_family(N, k, PolyKind::P);
  IntPolynomial q = poly_family(N, k, PolyKind::Q);
  CertifiedBracket lb = bracket_real_root(p, k, k + 1);
  SqrtBounds lo_b = sqrt_outer_bounds(k - 1);
  SqrtBounds hi_b = sqrt_outer_bounds(k + 1);
  CertifiedBracket bb =
      bracket_real_root(q, lo_b.lo_num, lo_b.den, hi_b.hi_num, hi_b.den);

  auto eval = [N](double lambda, double lambda_bar) {
    double a = (std::pow(lambda, N) - 1.0) / (lambda - 1.0);
    double b = (std::pow(lambda_bar, N) - std::pow(lambda_bar, N - 1)) /
               (std::pow(lambda_bar, N) - 1.0);
    return std::log(a * b);
  };

  FormulaValue out;
  out.value = eval(lb.mid(), bb.mid());
  out.lo = out.value;
  out.hi = out.value;
  for (double l : {lb.lo(), lb.hi()})
    for (double b : {bb.lo(), bb.hi()}) {
      double v = eval(l, b);
      out.lo = std::min(out.lo, v);
      out.hi = std::max(out.hi, v);
    }
  return out;
}

SeparationReport axis_separation_report(int N, long long k, int window) {
  if (k < 5)
    throw std::invalid_argument(
        "axis_separation_report: the separation bound needs k >= 5");
  if (window < 1) throw std::invalid_argument("axis_separation_report: window must be >= 1");

  SeparationReport rep;
  rep.N = N;
  rep.k = k;
  rep.window = window;

  AxisFamily ax = axis_points(N, k, -window, window, -window, window);
  rep.log_lambda = std::log(ax.lambda);
  rep.log_lambda_bar = std::log(ax.lambda_bar);

  rep.grid.resize(static_cast<std::size_t>(2 * window + 1));
  rep.grid_min = std::numeric_limits<double>::infinity();
  for (int i = -window; i <= window; ++i) {
    auto& row = rep.grid[static_cast<std::size_t>(i + window)];
    row.resize(static_cast<std::size_t>(2 * window + 1));
    for (int j = -window; j <= window; ++j) {
      LipschitzResult d = lipschitz_distance(ax.x(i), ax.y(j));
      SeparationCell cell;
      cell.i = i;
      cell.j = j;
      cell.distance = d.log_distance;
      cell.witness = d.witness.to_text();
      row[static_cast<std::size_t>(j + window)] = cell;
      if (cell.distance < rep.grid_min) {
        rep.grid_min = cell.distance;
        rep.argmin_i = i;
        rep.argmin_j = j;
      }
    }
  }

  rep.diagonal_min_value = std::numeric_limits<double>::infinity();
  for (int i = -window; i <= window; ++i) {
    double d = rep.grid[static_cast<std::size_t>(i + window)][static_cast<std::size_t>(i + window)].distance;
    if (d < rep.diagonal_min_value) {
      rep.diagonal_min_value = d;
      rep.diagonal_argmin = i;
    }
  }
  rep.diagonal_min = rep.diagonal_min_value <= rep.grid_min + 1e-9;
  rep.argmin_on_boundary = std::abs(rep.diagonal_argmin) == window;
  rep.bound = (static_cast<double>(N) - 2.5) * std::log(static_cast<double>(k)) - 6.0;
  rep.adjusted_min = rep.grid_min - rep.log_lambda - rep.log_lambda_bar;
  rep.bound_satisfied = rep.adjusted_min >= rep.bound;
  rep.lambda_sanity = ax.lambda <= static_cast<double>(k + 1) &&
                      ax.lambda_bar <= std::sqrt(static_cast<double>(k + 1));
  return rep;
}

double thinness(const RosePoint& x) {
  return *std::min_element(x.lengths.begin(), x.lengths.end());
}

}  // namespace outer_rates
