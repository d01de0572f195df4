#pragma once

#include <string>
#include <vector>

#include "outer_rates/roots.hpp"
#include "outer_rates/traintrack.hpp"
#include "outer_rates/words.hpp"

namespace outer_rates {

// Volume-normalized marked metric rose.  The marking is kept together with
// its exact inverse so that changes of marking between two points can be
// composed exactly.
struct RosePoint {
  int rank = 0;
  std::vector<double> lengths;  // positive, sum 1 within 1e-12
  Automorphism marking = Automorphism::identity(1);
  Automorphism marking_inverse = Automorphism::identity(1);
};

RosePoint make_rose_point(std::vector<double> lengths, Automorphism marking,
                          Automorphism marking_inverse);
RosePoint uniform_rose(int rank);

// Petals a_i and figure-eights a_i a_j^{+-1} (i < j), deduplicated up to
// inversion and rotation: N + N(N-1) loops.
std::vector<Word> candidate_set(int rank);

// Length of the conjugacy class of w at X: weighted letter count of the
// cyclically reduced marked image.  class_length(X.phi, w) = class_length(X, phi(w)).
double class_length(const RosePoint& x, const Word& w);

struct LipschitzResult {
  double log_distance = 0;
  double max_ratio = 1;
  Word witness;  // maximizing candidate
};

// Asymmetric Lipschitz distance: log of the maximal candidate stretch from
// X to Y, computed through the exact change of marking.
LipschitzResult lipschitz_distance(const RosePoint& x, const RosePoint& y);

struct AxisFamily {
  int N = 0;
  long long k = 0;
  double lambda = 0;      // certified bracket midpoint, root of P in [k, k+1]
  double lambda_bar = 0;  // root of Q in [sqrt(k-1), sqrt(k+1)]
  // xs[i - i_lo] is X_i = X_0 . forward^i; ys likewise for the reverse map.
  int i_lo = 0, j_lo = 0;
  std::vector<RosePoint> xs, ys;

  const RosePoint& x(int i) const { return xs[static_cast<std::size_t>(i - i_lo)]; }
  const RosePoint& y(int j) const { return ys[static_cast<std::size_t>(j - j_lo)]; }
};

// X_0 has lengths ~ (lambda^{N-1}, ..., lambda, 1), Y_0 has
// (1, lambda_bar, ..., lambda_bar^{N-1}); both volume-normalized, with the
// eigenvector residual checked against the transition matrices.
AxisFamily axis_points(int N, long long k, int i_lo, int i_hi, int j_lo,
                       int j_hi, double residual_tol = 1e-8);

struct FormulaValue {
  double value = 0;
  double lo = 0, hi = 0;  // interval from the certified root brackets
};

// Closed form log((lambda^N - 1)/(lambda - 1) *
// (lambda_bar^N - lambda_bar^{N-1})/(lambda_bar^N - 1)).
FormulaValue axis_distance_formula(int N, long long k);

struct SeparationCell {
  int i = 0, j = 0;
  double distance = 0;
  std::string witness;  // maximizing candidate, text form
};

struct SeparationReport {
  int N = 0;
  long long k = 0;
  int window = 0;
  double log_lambda = 0, log_lambda_bar = 0;
  std::vector<std::vector<SeparationCell>> grid;  // (2M+1) x (2M+1)
  int argmin_i = 0, argmin_j = 0;
  double grid_min = 0;
  int diagonal_argmin = 0;
  double diagonal_min_value = 0;
  bool diagonal_min = false;     // diagonal attains the grid min (up to ties)
  bool argmin_on_boundary = false;  // widen-window advisory
  double bound = 0;              // (N - 5/2) log k - 6
  double adjusted_min = 0;       // grid_min - log lambda - log lambda_bar
  bool bound_satisfied = false;
  bool lambda_sanity = false;    // lambda <= k+1 and lambda_bar <= sqrt(k+1)
};

SeparationReport axis_separation_report(int N, long long k, int window);

// Length of the shortest candidate loop (= min edge length on a rose).
double thinness(const RosePoint& x);

}  // namespace outer_rates
