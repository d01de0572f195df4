#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "outer_rates/bigint.hpp"
#include "outer_rates/intpoly.hpp"

namespace outer_rates {

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

class RootOnCircleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RootApprox {
  std::complex<double> z;
  double residual;  // |f(z)|
};

// Rational interval [lo_num/den, hi_num/den] with exact sign change,
// produced by exact-sign bisection.  Width halves exactly per step.
struct CertifiedBracket {
  BigInt lo_num;
  BigInt hi_num;
  BigInt den;  // > 0
  int steps = 0;
  bool exact_root_hit = false;  // bisection landed on a rational root

  double lo() const { return lo_num.to_double() / den.to_double(); }
  double hi() const { return hi_num.to_double() / den.to_double(); }
  double mid() const { return 0.5 * (lo() + hi()); }
  double width() const {
    return (hi_num - lo_num).to_double() / den.to_double();
  }
};

struct RootReport {
  std::vector<RootApprox> roots;
  bool winding_available = false;  // false when a root sits on the circle
  std::string winding_note;
  int count_in_unit_disk = 0;
  std::vector<CertifiedBracket> real_brackets;
  double largest_modulus = 0;
  double second_modulus = 0;
  bool winding_matches_moduli = false;
};

struct SpectralReport {
  double lambda = 0;       // largest root modulus
  double second = 0;       // second-largest modulus
  double ratio = 1;        // lambda / second
  double error_bound = 0;  // propagated bound on ratio
  bool unresolved_tie = false;
};

// Simultaneous iteration (Durand-Kerner) from a perturbed circle;
// deterministic.  Residuals satisfy |f(z)| <= tol * sum_i |c_i| |z|^i.
std::vector<RootApprox> find_roots(const IntPolynomial& f, double tol = 1e-12);

// Exact count of roots with |z| < 1 by adaptive winding-number evaluation.
// Throws RootOnCircleError when the sampled circle minimum is below the
// perturbation bound.
int count_in_unit_disk(const IntPolynomial& f);

// Exact-sign bisection from rational endpoints lo_num/lo_den < hi_num/hi_den
// down to the target width.
CertifiedBracket bracket_real_root(const IntPolynomial& f, const BigInt& lo_num,
                                   const BigInt& lo_den, const BigInt& hi_num,
                                   const BigInt& hi_den,
                                   double target_width = 1e-12);
CertifiedBracket bracket_real_root(const IntPolynomial& f, long long lo,
                                   long long hi, double target_width = 1e-12);

// Dyadic outer bounds lo <= sqrt(v) <= hi with denominator 2^bits.
struct SqrtBounds {
  BigInt lo_num;
  BigInt hi_num;
  BigInt den;
};
SqrtBounds sqrt_outer_bounds(long long v, unsigned bits = 20);

struct RootPositionsReport {
  int N = 0;
  long long k = 0;
  int p_inside = 0, q_inside = 0;
  bool p_count_ok = false, q_count_ok = false;
  bool p_bracket_ok = false;      // real root in [k, k+1]
  bool q_bracket_pos_ok = false;  // root in [sqrt(k-1), sqrt(k+1)] outer bounds
  bool q_bracket_neg_ok = false;  // mirrored negative bracket
  bool p_winding_matches_moduli = false;
  bool q_winding_matches_moduli = false;
  CertifiedBracket p_bracket, q_bracket_pos, q_bracket_neg;

  bool all_pass() const {
    return p_count_ok && q_count_ok && p_bracket_ok && q_bracket_pos_ok &&
           q_bracket_neg_ok && p_winding_matches_moduli &&
           q_winding_matches_moduli;
  }
};

// Checks the root-position facts for the pair (P, Q) at (N, k).
RootPositionsReport verify_root_positions(int N, long long k);

// Full report for one polynomial: approximations, winding count, certified
// brackets found by integer sign-change scan.
RootReport root_report(const IntPolynomial& f, double tol = 1e-12);

// lambda / second with the largest modulus taken from a certified bracket
// when the dominant root is real.
SpectralReport spectral_ratio(const IntPolynomial& f, double tol = 1e-12);

}  // namespace outer_rates
