#include "outer_rates/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace outer_rates {

namespace {

std::complex<double> eval_c(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

double residual_scale(const std::vector<double>& c, double mod) {
  double s = 0, m = 1;
  for (double ci : c) {
    s += std::abs(ci) * m;
    m *= std::max(1.0, mod);
  }
  return std::max(s, 1.0);
}

}  // namespace

std::vector<RootApprox> find_roots(const IntPolynomial& f, double tol) {
  if (f.degree() < 1)
    throw std::invalid_argument("find_roots: degree must be >= 1");
  if (f.coeff(0).is_zero())
    throw std::invalid_argument("find_roots: constant term must be nonzero");

  const int n = f.degree();
  std::vector<double> c = f.coeffs_double();
  const double lead = c.back();
  for (double& v : c) v /= lead;

  double maxc = 0;
  for (int i = 0; i < n; ++i) maxc = std::max(maxc, std::abs(c[static_cast<std::size_t>(i)]));
  const double radius = 1.0 + maxc;

  // Perturbed-circle start: fixed angular offset keeps the configuration off
  // the real axis and deterministic.
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double theta = 2.0 * std::numbers::pi * j / n + 0.4;
    z[static_cast<std::size_t>(j)] = std::polar(radius, theta);
  }

  const int kMaxIter = 2000;
  double best = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double max_update = 0;
    std::vector<std::complex<double>> nz = z;
    for (int i = 0; i < n; ++i) {
      std::complex<double> zi = z[static_cast<std::size_t>(i)];
      std::complex<double> denom = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= zi - z[static_cast<std::size_t>(j)];
      std::complex<double> delta = eval_c(c, zi) / denom;
      nz[static_cast<std::size_t>(i)] = zi - delta;
      max_update = std::max(max_update, std::abs(delta));
    }
    z = std::move(nz);
    if (max_update < 1e-15 * radius) break;
  }

  std::vector<double> orig = f.coeffs_double();
  std::vector<RootApprox> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const auto& zi : z) {
    double res = std::abs(eval_c(orig, zi));
    best = std::min(best, res);
    out.push_back({zi, res});
  }
  for (const auto& r : out) {
    double bound = tol * residual_scale(orig, std::abs(r.z));
    if (r.residual > bound)
      throw ConvergenceError("find_roots: residual " + std::to_string(r.residual) +
                                 " above tolerance for " + f.to_string(),
                             best);
  }
  std::sort(out.begin(), out.end(), [](const RootApprox& a, const RootApprox& b) {
    double ma = std::abs(a.z), mb = std::abs(b.z);
    if (ma != mb) return ma > mb;
    if (a.z.real() != b.z.real()) return a.z.real() > b.z.real();
    return a.z.imag() > b.z.imag();
  });
  return out;
}

namespace {

// Recursive argument tracking: a segment is accepted once the turn is below
// pi/2, which keeps the winding sum unambiguous.
double arg_sum(const std::vector<double>& c, double ta, std::complex<double> wa,
               double tb, std::complex<double> wb, int depth) {
  double d = std::arg(wb / wa);
  if (std::abs(d) <= std::numbers::pi / 2 && depth > 0) return d;
  if (depth > 28)
    throw RootOnCircleError(
        "count_in_unit_disk: argument tracking did not stabilize (root near "
        "the unit circle?)");
  double tm = 0.5 * (ta + tb);
  std::complex<double> wm = eval_c(c, std::polar(1.0, tm));
  return arg_sum(c, ta, wa, tm, wm, depth + 1) +
         arg_sum(c, tm, wm, tb, wb, depth + 1);
}

}  // namespace

int count_in_unit_disk(const IntPolynomial& f) {
  if (f.degree() < 1)
    throw std::invalid_argument("count_in_unit_disk: degree must be >= 1");
  std::vector<double> c = f.coeffs_double();

  // Clearance check: sampled minimum must beat the between-sample drop bound
  // and an absolute floor, else a root could sit on the circle.
  const int kSamples = 512;
  double maxc = 0, maxd = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    maxc = std::max(maxc, std::abs(c[i]));
    maxd += static_cast<double>(i) * std::abs(c[i]);
  }
  double minv = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    double t = 2.0 * std::numbers::pi * i / kSamples;
    minv = std::min(minv, std::abs(eval_c(c, std::polar(1.0, t))));
  }
  double drop = std::numbers::pi / kSamples * maxd;
  if (minv <= drop || minv <= 1e-6 * maxc)
    throw RootOnCircleError(
        "count_in_unit_disk: |f| minimum on the circle is " +
        std::to_string(minv) + ", too small to certify; exact treatment needed");

  const int kBase = 64;
  double total = 0;
  std::complex<double> prev = eval_c(c, std::polar(1.0, 0.0));
  double tprev = 0;
  for (int i = 1; i <= kBase; ++i) {
    double t = 2.0 * std::numbers::pi * i / kBase;
    std::complex<double> w = eval_c(c, std::polar(1.0, t));
    total += arg_sum(c, tprev, prev, t, w, 0);
    tprev = t;
    prev = w;
  }
  double winding = total / (2.0 * std::numbers::pi);
  long long rounded = std::llround(winding);
  if (std::abs(winding - static_cast<double>(rounded)) > 0.1)
    throw RootOnCircleError("count_in_unit_disk: winding sum " +
                            std::to_string(winding) + " is not near an integer");
  return static_cast<int>(rounded);
}

CertifiedBracket bracket_real_root(const IntPolynomial& f, const BigInt& lo_num,
                                   const BigInt& lo_den, const BigInt& hi_num,
                                   const BigInt& hi_den, double target_width) {
  if (lo_den <= BigInt(0) || hi_den <= BigInt(0))
    throw std::invalid_argument("bracket_real_root: denominators must be > 0");
  CertifiedBracket b;
  b.den = lo_den * hi_den;
  b.lo_num = lo_num * hi_den;
  b.hi_num = hi_num * lo_den;
  if (!(b.lo_num < b.hi_num))
    throw std::invalid_argument("bracket_real_root: need lo < hi");

  int slo = f.sign_at_rational(b.lo_num, b.den);
  int shi = f.sign_at_rational(b.hi_num, b.den);
  if (slo * shi >= 0)
    throw std::invalid_argument(
        "bracket_real_root: no sign change on [" + b.lo_num.to_string() + "/" +
        b.den.to_string() + ", " + b.hi_num.to_string() + "/" +
        b.den.to_string() + "]");

  while (b.width() > target_width) {
    // Midpoint (lo+hi)/2 taken exactly by doubling the denominator.
    BigInt mid_num = b.lo_num + b.hi_num;
    BigInt den2 = b.den * BigInt(2);
    int sm = f.sign_at_rational(mid_num, den2);
    if (sm == 0) {
      // Rational root hit dead centre; return a tight enclosure around it.
      int extra = 4;
      b.lo_num = mid_num * BigInt::two_pow(static_cast<unsigned>(extra)) - BigInt(1);
      b.hi_num = mid_num * BigInt::two_pow(static_cast<unsigned>(extra)) + BigInt(1);
      b.den = den2 * BigInt::two_pow(static_cast<unsigned>(extra));
      while (b.width() > target_width) {
        b.lo_num = b.lo_num + b.lo_num + BigInt(1);
        b.hi_num = b.hi_num + b.hi_num - BigInt(1);
        b.den = b.den * BigInt(2);
        ++b.steps;
      }
      b.exact_root_hit = true;
      return b;
    }
    if (sm == slo) {
      b.lo_num = mid_num;
      b.hi_num = b.hi_num + b.hi_num;
    } else {
      b.lo_num = b.lo_num + b.lo_num;
      b.hi_num = mid_num;
    }
    b.den = den2;
    ++b.steps;
  }
  return b;
}

CertifiedBracket bracket_real_root(const IntPolynomial& f, long long lo,
                                   long long hi, double target_width) {
  return bracket_real_root(f, BigInt(lo), BigInt(1), BigInt(hi), BigInt(1),
                           target_width);
}

SqrtBounds sqrt_outer_bounds(long long v, unsigned bits) {
  if (v < 0) throw std::invalid_argument("sqrt_outer_bounds: negative input");
  if (bits > 28) throw std::invalid_argument("sqrt_outer_bounds: bits too large");
  if (v > (1LL << (62 - 2 * static_cast<int>(bits))))
    throw std::invalid_argument("sqrt_outer_bounds: input too large");
  unsigned long long scaled =
      static_cast<unsigned long long>(v) << (2 * bits);
  auto isqrt = [](unsigned long long u) {
    auto r = static_cast<unsigned long long>(std::sqrt(static_cast<long double>(u)));
    while (r > 0 && r * r > u) --r;
    while ((r + 1) * (r + 1) <= u) ++r;
    return r;
  };
  unsigned long long n = isqrt(scaled);
  SqrtBounds b;
  b.lo_num = BigInt(static_cast<long long>(n));
  b.hi_num = BigInt(static_cast<long long>(n + 1));
  b.den = BigInt::two_pow(bits);
  return b;
}

namespace {

bool classification_matches(const std::vector<RootApprox>& roots, int inside) {
  int n = 0;
  for (const auto& r : roots)
    if (std::abs(r.z) < 1.0) ++n;
  return n == inside;
}

}  // namespace

RootPositionsReport verify_root_positions(int N, long long k) {
  if (N < 3 || k < 3)
    throw std::invalid_argument("verify_root_positions: need N >= 3 and k >= 3");
  RootPositionsReport rep;
  rep.N = N;
  rep.k = k;

  IntPolynomial p = poly_family(N, k, PolyKind::P);
  IntPolynomial q = poly_family(N, k, PolyKind::Q);

  rep.p_inside = count_in_unit_disk(p);
  rep.q_inside = count_in_unit_disk(q);
  rep.p_count_ok = rep.p_inside == N - 1;
  rep.q_count_ok = rep.q_inside == N - 2;

  rep.p_bracket = bracket_real_root(p, k, k + 1);
  rep.p_bracket_ok = true;

  SqrtBounds lo_b = sqrt_outer_bounds(k - 1);
  SqrtBounds hi_b = sqrt_outer_bounds(k + 1);
  rep.q_bracket_pos =
      bracket_real_root(q, lo_b.lo_num, lo_b.den, hi_b.hi_num, hi_b.den);
  rep.q_bracket_pos_ok = true;
  rep.q_bracket_neg =
      bracket_real_root(q, -hi_b.hi_num, hi_b.den, -lo_b.lo_num, lo_b.den);
  rep.q_bracket_neg_ok = true;

  rep.p_winding_matches_moduli = classification_matches(find_roots(p), rep.p_inside);
  rep.q_winding_matches_moduli = classification_matches(find_roots(q), rep.q_inside);
  return rep;
}

RootReport root_report(const IntPolynomial& f, double tol) {
  RootReport rep;
  rep.roots = find_roots(f, tol);
  try {
    rep.count_in_unit_disk = count_in_unit_disk(f);
    rep.winding_available = true;
    rep.winding_matches_moduli =
        classification_matches(rep.roots, rep.count_in_unit_disk);
  } catch (const RootOnCircleError& e) {
    rep.winding_note = e.what();
  }

  rep.largest_modulus = std::abs(rep.roots.front().z);
  rep.second_modulus = rep.roots.size() > 1 ? std::abs(rep.roots[1].z) : 0.0;

  // Certified brackets from an integer sign-change scan across the root bound.
  long long bound = static_cast<long long>(std::ceil(
                        1.0 + std::abs(rep.largest_modulus))) + 1;
  int sprev = f.sign_at_rational(BigInt(-bound), BigInt(1));
  for (long long m = -bound + 1; m <= bound; ++m) {
    int s = f.sign_at_rational(BigInt(m), BigInt(1));
    if (sprev != 0 && s != 0 && sprev != s)
      rep.real_brackets.push_back(bracket_real_root(f, m - 1, m, tol));
    sprev = s;
  }
  return rep;
}

SpectralReport spectral_ratio(const IntPolynomial& f, double tol) {
  if (f.degree() < 2)
    throw std::invalid_argument("spectral_ratio: degree must be >= 2");
  auto roots = find_roots(f, tol);

  std::vector<double> deriv = f.derivative().coeffs_double();
  auto err_of = [&](const RootApprox& r) {
    double d = std::abs(eval_c(deriv, r.z));
    return d > 1e-300 ? r.residual / d : 1e-6;
  };

  SpectralReport rep;
  const RootApprox& top = roots.front();
  double e1 = err_of(top);
  rep.lambda = std::abs(top.z);

  // Certify the dominant root by exact bisection when it is real.
  if (std::abs(top.z.imag()) < 1e-6 * std::abs(top.z)) {
    double r = top.z.real();
    long long lo = static_cast<long long>(std::floor(r)) - 1;
    for (long long m = lo; m <= lo + 2; ++m) {
      int sa = f.sign_at_rational(BigInt(m), BigInt(1));
      int sb = f.sign_at_rational(BigInt(m + 1), BigInt(1));
      if (sa != 0 && sb != 0 && sa != sb &&
          r > static_cast<double>(m) - 0.5 && r < static_cast<double>(m + 1) + 0.5) {
        CertifiedBracket b = bracket_real_root(f, m, m + 1);
        if (std::abs(b.mid() - r) < 0.5) {
          rep.lambda = std::abs(b.mid());
          e1 = b.width();
          break;
        }
      }
    }
  }

  const RootApprox& second = roots[1];
  double e2 = err_of(second);
  rep.second = std::abs(second.z);
  if (rep.second <= 0)
    throw std::invalid_argument("spectral_ratio: second root modulus is zero");

  rep.ratio = rep.lambda / rep.second;
  rep.error_bound =
      (rep.lambda + e1) / std::max(rep.second - e2, 1e-300) - rep.ratio +
      (rep.ratio - (rep.lambda - e1) / (rep.second + e2));
  rep.unresolved_tie = rep.lambda - rep.second <= e1 + e2;
  return rep;
}

}  // namespace outer_rates
