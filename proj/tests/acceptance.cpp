// Acceptance suite: one line per criterion, exit nonzero if any fails.
// Criteria that are structurally unattainable are still run as stated and
// reported honestly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "outer_rates/dynamics.hpp"
#include "outer_rates/intpoly.hpp"
#include "outer_rates/outer_geometry.hpp"
#include "outer_rates/roots.hpp"
#include "outer_rates/traintrack.hpp"
#include "outer_rates/words.hpp"
#include "support/oracles.hpp"

using namespace outer_rates;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int idx, const std::string& name, bool ok, double secs,
            const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", idx,
              name.c_str(), secs, detail.empty() ? "" : " — ",
              detail.c_str());
  if (!ok) ++failures;
}

std::vector<Word> petal_window(int rank) {
  std::vector<Word> w;
  for (int g = 1; g <= rank; ++g) w.push_back(Word::generator(rank, g));
  return w;
}

// --- criterion 1: characteristic polynomial anchor ---
void criterion1() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int N = 3; N <= 8 && ok; ++N)
    for (long long k = 3; k <= 12 && ok; ++k) {
      FamilyPair fam = shift_twist_family(N, k);
      if (!(char_poly(transition_matrix(fam.forward)) == poly_family(N, k, PolyKind::P)) ||
          !(char_poly(transition_matrix(fam.reverse)) == poly_family(N, k, PolyKind::Q))) {
        ok = false;
        detail = "mismatch at N=" + std::to_string(N) + " k=" + std::to_string(k);
      }
    }
  double secs = t.seconds();
  if (secs >= 1.0) {
    ok = false;
    detail += " runtime over 1 s";
  }
  report(1, "characteristic polynomials match the family exactly", ok, secs, detail);
}

// --- criterion 2: root positions ---
void criterion2() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int N = 3; N <= 8 && ok; ++N)
    for (long long k = 3; k <= 12 && ok; ++k) {
      RootPositionsReport r = verify_root_positions(N, k);
      if (!r.all_pass()) {
        ok = false;
        detail = "failure at N=" + std::to_string(N) + " k=" + std::to_string(k);
      }
    }
  double secs = t.seconds();
  if (secs >= 30.0) {
    ok = false;
    detail += " runtime over 30 s";
  }
  report(2, "root counts and certified brackets across the grid", ok, secs, detail);
}

// --- criterion 3: spectral asymmetry with certified slack ---
void criterion3() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int N = 3; N <= 6 && ok; ++N)
    for (long long k : {5LL, 10LL, 20LL, 50LL}) {
      SpectralReport sp = spectral_ratio(poly_family(N, k, PolyKind::P));
      SpectralReport sq = spectral_ratio(poly_family(N, k, PolyKind::Q));
      double qb = 1.0 + 1.0 / std::sqrt(static_cast<double>(k));
      if (sp.ratio - sp.error_bound < static_cast<double>(k) ||
          sq.ratio + sq.error_bound > qb) {
        ok = false;
        detail = "bound failure at N=" + std::to_string(N) + " k=" + std::to_string(k);
        break;
      }
    }
  // checkpoint against the independent oracle
  SpectralReport cp = spectral_ratio(poly_family(3, 10, PolyKind::P));
  if (std::abs(cp.ratio - 31.67) > 0.01) {
    ok = false;
    detail += " checkpoint ratio " + std::to_string(cp.ratio);
  }
  long double lam = oracle::bisect(
      [](long double x) { return oracle::family_eval(x, 10, 3, true); }, 10.0L, 11.0L);
  double rho_oracle = static_cast<double>(std::pow(lam, 1.5L));
  if (std::abs(cp.ratio - rho_oracle) > 1e-6) {
    ok = false;
    detail += " oracle disagreement";
  }
  // slow-side checkpoint straight from the certified brackets
  {
    IntPolynomial q10 = poly_family(3, 10, PolyKind::Q);
    SqrtBounds lo = sqrt_outer_bounds(9), hi = sqrt_outer_bounds(11);
    double pos = bracket_real_root(q10, lo.lo_num, lo.den, hi.hi_num, hi.den).mid();
    double neg = bracket_real_root(q10, -hi.hi_num, hi.den, -lo.lo_num, lo.den).mid();
    double rho_brackets = pos / std::abs(neg);
    SpectralReport sq10 = spectral_ratio(q10);
    if (std::abs(sq10.ratio - rho_brackets) > 1e-9) {
      ok = false;
      detail += " slow checkpoint off brackets";
    }
  }
  report(3, "spectral ratios: fast side >= k, slow side <= 1 + 1/sqrt(k)", ok,
         t.seconds(), detail);
}

// --- criterion 4: asymptotics in k ---
void criterion4() {
  Timer t;
  bool ok = true;
  std::string detail;
  double prev_p = 0, prev_q = 10;
  for (long long k : {5LL, 10LL, 20LL, 50LL, 100LL}) {
    SpectralReport sp = spectral_ratio(poly_family(3, k, PolyKind::P));
    SpectralReport sq = spectral_ratio(poly_family(3, k, PolyKind::Q));
    if (!(sp.ratio > prev_p) || !(sq.ratio < prev_q) ||
        sq.ratio - 1.0 > 1.0 / std::sqrt(static_cast<double>(k))) {
      ok = false;
      detail = "monotonicity failure at k=" + std::to_string(k);
    }
    prev_p = sp.ratio;
    prev_q = sq.ratio;
  }
  report(4, "fast ratio strictly increases, slow ratio strictly decreases", ok,
         t.seconds(), detail);
}

// --- criterion 5: certificate table audit ---
void criterion5() {
  Timer t;
  bool ok = true;
  std::string detail;
  auto rows = audit_certificate_table({3, 5, 7, 11, 13, 9, 25, 27});
  for (const auto& r : rows) {
    bool expect_confirmed = r.N == 3 || r.N == 5 || r.N == 7 || r.N == 11 || r.N == 13;
    if (expect_confirmed) {
      if (r.status != "CONFIRMED") {
        ok = false;
        detail += " N=" + std::to_string(r.N) + " not confirmed;";
        continue;
      }
      // independent finite-field brute force on the reference entry
      auto [p, kp] = *r.reference;
      if (p <= 7 && r.N <= 13) {
        IntPolynomial q = poly_family(r.N, kp, PolyKind::Q);
        std::vector<std::uint32_t> raw;
        for (int i = 0; i <= q.degree(); ++i) raw.push_back(q.coeff(i).mod_small(p));
        if (!oracle::trial_division_irreducible(raw, p)) {
          ok = false;
          detail += " N=" + std::to_string(r.N) + " oracle mismatch;";
        }
      }
    } else {
      if (r.status != "DISCREPANT") {
        ok = false;
        detail += " N=" + std::to_string(r.N) + " expected discrepant;";
      }
      // a recomputed certificate must itself validate, or be reported absent
      if (r.recomputed) {
        IntPolynomial q = poly_family(r.N, r.recomputed->second, PolyKind::Q);
        if (!mod_p_irreducible(q, r.recomputed->first)) {
          ok = false;
          detail += " N=" + std::to_string(r.N) + " replacement invalid;";
        }
      }
    }
  }
  double secs = t.seconds();
  if (secs >= 60.0) {
    ok = false;
    detail += " runtime over 60 s";
  }
  report(5, "certificate table: confirmed rows re-proved, zero-residue rows flagged",
         ok, secs, detail);
}

// --- criterion 6: train-track facts (as stated, including even ranks) ---
void criterion6() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int N = 3; N <= 6; ++N)
    for (long long k = 3; k <= 12; ++k) {
      FamilyPair fam = shift_twist_family(N, k);
      std::string at = "N=" + std::to_string(N) + " k=" + std::to_string(k);
      if (!is_train_track(fam.forward).ok || !is_train_track(fam.reverse).ok) {
        ok = false;
        detail += " not train track at " + at + ";";
      }
      GatePartition gf = gates(fam.forward);
      bool gf_ok = static_cast<int>(gf.gates.size()) == N + 1;
      for (int i = 1; i <= N && gf_ok; ++i)
        for (int j = i + 1; j <= N && gf_ok; ++j)
          gf_ok = gf.same_gate(direction_code(i, false), direction_code(j, false));
      GatePartition gg = gates(fam.reverse);
      bool gg_ok = static_cast<int>(gg.gates.size()) == N;
      for (int i = 1; i <= N && gg_ok; ++i)
        gg_ok = gg.same_gate(direction_code((i + 1) % N + 1, false),
                             direction_code(i, true));
      if (!gf_ok || !gg_ok) {
        ok = false;
        detail += " gate structure at " + at + ";";
      }
      if (k == 3 || k == 12) {  // connectivity/primitivity are k-independent
        if (!local_whitehead_graph(fam.forward).connected ||
            !local_whitehead_graph(fam.reverse).connected) {
          ok = false;
          detail += " Whitehead graph disconnected at " + at + ";";
        }
        if (!is_primitive(transition_matrix(fam.forward)).primitive ||
            !is_primitive(transition_matrix(fam.reverse)).primitive) {
          ok = false;
          detail += " transition matrix not primitive at " + at + ";";
        }
      }
    }
  report(6, "train-track facts for both maps across 3 <= N <= 6", ok, t.seconds(),
         detail.empty()
             ? ""
             : detail + " [reverse map is structurally period-2 in even rank]");
}

// --- criterion 7: eigenvector displays ---
void criterion7() {
  Timer t;
  bool ok = true;
  std::string detail;
  auto rel_err = [](const std::vector<double>& got, const std::vector<double>& want) {
    double m = 0;
    for (std::size_t i = 0; i < got.size(); ++i)
      m = std::max(m, std::abs(got[i] - want[i]) / std::abs(want[i]));
    return m;
  };
  for (int N = 3; N <= 8; ++N)
    for (long long k : {3LL, 7LL, 12LL}) {
      FamilyPair fam = shift_twist_family(N, k);
      double lam = bracket_real_root(poly_family(N, k, PolyKind::P), k, k + 1).mid();
      std::vector<double> want(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i)
        want[static_cast<std::size_t>(i)] = std::pow(lam, N - 1 - i);
      PFData pf = pf_eigen(transition_matrix(fam.forward));
      if (rel_err(pf.v, want) > 1e-9) {
        ok = false;
        detail += " forward eigenvector at N=" + std::to_string(N) +
                  " k=" + std::to_string(k) + ";";
      }
      IntMatrix B = transition_matrix(fam.reverse);
      if (is_primitive(B).primitive) {
        IntPolynomial q = poly_family(N, k, PolyKind::Q);
        SqrtBounds lo = sqrt_outer_bounds(k - 1), hi = sqrt_outer_bounds(k + 1);
        double lb = bracket_real_root(q, lo.lo_num, lo.den, hi.hi_num, hi.den).mid();
        std::vector<double> wantb(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) wantb[static_cast<std::size_t>(i)] = std::pow(lb, i);
        PFData pb = pf_eigen(B);
        if (rel_err(pb.v, wantb) > 1e-9) {
          ok = false;
          detail += " reverse eigenvector at N=" + std::to_string(N) +
                    " k=" + std::to_string(k) + ";";
        }
      }
    }
  report(7, "power-iteration eigenvectors match the displayed power forms", ok,
         t.seconds(), detail);
}

// --- criterion 8: axis geometry ---
void criterion8() {
  Timer t;
  bool ok = true;
  std::string detail;

  for (auto [N, k] : {std::pair<int, long long>{3, 10}, {6, 10}}) {
    AxisFamily ax = axis_points(N, k, -2, 2, -2, 2);
    for (int i = -2; i < 2; ++i) {
      if (std::abs(lipschitz_distance(ax.x(i), ax.x(i + 1)).log_distance -
                   std::log(ax.lambda)) > 1e-9 ||
          std::abs(lipschitz_distance(ax.y(i), ax.y(i + 1)).log_distance -
                   std::log(ax.lambda_bar)) > 1e-9) {
        ok = false;
        detail += " translation length at N=" + std::to_string(N) + ";";
        break;
      }
    }
    FormulaValue fv = axis_distance_formula(N, k);
    if (std::abs(fv.value - lipschitz_distance(ax.x(0), ax.y(0)).log_distance) > 1e-9) {
      ok = false;
      detail += " closed form vs candidates at N=" + std::to_string(N) + ";";
    }
    double lower = (N - 1.0) * std::log(static_cast<double>(k)) - 4.0;
    if (fv.value < lower) {
      ok = false;
      detail += " lower bound at N=" + std::to_string(N) + ";";
    }
  }
  // rank 3: the closed form is realized on every aligned pair in the window
  {
    AxisFamily ax = axis_points(3, 10, -2, 2, -2, 2);
    FormulaValue fv = axis_distance_formula(3, 10);
    for (int i = -2; i <= 2; ++i)
      if (std::abs(lipschitz_distance(ax.x(i), ax.y(-i)).log_distance - fv.value) > 1e-9) {
        ok = false;
        detail += " aligned-pair drift in rank 3;";
        break;
      }
  }

  SeparationReport rep = axis_separation_report(6, 10, 4);
  if (!rep.diagonal_min) {
    ok = false;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  " grid min %.4f at (%d,%d) undercuts diagonal min %.4f;",
                  rep.grid_min, rep.argmin_i, rep.argmin_j, rep.diagonal_min_value);
    detail += buf;
  }
  if (!rep.bound_satisfied || !rep.lambda_sanity) {
    ok = false;
    detail += " separation bound at N=6;";
  }

  double secs = t.seconds();
  if (secs >= 60.0) {
    ok = false;
    detail += " runtime over 60 s";
  }
  report(8, "axis geometry: translations, closed form, separation bound", ok, secs,
         detail);
}

// --- criterion 9: candidate sufficiency oracle ---
void criterion9() {
  Timer t;
  bool ok = true;
  std::string detail;
  oracle::SplitMix64 rng(20240808);
  for (int trial = 0; trial < 20 && ok; ++trial) {
    auto random_point = [&rng]() {
      std::vector<double> l(3);
      double sum = 0;
      for (auto& v : l) {
        v = 0.05 + rng.unit();
        sum += v;
      }
      for (auto& v : l) v /= sum;
      l[2] += 1.0 - (l[0] + l[1] + l[2]);
      return make_rose_point(l, Automorphism::identity(3), Automorphism::identity(3));
    };
    RosePoint x = random_point(), y = random_point();
    double cand = lipschitz_distance(x, y).max_ratio;
    double best = 0;
    oracle::for_each_cyclic_word(3, 6, [&](const std::vector<int>& w) {
      double num = 0, den = 0;
      for (int code : w) {
        num += y.lengths[static_cast<std::size_t>(code / 2)];
        den += x.lengths[static_cast<std::size_t>(code / 2)];
      }
      best = std::max(best, num / den);
    });
    if (std::abs(best - cand) > 1e-12 * cand) {
      ok = false;
      detail = "brute force " + std::to_string(best) + " vs candidates " +
               std::to_string(cand);
    }
  }
  report(9, "candidate loops realize the stretch over all words up to length 6",
         ok, t.seconds(), detail);
}

// --- criterion 10: convergence rates ---
void criterion10() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (int N : {3, 4, 5})
    for (long long k : {5LL, 10LL, 20LL}) {
      FamilyPair fam = shift_twist_family(N, k);
      IntMatrix A = transition_matrix(fam.forward);
      double pr = power_rate(A).ratio;
      double sr = spectral_ratio(poly_family(N, k, PolyKind::P)).ratio;
      double rel = pr / sr;
      if (rel < 0.9 || rel > 1.1) {
        ok = false;
        detail += " power/spectral " + std::to_string(rel) + " at N=" +
                  std::to_string(N) + " k=" + std::to_string(k) + ";";
      }
      LengthTrajectory traj =
          iterate_lengths(fam.forward, petal_window(N), 9, uniform_rose(N),
                          k >= 20 ? 150000000LL : 20000000LL);
      double pj = projective_rate(traj).ratio;
      if (pj / pr < 0.85 || pj / pr > 1.15) {
        ok = false;
        detail += " word-level rate off at N=" + std::to_string(N) +
                  " k=" + std::to_string(k) + ";";
      }
    }
  double prev = 1;
  for (long long k = 3; k <= 20; ++k) {
    double th = thinness(axis_points(3, k, 0, 0, 0, 0).x(0));
    if (th >= prev) {
      ok = false;
      detail += " thinness not decreasing at k=" + std::to_string(k) + ";";
    }
    prev = th;
  }
  report(10, "power and word-level rates track the spectral ratio; axes thin out",
         ok, t.seconds(), detail);
}

// --- criterion 11: byte-identical reruns ---
void criterion11(const char* cli_path) {
  Timer t;
  bool ok = true;
  std::string detail;
  std::string out1 = "/tmp/outer_rates_det1.json";
  std::string out2 = "/tmp/outer_rates_det2.json";
  std::string base = std::string(cli_path) + " verify --N 3 --k 10 --out ";
  int rc1 = std::system((base + out1).c_str());
  int rc2 = std::system((base + out2).c_str());
  if (rc1 != 0 || rc2 != 0) {
    ok = false;
    detail = "verify exited nonzero";
  } else {
    std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    if (s1.str().empty() || s1.str() != s2.str()) {
      ok = false;
      detail = "outputs differ";
    }
  }
  report(11, "two verify runs produce byte-identical reports", ok, t.seconds(),
         detail);
}

}  // namespace

int main() {
  auto guarded = [](int idx, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(idx, "aborted by exception", false, 0.0, e.what());
    }
  };
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, criterion10);
#ifdef OUTER_RATES_CLI_PATH
  try {
    criterion11(OUTER_RATES_CLI_PATH);
  } catch (const std::exception& e) {
    report(11, "aborted by exception", false, 0.0, e.what());
  }
#else
  std::printf("[SKIP] criterion 11: CLI path not configured\n");
#endif
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
