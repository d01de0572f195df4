#include "outer_rates/traintrack.hpp"

#include <algorithm>
#include <set>

namespace outer_rates {

int direction_code(int gen, bool inverse) { return 2 * (gen - 1) + (inverse ? 1 : 0); }
int direction_gen(int code) { return code / 2 + 1; }
bool direction_is_inverse(int code) { return code % 2 != 0; }

std::string direction_name(int code) {
  return (direction_is_inverse(code) ? "A" : "a") + std::to_string(direction_gen(code));
}

IntMatrix transition_matrix(const GraphMap& m) {
  const int n = m.rank();
  IntMatrix out(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
  for (int i = 1; i <= n; ++i) {
    auto counts = m.image(i).occurrence_counts();
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = counts[static_cast<std::size_t>(j)];
  }
  return out;
}

namespace {

int first_letter_dir(const Word& w) {
  const auto& r = w.runs().front();
  return direction_code(r.gen, r.exp < 0);
}

int last_letter_inverse_dir(const Word& w) {
  const auto& r = w.runs().back();
  return direction_code(r.gen, r.exp > 0);
}

}  // namespace

std::vector<int> direction_map(const GraphMap& m) {
  const int n = m.rank();
  std::vector<int> d(static_cast<std::size_t>(2 * n));
  for (int g = 1; g <= n; ++g) {
    const Word& img = m.image(g);
    d[static_cast<std::size_t>(direction_code(g, false))] = first_letter_dir(img);
    d[static_cast<std::size_t>(direction_code(g, true))] = last_letter_inverse_dir(img);
  }
  return d;
}

GatePartition gates(const GraphMap& m) {
  const int n2 = 2 * m.rank();
  std::vector<int> dmap = direction_map(m);

  std::vector<int> parent(static_cast<std::size_t>(n2));
  for (int i = 0; i < n2; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

  std::vector<int> cur(static_cast<std::size_t>(n2));
  for (int i = 0; i < n2; ++i) cur[static_cast<std::size_t>(i)] = i;
  const int horizon = 4 * m.rank() * m.rank();
  for (int step = 0; step < horizon; ++step) {
    for (int i = 0; i < n2; ++i) cur[static_cast<std::size_t>(i)] = dmap[static_cast<std::size_t>(cur[static_cast<std::size_t>(i)])];
    for (int i = 0; i < n2; ++i)
      for (int j = i + 1; j < n2; ++j)
        if (cur[static_cast<std::size_t>(i)] == cur[static_cast<std::size_t>(j)]) unite(i, j);
  }

  GatePartition part;
  part.gate_of.assign(static_cast<std::size_t>(n2), -1);
  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(n2));
  for (int i = 0; i < n2; ++i) by_root[static_cast<std::size_t>(find(i))].push_back(i);
  for (auto& g : by_root) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end());
    for (int d : g) part.gate_of[static_cast<std::size_t>(d)] = static_cast<int>(part.gates.size());
    part.gates.push_back(g);
  }
  std::sort(part.gates.begin(), part.gates.end());
  for (std::size_t gi = 0; gi < part.gates.size(); ++gi)
    for (int d : part.gates[gi]) part.gate_of[static_cast<std::size_t>(d)] = static_cast<int>(gi);
  return part;
}

namespace {

// Turns crossed between consecutive letters of the image words.
std::set<Turn> seed_turns(const GraphMap& m) {
  std::set<Turn> seeds;
  for (int g = 1; g <= m.rank(); ++g) {
    const auto& runs = m.image(g).runs();
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& r = runs[i];
      long long a = r.exp < 0 ? -r.exp : r.exp;
      if (a >= 2) {
        // Crossing between two letters of the same run.
        int in = direction_code(r.gen, r.exp > 0);
        int out = direction_code(r.gen, r.exp < 0);
        seeds.insert(Turn(in, out));
      }
      if (i + 1 < runs.size()) {
        const auto& s = runs[i + 1];
        int in = direction_code(r.gen, r.exp > 0);
        int out = direction_code(s.gen, s.exp < 0);
        seeds.insert(Turn(in, out));
      }
    }
  }
  return seeds;
}

std::set<Turn> close_under_direction_map(const GraphMap& m, std::set<Turn> turns) {
  std::vector<int> dmap = direction_map(m);
  std::vector<Turn> queue(turns.begin(), turns.end());
  while (!queue.empty()) {
    Turn t = queue.back();
    queue.pop_back();
    Turn img(dmap[static_cast<std::size_t>(t.a)], dmap[static_cast<std::size_t>(t.b)]);
    if (img.degenerate()) continue;  // degenerate turns are never taken
    if (turns.insert(img).second) queue.push_back(img);
  }
  return turns;
}

}  // namespace

std::vector<Turn> taken_turns(const GraphMap& m) {
  auto closed = close_under_direction_map(m, seed_turns(m));
  return std::vector<Turn>(closed.begin(), closed.end());
}

TrainTrackCheck is_train_track(const GraphMap& m) {
  TrainTrackCheck res;
  GatePartition part = gates(m);

  for (const Turn& t : taken_turns(m)) {
    if (part.turn_illegal(t)) {
      res.witness = t;
      res.witness_kind = "taken";
      return res;
    }
  }

  // Edge images are loops at the single vertex; a multi-letter image must
  // also close up legally, else some iterate fails to be cyclically reduced.
  std::set<Turn> wraps;
  for (int g = 1; g <= m.rank(); ++g) {
    const Word& img = m.image(g);
    if (img.length() < 2) continue;
    Turn wrap(last_letter_inverse_dir(img), first_letter_dir(img));
    if (wrap.degenerate()) {
      res.witness = wrap;
      res.witness_kind = "cyclic";
      return res;
    }
    wraps.insert(wrap);
  }
  std::vector<int> dmap = direction_map(m);
  std::vector<Turn> queue(wraps.begin(), wraps.end());
  while (!queue.empty()) {
    Turn t = queue.back();
    queue.pop_back();
    if (part.turn_illegal(t)) {
      res.witness = t;
      res.witness_kind = "cyclic";
      return res;
    }
    Turn img(dmap[static_cast<std::size_t>(t.a)], dmap[static_cast<std::size_t>(t.b)]);
    if (img.degenerate()) {
      res.witness = img;
      res.witness_kind = "cyclic";
      return res;
    }
    if (wraps.insert(img).second) queue.push_back(img);
  }

  res.ok = true;
  return res;
}

WhiteheadGraph local_whitehead_graph(const GraphMap& m) {
  WhiteheadGraph g;
  g.rank = m.rank();
  const int n2 = 2 * m.rank();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n2));
  for (const Turn& t : taken_turns(m)) {
    g.edges.emplace_back(t.a, t.b);
    adj[static_cast<std::size_t>(t.a)].push_back(t.b);
    adj[static_cast<std::size_t>(t.b)].push_back(t.a);
  }
  std::sort(g.edges.begin(), g.edges.end());

  std::vector<bool> seen(static_cast<std::size_t>(n2), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 0;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    ++visited;
    for (int e : adj[static_cast<std::size_t>(d)])
      if (!seen[static_cast<std::size_t>(e)]) {
        seen[static_cast<std::size_t>(e)] = true;
        stack.push_back(e);
      }
  }
  g.connected = visited == n2;
  return g;
}

PrimitivityResult is_primitive(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("is_primitive: matrix not square");
    for (long long v : row)
      if (v < 0) throw std::invalid_argument("is_primitive: negative entry");
  }
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = m[i][j] > 0;

  auto all_positive = [n](const std::vector<std::vector<bool>>& x) {
    for (const auto& row : x)
      for (bool v : row)
        if (!v) return false;
    return true;
  };

  const int wielandt = static_cast<int>((n - 1) * (n - 1) + 1);
  std::vector<std::vector<bool>> cur = base;
  for (int e = 1; e <= wielandt; ++e) {
    if (all_positive(cur)) return {true, e};
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t kk = 0; kk < n; ++kk) {
        if (!cur[i][kk]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (base[kk][j]) next[i][j] = true;
      }
    cur = std::move(next);
  }
  return {false, 0};
}

PFData pf_eigen(const IntMatrix& m, double tol) {
  PrimitivityResult prim = is_primitive(m);
  if (!prim.primitive)
    throw std::invalid_argument("pf_eigen: matrix is not primitive");
  const std::size_t n = m.size();

  // Extended precision keeps the rounding-noise plateau of the iteration
  // well below the eigenvector accuracy required downstream; the companion
  // shapes here have eigenvector conditioning of order lambda^{n-1}.
  std::vector<long double> v(n, 1.0L);
  auto mul = [&](const std::vector<long double>& x) {
    std::vector<long double> y(n, 0.0L);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        y[i] += static_cast<long double>(m[i][j]) * x[j];
    return y;
  };
  auto residual_of = [&](long double lambda) {
    std::vector<long double> r = mul(v);
    long double res = 0;
    for (std::size_t i = 0; i < n; ++i)
      res = std::max(res, std::abs(r[i] - lambda * v[i]));
    return res;
  };

  // Iterate until the residual stops improving: nearly tied moduli (the
  // reverse matrices at large k) converge slowly and bottom out on a noise
  // plateau around eps/(1 - |lambda_2|/lambda), which is accepted when it is
  // tight enough for the requested tolerance.
  long double lambda = 0;
  const int kMaxIter = 500000;
  long double best_res = std::numeric_limits<long double>::infinity();
  int best_it = 0;
  int it = 0;
  bool settled = false;
  for (; it < kMaxIter; ++it) {
    std::vector<long double> w = mul(v);
    long double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      num += v[i] * w[i];
      den += v[i] * v[i];
    }
    lambda = num / den;
    long double sup = 0;
    for (long double x : w) sup = std::max(sup, std::abs(x));
    for (auto& x : w) x /= sup;
    v = std::move(w);
    if (it % 128 == 127) {
      long double res = residual_of(lambda);
      if (res < 0.995L * best_res) {
        best_res = res;
        best_it = it;
      } else if (it - best_it >= 2048) {
        settled = res <= std::max(1e-6L * static_cast<long double>(tol), 1e-15L) * lambda;
        if (!settled)
          throw ConvergenceError("pf_eigen: residual stalled at " +
                                     std::to_string(static_cast<double>(res)),
                                 static_cast<double>(res));
        break;
      }
    }
  }
  if (!settled)
    throw ConvergenceError("pf_eigen: power iteration did not converge",
                           static_cast<double>(best_res));

  long double vmin = v[0];
  for (long double x : v) vmin = std::min(vmin, x);
  for (auto& x : v) x /= vmin;

  PFData out;
  out.lambda = static_cast<double>(lambda);
  out.iterations = it;
  std::vector<long double> r = mul(v);
  long double res = 0;
  for (std::size_t i = 0; i < n; ++i)
    res = std::max(res, std::abs(r[i] - lambda * v[i]));
  out.residual = static_cast<double>(res);
  out.v.reserve(n);
  for (long double x : v) out.v.push_back(static_cast<double>(x));
  return out;
}

FullIrreducibilityReport full_irreducibility_report(int N, long long k) {
  FullIrreducibilityReport rep;
  rep.N = N;
  rep.k = k;
  FamilyPair fam = shift_twist_family(N, k);

  IntMatrix a = transition_matrix(fam.forward);
  IntMatrix b = transition_matrix(fam.reverse);
  rep.primitive_a = is_primitive(a);
  rep.primitive_b = is_primitive(b);
  rep.whitehead_f_connected = local_whitehead_graph(fam.forward).connected;
  rep.whitehead_g_connected = local_whitehead_graph(fam.reverse).connected;

  rep.cert_p = certify_irreducible(N, k, PolyKind::P);
  rep.cert_q = certify_irreducible(N, k, PolyKind::Q);

  IntPolynomial p = poly_family(N, k, PolyKind::P);
  IntPolynomial q = poly_family(N, k, PolyKind::Q);
  rep.lambda_bracket = bracket_real_root(p, k, k + 1);
  SqrtBounds lo_b = sqrt_outer_bounds(k - 1);
  SqrtBounds hi_b = sqrt_outer_bounds(k + 1);
  rep.lambda_bar_bracket =
      bracket_real_root(q, lo_b.lo_num, lo_b.den, hi_b.hi_num, hi_b.den);
  // Brackets disjoint: lambda lives above k while lambda_bar stays below
  // sqrt(k+1) <= k for k >= 2.
  rep.stretch_factors_differ =
      rep.lambda_bar_bracket.hi_num * rep.lambda_bracket.den <
      rep.lambda_bracket.lo_num * rep.lambda_bar_bracket.den;
  rep.nielsen_path_hypothesis = "UNVERIFIED";
  return rep;
}

}  // namespace outer_rates
