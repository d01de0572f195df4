#pragma once

// Test-only oracles, kept independent of the library paths they check:
// long-double bisection for real roots, trial-division irreducibility over
// small prime fields, exhaustive cyclically-reduced word enumeration, and a
// deterministic RNG for property tests.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

// f(x) = x^N - k x^{N-1} - 1 (P) or x^N - k x^{N-2} - 1 (Q).
inline long double family_eval(long double x, long double k, int N, bool is_p) {
  return std::pow(x, N) - k * std::pow(x, N - (is_p ? 1 : 2)) - 1.0L;
}

template <typename F>
long double bisect(F f, long double lo, long double hi, int steps = 200) {
  long double flo = f(lo);
  for (int i = 0; i < steps; ++i) {
    long double mid = 0.5L * (lo + hi);
    long double fm = f(mid);
    if ((flo <= 0) == (fm <= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5L * (lo + hi);
}

// --- trial-division irreducibility over F_p (raw vectors, no FpPoly) ---

// Coefficients ascending, normalized mod p, trailing nonzero.
inline std::vector<std::uint32_t> trim_mod(std::vector<std::uint32_t> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

// Remainder of a by the monic divisor d over F_p.
inline std::vector<std::uint32_t> rem_mod(std::vector<std::uint32_t> a,
                                          const std::vector<std::uint32_t>& d,
                                          std::uint32_t p) {
  int dd = static_cast<int>(d.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dd) {
    std::uint32_t lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - d.size();
      for (std::size_t i = 0; i < d.size(); ++i) {
        std::uint64_t sub = static_cast<std::uint64_t>(d[i]) * lead % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    a = trim_mod(std::move(a));
    if (static_cast<int>(a.size()) - 1 < dd) break;
  }
  return a;
}

// Irreducibility by dividing f by every monic polynomial of degree
// 1..deg(f)/2 over F_p.  Exponential, fine for p <= 7 and deg <= 13.
inline bool trial_division_irreducible(const std::vector<std::uint32_t>& f,
                                       std::uint32_t p) {
  auto fn = trim_mod(f);
  int n = static_cast<int>(fn.size()) - 1;
  if (n < 1) return false;
  for (int d = 1; d <= n / 2; ++d) {
    // Enumerate monic degree-d divisors by counting in base p.
    std::vector<std::uint32_t> div(static_cast<std::size_t>(d) + 1, 0);
    div.back() = 1;
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (int i = 0; i < d; ++i) {
        div[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (rem_mod(fn, div, p).empty()) return false;
    }
  }
  return true;
}

// --- word enumeration ---

// Letters encoded 0..2r-1 with gen = code/2 + 1, inverse = code % 2.
// Emits every freely and cyclically reduced word of length 1..max_len.
template <typename Fn>
void for_each_cyclic_word(int rank, int max_len, Fn fn) {
  std::vector<int> w;
  auto inverse_of = [](int c) { return c ^ 1; };
  auto rec = [&](auto&& self, int remaining) -> void {
    if (!w.empty() && w.front() != inverse_of(w.back())) fn(w);
    if (remaining == 0) return;
    for (int c = 0; c < 2 * rank; ++c) {
      if (!w.empty() && c == inverse_of(w.back())) continue;
      w.push_back(c);
      self(self, remaining - 1);
      w.pop_back();
    }
  };
  rec(rec, max_len);
}

// --- deterministic RNG ---

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace oracle
