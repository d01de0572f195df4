#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "outer_rates/traintrack.hpp"
#include "support/oracles.hpp"

using namespace outer_rates;

namespace {

constexpr double kLambdaP10 = 10.009980069701423;
constexpr double kLambdaBarQ10 = 3.2111393532786265;

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size();
  IntMatrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

GraphMap non_composable_map() {
  // a1 -> a1 a2 a1^-1, a2 -> a2: the image loop of a1 closes up at a
  // degenerate turn.
  std::vector<Word> images{Word::parse(2, "a1 a2 A1"), Word::parse(2, "a2")};
  return GraphMap(2, std::move(images));
}

}  // namespace

TEST_CASE("transition matrices match the displayed forms") {
  FamilyPair fam = shift_twist_family(3, 10);
  CHECK(transition_matrix(fam.forward) ==
        IntMatrix{{10, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  CHECK(transition_matrix(fam.reverse) ==
        IntMatrix{{0, 1, 0}, {0, 0, 1}, {1, 10, 0}});
  CHECK(transition_matrix(Automorphism::identity(3)) ==
        IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("char poly anchor for the transition matrices") {
  for (int N = 3; N <= 6; ++N)
    for (long long k : {3LL, 12LL}) {
      FamilyPair fam = shift_twist_family(N, k);
      CHECK(char_poly(transition_matrix(fam.forward)) == poly_family(N, k, PolyKind::P));
      CHECK(char_poly(transition_matrix(fam.reverse)) == poly_family(N, k, PolyKind::Q));
    }
}

TEST_CASE("direction map") {
  FamilyPair fam = shift_twist_family(4, 10);
  auto df = direction_map(fam.forward);
  // forward: a1 starts its own image, inverse of a1 ends at a_N
  CHECK(df[direction_code(1, false)] == direction_code(1, false));
  CHECK(df[direction_code(1, true)] == direction_code(4, true));
  CHECK(df[direction_code(3, false)] == direction_code(2, false));

  auto dg = direction_map(fam.reverse);
  CHECK(dg[direction_code(4, false)] == direction_code(3, true));
  CHECK(dg[direction_code(4, true)] == direction_code(1, true));
  CHECK(dg[direction_code(2, false)] == direction_code(3, false));

  auto did = direction_map(Automorphism::identity(3));
  for (int d = 0; d < 6; ++d) CHECK(did[d] == d);
}

TEST_CASE("gate structures across the family") {
  for (int N = 3; N <= 6; ++N)
    for (long long k : {3LL, 10LL}) {
      FamilyPair fam = shift_twist_family(N, k);
      GatePartition gf = gates(fam.forward);
      REQUIRE(static_cast<int>(gf.gates.size()) == N + 1);
      // all positive directions share one gate; inverses are singletons
      for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
          CHECK(gf.same_gate(direction_code(i, false), direction_code(j, false)));
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
          CHECK(!gf.same_gate(direction_code(i, true), direction_code(j, false)));

      GatePartition gg = gates(fam.reverse);
      REQUIRE(static_cast<int>(gg.gates.size()) == N);
      for (int i = 1; i <= N; ++i) {
        int wrapped = (i + 1) % N + 1;  // i + 2 wrapped into 1..N
        CHECK(gg.same_gate(direction_code(wrapped, false), direction_code(i, true)));
      }
    }
  GatePartition gid = gates(Automorphism::identity(3));
  CHECK(gid.gates.size() == 6);
}

TEST_CASE("taken turns for the rank-3 pair") {
  FamilyPair fam = shift_twist_family(3, 10);
  auto tf = taken_turns(fam.forward);
  // seeds {A1, a1} and {A1, a3} from a1^10 a3
  Turn s1(direction_code(1, true), direction_code(1, false));
  Turn s2(direction_code(1, true), direction_code(3, false));
  CHECK(std::count(tf.begin(), tf.end(), s1) == 1);
  CHECK(std::count(tf.begin(), tf.end(), s2) == 1);
  CHECK(tf.size() <= 3u * 5u);  // N(2N-1) cap

  auto tg = taken_turns(fam.reverse);
  Turn t1(direction_code(2, false), direction_code(2, true));
  Turn t2(direction_code(2, false), direction_code(1, false));
  CHECK(std::count(tg.begin(), tg.end(), t1) == 1);
  CHECK(std::count(tg.begin(), tg.end(), t2) == 1);

  CHECK(taken_turns(Automorphism::identity(3)).empty());
}

TEST_CASE("train track verdicts") {
  for (int N = 3; N <= 6; ++N)
    for (long long k : {3LL, 7LL, 12LL}) {
      FamilyPair fam = shift_twist_family(N, k);
      CHECK(is_train_track(fam.forward).ok);
      CHECK(is_train_track(fam.reverse).ok);
    }
  auto bad = is_train_track(non_composable_map());
  CHECK(!bad.ok);
  CHECK(bad.witness_kind == "cyclic");
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->degenerate());

  CHECK(is_train_track(Automorphism::identity(3)).ok);
}

TEST_CASE("local Whitehead graphs") {
  FamilyPair fam = shift_twist_family(3, 10);
  CHECK(local_whitehead_graph(fam.forward).connected);
  CHECK(local_whitehead_graph(fam.reverse).connected);

  WhiteheadGraph wid = local_whitehead_graph(Automorphism::identity(3));
  CHECK(!wid.connected);
  CHECK(wid.edges.empty());

  // even rank: the reverse map's taken turns split along index parity
  FamilyPair f4 = shift_twist_family(4, 10);
  CHECK(local_whitehead_graph(f4.forward).connected);
  CHECK(!local_whitehead_graph(f4.reverse).connected);
  FamilyPair f5 = shift_twist_family(5, 10);
  CHECK(local_whitehead_graph(f5.reverse).connected);
}

TEST_CASE("primitivity within the Wielandt bound") {
  FamilyPair fam = shift_twist_family(3, 10);
  IntMatrix a = transition_matrix(fam.forward);
  auto pa = is_primitive(a);
  CHECK(pa.primitive);
  CHECK(pa.exponent <= 5);
  // oracle: repeated multiplication until all entries positive
  IntMatrix pow = a;
  int m = 1;
  auto all_pos = [](const IntMatrix& x) {
    for (const auto& row : x)
      for (long long v : row)
        if (v <= 0) return false;
    return true;
  };
  while (!all_pos(pow)) {
    pow = mat_mul(pow, a);
    ++m;
  }
  CHECK(m == pa.exponent);

  CHECK(is_primitive(transition_matrix(fam.reverse)).primitive);

  IntMatrix cycle = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  CHECK(!is_primitive(cycle).primitive);

  // even rank reverse matrices are periodic of period 2, never primitive
  FamilyPair f4 = shift_twist_family(4, 10);
  CHECK(!is_primitive(transition_matrix(f4.reverse)).primitive);
  FamilyPair f6 = shift_twist_family(6, 5);
  CHECK(!is_primitive(transition_matrix(f6.reverse)).primitive);
}

TEST_CASE("pf_eigen matches the displayed eigenvectors") {
  FamilyPair fam = shift_twist_family(3, 10);
  PFData pa = pf_eigen(transition_matrix(fam.forward));
  CHECK(pa.lambda == doctest::Approx(kLambdaP10).epsilon(1e-11));
  REQUIRE(pa.v.size() == 3);
  // normalized so the least entry is 1: (lambda^2, lambda, 1)
  CHECK(pa.v[2] == doctest::Approx(1.0));
  CHECK(pa.v[1] == doctest::Approx(kLambdaP10).epsilon(1e-9));
  CHECK(pa.v[0] == doctest::Approx(kLambdaP10 * kLambdaP10).epsilon(1e-9));

  PFData pb = pf_eigen(transition_matrix(fam.reverse));
  CHECK(pb.lambda == doctest::Approx(kLambdaBarQ10).epsilon(1e-11));
  CHECK(pb.v[0] == doctest::Approx(1.0));
  CHECK(pb.v[1] == doctest::Approx(kLambdaBarQ10).epsilon(1e-9));
  CHECK(pb.v[2] == doctest::Approx(kLambdaBarQ10 * kLambdaBarQ10).epsilon(1e-9));

  IntMatrix id3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(pf_eigen(id3), std::invalid_argument);
}

TEST_CASE("full irreducibility report") {
  auto r = full_irreducibility_report(3, 10);
  CHECK(r.primitive_a.primitive);
  CHECK(r.primitive_b.primitive);
  CHECK(r.whitehead_f_connected);
  CHECK(r.whitehead_g_connected);
  CHECK(r.stretch_factors_differ);
  CHECK(r.cert_p.verdict == Verdict::IRREDUCIBLE);
  CHECK(r.cert_q.verdict == Verdict::IRREDUCIBLE);
  CHECK(r.nielsen_path_hypothesis == "UNVERIFIED");

  // rank 4: same report shape, with the structurally false hypotheses
  // reported false rather than assumed
  auto r4 = full_irreducibility_report(4, 5);
  CHECK(r4.primitive_a.primitive);
  CHECK(!r4.primitive_b.primitive);
  CHECK(r4.whitehead_f_connected);
  CHECK(!r4.whitehead_g_connected);
  CHECK(r4.stretch_factors_differ);
  CHECK(r4.nielsen_path_hypothesis == "UNVERIFIED");

  CHECK_THROWS_AS(full_irreducibility_report(3, 2), std::invalid_argument);
}

TEST_CASE("cyclic word lengths track matrix powers") {
  for (int N : {3, 4, 5}) {
    FamilyPair fam = shift_twist_family(N, 3);
    IntMatrix a = transition_matrix(fam.forward);
    IntMatrix an = a;
    std::vector<Word> cur;
    for (int g = 1; g <= N; ++g) cur.push_back(Word::generator(N, g));
    for (int n = 1; n <= 8; ++n) {
      for (auto& w : cur) w = apply(fam.forward, w, 100000000LL);
      for (int j = 0; j < N; ++j) {
        long long row_sum = 0;
        for (int c = 0; c < N; ++c) row_sum += an[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        // positive map: no cancellation, cyclic length equals the row sum
        CHECK(cyclic_reduce(cur[static_cast<std::size_t>(j)]).length() == row_sum);
      }
      an = mat_mul(an, a);
    }

    // reverse map: matrix counts bound word lengths, equality at n = 1
    IntMatrix b = transition_matrix(fam.reverse);
    IntMatrix bn = b;
    std::vector<Word> rcur;
    for (int g = 1; g <= N; ++g) rcur.push_back(Word::generator(N, g));
    for (int n = 1; n <= 6; ++n) {
      for (auto& w : rcur) w = apply(fam.reverse, w, 100000000LL);
      for (int j = 0; j < N; ++j) {
        long long row_sum = 0;
        for (int c = 0; c < N; ++c) row_sum += bn[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        long long len = cyclic_reduce(rcur[static_cast<std::size_t>(j)]).length();
        CHECK(len <= row_sum);
        if (n == 1) CHECK(len == row_sum);
      }
      bn = mat_mul(bn, b);
    }
  }
}
