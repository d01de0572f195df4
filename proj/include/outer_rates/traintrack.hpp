#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outer_rates/intpoly.hpp"
#include "outer_rates/roots.hpp"
#include "outer_rates/words.hpp"

namespace outer_rates {

// A self-map of the N-petalled rose is exactly an assignment of a reduced,
// nonempty image word to each petal, which Automorphism already enforces.
using GraphMap = Automorphism;

// Directions at the rose vertex: 2N germs, encoded 2*(gen-1) + (inverse?1:0).
int direction_code(int gen, bool inverse);
int direction_gen(int code);
bool direction_is_inverse(int code);
std::string direction_name(int code);  // "a3" / "A3"

// Unordered pair of directions, normalized a <= b.
struct Turn {
  int a, b;
  Turn(int x, int y) : a(x < y ? x : y), b(x < y ? y : x) {}
  bool degenerate() const { return a == b; }
  bool operator==(const Turn&) const = default;
  bool operator<(const Turn& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// Entry (i, j) counts occurrences of a_j^{+-1} in the image of a_i, so that
// row sums are image lengths and the stated eigenvector shapes come out on
// column vectors.
IntMatrix transition_matrix(const GraphMap& m);

// Image of each direction: first letter of the image word (inverse direction
// goes to the inverse of the last letter).
std::vector<int> direction_map(const GraphMap& m);

struct GatePartition {
  std::vector<std::vector<int>> gates;  // sorted direction codes, sorted lists
  std::vector<int> gate_of;             // direction code -> gate index

  bool same_gate(int d1, int d2) const { return gate_of[static_cast<std::size_t>(d1)] == gate_of[static_cast<std::size_t>(d2)]; }
  bool turn_illegal(const Turn& t) const {
    return t.degenerate() || same_gate(t.a, t.b);
  }
};

// Directions collide when their forward orbits under the direction map meet
// at the same step; orbits on 2N points are periodic well within the 4N^2
// horizon used here.
GatePartition gates(const GraphMap& m);

// Turns crossed inside edge images, closed under the direction map.
std::vector<Turn> taken_turns(const GraphMap& m);

struct TrainTrackCheck {
  bool ok = false;
  std::optional<Turn> witness;       // offending turn when not ok
  std::string witness_kind;          // "taken" or "cyclic"
};

// A map is accepted when every taken turn is legal and, for images of length
// >= 2, the wrap-around turn of the image loop (and its orbit) is legal too —
// the latter is what rules out images that are not cyclically composable.
TrainTrackCheck is_train_track(const GraphMap& m);

struct WhiteheadGraph {
  int rank = 0;
  std::vector<std::pair<int, int>> edges;  // direction-code pairs, sorted
  bool connected = false;
};

WhiteheadGraph local_whitehead_graph(const GraphMap& m);

struct PrimitivityResult {
  bool primitive = false;
  int exponent = 0;  // least m with M^m > 0, when primitive
};

// Wielandt bound: primitive iff M^((n-1)^2+1) is positive; powers are taken
// over the boolean semiring.
PrimitivityResult is_primitive(const IntMatrix& m);

struct PFData {
  double lambda = 0;
  std::vector<double> v;  // positive, normalized so the least entry is 1
  double residual = 0;    // ||Mv - lambda v||_inf
  int iterations = 0;
};

PFData pf_eigen(const IntMatrix& m, double tol = 1e-13);

struct FullIrreducibilityReport {
  int N = 0;
  long long k = 0;
  PrimitivityResult primitive_a, primitive_b;
  bool whitehead_f_connected = false, whitehead_g_connected = false;
  bool stretch_factors_differ = false;  // certified brackets disjoint
  CertifiedBracket lambda_bracket, lambda_bar_bracket;
  IrreducibilityCertificate cert_p, cert_q;
  std::string nielsen_path_hypothesis;  // always "UNVERIFIED"
};

FullIrreducibilityReport full_irreducibility_report(int N, long long k);

}  // namespace outer_rates
