#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "outer_rates/words.hpp"
#include "support/oracles.hpp"

using namespace outer_rates;

namespace {

Word w(int rank, const std::string& text) { return Word::parse(rank, text); }

Word random_word(oracle::SplitMix64& rng, int rank, int len) {
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i)
    ls.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(rank))) + 1,
                  rng.below(2) == 1});
  return Word::from_letters(rank, ls);
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(w(3, "a1 A1").empty());
  CHECK(w(3, "a1 a2 A2 a1") == w(3, "a1 a1"));
  CHECK(w(3, "a1^10 a3") == Word::parse(3, "a1 a1 a1 a1 a1 a1 a1 a1 a1 a1 a3"));
  CHECK_THROWS_AS(w(3, "a4"), std::invalid_argument);

  oracle::SplitMix64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Word u = random_word(rng, 4, static_cast<int>(rng.below(40)));
    // idempotent and length-nonincreasing
    Word again = Word::from_letters(4, u.letters());
    CHECK(again == u);
    CHECK(u.length() <= 40);
  }
}

TEST_CASE("cyclic reduction") {
  CHECK(cyclic_reduce(w(3, "a1 a2 A1")) == w(3, "a2"));
  CHECK(cyclic_reduce(w(3, "a1^10 a3 A1")) == w(3, "a1^9 a3"));
  CHECK(cyclic_reduce(Word(3)).empty());
  // nested conjugation collapses fully
  CHECK(cyclic_reduce(w(3, "a1 a2 a3 A2 A1")) == w(3, "a3"));
  // cyclically reduced words are fixed
  CHECK(cyclic_reduce(w(3, "a1 a2")) == w(3, "a1 a2"));
  CHECK(cyclic_reduce(w(3, "a1^3")) == w(3, "a1^3"));
}

TEST_CASE("apply on the rank-3 family") {
  FamilyPair fam = shift_twist_family(3, 10);
  CHECK(apply(fam.forward, w(3, "a2")) == w(3, "a1"));
  FamilyPair fam3 = shift_twist_family(3, 3);
  CHECK(apply(fam3.forward, w(3, "a1")) == w(3, "a1 a1 a1 a3"));
  CHECK(apply(fam.reverse, apply(fam.forward, w(3, "a1"))) == w(3, "a1"));
  CHECK_THROWS_AS(apply(fam.forward, Word::generator(4, 1)), std::invalid_argument);
}

TEST_CASE("apply respects composition on random words") {
  oracle::SplitMix64 rng(23);
  for (int rank = 3; rank <= 6; ++rank) {
    FamilyPair fam = shift_twist_family(rank, 4);
    Automorphism c = compose(fam.forward, fam.reverse);
    for (int i = 0; i < 60; ++i) {
      Word u = random_word(rng, rank, static_cast<int>(rng.below(30)));
      CHECK(apply(c, u) == apply(fam.forward, apply(fam.reverse, u)));
    }
  }
}

TEST_CASE("homomorphism property") {
  FamilyPair fam = shift_twist_family(3, 5);
  oracle::SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Word u = random_word(rng, 3, static_cast<int>(rng.below(20)));
    Word v = random_word(rng, 3, static_cast<int>(rng.below(20)));
    CHECK(apply(fam.forward, concat(u, v)) ==
          concat(apply(fam.forward, u), apply(fam.forward, v)));
  }
}

TEST_CASE("compose basics") {
  FamilyPair fam = shift_twist_family(3, 10);
  CHECK(compose(fam.forward, fam.reverse).is_identity());
  CHECK(compose(Automorphism::identity(3), fam.forward) == fam.forward);
  // applying the forward map twice sends a3 to a1
  Automorphism sq = compose(fam.forward, fam.forward);
  CHECK(apply(sq, w(3, "a3")) == w(3, "a1"));
}

TEST_CASE("family pair shape and parameter gates") {
  FamilyPair fam = shift_twist_family(3, 10);
  CHECK(fam.forward.image(1) == w(3, "a1^10 a3"));
  CHECK(fam.forward.image(2) == w(3, "a1"));
  CHECK(fam.forward.image(3) == w(3, "a2"));
  CHECK(fam.reverse.image(1) == w(3, "a2"));
  CHECK(fam.reverse.image(2) == w(3, "a3"));
  CHECK(fam.reverse.image(3) == w(3, "A2^10 a1"));
  CHECK(fam.inverse_check.verified);

  CHECK_THROWS_AS(shift_twist_family(2, 10), std::invalid_argument);
  CHECK_THROWS_AS(shift_twist_family(3, 2), std::invalid_argument);
}

TEST_CASE("printed pair is inverse only in rank 3; exact inverses always verify") {
  // The printed reverse formula fails the inverse check from rank 4 on: the
  // composition moves one generator by a non-inner automorphism.  The exact
  // inverses are exercised instead wherever a true inverse is required.
  for (int rank = 3; rank <= 8; ++rank) {
    FamilyPair fam = shift_twist_family(rank, 5);
    CHECK(fam.inverse_check.verified == (rank == 3));
    if (rank > 3) CHECK(!fam.inverse_check.witness.empty());
    CHECK(verify_inverse_pair(fam.forward, forward_inverse(rank, 5)).verified);
    CHECK(verify_inverse_pair(fam.reverse, reverse_inverse(rank, 5)).verified);
  }
  // rank 4 witness: reverse(forward(a1)) = a2^k a3^-k a1
  FamilyPair f4 = shift_twist_family(4, 5);
  Word moved = apply(f4.reverse, f4.forward.image(1));
  CHECK(moved == w(4, "a2^5 A3^5 a1"));
}

TEST_CASE("length cap fails loudly") {
  FamilyPair fam = shift_twist_family(3, 10);
  Word cur = w(3, "a1");
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 12; ++i) cur = apply(fam.forward, cur, 1000000);
      }(),
      LengthOverflowError);
}

TEST_CASE("canonical conjugacy class form") {
  // rotations and inverses of one class share a canonical form
  Word a = w(3, "a1 a2 a3");
  Word b = w(3, "a2 a3 a1");
  Word c = w(3, "A3 A2 A1");
  CHECK(canonical_class_form(a) == canonical_class_form(b));
  CHECK(canonical_class_form(a) == canonical_class_form(c));
  CHECK(canonical_class_form(w(3, "a1 a2 A1")) == canonical_class_form(w(3, "a2")));
  CHECK(canonical_class_form(Word(3)).empty());
  // deterministic representative
  CHECK(canonical_class_form(a) == w(3, "a1 a2 a3"));
}

TEST_CASE("text round trip") {
  Word u = w(4, "a1 a1 A3 a2");
  CHECK(Word::parse(4, u.to_text()) == u);
  CHECK(u.to_text() == "a1 a1 A3 a2");
  CHECK(w(3, "a1^3 A2^2").to_text() == "a1 a1 a1 A2 A2");
}

TEST_CASE("occurrence counts") {
  Word u = w(3, "a1^10 a3");
  auto counts = u.occurrence_counts();
  CHECK(counts[0] == 10);
  CHECK(counts[1] == 0);
  CHECK(counts[2] == 1);
}

namespace {

// Naive letter-by-letter reference implementations for the run-length
// encoded paths: free reduction by stack, substitution, cyclic reduction.
std::vector<Letter> naive_reduce(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  for (const Letter& l : in) {
    if (!out.empty() && out.back().gen == l.gen && out.back().inverse != l.inverse)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

std::vector<Letter> naive_apply(const Automorphism& aut,
                                const std::vector<Letter>& in) {
  std::vector<Letter> out;
  for (const Letter& l : in) {
    auto img = aut.image(l.gen).letters();
    if (l.inverse)
      for (auto it = img.rbegin(); it != img.rend(); ++it)
        out.push_back({it->gen, !it->inverse});
    else
      out.insert(out.end(), img.begin(), img.end());
  }
  return naive_reduce(out);
}

std::vector<Letter> naive_cyclic_reduce(std::vector<Letter> v) {
  while (v.size() >= 2 && v.front().gen == v.back().gen &&
         v.front().inverse != v.back().inverse) {
    v.erase(v.begin());
    v.pop_back();
  }
  return v;
}

}  // namespace

TEST_CASE("run-length paths agree with naive letter arithmetic") {
  oracle::SplitMix64 rng(314159);
  for (int rank = 2; rank <= 5; ++rank) {
    // random automorphism-shaped maps: images are random reduced words
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Word> images;
      for (int g = 1; g <= rank; ++g) {
        Word img;
        do {
          img = random_word(rng, rank, 1 + static_cast<int>(rng.below(6)));
        } while (img.empty());
        images.push_back(img);
      }
      Automorphism m(rank, std::move(images));
      Word u = random_word(rng, rank, static_cast<int>(rng.below(25)));

      CHECK(apply(m, u).letters() == naive_apply(m, u.letters()));
      CHECK(cyclic_reduce(u).letters() == naive_cyclic_reduce(u.letters()));

      Word v = random_word(rng, rank, static_cast<int>(rng.below(25)));
      CHECK(concat(u, v).letters() ==
            naive_reduce([&] {
              auto ls = u.letters();
              auto vs = v.letters();
              ls.insert(ls.end(), vs.begin(), vs.end());
              return ls;
            }()));
    }
  }
}
