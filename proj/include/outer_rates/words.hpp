#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace outer_rates {

// Iterated images grow like lambda^n, so every reducing operation carries a
// letter-count cap and fails loudly instead of exhausting memory.
inline constexpr long long kDefaultLengthCap = 10'000'000;

class LengthOverflowError : public std::runtime_error {
 public:
  LengthOverflowError(long long attempted, long long cap)
      : std::runtime_error("word length " + std::to_string(attempted) +
                           " exceeds cap " + std::to_string(cap)),
        attempted_(attempted),
        cap_(cap) {}
  long long attempted() const { return attempted_; }
  long long cap() const { return cap_; }

 private:
  long long attempted_;
  long long cap_;
};

struct Letter {
  int gen = 1;  // 1..rank
  bool inverse = false;

  bool operator==(const Letter&) const = default;
};

// Freely reduced word in F_rank, stored as maximal runs a_g^e (e != 0,
// adjacent runs on distinct generators).  phi_k images contain blocks a_1^k
// and iterates grow exponentially, so unary storage is wasteful.
class Word {
 public:
  struct Run {
    int gen;
    long long exp;  // signed, nonzero
    bool operator==(const Run&) const = default;
  };

  Word() = default;
  explicit Word(int rank) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("Word: rank must be >= 1");
  }

  static Word from_letters(int rank, const std::vector<Letter>& letters,
                           long long cap = kDefaultLengthCap);
  static Word generator(int rank, int gen, bool inverse = false);
  // a_gen^exp (exp may be negative or zero).
  static Word power(int rank, int gen, long long exp);

  int rank() const { return rank_; }
  bool empty() const { return runs_.empty(); }
  long long length() const { return length_; }
  const std::vector<Run>& runs() const { return runs_; }

  Word inverse() const;
  std::vector<Letter> letters() const;  // throws LengthOverflowError if huge

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && runs_ == o.runs_;
  }

  std::string to_text() const;  // "a1 a1 A3" — lowercase gen, uppercase inverse
  static Word parse(int rank, const std::string& text,
                    long long cap = kDefaultLengthCap);

  // Unsigned occurrence counts of each generator, index 0 <-> a_1.
  std::vector<long long> occurrence_counts() const;

  friend class WordBuilder;

 private:
  int rank_ = 0;
  long long length_ = 0;
  std::vector<Run> runs_;
};

// Accumulates runs with on-the-fly free reduction and cap enforcement.
class WordBuilder {
 public:
  explicit WordBuilder(int rank, long long cap = kDefaultLengthCap)
      : word_(rank), cap_(cap) {}

  void push_run(int gen, long long exp);
  void push_letter(const Letter& l) { push_run(l.gen, l.inverse ? -1 : 1); }
  void append(const Word& w);
  void append_inverse(const Word& w);
  Word take();

 private:
  Word word_;
  long long cap_;
};

Word reduce(int rank, const std::vector<Letter>& letters,
            long long cap = kDefaultLengthCap);
Word concat(const Word& a, const Word& b, long long cap = kDefaultLengthCap);
Word cyclic_reduce(const Word& w);

// Canonical representative of the conjugacy class of w: cyclically reduce,
// then take the lexicographically least rotation of the word or its inverse.
// Deterministic key for length tables.
Word canonical_class_form(const Word& w);

class Automorphism {
 public:
  Automorphism(int rank, std::vector<Word> images);
  static Automorphism identity(int rank);

  int rank() const { return rank_; }
  const Word& image(int gen) const;  // gen in 1..rank
  const std::vector<Word>& images() const { return images_; }

  bool is_identity() const;
  bool operator==(const Automorphism& o) const {
    return rank_ == o.rank_ && images_ == o.images_;
  }

 private:
  int rank_;
  std::vector<Word> images_;
};

Word apply(const Automorphism& aut, const Word& w,
           long long cap = kDefaultLengthCap);
// One-shot application with the cap set to the exact output bound
// (sum over runs of |exp| * image length); cannot overflow, so it is the
// right call for measuring words that are already materialized.
Word apply_exact(const Automorphism& aut, const Word& w);
// compose(a, b) maps w to a(b(w)).
Automorphism compose(const Automorphism& a, const Automorphism& b,
                     long long cap = kDefaultLengthCap);
// compose built on apply_exact; safe for marking changes.
Automorphism compose_exact(const Automorphism& a, const Automorphism& b);
Automorphism power(const Automorphism& aut, unsigned n,
                   long long cap = kDefaultLengthCap);

struct InverseCheck {
  bool verified = false;
  std::string witness;  // first generator moved by a composition, if any
};

// Checks that both compositions fix every generator.
InverseCheck verify_inverse_pair(const Automorphism& a, const Automorphism& b,
                                 long long cap = kDefaultLengthCap);

// The rank-N family: `forward` shifts a_i -> a_{i-1} with the twist
// a_1 -> a_1^k a_N; `reverse` shifts a_i -> a_{i+1} with a_N -> a_{N-1}^{-k} a_1.
// The two are mutually inverse exactly when rank == 3; `inverse_check`
// records the verification outcome rather than assuming it.
struct FamilyPair {
  Automorphism forward;
  Automorphism reverse;
  InverseCheck inverse_check;
};

FamilyPair shift_twist_family(int rank, long long k);

// Exact inverses of the two family maps, valid for every rank:
//   forward^-1: a_i -> a_{i+1} (i < N), a_N -> a_2^-k a_1
//   reverse^-1: a_i -> a_{i-1} (i > 1), a_1 -> a_{N-2}^k a_N
Automorphism forward_inverse(int rank, long long k);
Automorphism reverse_inverse(int rank, long long k);

}  // namespace outer_rates
