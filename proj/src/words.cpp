#include "outer_rates/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace outer_rates {

namespace {
long long abs_ll(long long v) { return v < 0 ? -v : v; }
}  // namespace

void WordBuilder::push_run(int gen, long long exp) {
  if (gen < 1 || gen > word_.rank_)
    throw std::invalid_argument("generator index " + std::to_string(gen) +
                                " out of range 1.." + std::to_string(word_.rank_));
  if (exp == 0) return;
  auto& runs = word_.runs_;
  if (!runs.empty() && runs.back().gen == gen) {
    word_.length_ -= abs_ll(runs.back().exp);
    runs.back().exp += exp;
    if (runs.back().exp == 0) {
      runs.pop_back();
    } else {
      word_.length_ += abs_ll(runs.back().exp);
    }
  } else {
    runs.push_back({gen, exp});
    word_.length_ += abs_ll(exp);
  }
  if (word_.length_ > cap_) throw LengthOverflowError(word_.length_, cap_);
}

void WordBuilder::append(const Word& w) {
  for (const auto& r : w.runs()) push_run(r.gen, r.exp);
}

void WordBuilder::append_inverse(const Word& w) {
  const auto& runs = w.runs();
  for (auto it = runs.rbegin(); it != runs.rend(); ++it)
    push_run(it->gen, -it->exp);
}

Word WordBuilder::take() { return std::move(word_); }

Word Word::from_letters(int rank, const std::vector<Letter>& letters,
                        long long cap) {
  WordBuilder b(rank, cap);
  for (const auto& l : letters) b.push_letter(l);
  return b.take();
}

Word Word::generator(int rank, int gen, bool inverse) {
  return power(rank, gen, inverse ? -1 : 1);
}

Word Word::power(int rank, int gen, long long exp) {
  WordBuilder b(rank, kDefaultLengthCap);
  b.push_run(gen, exp);
  return b.take();
}

Word Word::inverse() const {
  Word r(*this);
  std::reverse(r.runs_.begin(), r.runs_.end());
  for (auto& run : r.runs_) run.exp = -run.exp;
  return r;
}

std::vector<Letter> Word::letters() const {
  constexpr long long kExpandCap = 1 << 22;
  if (length_ > kExpandCap) throw LengthOverflowError(length_, kExpandCap);
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(length_));
  for (const auto& r : runs_) {
    Letter l{r.gen, r.exp < 0};
    for (long long i = 0; i < abs_ll(r.exp); ++i) out.push_back(l);
  }
  return out;
}

std::string Word::to_text() const {
  std::string out;
  for (const auto& r : runs_) {
    std::string tok = (r.exp < 0 ? "A" : "a") + std::to_string(r.gen);
    for (long long i = 0; i < abs_ll(r.exp); ++i) {
      if (!out.empty()) out.push_back(' ');
      out += tok;
    }
  }
  return out;
}

Word Word::parse(int rank, const std::string& text, long long cap) {
  WordBuilder b(rank, cap);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'A'))
      throw std::invalid_argument("bad word token \"" + tok + "\"");
    bool inv = tok[0] == 'A';
    std::size_t i = 1;
    long long gen = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
      gen = gen * 10 + (tok[i++] - '0');
    long long exp = 1;
    if (i < tok.size()) {  // optional ^e suffix
      if (tok[i] != '^')
        throw std::invalid_argument("bad word token \"" + tok + "\"");
      exp = std::strtoll(tok.c_str() + i + 1, nullptr, 10);
    }
    if (gen < 1) throw std::invalid_argument("bad word token \"" + tok + "\"");
    b.push_run(static_cast<int>(gen), inv ? -exp : exp);
  }
  return b.take();
}

std::vector<long long> Word::occurrence_counts() const {
  std::vector<long long> counts(static_cast<std::size_t>(rank_), 0);
  for (const auto& r : runs_) counts[static_cast<std::size_t>(r.gen - 1)] += abs_ll(r.exp);
  return counts;
}

Word reduce(int rank, const std::vector<Letter>& letters, long long cap) {
  return Word::from_letters(rank, letters, cap);
}

Word concat(const Word& a, const Word& b, long long cap) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("concat: rank mismatch");
  WordBuilder out(a.rank(), cap);
  out.append(a);
  out.append(b);
  return out.take();
}

Word cyclic_reduce(const Word& w) {
  auto runs = w.runs();
  while (runs.size() >= 2) {
    auto& f = runs.front();
    auto& b = runs.back();
    if (f.gen != b.gen || (f.exp > 0) == (b.exp > 0)) break;
    long long m = std::min(abs_ll(f.exp), abs_ll(b.exp));
    f.exp += f.exp > 0 ? -m : m;
    b.exp += b.exp > 0 ? -m : m;
    if (b.exp == 0) runs.pop_back();
    if (f.exp == 0) runs.erase(runs.begin());
  }
  WordBuilder out(w.rank(), w.length() + 1);
  for (const auto& r : runs) out.push_run(r.gen, r.exp);
  return out.take();
}

namespace {

int letter_key(const Letter& l) { return (l.gen - 1) * 2 + (l.inverse ? 1 : 0); }

// Index of the lexicographically least rotation (naive scan; the words fed
// through canonical forms are short).
std::size_t least_rotation(const std::vector<Letter>& v) {
  std::size_t n = v.size(), best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int a = letter_key(v[(i + j) % n]);
      int b = letter_key(v[(best + j) % n]);
      if (a != b) {
        if (a < b) best = i;
        break;
      }
    }
  }
  return best;
}

std::vector<Letter> rotated(const std::vector<Letter>& v, std::size_t s) {
  std::vector<Letter> r;
  r.reserve(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) r.push_back(v[(s + j) % v.size()]);
  return r;
}

}  // namespace

Word canonical_class_form(const Word& w) {
  Word c = cyclic_reduce(w);
  if (c.empty()) return c;
  constexpr long long kCanonicalCap = 4096;
  if (c.length() > kCanonicalCap)
    throw LengthOverflowError(c.length(), kCanonicalCap);
  auto fwd = c.letters();
  auto bwd = c.inverse().letters();
  auto a = rotated(fwd, least_rotation(fwd));
  auto b = rotated(bwd, least_rotation(bwd));
  const auto& pick = std::lexicographical_compare(
                         b.begin(), b.end(), a.begin(), a.end(),
                         [](const Letter& x, const Letter& y) {
                           return letter_key(x) < letter_key(y);
                         })
                         ? b
                         : a;
  return Word::from_letters(c.rank(), pick);
}

Automorphism::Automorphism(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (rank < 1) throw std::invalid_argument("Automorphism: rank must be >= 1");
  if (images_.size() != static_cast<std::size_t>(rank))
    throw std::invalid_argument("Automorphism: expected one image per generator");
  for (const auto& w : images_) {
    if (w.rank() != rank)
      throw std::invalid_argument("Automorphism: image rank mismatch");
    if (w.empty())
      throw std::invalid_argument("Automorphism: generator image is empty");
  }
}

Automorphism Automorphism::identity(int rank) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int g = 1; g <= rank; ++g) images.push_back(Word::generator(rank, g));
  return Automorphism(rank, std::move(images));
}

const Word& Automorphism::image(int gen) const {
  if (gen < 1 || gen > rank_)
    throw std::invalid_argument("Automorphism: generator out of range");
  return images_[static_cast<std::size_t>(gen - 1)];
}

bool Automorphism::is_identity() const {
  for (int g = 1; g <= rank_; ++g)
    if (!(image(g) == Word::generator(rank_, g))) return false;
  return true;
}

Word apply(const Automorphism& aut, const Word& w, long long cap) {
  if (aut.rank() != w.rank())
    throw std::invalid_argument("apply: rank mismatch");
  WordBuilder out(w.rank(), cap);
  for (const auto& r : w.runs()) {
    const Word& img = aut.image(r.gen);
    if (img.runs().size() == 1) {
      const auto& ir = img.runs().front();
      out.push_run(ir.gen, ir.exp * r.exp);
      continue;
    }
    if (r.exp > 0) {
      for (long long i = 0; i < r.exp; ++i) out.append(img);
    } else {
      for (long long i = 0; i < -r.exp; ++i) out.append_inverse(img);
    }
  }
  return out.take();
}

Word apply_exact(const Automorphism& aut, const Word& w) {
  long long bound = 1;
  for (const auto& r : w.runs()) {
    long long e = abs_ll(r.exp);
    long long il = aut.image(r.gen).length();
    if (e > 0 && il > (1LL << 62) / e)
      throw LengthOverflowError(1LL << 62, 1LL << 62);
    bound += e * il;
  }
  return apply(aut, w, bound);
}

Automorphism compose(const Automorphism& a, const Automorphism& b,
                     long long cap) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("compose: rank mismatch");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(a.rank()));
  for (int g = 1; g <= a.rank(); ++g) images.push_back(apply(a, b.image(g), cap));
  return Automorphism(a.rank(), std::move(images));
}

Automorphism compose_exact(const Automorphism& a, const Automorphism& b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("compose: rank mismatch");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(a.rank()));
  for (int g = 1; g <= a.rank(); ++g) images.push_back(apply_exact(a, b.image(g)));
  return Automorphism(a.rank(), std::move(images));
}

Automorphism power(const Automorphism& aut, unsigned n, long long cap) {
  Automorphism r = Automorphism::identity(aut.rank());
  for (unsigned i = 0; i < n; ++i) r = compose(aut, r, cap);
  return r;
}

InverseCheck verify_inverse_pair(const Automorphism& a, const Automorphism& b,
                                 long long cap) {
  InverseCheck res;
  if (a.rank() != b.rank())
    throw std::invalid_argument("verify_inverse_pair: rank mismatch");
  for (int g = 1; g <= a.rank(); ++g) {
    Word ab = apply(a, b.image(g), cap);
    if (!(ab == Word::generator(a.rank(), g))) {
      res.witness = "first*second sends a" + std::to_string(g) + " to " +
                    ab.to_text();
      return res;
    }
    Word ba = apply(b, a.image(g), cap);
    if (!(ba == Word::generator(a.rank(), g))) {
      res.witness = "second*first sends a" + std::to_string(g) + " to " +
                    ba.to_text();
      return res;
    }
  }
  res.verified = true;
  return res;
}

namespace {

void check_family_params(int rank, long long k) {
  if (rank < 3)
    throw std::invalid_argument(
        "rank must be >= 3: asymmetric fast/slow convergence families exist "
        "only in rank >= 3 (in rank <= 2 every spectral ratio is bounded away "
        "from 1 and matches its inverse)");
  if (k < 3)
    throw std::invalid_argument("k must be >= 3 for the shift-twist family");
}

}  // namespace

FamilyPair shift_twist_family(int rank, long long k) {
  check_family_params(rank, k);
  std::vector<Word> fwd, rev;
  // forward: a_1 -> a_1^k a_N, a_i -> a_{i-1} for i >= 2
  {
    WordBuilder b(rank);
    b.push_run(1, k);
    b.push_run(rank, 1);
    fwd.push_back(b.take());
  }
  for (int g = 2; g <= rank; ++g) fwd.push_back(Word::generator(rank, g - 1));
  // reverse: a_i -> a_{i+1} for i < N, a_N -> a_{N-1}^-k a_1
  for (int g = 1; g < rank; ++g) rev.push_back(Word::generator(rank, g + 1));
  {
    WordBuilder b(rank);
    b.push_run(rank - 1, -k);
    b.push_run(1, 1);
    rev.push_back(b.take());
  }
  FamilyPair pair{Automorphism(rank, std::move(fwd)),
                  Automorphism(rank, std::move(rev)),
                  {}};
  pair.inverse_check = verify_inverse_pair(pair.forward, pair.reverse);
  return pair;
}

Automorphism forward_inverse(int rank, long long k) {
  check_family_params(rank, k);
  std::vector<Word> images;
  for (int g = 1; g < rank; ++g) images.push_back(Word::generator(rank, g + 1));
  WordBuilder b(rank);
  b.push_run(2, -k);
  b.push_run(1, 1);
  images.push_back(b.take());
  return Automorphism(rank, std::move(images));
}

Automorphism reverse_inverse(int rank, long long k) {
  check_family_params(rank, k);
  std::vector<Word> images;
  WordBuilder b(rank);
  b.push_run(rank - 2, k);
  b.push_run(rank, 1);
  images.push_back(b.take());
  for (int g = 2; g <= rank; ++g) images.push_back(Word::generator(rank, g - 1));
  return Automorphism(rank, std::move(images));
}

}  // namespace outer_rates
