#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "outer_rates/bigint.hpp"

namespace outer_rates {

// Exact integer-coefficient polynomial, coefficients ascending by degree,
// trailing coefficient nonzero.  The zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  static IntPolynomial from_coeffs(std::vector<long long> coeffs);
  static IntPolynomial monomial(int degree, BigInt coeff = BigInt(1));

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigInt& coeff(int i) const;
  const std::vector<BigInt>& coeffs() const { return c_; }

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  IntPolynomial derivative() const;
  BigInt eval(const BigInt& x) const;
  double eval_double(double x) const;
  // Sign of f(num/den) for den > 0, evaluated exactly.
  int sign_at_rational(const BigInt& num, const BigInt& den) const;

  std::vector<double> coeffs_double() const;

  std::string to_string() const;  // e.g. "x^3 - 10*x^2 - 1"
  static IntPolynomial parse(const std::string& text);

 private:
  std::vector<BigInt> c_;
  void normalize();
};

enum class PolyKind { P, Q };

// x^N - k x^{N-1} - 1 (P) or x^N - k x^{N-2} - 1 (Q).
IntPolynomial poly_family(int N, long long k, PolyKind which);

using IntMatrix = std::vector<std::vector<long long>>;

// Monic characteristic polynomial, computed exactly (Faddeev-LeVerrier,
// all intermediate divisions are exact for integer matrices).
IntPolynomial char_poly(const IntMatrix& m);

// Dense polynomial over F_p, p a small prime.
class FpPoly {
 public:
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);
  static FpPoly reduce(const IntPolynomial& f, std::uint32_t p);
  static FpPoly x(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  FpPoly monic() const;
  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly mod(const FpPoly& m) const;
  static FpPoly gcd(FpPoly a, FpPoly b);
  // this^e mod m, e a machine integer (square-and-multiply).
  FpPoly pow_mod(unsigned long long e, const FpPoly& m) const;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> c_;
  void normalize();
};

bool is_small_prime(std::uint32_t p);

// Distinct-degree irreducibility over F_p: f of degree n is irreducible iff
// x^{p^n} == x (mod f) and gcd(x^{p^{n/t}} - x, f) = 1 for every prime t | n.
// Frobenius powers are taken by iterating u -> u^p mod f.
bool mod_p_irreducible(const IntPolynomial& f, std::uint32_t p);

struct RationalRoot {
  long long num;
  long long den;  // > 0, gcd(|num|, den) = 1
  bool operator==(const RationalRoot&) const = default;
};

// All rational roots by divisor enumeration of the constant and leading
// coefficients.  For degree <= 3 an empty list certifies irreducibility
// over the rationals.
std::vector<RationalRoot> rational_root_test(const IntPolynomial& f);

enum class Verdict { IRREDUCIBLE, REDUCIBLE, UNKNOWN };
enum class CertMethod {
  MOD_P,
  RATIONAL_ROOT_DEGREE_LE_3,
  UNIT_DISK_ARGUMENT,
  EVEN_SYMMETRY_ARGUMENT,
};

std::string to_string(Verdict v);
std::string to_string(CertMethod m);

struct IrreducibilityCertificate {
  Verdict verdict = Verdict::UNKNOWN;
  CertMethod method = CertMethod::MOD_P;
  std::optional<std::uint32_t> prime;
  std::optional<std::uint32_t> residue;
  std::optional<IntPolynomial> factor;  // always present when REDUCIBLE
  std::string note;                     // recorded hypotheses / witness
};

IrreducibilityCertificate certify_irreducible(int N, long long k, PolyKind which,
                                              std::uint32_t p_max = 50);

// Degree <= 3 is decided completely by the rational-root test; a REDUCIBLE
// verdict carries an exactly dividing linear factor.
IrreducibilityCertificate certify_by_rational_roots(const IntPolynomial& f);

struct AuditRow {
  int N = 0;
  // Bundled reference certificate (p, k') for this N, when one is listed.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> reference;
  bool reference_valid = false;
  // Smallest valid (p, k'), lexicographic, or nullopt if none <= p_max.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> recomputed;
  std::string status;  // CONFIRMED | DISCREPANT | UNLISTED
};

// Reference certificates shipped with the library (N -> (p, k')).
const std::vector<std::pair<int, std::pair<std::uint32_t, std::uint32_t>>>&
reference_certificate_table();

// Re-derives the smallest modular certificate for each odd N and checks the
// shipped reference entries against it.
std::vector<AuditRow> audit_certificate_table(const std::vector<int>& Ns,
                                              std::uint32_t p_max = 50);

}  // namespace outer_rates
