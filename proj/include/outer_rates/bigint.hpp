#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace outer_rates {

// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs
// (least significant first).  Sized for exact polynomial work: degrees
// stay below ~30 and magnitudes below a few hundred decimal digits, so
// schoolbook multiplication is plenty.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design, mirrors int literals

  static BigInt from_string(const std::string& s);

  bool is_zero() const { return mag_.empty(); }
  int sign() const { return sign_; }
  bool is_negative() const { return sign_ < 0; }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Quotient truncated toward zero; remainder has the dividend's sign.
  BigInt div_small(std::uint32_t d, std::uint32_t* remainder = nullptr) const;
  // Nonnegative residue in [0, m).
  std::uint32_t mod_small(std::uint32_t m) const;
  // Exact division by a small positive divisor; aborts if not exact.
  BigInt div_exact_small(std::uint32_t d) const;

  BigInt pow(unsigned e) const;
  static BigInt two_pow(unsigned e);

  int compare(const BigInt& o) const;  // -1, 0, +1
  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator!=(const BigInt& o) const { return compare(o) != 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }
  bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
  bool operator>(const BigInt& o) const { return compare(o) > 0; }
  bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

  bool fits_int64() const;
  long long to_int64() const;  // throws std::overflow_error if too large
  double to_double() const;

  std::string to_string() const;

 private:
  int sign_ = 0;                    // 0 iff mag_ empty
  std::vector<std::uint32_t> mag_;  // no trailing zero limbs

  void trim();
  static int compare_mag(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
};

}  // namespace outer_rates
