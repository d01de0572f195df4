#include "outer_rates/bigint.hpp"

#include <cstdlib>
#include <stdexcept>

namespace outer_rates {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // Avoid UB on LLONG_MIN by widening before negation.
  unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ull
                               : static_cast<unsigned long long>(v);
  while (u != 0) {
    mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
    u >>= 32;
  }
}

BigInt BigInt::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("BigInt: empty string");
  std::size_t i = 0;
  int sign = 1;
  if (s[0] == '-' || s[0] == '+') {
    sign = s[0] == '-' ? -1 : 1;
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
  BigInt r;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("BigInt: bad digit in \"" + s + "\"");
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  if (sign < 0) r = -r;
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const auto& lo = a.size() < b.size() ? a : b;
  const auto& hi = a.size() < b.size() ? b : a;
  std::vector<std::uint32_t> r;
  r.reserve(hi.size() + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    r.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) r.push_back(static_cast<std::uint32_t>(carry));
  return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r;
  r.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                     (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<std::uint32_t>(d));
  }
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  BigInt r;
  if (sign_ == o.sign_) {
    r.sign_ = sign_;
    r.mag_ = add_mag(mag_, o.mag_);
  } else {
    int c = compare_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.sign_ = sign_;
      r.mag_ = sub_mag(mag_, o.mag_);
    } else {
      r.sign_ = o.sign_;
      r.mag_ = sub_mag(o.mag_, mag_);
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.sign_ = sign_ * o.sign_;
  r.mag_.assign(mag_.size() + o.mag_.size(), 0);
  for (std::size_t i = 0; i < mag_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.mag_.size(); ++j) {
      std::uint64_t cur = r.mag_[i + j] +
                          static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] + carry;
      r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + o.mag_.size();
    while (carry) {
      std::uint64_t cur = r.mag_[k] + carry;
      r.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::div_small(std::uint32_t d, std::uint32_t* remainder) const {
  if (d == 0) throw std::invalid_argument("BigInt: division by zero");
  BigInt q;
  q.sign_ = sign_;
  q.mag_.assign(mag_.size(), 0);
  std::uint64_t rem = 0;
  for (std::size_t i = mag_.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | mag_[i];
    q.mag_[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  q.trim();
  if (remainder) *remainder = static_cast<std::uint32_t>(rem);
  return q;
}

std::uint32_t BigInt::mod_small(std::uint32_t m) const {
  std::uint32_t r = 0;
  div_small(m, &r);
  if (sign_ < 0 && r != 0) r = m - r;
  return r;
}

BigInt BigInt::div_exact_small(std::uint32_t d) const {
  std::uint32_t r = 0;
  BigInt q = div_small(d, &r);
  if (r != 0) throw std::logic_error("BigInt: division expected to be exact");
  return q;
}

BigInt BigInt::pow(unsigned e) const {
  BigInt base = *this, r(1);
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

BigInt BigInt::two_pow(unsigned e) {
  BigInt r;
  r.sign_ = 1;
  r.mag_.assign(e / 32 + 1, 0);
  r.mag_.back() = 1u << (e % 32);
  return r;
}

int BigInt::compare(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
  int c = compare_mag(mag_, o.mag_);
  return sign_ >= 0 ? c : -c;
}

bool BigInt::fits_int64() const {
  if (mag_.size() > 2) return false;
  if (mag_.size() < 2) return true;
  std::uint64_t u = (static_cast<std::uint64_t>(mag_[1]) << 32) | mag_[0];
  return sign_ > 0 ? u <= 0x7fffffffffffffffull : u <= 0x8000000000000000ull;
}

long long BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("BigInt: does not fit in int64");
  std::uint64_t u = 0;
  for (std::size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
  if (sign_ < 0) return static_cast<long long>(~u + 1ull);
  return static_cast<long long>(u);
}

double BigInt::to_double() const {
  double r = 0;
  for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
  return sign_ < 0 ? -r : r;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::string digits;
  BigInt t = abs();
  while (!t.is_zero()) {
    std::uint32_t r = 0;
    t = t.div_small(1000000000u, &r);
    for (int i = 0; i < 9; ++i) {
      digits.push_back(static_cast<char>('0' + r % 10));
      r /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

}  // namespace outer_rates
