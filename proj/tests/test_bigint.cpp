#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "outer_rates/bigint.hpp"
#include "support/oracles.hpp"

using outer_rates::BigInt;

TEST_CASE("construction and string round trip") {
  CHECK(BigInt(0).to_string() == "0");
  CHECK(BigInt(-1).to_string() == "-1");
  CHECK(BigInt(1234567890123456789LL).to_string() == "1234567890123456789");
  CHECK(BigInt::from_string("-987654321098765432109876543210").to_string() ==
        "-987654321098765432109876543210");
  CHECK_THROWS(BigInt::from_string("12x"));
}

TEST_CASE("arithmetic agrees with __int128 on random inputs") {
  oracle::SplitMix64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    long long a = static_cast<long long>(rng.next() >> 16) - (1LL << 46);
    long long b = static_cast<long long>(rng.next() >> 16) - (1LL << 46);
    CHECK((BigInt(a) + BigInt(b)).to_int64() == a + b);
    CHECK((BigInt(a) - BigInt(b)).to_int64() == a - b);
    __int128 prod = static_cast<__int128>(a) * b;
    BigInt p = BigInt(a) * BigInt(b);
    CHECK(p == BigInt(a) * BigInt(b));
    // Compare via string against a reference int128 printer.
    __int128 v = prod;
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    if (v == 0) s = "0";
    while (v > 0) {
      s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    if (neg) s.push_back('-');
    CHECK(p.to_string() == std::string(s.rbegin(), s.rend()));
  }
}

TEST_CASE("division by small values") {
  oracle::SplitMix64 rng(7);
  for (int i = 0; i < 500; ++i) {
    long long a = static_cast<long long>(rng.next() >> 1);
    std::uint32_t d = static_cast<std::uint32_t>(rng.below(1000000) + 1);
    std::uint32_t r = 0;
    BigInt q = BigInt(a).div_small(d, &r);
    CHECK(q.to_int64() == a / d);
    CHECK(r == a % d);
    CHECK(BigInt(a).mod_small(d) == a % d);
  }
  // Negative residues are normalized into [0, m).
  CHECK(BigInt(-7).mod_small(5) == 3);
  CHECK(BigInt(-10).mod_small(5) == 0);
}

TEST_CASE("pow and two_pow") {
  CHECK(BigInt(2).pow(64) == BigInt::two_pow(64));
  CHECK(BigInt(3).pow(5).to_int64() == 243);
  CHECK(BigInt(10).pow(30).to_string() == "1" + std::string(30, '0'));
  CHECK(BigInt(-2).pow(3).to_int64() == -8);
}

TEST_CASE("comparisons and to_double") {
  CHECK(BigInt(5) < BigInt(7));
  CHECK(BigInt(-5) > BigInt(-7));
  CHECK(BigInt(1) > BigInt(-1));
  CHECK(BigInt::from_string("100000000000000000000").to_double() ==
        doctest::Approx(1e20));
  CHECK(BigInt(1LL << 62).fits_int64());
  CHECK(!(BigInt(1LL << 62) * BigInt(4)).fits_int64());
}
