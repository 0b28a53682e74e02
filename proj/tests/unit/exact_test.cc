// Copyright 2026 The fplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>

#include "fplab/errors.h"
#include "fplab/exact.h"

using fplab::Integer;
using fplab::Ratio;

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

mpz_class Z(std::int64_t v) { return Integer(v).ToMpz(); }

}  // namespace

TEST_CASE("integer promotes on overflow and demotes when it fits again") {
  Integer a = kMax;
  CHECK(a.is_small());
  a += 1;
  CHECK_FALSE(a.is_small());
  CHECK(a.ToString() == "9223372036854775808");
  a -= 1;
  CHECK(a.is_small());
  CHECK(a == Integer(kMax));

  Integer b = kMin;
  b -= 1;
  CHECK_FALSE(b.is_small());
  CHECK(b.ToString() == "-9223372036854775809");
  CHECK(-Integer(kMin) == Integer::FromString("9223372036854775808"));
}

TEST_CASE("two-tier arithmetic agrees with GMP on random operands") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20000; ++k) {
    // Mix small and near-limit magnitudes so both tiers and the boundary
    // between them are exercised.
    const auto draw = [&]() -> std::int64_t {
      switch (rng() % 3) {
        case 0: return static_cast<std::int64_t>(rng() % 2001) - 1000;
        case 1: return static_cast<std::int64_t>(rng() >> 1);
        default: return -static_cast<std::int64_t>(rng() >> 2);
      }
    };
    const std::int64_t x = draw(), y = draw(), w = draw();
    const mpz_class zx = Z(x), zy = Z(y), zw = Z(w);
    CHECK((Integer(x) + Integer(y)).ToMpz() == zx + zy);
    CHECK((Integer(x) - Integer(y)).ToMpz() == zx - zy);
    CHECK((Integer(x) * Integer(y)).ToMpz() == zx * zy);
    Integer acc(w);
    acc.AddProduct(Integer(x), Integer(y));
    CHECK(acc.ToMpz() == zw + zx * zy);
    // The canonical form makes results independent of the path taken.
    const Integer big = Integer(x) * Integer(y) * Integer(w);
    CHECK(big == Integer(mpz_class(zx * zy * zw)));
    CHECK(((Integer(x) <=> Integer(y)) == (x <=> y)));
  }
}

TEST_CASE("ceil and floor division") {
  CHECK(Integer::CeilDiv(5, 1) == Integer(5));
  CHECK(Integer::CeilDiv(5, 2) == Integer(3));
  CHECK(Integer::CeilDiv(6, 2) == Integer(3));
  CHECK(Integer::CeilDiv(-5, 2) == Integer(-2));
  CHECK(Integer::FloorDiv(-5, 2) == Integer(-3));
  CHECK(Integer::FloorDiv(7, 7) == Integer(1));
  const Integer huge = Integer::Pow(10, 40);
  CHECK(Integer::CeilDiv(huge + 1, huge) == Integer(2));
}

TEST_CASE("sqrt, pow and gcd") {
  CHECK(Integer::Sqrt(0) == Integer(0));
  CHECK(Integer::Sqrt(99) == Integer(9));
  CHECK(Integer::Sqrt(100) == Integer(10));
  CHECK(Integer::Pow(16, 4) == Integer(65536));
  CHECK(Integer::Pow(2, 64).ToString() == "18446744073709551616");
  CHECK(Integer::Gcd(84, 36) == Integer(12));
}

TEST_CASE("integer parsing") {
  CHECK(Integer::FromString("-42") == Integer(-42));
  CHECK(Integer::FromString("+7") == Integer(7));
  CHECK_THROWS_AS(Integer::FromString(""), fplab::ParseError);
  CHECK_THROWS_AS(Integer::FromString("1.5"), fplab::ParseError);
  CHECK_THROWS_AS(Integer::FromString("0x10"), fplab::ParseError);
}

TEST_CASE("ratio canonical form and parsing") {
  const Ratio r = Ratio::FromString("6/8");
  CHECK(r.ToString() == "3/4");
  CHECK(r.num() == Integer(3));
  CHECK(r.den() == Integer(4));
  CHECK(Ratio::FromString("-2/4") == Ratio(Integer(-1), Integer(2)));
  CHECK(Ratio::FromString("5").ToString() == "5");
  CHECK(Ratio(Integer(3), Integer(-6)).ToString() == "-1/2");
  CHECK_THROWS_AS(Ratio::FromString("1/0"), fplab::ParseError);
  CHECK_THROWS_AS(Ratio::FromString("1/-2"), fplab::ParseError);
  CHECK_THROWS_AS(Ratio::FromString("a/2"), fplab::ParseError);
  CHECK_THROWS_AS(Ratio(Integer(1), Integer(0)), fplab::DomainError);
  CHECK_THROWS_AS(Ratio(1) / Ratio(0), fplab::DomainError);
}

TEST_CASE("ratio arithmetic and ordering") {
  const Ratio a(Integer(1), Integer(3));
  const Ratio b(Integer(1), Integer(6));
  CHECK(a + b == Ratio(Integer(1), Integer(2)));
  CHECK(a - b == b);
  CHECK(a * b == Ratio(Integer(1), Integer(18)));
  CHECK(a / b == Ratio(2));
  CHECK(b < a);
  CHECK(-a < b);
}

TEST_CASE("decimal rendering") {
  CHECK(Ratio(Integer(1), Integer(3)).ToDecimal(12) == "0.333333333333");
  CHECK(Ratio(Integer(2), Integer(3)).ToDecimal(4) == "0.6667");
  CHECK(Ratio(1).ToDecimal() == "1");
}
