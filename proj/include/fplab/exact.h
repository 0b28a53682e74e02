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

// Exact integers and rationals.
//
// Integer keeps values that fit in int64 inline and promotes to a GMP integer
// on overflow. The representation is canonical: a value is stored as mpz only
// when it does not fit in int64, so equality and hashing never depend on the
// history of operations that produced a value.

#ifndef FPLAB_EXACT_H_
#define FPLAB_EXACT_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

namespace fplab {

class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : rep_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : rep_(static_cast<std::int64_t>(v)) {}  // NOLINT
  explicit Integer(const mpz_class& v);

  // Accepts an optional sign followed by decimal digits. Throws ParseError.
  static Integer FromString(std::string_view text);

  bool is_small() const { return std::holds_alternative<std::int64_t>(rep_); }
  std::optional<std::int64_t> ToInt64() const;
  mpz_class ToMpz() const;
  std::string ToString() const;
  // Value as double, for reporting only.
  double ToDouble() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);
  // *this += a * b without a temporary in the common small case.
  Integer& AddProduct(const Integer& a, const Integer& b);
  // Pre-increment; the hot loop counter.
  Integer& operator++();

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  Integer operator-() const;

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  // ceil(a / b) for b > 0.
  static Integer CeilDiv(const Integer& a, const Integer& b);
  // floor(a / b) for b > 0.
  static Integer FloorDiv(const Integer& a, const Integer& b);
  // floor(sqrt(a)) for a >= 0.
  static Integer Sqrt(const Integer& a);
  static Integer Pow(const Integer& base, unsigned long exponent);
  static Integer Gcd(const Integer& a, const Integer& b);

 private:
  void Normalize();

  std::variant<std::int64_t, mpz_class> rep_{std::int64_t{0}};
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

// A rational in lowest terms with positive denominator.
class Ratio {
 public:
  Ratio() = default;
  Ratio(const Integer& v);  // NOLINT(google-explicit-constructor)
  Ratio(std::int64_t v) : Ratio(Integer(v)) {}  // NOLINT
  Ratio(int v) : Ratio(Integer(v)) {}  // NOLINT
  // Throws DomainError on a zero denominator.
  Ratio(const Integer& num, const Integer& den);
  explicit Ratio(const mpq_class& q);

  // "p/q", "p", or "-p/q". Throws ParseError with the offending token.
  static Ratio FromString(std::string_view text);

  Integer num() const;
  Integer den() const;
  const mpq_class& mpq() const { return q_; }
  int sign() const { return sgn(q_); }

  // "p/q", or "p" when the denominator is 1.
  std::string ToString() const;
  // Rounded decimal with the given number of significant digits (%g style).
  std::string ToDecimal(int significant_digits = 12) const;
  double ToDouble() const { return q_.get_d(); }

  Ratio& operator+=(const Ratio& o);
  Ratio& operator-=(const Ratio& o);
  Ratio& operator*=(const Ratio& o);
  // Throws DomainError on division by zero.
  Ratio& operator/=(const Ratio& o);
  friend Ratio operator+(Ratio a, const Ratio& b) { return a += b; }
  friend Ratio operator-(Ratio a, const Ratio& b) { return a -= b; }
  friend Ratio operator*(Ratio a, const Ratio& b) { return a *= b; }
  friend Ratio operator/(Ratio a, const Ratio& b) { return a /= b; }
  Ratio operator-() const;

  friend bool operator==(const Ratio& a, const Ratio& b);
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Ratio& v);

}  // namespace fplab

#endif  // FPLAB_EXACT_H_
