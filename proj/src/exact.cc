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

#include "fplab/exact.h"

#include <gmp.h>

#include <cctype>
#include <limits>
#include <vector>

#include "fplab/errors.h"

namespace fplab {
namespace {

// mpz_class has no int64 constructor on every platform (long may be 32 bits),
// so go through mpz_import on the magnitude.
mpz_class MpzFromInt64(std::int64_t v) {
  mpz_class out;
  if constexpr (sizeof(long) == sizeof(std::int64_t)) {
    out = static_cast<long>(v);
  } else {
    std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1
                              : static_cast<std::uint64_t>(v);
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
    if (v < 0) out = -out;
  }
  return out;
}

bool FitsInt64(const mpz_class& v) {
  if constexpr (sizeof(long) == sizeof(std::int64_t)) {
    return mpz_fits_slong_p(v.get_mpz_t()) != 0;
  } else {
    static const mpz_class kMin = MpzFromInt64(
        std::numeric_limits<std::int64_t>::min());
    static const mpz_class kMax = MpzFromInt64(
        std::numeric_limits<std::int64_t>::max());
    return v >= kMin && v <= kMax;
  }
}

std::int64_t MpzToInt64(const mpz_class& v) {
  if constexpr (sizeof(long) == sizeof(std::int64_t)) {
    return static_cast<std::int64_t>(v.get_si());
  } else {
    std::uint64_t mag = 0;
    mpz_export(&mag, nullptr, 1, sizeof(mag), 0, 0, v.get_mpz_t());
    return sgn(v) < 0 ? static_cast<std::int64_t>(~mag + 1)
                      : static_cast<std::int64_t>(mag);
  }
}

bool IsDecimalInteger(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Integer::Integer(const mpz_class& v) : rep_(v) { Normalize(); }

void Integer::Normalize() {
  if (auto* big = std::get_if<mpz_class>(&rep_); big && FitsInt64(*big)) {
    rep_ = MpzToInt64(*big);
  }
}

Integer Integer::FromString(std::string_view text) {
  if (!IsDecimalInteger(text)) {
    throw ParseError("malformed integer: '" + std::string(text) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(mpz_class(digits, 10));
}

std::optional<std::int64_t> Integer::ToInt64() const {
  if (const auto* v = std::get_if<std::int64_t>(&rep_)) return *v;
  return std::nullopt;
}

mpz_class Integer::ToMpz() const {
  if (const auto* v = std::get_if<std::int64_t>(&rep_)) return MpzFromInt64(*v);
  return std::get<mpz_class>(rep_);
}

std::string Integer::ToString() const {
  if (const auto* v = std::get_if<std::int64_t>(&rep_)) {
    return std::to_string(*v);
  }
  return std::get<mpz_class>(rep_).get_str(10);
}

double Integer::ToDouble() const {
  if (const auto* v = std::get_if<std::int64_t>(&rep_)) {
    return static_cast<double>(*v);
  }
  return std::get<mpz_class>(rep_).get_d();
}

int Integer::sign() const {
  if (const auto* v = std::get_if<std::int64_t>(&rep_)) {
    return (*v > 0) - (*v < 0);
  }
  return sgn(std::get<mpz_class>(rep_));
}

Integer& Integer::operator+=(const Integer& o) {
  auto* a = std::get_if<std::int64_t>(&rep_);
  const auto* b = std::get_if<std::int64_t>(&o.rep_);
  if (a && b) {
    std::int64_t r;
    if (!__builtin_add_overflow(*a, *b, &r)) {
      *a = r;
      return *this;
    }
  }
  rep_ = mpz_class(ToMpz() + o.ToMpz());
  Normalize();
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  auto* a = std::get_if<std::int64_t>(&rep_);
  const auto* b = std::get_if<std::int64_t>(&o.rep_);
  if (a && b) {
    std::int64_t r;
    if (!__builtin_sub_overflow(*a, *b, &r)) {
      *a = r;
      return *this;
    }
  }
  rep_ = mpz_class(ToMpz() - o.ToMpz());
  Normalize();
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  auto* a = std::get_if<std::int64_t>(&rep_);
  const auto* b = std::get_if<std::int64_t>(&o.rep_);
  if (a && b) {
    std::int64_t r;
    if (!__builtin_mul_overflow(*a, *b, &r)) {
      *a = r;
      return *this;
    }
  }
  rep_ = mpz_class(ToMpz() * o.ToMpz());
  Normalize();
  return *this;
}

Integer& Integer::AddProduct(const Integer& x, const Integer& y) {
  auto* a = std::get_if<std::int64_t>(&rep_);
  const auto* u = std::get_if<std::int64_t>(&x.rep_);
  const auto* v = std::get_if<std::int64_t>(&y.rep_);
  if (a && u && v) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(*u, *v, &p) &&
        !__builtin_add_overflow(*a, p, &r)) {
      *a = r;
      return *this;
    }
  }
  rep_ = mpz_class(ToMpz() + x.ToMpz() * y.ToMpz());
  Normalize();
  return *this;
}

Integer& Integer::operator++() {
  if (auto* a = std::get_if<std::int64_t>(&rep_);
      a && *a != std::numeric_limits<std::int64_t>::max()) {
    ++*a;
    return *this;
  }
  return *this += Integer(1);
}

Integer Integer::operator-() const {
  Integer out;
  return out -= *this;
}

bool operator==(const Integer& a, const Integer& b) {
  // Canonical representation: a small and a big value are never equal.
  const auto* x = std::get_if<std::int64_t>(&a.rep_);
  const auto* y = std::get_if<std::int64_t>(&b.rep_);
  if (x && y) return *x == *y;
  if (x || y) return false;
  return std::get<mpz_class>(a.rep_) == std::get<mpz_class>(b.rep_);
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  const auto* x = std::get_if<std::int64_t>(&a.rep_);
  const auto* y = std::get_if<std::int64_t>(&b.rep_);
  if (x && y) return *x <=> *y;
  int c = cmp(a.ToMpz(), b.ToMpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

Integer Integer::CeilDiv(const Integer& a, const Integer& b) {
  if (b.sign() <= 0) throw DomainError("CeilDiv requires a positive divisor");
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.ToMpz().get_mpz_t(), b.ToMpz().get_mpz_t());
  return Integer(q);
}

Integer Integer::FloorDiv(const Integer& a, const Integer& b) {
  if (b.sign() <= 0) throw DomainError("FloorDiv requires a positive divisor");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.ToMpz().get_mpz_t(), b.ToMpz().get_mpz_t());
  return Integer(q);
}

Integer Integer::Sqrt(const Integer& a) {
  if (a.sign() < 0) throw DomainError("Sqrt of a negative integer");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), a.ToMpz().get_mpz_t());
  return Integer(r);
}

Integer Integer::Pow(const Integer& base, unsigned long exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.ToMpz().get_mpz_t(), exponent);
  return Integer(r);
}

Integer Integer::Gcd(const Integer& a, const Integer& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.ToMpz().get_mpz_t(), b.ToMpz().get_mpz_t());
  return Integer(r);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) {
  return os << v.ToString();
}

// ---------------------------------------------------------------------------
// Ratio

Ratio::Ratio(const Integer& v) : q_(v.ToMpz()) {}

Ratio::Ratio(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num.ToMpz(), den.ToMpz());
  q_.canonicalize();
}

Ratio::Ratio(const mpq_class& q) : q_(q) {
  if (sgn(q_.get_den()) == 0) {
    throw DomainError("rational with zero denominator");
  }
  q_.canonicalize();
}

Ratio Ratio::FromString(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Ratio(Integer::FromString(text));
    Integer num = Integer::FromString(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
      throw ParseError("");
    }
    Integer den = Integer::FromString(den_text);
    if (den.is_zero()) throw ParseError("");
    return Ratio(num, den);
  } catch (const ParseError&) {
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  }
}

Integer Ratio::num() const { return Integer(mpz_class(q_.get_num())); }
Integer Ratio::den() const { return Integer(mpz_class(q_.get_den())); }

std::string Ratio::ToString() const {
  if (q_.get_den() == 1) return q_.get_num().get_str(10);
  return q_.get_str(10);
}

std::string Ratio::ToDecimal(int significant_digits) const {
  // 512 bits keeps the rounding of the printed digits exact for any value the
  // reports produce.
  mpf_class f(q_, 512);
  const int n = gmp_snprintf(nullptr, 0, "%.*Fg", significant_digits,
                             f.get_mpf_t());
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits,
               f.get_mpf_t());
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

Ratio& Ratio::operator+=(const Ratio& o) {
  q_ += o.q_;
  return *this;
}
Ratio& Ratio::operator-=(const Ratio& o) {
  q_ -= o.q_;
  return *this;
}
Ratio& Ratio::operator*=(const Ratio& o) {
  q_ *= o.q_;
  return *this;
}
Ratio& Ratio::operator/=(const Ratio& o) {
  if (sgn(o.q_) == 0) throw DomainError("division by zero rational");
  q_ /= o.q_;
  return *this;
}

Ratio Ratio::operator-() const { return Ratio(mpq_class(-q_)); }

bool operator==(const Ratio& a, const Ratio& b) { return a.q_ == b.q_; }

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  int c = cmp(a.q_, b.q_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Ratio& v) {
  return os << v.ToString();
}

}  // namespace fplab
