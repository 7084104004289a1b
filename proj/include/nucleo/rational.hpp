// Copyright 2026 The Nucleo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NUCLEO_RATIONAL_HPP
#define NUCLEO_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nucleo {

using BigInt = mpz_class;

/// Exact fraction in lowest terms with a positive denominator.
///
/// Every arithmetic result is canonical, so two equal values always have
/// identical numerator/denominator pairs and print identically.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value);               // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value) : value_(value) {}

  /// Throws std::domain_error when `denominator` is zero.
  Rational(const BigInt& numerator, const BigInt& denominator);

  /// Accepts "p/q", "-p/q", integers and plain decimals such as "0.2" or
  /// "-1.25" (parsed exactly). Throws std::invalid_argument otherwise.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// Canonical "p/q"; integers print without "/1".
  std::string str() const;

  /// Rounded (half away from zero) fixed-point rendering for display only.
  std::string to_decimal(int places) const;

  double to_double() const { return value_.get_d(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_;
};

Rational make_rational(const BigInt& numerator, const BigInt& denominator);

std::strong_ordering rational_compare(const Rational& a, const Rational& b);

Rational abs(const Rational& value);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace nucleo

#endif  // NUCLEO_RATIONAL_HPP
