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

#include "nucleo/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace nucleo {

namespace {

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a rational number: \"" + std::string(text) + "\"");
}

}  // namespace

Rational::Rational(long long value) {
  // mpz has no long long constructor on every platform.
  value_ = mpq_class(mpz_class(std::to_string(value), 10));
}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  BigInt num;
  BigInt den = 1;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash);
    auto q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) bad_number(text);
    num = BigInt(std::string(p), 10);
    den = BigInt(std::string(q), 10);
    if (den == 0) throw std::domain_error("rational with zero denominator: \"" + std::string(text) + "\"");
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_number(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      bad_number(text);
    }
    num = BigInt(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  } else {
    if (!all_digits(body)) bad_number(text);
    num = BigInt(std::string(body), 10);
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int places) const {
  if (places < 0) places = 0;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  BigInt num = value_.get_num();
  const BigInt& den = value_.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  // round half away from zero: floor((2*num*scale + den) / (2*den))
  BigInt scaled = (2 * num * scale + den) / (2 * den);
  std::string digits = scaled.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (negative && scaled != 0) digits.insert(0, "-");
  return digits;
}

Rational Rational::operator-() const {
  Rational out;
  out.value_ = -value_;
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational make_rational(const BigInt& numerator, const BigInt& denominator) {
  return Rational(numerator, denominator);
}

std::strong_ordering rational_compare(const Rational& a, const Rational& b) { return a <=> b; }

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace nucleo
