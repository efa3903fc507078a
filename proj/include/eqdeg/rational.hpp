#pragma once

#include <string>

namespace eqdeg {

// Exact rational over int64 with overflow-checked arithmetic (throws
// OverflowError; magnitudes in this library are bounded well below the
// limit, so a throw indicates a logic bug upstream).
struct Rational {
  long long num = 0;
  long long den = 1;  // always > 0, gcd(|num|, den) == 1

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d);

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  int sign() const { return num < 0 ? -1 : (num > 0 ? 1 : 0); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  Rational abs() const { return num < 0 ? -*this : *this; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  // Parses "p", "-p", "p/q", "-p/q", and plain decimals like "1.25".
  static Rational parse(const std::string& s);
};

}  // namespace eqdeg
