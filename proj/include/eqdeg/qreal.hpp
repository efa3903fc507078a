#pragma once

#include <optional>
#include <string>

#include "eqdeg/rational.hpp"

namespace eqdeg {

// Value a + b*sqrt(d) in a real quadratic field, d in {1,2,3,5}; d == 1
// means plain rational (b == 0). Carrier for the exact spectral path where
// delay cosines are quadratic rationals.
struct QReal {
  Rational a;
  Rational b;
  int d = 1;

  QReal() = default;
  QReal(Rational r) : a(r), b(0), d(1) {}  // NOLINT: implicit by design
  QReal(Rational a_, Rational b_, int d_);

  bool is_rational() const { return b.is_zero(); }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  int sign() const;

  QReal operator-() const;
  // Throws Error when the two operands live in different quadratic fields;
  // callers that mix fields must fall back to floating point.
  QReal operator+(const QReal& o) const;
  QReal operator-(const QReal& o) const;
  QReal operator*(const QReal& o) const;

  bool operator==(const QReal& o) const;
  bool operator!=(const QReal& o) const { return !(*this == o); }

  QReal abs() const { return sign() < 0 ? -*this : *this; }
  double to_double() const;
  std::string to_string() const;  // e.g. "15/4 + 3/4*sqrt(5)"
};

// cos(2*pi*t) for rational t, exact whenever the value lies in some
// Q(sqrt(d)): reduced denominator of t in {1,2,3,4,5,6,8,10,12}.
std::optional<QReal> exact_cos_turn(const Rational& t);

// A real scalar that remembers an exact value when one is available.
// Arithmetic keeps exactness only when both operands are exact and live in
// a common quadratic field; the double mirror is always maintained.
struct Scalar {
  std::optional<QReal> exact;
  double approx = 0.0;

  Scalar() = default;
  explicit Scalar(double v) : approx(v) {}
  Scalar(const QReal& q) : exact(q), approx(q.to_double()) {}  // NOLINT
  Scalar(const Rational& r) : exact(QReal(r)), approx(r.to_double()) {}  // NOLINT

  bool is_exact() const { return exact.has_value(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }

  Scalar abs() const;
  // Exact equality when both sides are exact, |difference| <= tol otherwise.
  bool same_value(const Scalar& o, double tol) const;
  std::string to_string() const;
};

}  // namespace eqdeg
