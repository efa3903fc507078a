#include "eqdeg/qreal.hpp"

#include <cmath>

#include "eqdeg/errors.hpp"

namespace eqdeg {

QReal::QReal(Rational a_, Rational b_, int d_) : a(a_), b(b_), d(d_) {
  if (b.is_zero()) d = 1;
  if (d == 1 && !b.is_zero()) throw Error("QReal: sqrt(1) coefficient must be folded");
}

int QReal::sign() const {
  if (b.is_zero()) return a.sign();
  if (a.is_zero()) return b.sign();
  if (a.sign() == b.sign()) return a.sign();
  // a and b of opposite signs: compare a^2 against b^2*d.
  Rational a2 = a * a;
  Rational b2d = b * b * Rational(d);
  if (a2 == b2d) return 0;
  return b2d < a2 ? a.sign() : b.sign();
}

QReal QReal::operator-() const {
  QReal r = *this;
  r.a = -r.a;
  r.b = -r.b;
  return r;
}

namespace {
int merge_field(const QReal& x, const QReal& y) {
  if (x.d == y.d) return x.d;
  if (x.d == 1) return y.d;
  if (y.d == 1) return x.d;
  throw Error("QReal: mixed quadratic fields sqrt(" + std::to_string(x.d) +
              ") and sqrt(" + std::to_string(y.d) + ")");
}
}  // namespace

QReal QReal::operator+(const QReal& o) const {
  int dd = merge_field(*this, o);
  QReal r;
  r.a = a + o.a;
  r.b = b + o.b;
  r.d = r.b.is_zero() ? 1 : dd;
  return r;
}

QReal QReal::operator-(const QReal& o) const { return *this + (-o); }

QReal QReal::operator*(const QReal& o) const {
  int dd = merge_field(*this, o);
  QReal r;
  r.a = a * o.a + b * o.b * Rational(dd);
  r.b = a * o.b + b * o.a;
  r.d = r.b.is_zero() ? 1 : dd;
  return r;
}

bool QReal::operator==(const QReal& o) const {
  if (a != o.a || b != o.b) return false;
  return b.is_zero() || d == o.d;
}

double QReal::to_double() const {
  return a.to_double() + b.to_double() * std::sqrt(static_cast<double>(d));
}

std::string QReal::to_string() const {
  if (b.is_zero()) return a.to_string();
  std::string root = "sqrt(" + std::to_string(d) + ")";
  std::string bs = b.abs() == Rational(1) ? root : b.abs().to_string() + "*" + root;
  if (a.is_zero()) return (b.sign() < 0 ? "-" : "") + bs;
  return a.to_string() + (b.sign() < 0 ? " - " : " + ") + bs;
}

std::optional<QReal> exact_cos_turn(const Rational& t) {
  // Reduce t mod 1, keep the representative in [0,1).
  long long q = t.den;
  long long p = ((t.num % q) + q) % q;
  // cos(2*pi*p/q) with gcd(p,q) possibly > 1; renormalize.
  Rational red(p, q);
  p = red.num;
  q = red.den;
  const Rational half(1, 2), quarter(1, 4);
  switch (q) {
    case 1:
      return QReal(Rational(1));
    case 2:
      return QReal(Rational(-1));
    case 3:
      return QReal(-half);
    case 4:
      return QReal(Rational(0));
    case 5:
      // cos(72), cos(144) and mirrors.
      if (p == 1 || p == 4) return QReal(-quarter, quarter, 5);
      return QReal(-quarter, -quarter, 5);
    case 6:
      return QReal(half);
    case 8:
      if (p == 1 || p == 7) return QReal(Rational(0), half, 2);
      return QReal(Rational(0), -half, 2);
    case 10:
      if (p == 1 || p == 9) return QReal(quarter, quarter, 5);
      if (p == 3 || p == 7) return QReal(quarter, -quarter, 5);
      return std::nullopt;  // unreachable: p in {1,3,7,9} after reduction
    case 12:
      if (p == 1 || p == 11) return QReal(Rational(0), half, 3);
      return QReal(Rational(0), -half, 3);
    default:
      return std::nullopt;
  }
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.approx = -approx;
  if (exact) r.exact = -*exact;
  return r;
}

namespace {
Scalar combine(const Scalar& x, const Scalar& y, double ap,
               QReal (QReal::*op)(const QReal&) const) {
  Scalar r;
  r.approx = ap;
  if (x.exact && y.exact) {
    try {
      r.exact = ((*x.exact).*op)(*y.exact);
      r.approx = r.exact->to_double();
    } catch (const Error&) {
      // incompatible fields: float fallback
    }
  }
  return r;
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  return combine(*this, o, approx + o.approx, &QReal::operator+);
}

Scalar Scalar::operator-(const Scalar& o) const {
  return combine(*this, o, approx - o.approx, &QReal::operator-);
}

Scalar Scalar::operator*(const Scalar& o) const {
  return combine(*this, o, approx * o.approx, &QReal::operator*);
}

Scalar Scalar::abs() const {
  Scalar r = *this;
  if (r.exact) {
    r.exact = r.exact->abs();
    r.approx = r.exact->to_double();
  } else {
    r.approx = std::fabs(r.approx);
  }
  return r;
}

bool Scalar::same_value(const Scalar& o, double tol) const {
  if (exact && o.exact) {
    try {
      return (*exact - *o.exact).is_zero();
    } catch (const Error&) {
      // fields differ; values may still agree numerically
    }
  }
  return std::fabs(approx - o.approx) <= tol;
}

std::string Scalar::to_string() const {
  if (exact) return exact->to_string();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", approx);
  return buf;
}

}  // namespace eqdeg
