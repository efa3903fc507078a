#pragma once

#include <string>
#include <vector>

#include "eqdeg/rational.hpp"

namespace eqdeg {

// Exact cyclotomic number: element of Q(zeta_N) stored as a polynomial in
// zeta_N reduced modulo the N-th cyclotomic polynomial. Reduction gives a
// canonical form, so equality is coefficient-vector equality. Character
// values (sums of roots of unity) live here.
class Cyclo {
 public:
  explicit Cyclo(int order = 1);
  static Cyclo root(int order, long long exponent);  // zeta_order^exponent
  static Cyclo from_rational(int order, const Rational& r);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational as_rational() const;      // throws Error when not rational
  long long as_integer() const;      // throws NonIntegerDimension when not integral

  Cyclo conjugate() const;           // zeta -> zeta^-1

  Cyclo operator-() const;
  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator*(const Rational& r) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }

  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // Re-express in Q(zeta_M); M must be a multiple of order().
  Cyclo lifted(int M) const;

  double approx_real() const;
  double approx_imag() const;
  std::string to_string() const;  // "c0 + c1*E(N)^1 + ..."

  // Parses the same textual form ("2", "-1/2 + E(5)^1", "E(3)^2 - E(3)").
  static Cyclo parse(int order, const std::string& text);

 private:
  int order_;
  std::vector<Rational> c_;  // size order_, zero beyond deg(Phi_order)-1 after reduce

  void reduce();
  const Cyclo& check_order(const Cyclo& o) const;
};

// n-th cyclotomic polynomial, integer coefficients, ascending degree (cached).
const std::vector<long long>& cyclotomic_poly(int n);

}  // namespace eqdeg
