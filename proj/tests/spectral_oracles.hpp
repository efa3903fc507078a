#pragma once

// Test-only oracles for the spectral formulas: the complex-exponential form
// of xi evaluated independently of the folded cosine implementation, both in
// exact cyclotomic arithmetic and in doubles.

#include <complex>
#include <stdexcept>

#include "eqdeg/cyclo.hpp"
#include "eqdeg/spectral.hpp"

namespace eqdeg::testing {

// Embeds a + b*sqrt(d) into Q(zeta_order) via quadratic Gauss sums:
// sqrt(5) = 1 + 2 z5 + 2 z5^4, sqrt(2) = z8 + z8^7, sqrt(3) = z12 + z12^11.
inline Cyclo qreal_to_cyclo(const QReal& q, int order) {
  Cyclo a = Cyclo::from_rational(order, q.a);
  if (q.b.is_zero()) return a;
  Cyclo root(order);
  switch (q.d) {
    case 5:
      root = Cyclo::from_rational(order, Rational(1)) +
             Cyclo::root(order, order / 5) * Rational(2) +
             Cyclo::root(order, 4 * (order / 5)) * Rational(2);
      break;
    case 2:
      root = Cyclo::root(order, order / 8) + Cyclo::root(order, 7 * (order / 8));
      break;
    case 3:
      root = Cyclo::root(order, order / 12) + Cyclo::root(order, 11 * (order / 12));
      break;
    default:
      throw std::runtime_error("qreal_to_cyclo: unexpected field");
  }
  return a + root * q.b;
}

// 1 + (mu_0 + sum_j mu_j zeta_j^k - 1)/(k^2+1) with zeta_j = e^{-i tau_j},
// in Q(zeta_order); requires exact entries and exact rational-turn delays.
inline Cyclo xi_complex_exact(int l, int k, const MuTable& mu, const DelaySet& delays,
                              int order) {
  Cyclo s = qreal_to_cyclo(*mu.mu[0][l].exact, order);
  for (int j = 1; j <= delays.m; ++j) {
    const Rational& t = *delays.taus[j - 1].turn;
    long long e = -static_cast<long long>(k) * t.num * (order / t.den);
    s += Cyclo::root(order, e) * qreal_to_cyclo(*mu.mu[j][l].exact, order);
  }
  s = s - Cyclo::from_rational(order, Rational(1));
  return Cyclo::from_rational(order, Rational(1)) +
         s * Rational(1, static_cast<long long>(k) * k + 1);
}

inline std::complex<double> xi_complex_double(int l, int k, const MuTable& mu,
                                              const DelaySet& delays) {
  std::complex<double> s(mu.mu[0][l].approx, 0.0);
  for (int j = 1; j <= delays.m; ++j)
    s += mu.mu[j][l].approx *
         std::exp(std::complex<double>(0.0, -double(k) * delays.taus[j - 1].radians));
  s -= 1.0;
  return 1.0 + s / double(k * k + 1);
}

}  // namespace eqdeg::testing
