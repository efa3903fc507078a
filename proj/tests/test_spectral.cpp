#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "eqdeg/cyclo.hpp"
#include "eqdeg/errors.hpp"
#include "eqdeg/spectral.hpp"
#include "spectral_oracles.hpp"

using namespace eqdeg;
using eqdeg::testing::qreal_to_cyclo;
using eqdeg::testing::xi_complex_double;
using eqdeg::testing::xi_complex_exact;

namespace {

MuTable paper_mu() {
  return circulant_mu({{Rational(-1), Rational(-2)},
                       {Rational(-2), Rational(-4)},
                       {Rational(-3), Rational(-5)},
                       {Rational(-3), Rational(-5)},
                       {Rational(-2), Rational(-4)}},
                      3);
}

DelaySet fifths() {
  std::vector<Delay> taus;
  for (int j = 1; j <= 4; ++j) taus.push_back(Delay::from_turn(Rational(j, 5)));
  return validate_delays(taus);
}

}  // namespace

TEST_CASE("delay parsing and validation") {
  DelaySet d = fifths();
  CHECK(d.m == 4);
  CHECK(d.epsilon_m == 0);
  CHECK(*d.taus[2].turn == Rational(3, 5));
  DelaySet half = validate_delays({Delay::parse("pi")});
  CHECK(half.m == 1);
  CHECK(half.epsilon_m == 1);
  CHECK(*half.taus[0].turn == Rational(1, 2));
  CHECK_THROWS_AS(validate_delays({Delay::parse("pi/2")}), DelaySymmetryViolation);
  CHECK_THROWS_AS(validate_delays({Delay::parse("2*pi*7/5")}), DelayRangeViolation);
  CHECK(Delay::parse("2*pi*2/5").turn == Rational(2, 5));
  CHECK(Delay::parse("2*pi/5").turn == Rational(1, 5));
  CHECK(Delay::parse("pi*1/3").turn == Rational(1, 6));
  CHECK(!Delay::parse("1.25").turn.has_value());
  CHECK(Delay::parse("1.25").radians == 1.25);
  // float delays validate within tolerance
  DelaySet fd = validate_delays(
      {Delay::from_radians(1.0), Delay::from_radians(2.0 * M_PI - 1.0)}, 1e-9);
  CHECK(fd.m == 2);
  CHECK_THROWS_AS(validate_delays(
                      {Delay::from_radians(1.0), Delay::from_radians(2.0 * M_PI - 1.1)}),
                  DelaySymmetryViolation);
}

TEST_CASE("circulant mu tables: exact values of the worked example") {
  MuTable t = paper_mu();
  CHECK(t.m == 4);
  CHECK(t.cols == 2);
  long long col0[] = {-5, -10, -13, -13, -10};
  long long col1[] = {1, 2, 2, 2, 2};
  for (int j = 0; j <= 4; ++j) {
    REQUIRE(t.mu[j][0].is_exact());
    REQUIRE(t.mu[j][1].is_exact());
    CHECK(t.mu[j][0].exact->a == Rational(col0[j]));
    CHECK(t.mu[j][1].exact->a == Rational(col1[j]));
  }
  // diagonal family: b = 0 gives constant columns
  MuTable diag = circulant_mu({{Rational(7), Rational(0)}}, 5);
  for (int l = 0; l < diag.cols; ++l) CHECK(diag.mu[0][l].exact->a == Rational(7));
  // n = 5 produces exact sqrt(5) values
  MuTable five = circulant_mu({{Rational(0), Rational(1)}}, 5);
  CHECK(five.mu[0][1].is_exact());
  CHECK(five.mu[0][1].exact->d == 5);
  CHECK_THROWS_AS(circulant_mu({{Rational(1), Rational(1)}}, 4), EvenN);
  CHECK_THROWS_AS(circulant_mu({{Rational(1), Rational(1)}}, 1), EvenN);
}

TEST_CASE("xi on the worked example (exact path)") {
  MuTable mu = paper_mu();
  DelaySet d = fifths();
  // k = 0: 1 + (mu_0 + 2 mu_1 + 2 mu_2 - 1) = -51 for l = 0
  Scalar x00 = xi(0, 0, mu, d);
  REQUIRE(x00.is_exact());
  CHECK(*x00.exact == QReal(Rational(-51)));
  // l = 0, k = 1: 15/4 + 3/4 sqrt(5)
  Scalar x01 = xi(0, 1, mu, d);
  REQUIRE(x01.is_exact());
  CHECK(*x01.exact == QReal(Rational(15, 4), Rational(3, 4), 5));
  // l = 0, k = 5: exactly -1
  CHECK(*xi(0, 5, mu, d).exact == QReal(Rational(-1)));
  // l = 1, k = 1: exactly 0 (degenerate linearization of the printed data)
  CHECK(xi(1, 1, mu, d).exact->is_zero());
  CHECK(*xi(1, 2, mu, d).exact == QReal(Rational(3, 5)));
  CHECK(*xi(1, 3, mu, d).exact == QReal(Rational(4, 5)));
  // all mu = 0 gives xi = 1 - 1/(k^2+1)
  MuTable zero;
  zero.m = 0;
  zero.cols = 1;
  zero.mu = {{Scalar(Rational(0))}};
  DelaySet nodelays = validate_delays({});
  CHECK(*xi(0, 1, zero, nodelays).exact == QReal(Rational(1, 2)));
}

TEST_CASE("exact complex-form oracle agrees with the cosine form exactly") {
  MuTable mu = paper_mu();
  DelaySet d = fifths();
  const int order = 5;
  for (int l = 0; l < 2; ++l) {
    for (int k = 0; k <= 10; ++k) {
      Cyclo oracle = xi_complex_exact(l, k, mu, d, order);
      // imaginary part vanishes exactly
      CHECK(oracle.conjugate() == oracle);
      Cyclo cosine = qreal_to_cyclo(*xi(l, k, mu, d).exact, order);
      CHECK(oracle == cosine);
    }
  }
}

TEST_CASE("randomized exact instances: cosine form == complex form, exactly") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long long> num(-8, 8);
  // delays at fifths (m=4) with exact rational mus
  DelaySet d = fifths();
  for (int trial = 0; trial < 60; ++trial) {
    MuTable mu;
    mu.m = 4;
    mu.cols = 2;
    mu.mu.resize(5);
    for (int j = 0; j <= 4; ++j)
      for (int l = 0; l < 2; ++l)
        mu.mu[j].push_back(Scalar(Rational(num(rng), 1 + (trial % 3))));
    for (int l = 0; l < 2; ++l) {
      mu.mu[4][l] = mu.mu[1][l];
      mu.mu[3][l] = mu.mu[2][l];
    }
    for (int l = 0; l < 2; ++l)
      for (int k = 0; k <= 6; ++k) {
        Cyclo oracle = xi_complex_exact(l, k, mu, d, 5);
        CHECK(oracle.conjugate() == oracle);
        CHECK(oracle == qreal_to_cyclo(*xi(l, k, mu, d).exact, 5));
      }
  }
}

TEST_CASE("fuzz grid: cosine form vs complex double within 1e-12") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> muval(-10.0, 10.0);
  std::uniform_real_distribution<double> tau(0.05, 0.45);
  int points = 0;
  while (points < 10000) {
    int m = 1 + int(rng() % 4);
    std::vector<Delay> taus;
    std::vector<double> halves;
    for (int j = 0; j < m / 2; ++j) halves.push_back(tau(rng) * M_PI * 2.0 * 0.5);
    std::sort(halves.begin(), halves.end());
    for (double h : halves) taus.push_back(Delay::from_radians(h));
    if (m % 2) taus.push_back(Delay::from_radians(M_PI));
    for (size_t j = halves.size(); j-- > 0;)
      taus.push_back(Delay::from_radians(2.0 * M_PI - halves[j]));
    DelaySet d = validate_delays(taus);
    MuTable mu;
    mu.m = d.m;
    mu.cols = 2;
    mu.mu.assign(d.m + 1, {});
    for (int j = 0; j <= d.m; ++j)
      for (int l = 0; l < 2; ++l) mu.mu[j].push_back(Scalar(muval(rng)));
    for (int l = 0; l < 2; ++l)
      for (int j = 1; j <= d.m / 2; ++j) mu.mu[d.m - j + 1][l] = mu.mu[j][l];
    for (int l = 0; l < 2; ++l)
      for (int k = 0; k <= 6; ++k) {
        std::complex<double> oracle = xi_complex_double(l, k, mu, d);
        CHECK(std::fabs(oracle.imag()) < 1e-12);
        CHECK(std::fabs(oracle.real() - xi(l, k, mu, d).approx) < 1e-12);
        ++points;
      }
  }
}

TEST_CASE("mu pairing violations are rejected") {
  MuTable mu = paper_mu();
  mu.mu[4][0] = Scalar(Rational(-11));  // breaks mu_1 = mu_4
  CHECK_THROWS_AS(validate_mu_pairing(mu), MuPairingViolation);
  DelaySet d = fifths();
  CHECK_THROWS_AS(xi(0, 0, mu, d), MuPairingViolation);
}

TEST_CASE("k cutoff and tail positivity") {
  MuTable mu = paper_mu();
  CHECK(k_cutoff(mu) == 8);  // S_0 = 52 -> floor(sqrt(51)) + 1 = 8
  MuTable zero;
  zero.m = 0;
  zero.cols = 1;
  zero.mu = {{Scalar(Rational(0))}};
  CHECK(k_cutoff(zero) == 1);
  MuTable m8;
  m8.m = 0;
  m8.cols = 1;
  m8.mu = {{Scalar(Rational(-8))}};
  CHECK(k_cutoff(m8) == 3);
  DelaySet nodelays = validate_delays({});
  CHECK(*xi(0, 3, m8, nodelays).exact == QReal(Rational(1, 10)));
  // tail: xi > 0 for k in (k_max, k_max + 10]
  DelaySet d = fifths();
  for (int l = 0; l < 2; ++l)
    for (int k = k_cutoff(mu) + 1; k <= k_cutoff(mu) + 10; ++k)
      CHECK(xi(l, k, mu, d).approx > 0.0);
}

TEST_CASE("isomorphism check: degeneracies are errors, never silent") {
  DelaySet nodelays = validate_delays({});
  MuTable zero;
  zero.m = 0;
  zero.cols = 1;
  zero.mu = {{Scalar(Rational(0))}};
  // margin at k = 0 is exactly 0
  CHECK_THROWS_AS(analyze_spectrum(zero, nodelays, {1}), DegenerateLinearization);
  try {
    analyze_spectrum(zero, nodelays, {1});
  } catch (const DegenerateLinearization& e) {
    CHECK(e.l == 0);
    CHECK(e.k == 0);
  }
  MuTable m1;
  m1.m = 0;
  m1.cols = 1;
  m1.mu = {{Scalar(Rational(-1))}};
  try {
    analyze_spectrum(m1, nodelays, {1});
    FAIL("expected degeneracy at k=1");
  } catch (const DegenerateLinearization& e) {
    CHECK(e.k == 1);
  }
  // worked example: degenerate at (l=1, k=1) on the exact path
  try {
    analyze_spectrum(paper_mu(), fifths(), {1, 1});
    FAIL("expected degeneracy at (1,1)");
  } catch (const DegenerateLinearization& e) {
    CHECK(e.l == 1);
    CHECK(e.k == 1);
    CHECK(e.margin == 0.0);
  }
}

TEST_CASE("nu bookkeeping: mu_0 = -10 with no delays") {
  DelaySet nodelays = validate_delays({});
  MuTable m10;
  m10.m = 0;
  m10.cols = 1;
  m10.mu = {{Scalar(Rational(-10))}};
  SpectralProfile p = analyze_spectrum(m10, nodelays, {2});
  // negative margin -10 + k^2 < 0 for k = 0..3
  CHECK(p.nu[0][0] == 2);
  CHECK(p.nu[0][1] == 2);
  CHECK(p.nu[0][2] == 2);
  CHECK(p.nu[0][3] == 2);
  for (int k = 4; k <= p.k_max; ++k) CHECK(p.nu[0][k] == 0);
  CHECK(p.frak_m_l[0] == 6);  // k >= 1 only: 3 * m_l
  CHECK(p.negative_pairs.size() == 4);
  // nu > 0 iff xi < 0
  for (int k = 0; k <= p.k_max; ++k)
    CHECK((p.nu[0][k] > 0) == (p.xi[0][k].approx < 0.0));
  // all mu = 0 would be degenerate at k=0; with mu_0 = 1 nothing is negative
  MuTable pos;
  pos.m = 0;
  pos.cols = 1;
  pos.mu = {{Scalar(Rational(1))}};
  SpectralProfile q = analyze_spectrum(pos, nodelays, {1});
  CHECK(q.negative_pairs.empty());
  CHECK(q.frak_m_l[0] == 0);
}

TEST_CASE("audit grid reports signs without throwing") {
  auto entries = audit_spectrum(paper_mu(), fifths());
  bool saw_degenerate = false, saw_negative_05 = false;
  for (const auto& e : entries) {
    if (e.l == 1 && e.k == 1) {
      CHECK(e.degenerate);
      saw_degenerate = true;
    }
    if (e.l == 0 && e.k == 5) {
      CHECK(e.sign < 0);
      saw_negative_05 = true;
    }
  }
  CHECK(saw_degenerate);
  CHECK(saw_negative_05);
}

TEST_CASE("commuting families") {
  // scalar family: one cluster of full dimension
  DenseMatrix i3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  DenseMatrix a0 = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  CommutingResult scalar = commuting_mu({a0, i3}, 1e-9);
  REQUIRE(scalar.multiplicities == std::vector<int>({3}));
  CHECK(scalar.mu.mu[0][0].approx == doctest::Approx(2.0));
  CHECK(scalar.mu.mu[1][0].approx == doctest::Approx(1.0));
  // diagonal matrices cluster coordinates
  DenseMatrix d0 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 5}};
  DenseMatrix d1 = {{2, 0, 0}, {0, 3, 0}, {0, 0, 3}};
  CommutingResult diag = commuting_mu({d0, d1}, 1e-9);
  REQUIRE(diag.multiplicities.size() == 3);
  CHECK(diag.multiplicities == std::vector<int>({1, 1, 1}));
  // circulant family recovers the closed form within 1e-9
  auto circ = [](double a, double b) {
    return DenseMatrix{{a, b, b}, {b, a, b}, {b, b, a}};
  };
  CommutingResult c = commuting_mu({circ(-1, -2), circ(-2, -4), circ(-3, -5),
                                    circ(-3, -5), circ(-2, -4)},
                                   1e-9);
  REQUIRE(c.multiplicities.size() == 2);
  // sorted by eigenvalue tuple: (-5,-10,...) before (1,2,...)
  CHECK(c.multiplicities == std::vector<int>({1, 2}));
  long long col0[] = {-5, -10, -13, -13, -10};
  long long col1[] = {1, 2, 2, 2, 2};
  for (int j = 0; j <= 4; ++j) {
    CHECK(std::fabs(c.mu.mu[j][0].approx - double(col0[j])) < 1e-9);
    CHECK(std::fabs(c.mu.mu[j][1].approx - double(col1[j])) < 1e-9);
  }
  // non-commuting and non-symmetric inputs are rejected
  DenseMatrix sym = {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(commuting_mu({d1, sym}, 1e-9), NonCommuting);
  DenseMatrix nonsym = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  CHECK_THROWS_AS(commuting_mu({nonsym}, 1e-9), ComplexSpectrum);
}
