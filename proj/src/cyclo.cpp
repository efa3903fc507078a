#include "eqdeg/cyclo.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>

#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {

// Exact division of integer polynomials (ascending coeffs), remainder must vanish.
std::vector<long long> poly_div_exact(std::vector<long long> num,
                                      const std::vector<long long>& den) {
  std::vector<long long> q(num.size() - den.size() + 1, 0);
  for (size_t i = q.size(); i-- > 0;) {
    long long lead = num[i + den.size() - 1];
    long long dlead = den.back();
    if (lead % dlead != 0) throw Error("cyclotomic poly division not exact");
    long long f = lead / dlead;
    q[i] = f;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
  }
  for (long long v : num)
    if (v != 0) throw Error("cyclotomic poly division left a remainder");
  return q;
}

std::map<int, std::vector<long long>>& phi_cache() {
  static std::map<int, std::vector<long long>> cache;
  return cache;
}
std::mutex phi_mutex;

std::vector<long long> compute_phi(int n);

const std::vector<long long>& phi_locked(int n) {
  auto it = phi_cache().find(n);
  if (it != phi_cache().end()) return it->second;
  auto poly = compute_phi(n);
  return phi_cache().emplace(n, std::move(poly)).first->second;
}

std::vector<long long> compute_phi(int n) {
  // x^n - 1 divided by the product of Phi_d for proper divisors d.
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_div_exact(std::move(num), phi_locked(d));
  }
  return num;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly(int n) {
  if (n < 1) throw Error("cyclotomic_poly: order must be positive");
  std::lock_guard<std::mutex> lock(phi_mutex);
  return phi_locked(n);
}

Cyclo::Cyclo(int order) : order_(order), c_(order, Rational(0)) {
  if (order < 1) throw Error("Cyclo: order must be positive");
}

Cyclo Cyclo::root(int order, long long exponent) {
  Cyclo z(order);
  long long e = ((exponent % order) + order) % order;
  z.c_[static_cast<size_t>(e)] = Rational(1);
  z.reduce();
  return z;
}

Cyclo Cyclo::from_rational(int order, const Rational& r) {
  Cyclo z(order);
  z.c_[0] = r;
  return z;
}

void Cyclo::reduce() {
  const auto& phi = cyclotomic_poly(order_);
  const size_t deg = phi.size() - 1;  // = phi(order_)
  for (size_t i = c_.size(); i-- > deg;) {
    Rational f = c_[i];
    if (f.is_zero()) continue;
    c_[i] = Rational(0);
    // phi is monic: zeta^deg = -(phi[0] + ... + phi[deg-1]*zeta^(deg-1))
    for (size_t j = 0; j < deg; ++j)
      c_[i - deg + j] -= f * Rational(phi[j]);
  }
}

bool Cyclo::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rational Cyclo::as_rational() const {
  if (!is_rational()) throw Error("Cyclo value is not rational: " + to_string());
  return c_[0];
}

long long Cyclo::as_integer() const {
  Rational r = as_rational();
  if (!r.is_integer())
    throw NonIntegerDimension("expected an integer, got " + r.to_string());
  return r.num;
}

Cyclo Cyclo::conjugate() const {
  Cyclo z(order_);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    size_t j = i == 0 ? 0 : c_.size() - i;
    z.c_[j] += c_[i];
  }
  z.reduce();
  return z;
}

const Cyclo& Cyclo::check_order(const Cyclo& o) const {
  if (order_ != o.order_)
    throw Error("Cyclo order mismatch: " + std::to_string(order_) + " vs " +
                std::to_string(o.order_));
  return o;
}

Cyclo Cyclo::operator-() const {
  Cyclo z = *this;
  for (auto& v : z.c_) v = -v;
  return z;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  check_order(o);
  Cyclo z = *this;
  for (size_t i = 0; i < c_.size(); ++i) z.c_[i] += o.c_[i];
  return z;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
  check_order(o);
  Cyclo z(order_);
  // Convolution with exponent wrap (zeta^N = 1), then canonical reduction.
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      z.c_[(i + j) % c_.size()] += c_[i] * o.c_[j];
    }
  }
  z.reduce();
  return z;
}

Cyclo Cyclo::operator*(const Rational& r) const {
  Cyclo z = *this;
  for (auto& v : z.c_) v *= r;
  return z;
}

bool Cyclo::operator==(const Cyclo& o) const {
  if (order_ == o.order_) return c_ == o.c_;
  // lcm lift for cross-order comparison
  long long l = static_cast<long long>(order_) / std::gcd(order_, o.order_) * o.order_;
  return lifted(static_cast<int>(l)).c_ == o.lifted(static_cast<int>(l)).c_;
}

Cyclo Cyclo::lifted(int M) const {
  if (M % order_ != 0) throw Error("Cyclo::lifted: target order not a multiple");
  Cyclo z(M);
  int f = M / order_;
  for (size_t i = 0; i < c_.size(); ++i) z.c_[i * f] += c_[i];
  z.reduce();
  return z;
}

double Cyclo::approx_real() const {
  double s = 0;
  for (size_t i = 0; i < c_.size(); ++i)
    s += c_[i].to_double() * std::cos(2.0 * M_PI * static_cast<double>(i) / order_);
  return s;
}

double Cyclo::approx_imag() const {
  double s = 0;
  for (size_t i = 0; i < c_.size(); ++i)
    s += c_[i].to_double() * std::sin(2.0 * M_PI * static_cast<double>(i) / order_);
  return s;
}

std::string Cyclo::to_string() const {
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    Rational v = c_[i];
    if (out.empty()) {
      if (v.sign() < 0) out += "-";
    } else {
      out += v.sign() < 0 ? " - " : " + ";
    }
    Rational av = v.abs();
    if (i == 0) {
      out += av.to_string();
    } else {
      if (av != Rational(1)) out += av.to_string() + "*";
      out += "E(" + std::to_string(order_) + ")";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

Cyclo Cyclo::parse(int order, const std::string& text) {
  Cyclo z(order);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) {
      if (first) throw Error("empty cyclotomic expression");
      break;
    }
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw Error("expected '+' or '-' in cyclotomic expression: " + text);
    }
    skip_ws();
    Rational coef(1);
    bool have_coef = false;
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])))) {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' ||
              text[pos] == '.'))
        ++pos;
      coef = Rational::parse(text.substr(start, pos - start));
      have_coef = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }
    if (pos + 1 < text.size() && text[pos] == 'E' && text[pos + 1] == '(') {
      pos += 2;
      size_t close = text.find(')', pos);
      if (close == std::string::npos) throw Error("unterminated E( in: " + text);
      int n = std::stoi(text.substr(pos, close - pos));
      pos = close + 1;
      long long e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        e = std::stoll(text.substr(start, pos - start));
      }
      if (order % n != 0)
        throw Error("E(" + std::to_string(n) + ") does not embed in order " +
                    std::to_string(order));
      z += Cyclo::root(order, e * (order / n)) * (coef * Rational(sign));
    } else if (have_coef) {
      z += Cyclo::from_rational(order, coef * Rational(sign));
    } else {
      throw Error("cannot parse cyclotomic term in: " + text);
    }
    first = false;
  }
  return z;
}

}  // namespace eqdeg
