#include "eqdeg/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {

using int128 = __int128;

long long clamp128(int128 v, const char* what) {
  if (v > static_cast<int128>(0x7fffffffffffffffLL) ||
      v < -static_cast<int128>(0x7fffffffffffffffLL) - 1)
    throw OverflowError(std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(int128 n, int128 d, const char* what) {
  if (d == 0) throw Error("rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num = clamp128(n, what);
  r.den = clamp128(d, what);
  return r;
}

}  // namespace

Rational::Rational(long long n, long long d) { *this = make(n, d, "ctor"); }

Rational Rational::operator-() const {
  Rational r;
  r.num = -num;
  r.den = den;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return make(static_cast<int128>(num) * o.den + static_cast<int128>(o.num) * den,
              static_cast<int128>(den) * o.den, "add");
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return make(static_cast<int128>(num) * o.num, static_cast<int128>(den) * o.den, "mul");
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw Error("rational: division by zero");
  return make(static_cast<int128>(num) * o.den, static_cast<int128>(den) * o.num, "div");
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<int128>(num) * o.den < static_cast<int128>(o.num) * den;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw Error("rational: empty string");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '+' &&
        c != '/' && c != '.')
      throw Error("rational: cannot parse \"" + s +
                  "\" exactly (exponent or stray characters)");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (fp.size() > 15) throw Error("rational: too many decimal digits in " + s);
    bool neg = !ip.empty() && ip[0] == '-';
    long long whole = ip.empty() || ip == "-" || ip == "+" ? 0 : std::llabs(std::stoll(ip));
    long long scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    long long frac = fp.empty() ? 0 : std::stoll(fp);
    Rational r = Rational(whole) + Rational(frac, scale);
    return neg ? -r : r;
  }
  return Rational(std::stoll(s));
}

}  // namespace eqdeg
