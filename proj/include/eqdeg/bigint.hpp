#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eqdeg {

// Arbitrary-precision signed integer, base 2^32 magnitude.
// Burnside coefficients stay tiny in practice; this exists so that no
// intermediate product or recurrence sum can ever wrap silently.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design, mirrors int usage

  bool is_zero() const { return limbs_.empty(); }
  int sign() const { return limbs_.empty() ? 0 : sign_; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  bool operator==(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;
  bool operator>(const BigInt& o) const { return o < *this; }
  bool operator<=(const BigInt& o) const { return !(o < *this); }
  bool operator>=(const BigInt& o) const { return !(*this < o); }

  // Division by a small positive divisor that must divide exactly.
  // Returns quotient; throws NonIntegerCoefficient otherwise.
  BigInt div_exact(long long d) const;

  bool fits_int64() const;
  long long to_int64() const;  // throws OverflowError if it does not fit
  std::string to_string() const;

 private:
  int sign_ = 1;                  // only meaningful when limbs_ nonempty
  std::vector<uint32_t> limbs_;   // little-endian, no trailing zero limbs

  void trim();
  static int cmp_mag(const BigInt& a, const BigInt& b);
  static BigInt add_mag(const BigInt& a, const BigInt& b, int sign);
  static BigInt sub_mag(const BigInt& a, const BigInt& b, int sign);  // |a| >= |b|
};

}  // namespace eqdeg
