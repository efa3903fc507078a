#include "eqdeg/bigint.hpp"

#include <cstdlib>

#include "eqdeg/errors.hpp"

namespace eqdeg {

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                : static_cast<unsigned long long>(v);
  while (m != 0) {
    limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffULL));
    m >>= 32;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) sign_ = 1;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b, int sign) {
  BigInt r;
  r.sign_ = sign;
  const size_t n = std::max(a.limbs_.size(), b.limbs_.size());
  r.limbs_.resize(n, 0);
  unsigned long long carry = 0;
  for (size_t i = 0; i < n; ++i) {
    unsigned long long s = carry;
    if (i < a.limbs_.size()) s += a.limbs_[i];
    if (i < b.limbs_.size()) s += b.limbs_[i];
    r.limbs_[i] = static_cast<uint32_t>(s & 0xffffffffULL);
    carry = s >> 32;
  }
  if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
  r.trim();
  return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b, int sign) {
  BigInt r;
  r.sign_ = sign;
  r.limbs_.resize(a.limbs_.size(), 0);
  long long borrow = 0;
  for (size_t i = 0; i < a.limbs_.size(); ++i) {
    long long d = static_cast<long long>(a.limbs_[i]) - borrow -
                  (i < b.limbs_.size() ? static_cast<long long>(b.limbs_[i]) : 0);
    if (d < 0) {
      d += 1LL << 32;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.limbs_[i] = static_cast<uint32_t>(d);
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.limbs_.empty()) r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (sign_ == o.sign_) return add_mag(*this, o, sign_);
  int c = cmp_mag(*this, o);
  if (c == 0) return BigInt();
  return c > 0 ? sub_mag(*this, o, sign_) : sub_mag(o, *this, o.sign_);
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.sign_ = sign_ * o.sign_;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    unsigned long long carry = 0;
    for (size_t j = 0; j < o.limbs_.size(); ++j) {
      unsigned long long cur = r.limbs_[i + j] + carry +
                               static_cast<unsigned long long>(limbs_[i]) * o.limbs_[j];
      r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    size_t k = i + o.limbs_.size();
    while (carry) {
      unsigned long long cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

bool BigInt::operator==(const BigInt& o) const {
  if (is_zero() && o.is_zero()) return true;
  return sign_ == o.sign_ && limbs_ == o.limbs_;
}

bool BigInt::operator<(const BigInt& o) const {
  if (sign() != o.sign()) return sign() < o.sign();
  int c = cmp_mag(*this, o);
  return sign() >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::div_exact(long long d) const {
  if (d <= 0) throw NonIntegerCoefficient("div_exact: divisor must be positive");
  if (is_zero()) return BigInt();
  BigInt q;
  q.sign_ = sign_;
  q.limbs_.resize(limbs_.size(), 0);
  unsigned long long rem = 0;
  const unsigned long long ud = static_cast<unsigned long long>(d);
  for (size_t i = limbs_.size(); i-- > 0;) {
    unsigned long long cur = (rem << 32) | limbs_[i];
    q.limbs_[i] = static_cast<uint32_t>(cur / ud);
    rem = cur % ud;
  }
  if (rem != 0)
    throw NonIntegerCoefficient("div_exact: " + to_string() + " not divisible by " +
                                std::to_string(d));
  q.trim();
  return q;
}

bool BigInt::fits_int64() const {
  if (limbs_.size() > 2) return false;
  if (limbs_.size() < 2) return true;
  unsigned long long m =
      (static_cast<unsigned long long>(limbs_[1]) << 32) | limbs_[0];
  if (sign_ > 0) return m <= 0x7fffffffffffffffULL;
  return m <= 0x8000000000000000ULL;
}

long long BigInt::to_int64() const {
  if (!fits_int64()) throw OverflowError("BigInt does not fit in int64: " + to_string());
  unsigned long long m = 0;
  for (size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
  if (sign_ >= 0 || m == 0) return static_cast<long long>(m);
  return -static_cast<long long>(m - 1) - 1;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<uint32_t> work = limbs_;
  std::string digits;
  while (!work.empty()) {
    unsigned long long rem = 0;
    for (size_t i = work.size(); i-- > 0;) {
      unsigned long long cur = (rem << 32) | work[i];
      work[i] = static_cast<uint32_t>(cur / 1000000000ULL);
      rem = cur % 1000000000ULL;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    for (int i = 0; i < 9; ++i) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

}  // namespace eqdeg
