#pragma once

#include <stdexcept>
#include <string>

namespace eqdeg {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& msg) : Error(msg) {}
};

struct GroupTooLarge : Error {
  explicit GroupTooLarge(const std::string& msg) : Error(msg) {}
};

struct NotAProduct : Error {
  explicit NotAProduct(const std::string& msg) : Error(msg) {}
};

struct TableMismatch : Error {
  explicit TableMismatch(const std::string& msg) : Error(msg) {}
};

struct UnsupportedGroup : Error {
  explicit UnsupportedGroup(const std::string& msg) : Error(msg) {}
};

struct NonIntegerDimension : Error {
  explicit NonIntegerDimension(const std::string& msg) : Error(msg) {}
};

struct NonIntegerCoefficient : Error {
  explicit NonIntegerCoefficient(const std::string& msg) : Error(msg) {}
};

struct DelayRangeViolation : Error {
  explicit DelayRangeViolation(const std::string& msg) : Error(msg) {}
};

struct DelaySymmetryViolation : Error {
  int bad_index;  // 1-based j for which tau_{m-j+1} != 2*pi - tau_j
  DelaySymmetryViolation(int j, const std::string& msg) : Error(msg), bad_index(j) {}
};

struct EvenN : Error {
  explicit EvenN(const std::string& msg) : Error(msg) {}
};

struct MuPairingViolation : Error {
  explicit MuPairingViolation(const std::string& msg) : Error(msg) {}
};

struct DegenerateLinearization : Error {
  int l, k;
  double margin;
  DegenerateLinearization(int l_, int k_, double margin_, const std::string& msg)
      : Error(msg), l(l_), k(k_), margin(margin_) {}
};

struct NonCommuting : Error {
  int j1, j2;
  double residual;
  NonCommuting(int a, int b, double r, const std::string& msg)
      : Error(msg), j1(a), j2(b), residual(r) {}
};

struct ComplexSpectrum : Error {
  explicit ComplexSpectrum(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace eqdeg
