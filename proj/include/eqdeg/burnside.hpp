#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "eqdeg/bigint.hpp"
#include "eqdeg/ccs.hpp"

namespace eqdeg {

// Element of the Burnside ring A_0(G): integer combination of conjugacy
// classes of subgroups. Sparse; zero coefficients are never stored.
class BurnsideElement {
 public:
  BurnsideElement() = default;
  explicit BurnsideElement(const CcsTable* table) : table_(table) {}

  static BurnsideElement zero(const CcsTable& t) { return BurnsideElement(&t); }
  static BurnsideElement generator(const CcsTable& t, int cls);
  static BurnsideElement unit(const CcsTable& t);  // (G)

  const CcsTable* table() const { return table_; }
  const std::map<int, BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  BigInt coeff(int cls) const;
  void set_coeff(int cls, BigInt v);

  BurnsideElement operator-() const;
  BurnsideElement operator+(const BurnsideElement& o) const;
  BurnsideElement operator-(const BurnsideElement& o) const;
  BurnsideElement operator*(const BurnsideElement& o) const;  // ring product
  BurnsideElement scaled(const BigInt& f) const;
  bool operator==(const BurnsideElement& o) const;
  bool operator!=(const BurnsideElement& o) const { return !(*this == o); }

  // Sorted (class-name, coefficient) pairs — the machine-report format.
  std::vector<std::pair<std::string, std::string>> serialized(bool gap_names = false) const;
  // Human form "(G) - (D1z x D3)", classes ordered largest-first.
  std::string to_text(bool gap_names = false) const;

 private:
  const CcsTable* table_ = nullptr;
  std::map<int, BigInt> coeffs_;
  void check_table(const BurnsideElement& o) const;
};

// Memo for generator products (keyed by unordered class pair) and for
// named derived elements such as basic degrees. Lives on the CcsTable so
// cached values can never outlive or alias across tables. Insertions of
// identical results may race; writes are idempotent and mutex-guarded.
class BurnsideProductCache {
 public:
  bool lookup(int a, int b, BurnsideElement* out) const;
  void store(int a, int b, const BurnsideElement& value);
  bool lookup_named(const std::string& key, BurnsideElement* out) const;
  void store_named(const std::string& key, const BurnsideElement& value);

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<int, int>, BurnsideElement> memo_;
  std::map<std::string, BurnsideElement> named_;
};

// Product of two generators (H)*(K): orbit decomposition of G/H x G/K with
// stabilizer classification. This is the primary multiplication route; the
// table of marks below is the independent cross-check.
BurnsideElement generator_product(const CcsTable& t, int a, int b);

// Table of marks: marks[K][H] = number of cosets gH fixed by K.
class TableOfMarks {
 public:
  explicit TableOfMarks(const CcsTable& t);
  const CcsTable& table() const { return *table_; }
  long long mark(int k, int h) const {
    return marks_[static_cast<size_t>(k) * n_ + h];
  }
  std::vector<BigInt> mark_vector(const BurnsideElement& x) const;

 private:
  const CcsTable* table_;
  size_t n_;
  std::vector<long long> marks_;
};

TableOfMarks table_of_marks(const CcsTable& t);

}  // namespace eqdeg
