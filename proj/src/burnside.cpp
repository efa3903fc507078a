#include "eqdeg/burnside.hpp"

#include <algorithm>
#include <numeric>

#include "eqdeg/errors.hpp"

namespace eqdeg {

BurnsideElement BurnsideElement::generator(const CcsTable& t, int cls) {
  BurnsideElement e(&t);
  e.coeffs_[cls] = BigInt(1);
  return e;
}

BurnsideElement BurnsideElement::unit(const CcsTable& t) {
  return generator(t, t.top_class());
}

BigInt BurnsideElement::coeff(int cls) const {
  auto it = coeffs_.find(cls);
  return it == coeffs_.end() ? BigInt() : it->second;
}

void BurnsideElement::set_coeff(int cls, BigInt v) {
  if (v.is_zero())
    coeffs_.erase(cls);
  else
    coeffs_[cls] = std::move(v);
}

void BurnsideElement::check_table(const BurnsideElement& o) const {
  if (table_ != o.table_)
    throw TableMismatch("Burnside elements over different CCS tables");
}

BurnsideElement BurnsideElement::operator-() const {
  BurnsideElement r(table_);
  for (const auto& [c, v] : coeffs_) r.coeffs_[c] = -v;
  return r;
}

BurnsideElement BurnsideElement::operator+(const BurnsideElement& o) const {
  check_table(o);
  BurnsideElement r = *this;
  for (const auto& [c, v] : o.coeffs_) r.set_coeff(c, r.coeff(c) + v);
  return r;
}

BurnsideElement BurnsideElement::operator-(const BurnsideElement& o) const {
  return *this + (-o);
}

BurnsideElement BurnsideElement::scaled(const BigInt& f) const {
  BurnsideElement r(table_);
  if (f.is_zero()) return r;
  for (const auto& [c, v] : coeffs_) r.coeffs_[c] = v * f;
  return r;
}

BurnsideElement BurnsideElement::operator*(const BurnsideElement& o) const {
  check_table(o);
  BurnsideElement r(table_);
  for (const auto& [a, va] : coeffs_)
    for (const auto& [b, vb] : o.coeffs_)
      r = r + generator_product(*table_, a, b).scaled(va * vb);
  return r;
}

bool BurnsideElement::operator==(const BurnsideElement& o) const {
  return table_ == o.table_ && coeffs_ == o.coeffs_;
}

std::vector<std::pair<std::string, std::string>> BurnsideElement::serialized(
    bool gap_names) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [c, v] : coeffs_)
    out.emplace_back(gap_names ? table_->cls(c).gap_name : table_->cls(c).name,
                     v.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string BurnsideElement::to_text(bool gap_names) const {
  if (coeffs_.empty()) return "0";
  std::vector<int> order;
  for (const auto& [c, v] : coeffs_) order.push_back(c);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int oa = table_->cls(a).representative.order();
    int ob = table_->cls(b).representative.order();
    if (oa != ob) return oa > ob;
    return (gap_names ? table_->cls(a).gap_name : table_->cls(a).name) <
           (gap_names ? table_->cls(b).gap_name : table_->cls(b).name);
  });
  std::string out;
  for (size_t i = 0; i < order.size(); ++i) {
    BigInt v = coeff(order[i]);
    std::string mag = (v.sign() < 0 ? (-v) : v).to_string();
    if (i == 0) {
      if (v.sign() < 0) out += "-";
    } else {
      out += v.sign() < 0 ? " - " : " + ";
    }
    if (mag != "1") out += mag + " ";
    out += "(" +
           (gap_names ? table_->cls(order[i]).gap_name : table_->cls(order[i]).name) +
           ")";
  }
  return out;
}

bool BurnsideProductCache::lookup(int a, int b, BurnsideElement* out) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = memo_.find({std::min(a, b), std::max(a, b)});
  if (it == memo_.end()) return false;
  *out = it->second;
  return true;
}

void BurnsideProductCache::store(int a, int b, const BurnsideElement& value) {
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(std::make_pair(std::min(a, b), std::max(a, b)), value);
}

bool BurnsideProductCache::lookup_named(const std::string& key, BurnsideElement* out) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = named_.find(key);
  if (it == named_.end()) return false;
  *out = it->second;
  return true;
}

void BurnsideProductCache::store_named(const std::string& key, const BurnsideElement& value) {
  std::lock_guard<std::mutex> lock(mutex_);
  named_.emplace(key, value);
}

BurnsideElement generator_product(const CcsTable& t, int a, int b) {
  BurnsideElement cached;
  if (t.product_cache().lookup(a, b, &cached)) return cached;

  const FiniteGroup& g = *t.group();
  const int n = g.order();
  const Subgroup& H = t.cls(a).representative;
  const Subgroup& K = t.cls(b).representative;

  // Cosets of H and K, each element mapped to its coset id.
  auto coset_ids = [&](const Subgroup& s, std::vector<int>* reps) {
    std::vector<int> id(n, -1);
    for (int e = 0; e < n; ++e) {
      if (id[e] >= 0) continue;
      int c = static_cast<int>(reps->size());
      reps->push_back(e);
      for (int h : s.members) id[g.mul(e, h)] = c;
    }
    return id;
  };
  std::vector<int> h_reps, k_reps;
  std::vector<int> h_id = coset_ids(H, &h_reps);
  std::vector<int> k_id = coset_ids(K, &k_reps);
  const int nh = static_cast<int>(h_reps.size());
  const int nk = static_cast<int>(k_reps.size());

  // Orbits of the diagonal action on pairs (aH, bK), by BFS over generators.
  std::vector<int> orbit(static_cast<size_t>(nh) * nk, -1);
  BurnsideElement result(&t);
  std::vector<int> stack;
  int orbit_count = 0;
  for (int p0 = 0; p0 < nh * nk; ++p0) {
    if (orbit[p0] >= 0) continue;
    const int oid = orbit_count++;
    orbit[p0] = oid;
    stack.assign(1, p0);
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      int ch = p / nk, ck = p % nk;
      for (int gen : g.generators()) {
        int q = h_id[g.mul(gen, h_reps[ch])] * nk + k_id[g.mul(gen, k_reps[ck])];
        if (orbit[q] < 0) {
          orbit[q] = oid;
          stack.push_back(q);
        }
      }
    }
    // Stabilizer of the orbit representative: aHa^-1 intersect bKb^-1.
    int arep = h_reps[p0 / nk], brep = k_reps[p0 % nk];
    std::vector<int> stab;
    Subgroup ha = H.conjugated(arep);
    Subgroup kb = K.conjugated(brep);
    for (int e : ha.members)
      if (kb.contains(e)) stab.push_back(e);
    int cls = t.class_of(Subgroup(t.group(), std::move(stab)));
    result.set_coeff(cls, result.coeff(cls) + BigInt(1));
  }
  t.product_cache().store(a, b, result);
  return result;
}

TableOfMarks::TableOfMarks(const CcsTable& t) : table_(&t), n_(t.class_count()) {
  const FiniteGroup& g = *t.group();
  const int n = g.order();
  marks_.assign(n_ * n_, 0);
  for (size_t h = 0; h < n_; ++h) {
    const Subgroup& H = t.cls(static_cast<int>(h)).representative;
    // Enumerate cosets gH once; K fixes gH iff K is inside g H g^-1.
    std::vector<int> reps;
    std::vector<char> seen(n, 0);
    for (int e = 0; e < n; ++e) {
      if (seen[e]) continue;
      reps.push_back(e);
      for (int m : H.members) seen[g.mul(e, m)] = 1;
    }
    for (int rep : reps) {
      Subgroup conj = H.conjugated(rep);
      for (size_t k = 0; k < n_; ++k) {
        const Subgroup& K = t.cls(static_cast<int>(k)).representative;
        if (K.subset_of(conj)) ++marks_[k * n_ + h];
      }
    }
  }
}

std::vector<BigInt> TableOfMarks::mark_vector(const BurnsideElement& x) const {
  if (x.table() != table_)
    throw TableMismatch("mark_vector: element over a different table");
  std::vector<BigInt> out(n_, BigInt());
  for (const auto& [c, v] : x.coeffs())
    for (size_t k = 0; k < n_; ++k)
      out[k] += v * BigInt(mark(static_cast<int>(k), c));
  return out;
}

TableOfMarks table_of_marks(const CcsTable& t) { return TableOfMarks(t); }

}  // namespace eqdeg
