#include "eqdeg/degree.hpp"

#include <algorithm>

#include "eqdeg/errors.hpp"

namespace eqdeg {

BurnsideElement basic_degree(const RealIrrep& rep, const CcsTable& table,
                             int order_variant) {
  if (rep.group != table.group())
    throw TableMismatch("basic_degree: irrep group does not match the CCS table");
  const std::string memo_key = "deg/" + rep.name;
  if (order_variant == 0) {
    BurnsideElement cached;
    if (table.product_cache().lookup_named(memo_key, &cached)) return cached;
  }
  const int C = table.class_count();
  std::vector<long long> dims(C);
  for (int i = 0; i < C; ++i) dims[i] = fixed_dim(rep, table.cls(i).representative);
  std::vector<BigInt> n(C);
  BurnsideElement deg(&table);
  for (int h : table.descending_order(order_variant)) {
    BigInt d = BigInt(dims[h] % 2 == 0 ? 1 : -1);
    BigInt acc = d;
    for (int k = 0; k < C; ++k) {
      if (k == h || !table.leq(h, k)) continue;
      acc -= n[k] * BigInt(table.n_count(h, k)) * BigInt(table.cls(k).weyl_order);
    }
    n[h] = acc.div_exact(table.cls(h).weyl_order);
    deg.set_coeff(h, n[h]);
  }
  if (order_variant == 0) table.product_cache().store_named(memo_key, deg);
  return deg;
}

BurnsideElement linear_iso_degree(
    const std::vector<std::pair<const RealIrrep*, long long>>& assignments,
    const CcsTable& table) {
  BurnsideElement out = BurnsideElement::unit(table);
  for (const auto& [rep, mult] : assignments) {
    if (mult < 0) throw Error("linear_iso_degree: negative multiplicity");
    if (mult % 2 == 0) continue;  // deg^2 = (G)
    out = out * basic_degree(*rep, table);
  }
  return out;
}

std::vector<int> orbit_types(const std::vector<const RealIrrep*>& reps,
                             const CcsTable& table) {
  const int C = table.class_count();
  const auto& subs = table.all_subgroups();
  std::vector<long long> dim(C, 0);
  for (int i = 0; i < C; ++i)
    for (const RealIrrep* r : reps) dim[i] += fixed_dim(*r, table.cls(i).representative);
  std::vector<int> out;
  for (int i = 0; i < C; ++i) {
    if (dim[i] == 0) continue;
    // Minimal overgroups of the class representative.
    const Subgroup& h = table.cls(i).representative;
    int hidx = table.subgroup_index_of(h);
    std::vector<int> overs;
    for (size_t s = 0; s < subs.size(); ++s) {
      if (static_cast<int>(s) == hidx) continue;
      if (subs[s].order() > h.order() && h.subset_of(subs[s])) overs.push_back(static_cast<int>(s));
    }
    bool realized = true;
    for (int s : overs) {
      bool minimal = true;
      for (int t : overs) {
        if (t == s) continue;
        if (subs[t].order() < subs[s].order() && subs[t].subset_of(subs[s])) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      if (dim[table.class_of_subgroup(s)] >= dim[i]) {
        realized = false;
        break;
      }
    }
    if (realized) out.push_back(i);
  }
  return out;
}

std::vector<int> maximal_orbit_types(const std::vector<const RealIrrep*>& reps,
                                     const CcsTable& table) {
  std::vector<int> types = orbit_types(reps, table);
  std::vector<int> out;
  for (int h : types) {
    bool maximal = true;
    for (int k : types) {
      if (k == h) continue;
      if (table.leq(h, k)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(h);
  }
  return out;
}

}  // namespace eqdeg
