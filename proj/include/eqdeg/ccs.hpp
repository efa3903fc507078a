#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "eqdeg/group.hpp"

namespace eqdeg {

// Subgroup of a concrete FiniteGroup: sorted member indices plus a bitmask
// over elements for O(1) membership and fast subset tests.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;        // sorted element indices
  std::vector<uint64_t> mask;      // bit e set iff e is a member

  Subgroup() = default;
  Subgroup(GroupPtr g, std::vector<int> m);

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int e) const { return (mask[e >> 6] >> (e & 63)) & 1; }
  bool subset_of(const Subgroup& o) const;
  bool is_closed() const;  // closed under mul and inverse, contains identity

  Subgroup conjugated(int g) const;  // g H g^-1
  static Subgroup generate(const GroupPtr& g, const std::vector<int>& seed);
};

// All subgroups of G, each exactly once, sorted by (order, members).
// Throws GroupTooLarge when |G| exceeds the bound.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, int order_bound = 200);

// Goursat quintuple for a subgroup of a two-factor direct product.
struct GoursatName {
  std::string H, K, L, Z, R;
  std::string rendered;
};

class CcsTable;
using CcsPtr = std::shared_ptr<const CcsTable>;

struct CcsClass {
  Subgroup representative;            // lexicographically smallest member set
  std::vector<int> member_subgroups;  // indices into all_subgroups()
  long long weyl_order = 1;
  long long normalizer_order = 1;
  std::string name;
  std::string gap_name;
};

class BurnsideProductCache;

// Conjugacy classes of subgroups of G with the partial order, the counts
// n(H,K), Weyl orders and canonical names.
class CcsTable {
 public:
  static CcsPtr build(const GroupPtr& g, int order_bound = 200);

  const GroupPtr& group() const { return group_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  const CcsClass& cls(int i) const { return classes_[i]; }
  const std::vector<Subgroup>& all_subgroups() const { return subgroups_; }

  int class_of_subgroup(int subgroup_index) const { return sub_class_[subgroup_index]; }
  // Finds the class of an arbitrary subgroup of G (by member-set lookup).
  int class_of(const Subgroup& s) const;
  int subgroup_index_of(const Subgroup& s) const;

  bool leq(int i, int j) const { return leq_[static_cast<size_t>(i) * classes_.size() + j]; }
  long long n_count(int i, int j) const {
    return n_counts_[static_cast<size_t>(i) * classes_.size() + j];
  }
  int top_class() const { return top_class_; }
  int class_by_name(const std::string& name) const;  // -1 when absent

  // Linear extension of leq, largest classes first. variant != 0 flips the
  // tie-break (used to check order-independence of the recurrence).
  std::vector<int> descending_order(int variant = 0) const;

  std::string to_text() const;                 // versioned cache document
  static CcsPtr from_text(const std::string& doc, const GroupPtr& g);

  BurnsideProductCache& product_cache() const { return *product_cache_; }

 private:
  CcsTable() = default;
  void compute_classes();
  void compute_order_and_counts();
  void assign_names();

  GroupPtr group_;
  std::vector<Subgroup> subgroups_;
  std::map<std::vector<uint64_t>, int> mask_index_;
  std::vector<int> sub_class_;
  std::vector<CcsClass> classes_;
  std::vector<char> leq_;
  std::vector<long long> n_counts_;
  int top_class_ = -1;

  std::unique_ptr<BurnsideProductCache> product_cache_;
};

CcsPtr ccs(const GroupPtr& g, int order_bound = 200);

// Quintuple of Goursat's lemma for U <= A x B; throws NotAProduct when G
// carries no product structure.
GoursatName goursat_name(const GroupPtr& g, const Subgroup& u, bool gap_names = false);

// Canonical short name for a subgroup, by the parent group's structure.
std::string subgroup_name(const GroupPtr& g, const Subgroup& u, bool gap_names = false);

}  // namespace eqdeg
