#pragma once

#include <memory>
#include <string>
#include <vector>

namespace eqdeg {

// Structural description of how a group was built; drives naming and the
// Goursat machinery for direct products.
struct GroupDescriptor {
  enum class Kind { trivial, cyclic, dihedral, product, custom };
  Kind kind = Kind::trivial;
  int n = 1;                              // cyclic/dihedral parameter
  std::string custom_name;                // custom groups
  std::vector<GroupDescriptor> factors;   // product: exactly two (left-nested)

  std::string to_string() const;          // "D3", "Z2", "product(D1,Z2,D3)"
  static GroupDescriptor parse(const std::string& text);
  bool operator==(const GroupDescriptor& o) const;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Concrete finite group: complete multiplication table over indexed
// elements. Identity is always element 0. Immutable after construction;
// group axioms are checked when the table is built.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  int order() const { return order_; }
  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return 0; }
  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1

  const GroupDescriptor& descriptor() const { return desc_; }
  const std::vector<int>& generators() const { return generators_; }
  const std::string& element_name(int e) const { return names_[e]; }

  // Natural permutation action on {0..points-1}; 0 points = no action.
  int points() const { return points_; }
  bool has_action() const { return points_ > 0; }
  int act(int g, int point) const { return action_[static_cast<size_t>(g) * points_ + point]; }
  int fixed_points(int g) const;

  // Direct product structure (element index = a*|B| + b).
  bool is_product() const { return static_cast<bool>(left_); }
  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  int pair_index(int a, int b) const { return a * right_->order() + b; }
  int left_part(int e) const { return e / right_->order(); }
  int right_part(int e) const { return e % right_->order(); }

  // Conjugacy classes of elements (computed on construction).
  int element_class(int e) const { return elt_class_[e]; }
  int element_class_count() const { return elt_class_count_; }
  const std::vector<int>& element_class_reps() const { return elt_class_reps_; }

  int element_order(int e) const;

  static GroupPtr dihedral(int n);
  static GroupPtr cyclic(int n);
  static GroupPtr trivial();
  static GroupPtr product(const GroupPtr& a, const GroupPtr& b);
  static GroupPtr from_permutations(const std::string& name, int npoints,
                                    const std::vector<std::vector<int>>& perm_gens,
                                    int order_bound = 200);
  // Builds from a descriptor tree (trivial/cyclic/dihedral/product only).
  static GroupPtr build(const GroupDescriptor& d);

 private:
  FiniteGroup() = default;
  void finalize();  // validates axioms, computes inverses and element classes

  int order_ = 1;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
  std::vector<int> generators_;
  GroupDescriptor desc_;

  int points_ = 0;
  std::vector<int> action_;

  GroupPtr left_, right_;

  std::vector<int> elt_class_;
  std::vector<int> elt_class_reps_;
  int elt_class_count_ = 0;
};

// Parses a permutation word in cycle notation on {1..npoints}, e.g.
// "(1,2,3)(4,5)" or "()"; returns the image vector (0-based).
std::vector<int> parse_permutation(const std::string& word, int npoints);

}  // namespace eqdeg
