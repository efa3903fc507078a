#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqdeg/ccs.hpp"
#include "eqdeg/cyclo.hpp"
#include "eqdeg/group.hpp"

namespace eqdeg {

// Real absolutely-irreducible representation given by its exact character.
struct RealIrrep {
  GroupPtr group;
  int dim = 1;
  std::string name;
  std::vector<Cyclo> character;        // indexed by element
  std::optional<int> gamma_index;      // l for U_l-type factors
  std::optional<int> sign;             // +1 / -1 for U_l^± over G

  const Cyclo& chi(int e) const { return character[e]; }
};

// Complete list of real irreducibles with exact characters for the
// supported families: trivial, Z2, D1, D_n (n odd), and direct products of
// supported factors. Other groups must come with user-supplied characters.
std::vector<RealIrrep> irreps_of(const GroupPtr& g);

// All pairwise tensor products chi_a * chi_b over A x B.
std::vector<RealIrrep> tensor_irreps(const GroupPtr& product,
                                     const std::vector<RealIrrep>& left,
                                     const std::vector<RealIrrep>& right);

// dim V^H = (1/|H|) sum_{h in H} chi(h); exact, must be a non-negative
// integer (NonIntegerDimension flags a broken character).
long long fixed_dim(const RealIrrep& rep, const Subgroup& h);

// <chi_a, chi_b> = (1/|G|) sum chi_a(g) chi_b(g^-1), exact.
Rational character_inner(const RealIrrep& a, const RealIrrep& b);

struct IsotypicComponent {
  RealIrrep irrep;       // U_l over Gamma
  int multiplicity = 1;  // m_l
  int dim_Vl = 1;        // m_l * dim(U_l)
};

struct IsotypicDecomposition {
  GroupPtr gamma;
  std::vector<IsotypicComponent> components;  // only m_l > 0, ordered by l
};

// Decomposition of the permutation module of Gamma acting on its points.
IsotypicDecomposition isotypic_decomposition(const GroupPtr& gamma);
IsotypicDecomposition isotypic_decomposition(const GroupPtr& gamma,
                                             const std::vector<RealIrrep>& gamma_irreps);

struct SignedPair {
  int l = 0;             // component index (position in the decomposition)
  int multiplicity = 1;  // m_l
  RealIrrep plus;        // U_l^+
  RealIrrep minus;       // U_l^-
};

// U_l^± = V^± ⊗ U_l over G = (D1 x Z2) x Gamma. The group G must have been
// built as product(product(D1, Z2), Gamma) with the same Gamma instance.
std::vector<SignedPair> signed_irreps(const IsotypicDecomposition& decomp,
                                      const GroupPtr& g_full);

// User-supplied character table: class representatives as permutation words
// and values as cyclotomic expressions "c0 + c1*E(N)^1 + ...".
struct CustomIrrepSpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> values;  // (class rep word, value)
};

struct CustomGroupSpec {
  std::string name;
  int points = 1;
  std::vector<std::string> generators;  // permutation words
  int cyclo_order = 1;                  // order N for E(N) expressions
  std::vector<CustomIrrepSpec> irreps;
};

struct CustomGroup {
  GroupPtr group;
  std::vector<RealIrrep> irreps;
};

// Builds the group and validates the table: class functions covering every
// class, chi(e) = dim, orthonormal (real type), complete (sum dim^2 = |G|).
CustomGroup load_custom_group(const CustomGroupSpec& spec, int order_bound = 200);

}  // namespace eqdeg
