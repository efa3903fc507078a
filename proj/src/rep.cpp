#include "eqdeg/rep.hpp"

#include <algorithm>
#include <numeric>

#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {

// Shared cyclotomic order for a group's character values.
int character_order(const GroupDescriptor& d) {
  switch (d.kind) {
    case GroupDescriptor::Kind::trivial:
      return 1;
    case GroupDescriptor::Kind::cyclic:
      return 1;  // supported cyclic groups (Z2) have rational characters
    case GroupDescriptor::Kind::dihedral:
      return d.n == 1 ? 1 : d.n;
    case GroupDescriptor::Kind::product:
      return std::lcm(character_order(d.factors[0]), character_order(d.factors[1]));
    case GroupDescriptor::Kind::custom:
      return 1;  // overridden by the loaded table
  }
  return 1;
}

RealIrrep constant_sign_irrep(const GroupPtr& g, int order, const std::string& name,
                              const std::vector<int>& signs) {
  RealIrrep r;
  r.group = g;
  r.dim = 1;
  r.name = name;
  r.character.reserve(g->order());
  for (int e = 0; e < g->order(); ++e)
    r.character.push_back(Cyclo::from_rational(order, Rational(signs[e])));
  return r;
}

std::vector<RealIrrep> dihedral_irreps(const GroupPtr& g, int cyclo_order) {
  const int n = g->descriptor().n;
  if (n > 1 && n % 2 == 0)
    throw UnsupportedGroup(
        "D" + std::to_string(n) +
        ": even dihedral groups are outside the supported odd-n pipeline");
  std::vector<RealIrrep> out;
  std::vector<int> triv(g->order(), 1);
  out.push_back(constant_sign_irrep(g, cyclo_order, "U0", triv));
  out.back().gamma_index = 0;
  std::vector<int> sgn(g->order());
  for (int e = 0; e < g->order(); ++e) sgn[e] = e < n ? 1 : -1;
  out.push_back(constant_sign_irrep(g, cyclo_order, "sgn", sgn));
  for (int l = 1; l <= (n - 1) / 2; ++l) {
    RealIrrep r;
    r.group = g;
    r.dim = 2;
    r.name = "U" + std::to_string(l);
    r.gamma_index = l;
    r.character.reserve(g->order());
    for (int e = 0; e < g->order(); ++e) {
      if (e < n) {
        long long a = static_cast<long long>(e) * l;
        Cyclo v = Cyclo::root(cyclo_order, a * (cyclo_order / n)) +
                  Cyclo::root(cyclo_order, -a * (cyclo_order / n));
        r.character.push_back(v);
      } else {
        r.character.push_back(Cyclo(cyclo_order));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool is_klein(const GroupDescriptor& d) {
  return d.kind == GroupDescriptor::Kind::product &&
         d.factors[0].kind == GroupDescriptor::Kind::dihedral && d.factors[0].n == 1 &&
         d.factors[1].kind == GroupDescriptor::Kind::cyclic && d.factors[1].n == 2;
}

}  // namespace

std::vector<RealIrrep> tensor_irreps(const GroupPtr& product,
                                     const std::vector<RealIrrep>& left,
                                     const std::vector<RealIrrep>& right) {
  if (!product->is_product()) throw NotAProduct("tensor_irreps: not a product group");
  int order = 1;
  for (const auto& r : left) order = std::lcm(order, r.character[0].order());
  for (const auto& r : right) order = std::lcm(order, r.character[0].order());
  std::vector<RealIrrep> out;
  for (const auto& a : left) {
    for (const auto& b : right) {
      RealIrrep r;
      r.group = product;
      r.dim = a.dim * b.dim;
      r.name = a.name + "*" + b.name;
      r.character.reserve(product->order());
      for (int e = 0; e < product->order(); ++e) {
        Cyclo va = a.chi(product->left_part(e)).lifted(order);
        Cyclo vb = b.chi(product->right_part(e)).lifted(order);
        r.character.push_back(va * vb);
      }
      // V± ⊗ U_l tensors carry the signed name U_l^±.
      if (a.name == "V+" || a.name == "V-") {
        if (b.gamma_index) {
          r.gamma_index = b.gamma_index;
          r.sign = a.name == "V+" ? 1 : -1;
          r.name = "U" + std::to_string(*b.gamma_index) + (a.name == "V+" ? "+" : "-");
        }
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<RealIrrep> irreps_of(const GroupPtr& g) {
  const auto& d = g->descriptor();
  const int order = character_order(d);
  switch (d.kind) {
    case GroupDescriptor::Kind::trivial: {
      RealIrrep r = constant_sign_irrep(g, order, "U0", {1});
      r.gamma_index = 0;
      return {r};
    }
    case GroupDescriptor::Kind::cyclic: {
      if (d.n != 2)
        throw UnsupportedGroup("Z" + std::to_string(d.n) +
                               ": only Z2 is built in; supply a character table for "
                               "other cyclic groups");
      return {constant_sign_irrep(g, order, "triv", {1, 1}),
              constant_sign_irrep(g, order, "sgn", {1, -1})};
    }
    case GroupDescriptor::Kind::dihedral:
      if (d.n == 1)
        return {constant_sign_irrep(g, order, "triv", {1, 1}),
                constant_sign_irrep(g, order, "sgn", {1, -1})};
      return dihedral_irreps(g, order);
    case GroupDescriptor::Kind::product: {
      if (is_klein(d)) {
        // Elements: 0=(1,1), 1=(1,-1), 2=(k,1), 3=(k,-1).
        // V± are the paper's representations: (k,1) x = ±x, (1,-1) x = -x.
        return {constant_sign_irrep(g, order, "triv", {1, 1, 1, 1}),
                constant_sign_irrep(g, order, "kap", {1, 1, -1, -1}),
                constant_sign_irrep(g, order, "V+", {1, -1, 1, -1}),
                constant_sign_irrep(g, order, "V-", {1, -1, -1, 1})};
      }
      return tensor_irreps(g, irreps_of(g->left()), irreps_of(g->right()));
    }
    case GroupDescriptor::Kind::custom:
      throw UnsupportedGroup("custom group " + d.custom_name +
                             " requires a user-supplied character table");
  }
  throw Error("unreachable");
}

long long fixed_dim(const RealIrrep& rep, const Subgroup& h) {
  Cyclo sum(rep.character[0].order());
  for (int e : h.members) sum += rep.chi(e);
  Cyclo avg = sum * Rational(1, h.order());
  long long v = avg.as_integer();
  if (v < 0) throw NonIntegerDimension("negative fixed-point dimension (broken character)");
  return v;
}

Rational character_inner(const RealIrrep& a, const RealIrrep& b) {
  if (a.group != b.group) throw Error("character_inner: different groups");
  const FiniteGroup& g = *a.group;
  int order = std::lcm(a.character[0].order(), b.character[0].order());
  Cyclo sum(order);
  for (int e = 0; e < g.order(); ++e)
    sum += a.chi(e).lifted(order) * b.chi(g.inv(e)).lifted(order);
  Cyclo avg = sum * Rational(1, g.order());
  return avg.as_rational();
}

IsotypicDecomposition isotypic_decomposition(const GroupPtr& gamma) {
  return isotypic_decomposition(gamma, irreps_of(gamma));
}

IsotypicDecomposition isotypic_decomposition(const GroupPtr& gamma,
                                             const std::vector<RealIrrep>& gamma_irreps) {
  if (!gamma->has_action())
    throw UnsupportedGroup("isotypic_decomposition: group has no permutation action");
  IsotypicDecomposition out;
  out.gamma = gamma;
  for (const auto& rep : gamma_irreps) {
    // <perm character, chi>: perm character value = fixed point count.
    int order = rep.character[0].order();
    Cyclo sum(order);
    for (int e = 0; e < gamma->order(); ++e)
      sum += rep.chi(gamma->inv(e)) * Rational(gamma->fixed_points(e));
    Rational m = (sum * Rational(1, gamma->order())).as_rational();
    if (!m.is_integer() || m.num < 0)
      throw Error("non-integral isotypic multiplicity (broken character)");
    if (m.num == 0) continue;
    IsotypicComponent comp;
    comp.irrep = rep;
    comp.multiplicity = static_cast<int>(m.num);
    comp.dim_Vl = comp.multiplicity * rep.dim;
    out.components.push_back(std::move(comp));
  }
  int total = 0;
  for (const auto& c : out.components) total += c.dim_Vl;
  if (total != gamma->points())
    throw Error("isotypic decomposition does not add up to the permutation degree");
  return out;
}

std::vector<SignedPair> signed_irreps(const IsotypicDecomposition& decomp,
                                      const GroupPtr& g_full) {
  if (!g_full->is_product() || !g_full->left()->is_product() ||
      !is_klein(g_full->left()->descriptor()))
    throw Error("signed_irreps: G must be built as (D1 x Z2) x Gamma");
  if (g_full->right() != decomp.gamma)
    throw Error("signed_irreps: G was built over a different Gamma instance");
  const GroupPtr& klein = g_full->left();
  auto klein_irreps = irreps_of(klein);
  const RealIrrep* vplus = nullptr;
  const RealIrrep* vminus = nullptr;
  for (const auto& r : klein_irreps) {
    if (r.name == "V+") vplus = &r;
    if (r.name == "V-") vminus = &r;
  }
  std::vector<SignedPair> out;
  for (size_t l = 0; l < decomp.components.size(); ++l) {
    const auto& comp = decomp.components[l];
    auto pair_for = [&](const RealIrrep& v, int sgn) {
      auto tensored = tensor_irreps(g_full, {v}, {comp.irrep});
      RealIrrep r = std::move(tensored.front());
      r.gamma_index = static_cast<int>(l);
      r.sign = sgn;
      r.name = "U" + std::to_string(l) + (sgn > 0 ? "+" : "-");
      return r;
    };
    SignedPair p;
    p.l = static_cast<int>(l);
    p.multiplicity = comp.multiplicity;
    p.plus = pair_for(*vplus, 1);
    p.minus = pair_for(*vminus, -1);
    out.push_back(std::move(p));
  }
  return out;
}

CustomGroup load_custom_group(const CustomGroupSpec& spec, int order_bound) {
  std::vector<std::vector<int>> gens;
  for (const auto& w : spec.generators)
    gens.push_back(parse_permutation(w, spec.points));
  if (gens.empty()) gens.push_back(parse_permutation("()", spec.points));
  CustomGroup out;
  out.group = FiniteGroup::from_permutations(spec.name, spec.points, gens, order_bound);
  const FiniteGroup& g = *out.group;
  const int N = std::max(1, spec.cyclo_order);

  // Map each element to the element-class of a listed representative.
  for (const auto& ir : spec.irreps) {
    std::vector<int> class_value_index(g.element_class_count(), -1);
    std::vector<Cyclo> values;
    for (const auto& [word, expr] : ir.values) {
      auto img = parse_permutation(word, spec.points);
      int elem = -1;
      for (int e = 0; e < g.order(); ++e) {
        bool match = true;
        for (int p = 0; p < spec.points; ++p)
          if (g.act(e, p) != img[p]) {
            match = false;
            break;
          }
        if (match) {
          elem = e;
          break;
        }
      }
      if (elem < 0)
        throw ConfigError("character table: representative " + word +
                          " is not an element of the generated group");
      int ec = g.element_class(elem);
      if (class_value_index[ec] >= 0)
        throw ConfigError("character table: duplicate value for the class of " + word);
      class_value_index[ec] = static_cast<int>(values.size());
      values.push_back(Cyclo::parse(N, expr));
    }
    for (int c = 0; c < g.element_class_count(); ++c)
      if (class_value_index[c] < 0)
        throw ConfigError("character table for " + ir.name +
                          " misses an element conjugacy class (" +
                          std::to_string(g.element_class_count()) +
                          " classes required)");
    RealIrrep rep;
    rep.group = out.group;
    rep.name = ir.name;
    rep.character.reserve(g.order());
    for (int e = 0; e < g.order(); ++e)
      rep.character.push_back(values[class_value_index[g.element_class(e)]]);
    rep.dim = static_cast<int>(rep.character[0].as_integer());
    if (rep.dim < 1) throw ConfigError("character table: chi(e) must be a positive integer");
    out.irreps.push_back(std::move(rep));
  }

  // Validation: real type (norm 1), orthogonality, completeness.
  long long dim2 = 0;
  for (size_t i = 0; i < out.irreps.size(); ++i) {
    dim2 += static_cast<long long>(out.irreps[i].dim) * out.irreps[i].dim;
    for (size_t j = i; j < out.irreps.size(); ++j) {
      Rational ip = character_inner(out.irreps[i], out.irreps[j]);
      Rational expect = i == j ? Rational(1) : Rational(0);
      if (ip != expect)
        throw ConfigError("character table: <" + out.irreps[i].name + ", " +
                          out.irreps[j].name + "> = " + ip.to_string() +
                          " (need " + expect.to_string() +
                          "; only real-type absolutely irreducible characters are supported)");
    }
  }
  if (dim2 != g.order())
    throw ConfigError("character table incomplete: sum of dim^2 is " +
                      std::to_string(dim2) + ", group order is " +
                      std::to_string(g.order()));
  // Assign gamma indices in listed order.
  for (size_t i = 0; i < out.irreps.size(); ++i)
    out.irreps[i].gamma_index = static_cast<int>(i);
  return out;
}

}  // namespace eqdeg
