#include "eqdeg/ccs.hpp"

#include <algorithm>
#include <sstream>

#include "eqdeg/burnside.hpp"
#include "eqdeg/errors.hpp"

namespace eqdeg {

namespace {
size_t mask_words(int order) { return static_cast<size_t>(order + 63) / 64; }
}  // namespace

Subgroup::Subgroup(GroupPtr g, std::vector<int> m) : parent(std::move(g)), members(std::move(m)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  mask.assign(mask_words(parent->order()), 0);
  for (int e : members) mask[e >> 6] |= 1ULL << (e & 63);
}

bool Subgroup::subset_of(const Subgroup& o) const {
  for (size_t i = 0; i < mask.size(); ++i)
    if (mask[i] & ~o.mask[i]) return false;
  return true;
}

bool Subgroup::is_closed() const {
  if (!contains(parent->identity())) return false;
  for (int a : members) {
    if (!contains(parent->inv(a))) return false;
    for (int b : members)
      if (!contains(parent->mul(a, b))) return false;
  }
  return true;
}

Subgroup Subgroup::conjugated(int g) const {
  std::vector<int> m;
  m.reserve(members.size());
  for (int e : members) m.push_back(parent->conj(g, e));
  return Subgroup(parent, std::move(m));
}

Subgroup Subgroup::generate(const GroupPtr& g, const std::vector<int>& seed) {
  std::vector<int> list = {g->identity()};
  std::vector<uint64_t> in(mask_words(g->order()), 0);
  auto add = [&](int e) {
    if ((in[e >> 6] >> (e & 63)) & 1) return;
    in[e >> 6] |= 1ULL << (e & 63);
    list.push_back(e);
  };
  in[0] |= 1;
  for (int e : seed) add(e);
  for (size_t i = 0; i < list.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      add(g->mul(list[i], list[j]));
      add(g->mul(list[j], list[i]));
    }
  }
  return Subgroup(g, std::move(list));
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, int order_bound) {
  if (g->order() > order_bound)
    throw GroupTooLarge("group of order " + std::to_string(g->order()) +
                        " exceeds the enumeration bound " + std::to_string(order_bound));
  // Distinct cyclic subgroups seed the closure lattice.
  std::map<std::vector<uint64_t>, int> seen;
  std::vector<Subgroup> cyclics;
  for (int e = 0; e < g->order(); ++e) {
    Subgroup c = Subgroup::generate(g, {e});
    if (seen.emplace(c.mask, static_cast<int>(cyclics.size())).second)
      cyclics.push_back(std::move(c));
  }
  std::map<std::vector<uint64_t>, int> all;
  std::vector<Subgroup> list;
  Subgroup triv = Subgroup::generate(g, {});
  all.emplace(triv.mask, 0);
  list.push_back(std::move(triv));
  for (size_t i = 0; i < list.size(); ++i) {
    for (const auto& c : cyclics) {
      if (c.subset_of(list[i])) continue;
      std::vector<int> seed = list[i].members;
      seed.insert(seed.end(), c.members.begin(), c.members.end());
      Subgroup next = Subgroup::generate(g, seed);
      if (all.emplace(next.mask, static_cast<int>(list.size())).second)
        list.push_back(std::move(next));
    }
  }
  std::sort(list.begin(), list.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return list;
}

void CcsTable::compute_classes() {
  const int S = static_cast<int>(subgroups_.size());
  for (int i = 0; i < S; ++i) mask_index_.emplace(subgroups_[i].mask, i);
  sub_class_.assign(S, -1);
  for (int i = 0; i < S; ++i) {
    if (sub_class_[i] >= 0) continue;
    const int cid = static_cast<int>(classes_.size());
    CcsClass cls;
    cls.representative = subgroups_[i];  // first in (order, lex) sort = canonical rep
    // Orbit under conjugation.
    std::vector<int> orbit = {i};
    sub_class_[i] = cid;
    for (size_t q = 0; q < orbit.size(); ++q) {
      for (int gidx : group_->generators()) {
        Subgroup conj = subgroups_[orbit[q]].conjugated(gidx);
        int idx = mask_index_.at(conj.mask);
        if (sub_class_[idx] < 0) {
          sub_class_[idx] = cid;
          orbit.push_back(idx);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    cls.member_subgroups = std::move(orbit);
    classes_.push_back(std::move(cls));
  }
  for (int c = 0; c < class_count(); ++c) {
    if (classes_[c].representative.order() == group_->order()) top_class_ = c;
  }
}

void CcsTable::compute_order_and_counts() {
  const int C = class_count();
  const int n = group_->order();
  for (auto& cls : classes_) {
    // Normalizer by direct scan; cross-checked against the orbit size.
    long long nh = 0;
    for (int g = 0; g < n; ++g)
      if (cls.representative.conjugated(g).mask == cls.representative.mask) ++nh;
    cls.normalizer_order = nh;
    if (nh * static_cast<long long>(cls.member_subgroups.size()) != n)
      throw Error("normalizer / class-size mismatch (internal)");
    if (nh % cls.representative.order() != 0)
      throw Error("normalizer order not divisible by subgroup order (internal)");
    cls.weyl_order = nh / cls.representative.order();
  }
  n_counts_.assign(static_cast<size_t>(C) * C, 0);
  leq_.assign(static_cast<size_t>(C) * C, 0);
  for (int i = 0; i < C; ++i) {
    const Subgroup& h = classes_[i].representative;
    for (int j = 0; j < C; ++j) {
      long long cnt = 0;
      for (int sidx : classes_[j].member_subgroups)
        if (h.subset_of(subgroups_[sidx])) ++cnt;
      n_counts_[static_cast<size_t>(i) * C + j] = cnt;
      leq_[static_cast<size_t>(i) * C + j] = cnt > 0 ? 1 : 0;
    }
  }
}

int CcsTable::class_of(const Subgroup& s) const {
  return sub_class_[subgroup_index_of(s)];
}

int CcsTable::subgroup_index_of(const Subgroup& s) const {
  auto it = mask_index_.find(s.mask);
  if (it == mask_index_.end()) throw Error("subgroup not found in table (not closed?)");
  return it->second;
}

int CcsTable::class_by_name(const std::string& name) const {
  for (int i = 0; i < class_count(); ++i)
    if (classes_[i].name == name) return i;
  return -1;
}

std::vector<int> CcsTable::descending_order(int variant) const {
  std::vector<int> order(classes_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int oa = classes_[a].representative.order();
    int ob = classes_[b].representative.order();
    if (oa != ob) return oa > ob;
    return variant == 0 ? a < b : a > b;
  });
  return order;
}

CcsPtr CcsTable::build(const GroupPtr& g, int order_bound) {
  auto table = std::shared_ptr<CcsTable>(new CcsTable());
  table->group_ = g;
  table->subgroups_ = enumerate_subgroups(g, order_bound);
  table->compute_classes();
  table->compute_order_and_counts();
  table->assign_names();
  table->product_cache_ = std::make_unique<BurnsideProductCache>();
  return table;
}

CcsPtr ccs(const GroupPtr& g, int order_bound) { return CcsTable::build(g, order_bound); }

// ---------------------------------------------------------------------------
// Naming
// ---------------------------------------------------------------------------

namespace {

bool is_klein_d1z2(const GroupDescriptor& d) {
  return d.kind == GroupDescriptor::Kind::product && d.factors.size() == 2 &&
         d.factors[0].kind == GroupDescriptor::Kind::dihedral && d.factors[0].n == 1 &&
         (d.factors[1].kind == GroupDescriptor::Kind::cyclic && d.factors[1].n == 2);
}

std::string klein_subgroup_name(const Subgroup& u, bool gap) {
  // Elements of D1 x Z2: 0=(1,1), 1=(1,-1), 2=(k,1), 3=(k,-1).
  switch (u.order()) {
    case 1:
      return "Z1";
    case 4:
      return gap ? "D1p" : "D1xZ2";
    case 2:
      if (u.contains(2)) return "D1";
      if (u.contains(1)) return gap ? "Z1p" : "Z2";
      return "D1z";
    default:
      throw Error("impossible Klein subgroup order");
  }
}

bool subgroup_is_cyclic(const FiniteGroup& g, const Subgroup& u) {
  for (int e : u.members)
    if (g.element_order(e) == u.order()) return true;
  return false;
}

std::string dihedral_subgroup_name(const GroupPtr& g, const Subgroup& u) {
  const int n = g->descriptor().n;
  bool has_reflection = false;
  for (int e : u.members)
    if (e >= n) {
      has_reflection = true;
      break;
    }
  if (!has_reflection) return "Z" + std::to_string(u.order());
  return "D" + std::to_string(u.order() / 2);
}

// Structure name for an abstract quotient given by cosets of Z in H.
std::string quotient_name(const GroupPtr& g, const std::vector<int>& h_members,
                          const Subgroup& z) {
  const int q = static_cast<int>(h_members.size()) / z.order();
  if (q == 1) return "Z1";
  // Coset representatives and coset multiplication.
  std::vector<int> reps;
  auto coset_of = [&](int e) -> int {
    for (size_t i = 0; i < reps.size(); ++i)
      if (z.contains(g->mul(g->inv(reps[i]), e))) return static_cast<int>(i);
    reps.push_back(e);
    return static_cast<int>(reps.size()) - 1;
  };
  for (int e : h_members) coset_of(e);
  auto qmul = [&](int a, int b) { return coset_of(g->mul(reps[a], reps[b])); };
  auto qorder = [&](int a) {
    int o = 1, x = a;
    while (x != 0) {
      x = qmul(x, a);
      ++o;
    }
    return o;
  };
  for (int a = 0; a < q; ++a)
    if (qorder(a) == q) return "Z" + std::to_string(q);
  // Dihedral test: index-2 cyclic subgroup inverted by an outside involution.
  for (int c = 0; c < q; ++c) {
    if (qorder(c) != q / 2) continue;
    std::vector<int> cyc;
    int x = 0;
    do {
      cyc.push_back(x);
      x = qmul(x, c);
    } while (x != 0);
    const int c_inv = cyc[static_cast<size_t>(q / 2 - 1)];
    for (int t = 0; t < q; ++t) {
      if (std::find(cyc.begin(), cyc.end(), t) != cyc.end()) continue;
      if (qmul(t, t) != 0) continue;
      if (qmul(qmul(t, c), t) == c_inv) return "D" + std::to_string(q / 2);
    }
  }
  return "Q" + std::to_string(q);
}

std::string maybe_paren(const std::string& s) {
  if (s.find('x') != std::string::npos || s.find(' ') != std::string::npos)
    return "(" + s + ")";
  return s;
}

}  // namespace

std::string subgroup_name(const GroupPtr& g, const Subgroup& u, bool gap_names) {
  const auto& d = g->descriptor();
  if (is_klein_d1z2(d)) return klein_subgroup_name(u, gap_names);
  switch (d.kind) {
    case GroupDescriptor::Kind::trivial:
      return "Z1";
    case GroupDescriptor::Kind::cyclic:
      return "Z" + std::to_string(u.order());
    case GroupDescriptor::Kind::dihedral:
      return dihedral_subgroup_name(g, u);
    case GroupDescriptor::Kind::product: {
      if (g->right()->order() == 1) {
        Subgroup h(g->left(), [&] {
          std::vector<int> m;
          for (int e : u.members) m.push_back(g->left_part(e));
          return m;
        }());
        return subgroup_name(g->left(), h, gap_names);
      }
      return goursat_name(g, u, gap_names).rendered;
    }
    case GroupDescriptor::Kind::custom: {
      if (subgroup_is_cyclic(*g, u)) return "Z" + std::to_string(u.order());
      return "U" + std::to_string(u.order());
    }
  }
  throw Error("unreachable");
}

GoursatName goursat_name(const GroupPtr& g, const Subgroup& u, bool gap_names) {
  if (!g->is_product())
    throw NotAProduct("goursat_name: group " + g->descriptor().to_string() +
                      " carries no direct-product structure");
  const GroupPtr& A = g->left();
  const GroupPtr& B = g->right();
  std::vector<int> h_m, k_m, z_m, r_m;
  for (int e : u.members) {
    int a = g->left_part(e), b = g->right_part(e);
    h_m.push_back(a);
    k_m.push_back(b);
    if (b == B->identity()) z_m.push_back(a);
    if (a == A->identity()) r_m.push_back(b);
  }
  Subgroup h(A, h_m), k(B, k_m), z(A, z_m), r(B, r_m);
  GoursatName out;
  out.H = subgroup_name(A, h, gap_names);
  out.K = subgroup_name(B, k, gap_names);
  out.Z = subgroup_name(A, z, gap_names);
  out.R = subgroup_name(B, r, gap_names);
  out.L = quotient_name(A, h.members, z);
  // |U| = |H| * |K| / |L| with |L| = |H| / |Z|
  const long long lorder = static_cast<long long>(h.order()) / z.order();
  if (static_cast<long long>(u.order()) * lorder !=
      static_cast<long long>(h.order()) * k.order())
    throw Error("goursat_name: order identity |U|*|L| == |H|*|K| failed (input not a subgroup?)");
  if (z.order() == h.order()) {
    out.rendered = out.H + " x " + out.K;
  } else {
    out.rendered = maybe_paren(out.H) + "^{" + out.Z + "} x_{" + out.L + "}^{" + out.R +
                   "} " + out.K;
  }
  return out;
}

void CcsTable::assign_names() {
  const bool product = group_->is_product();
  const bool standalone_klein = is_klein_d1z2(group_->descriptor());
  for (int pass = 0; pass < 2; ++pass) {
    bool gap = pass == 1;
    std::map<std::string, int> used;
    for (int i = 0; i < class_count(); ++i) {
      std::string name;
      if (product && i == top_class_ && !(gap && standalone_klein)) {
        name = "G";  // gap pass keeps D1p for the standalone order-4 group
      } else {
        name = subgroup_name(group_, classes_[i].representative, gap);
      }
      int& count = used[name];
      ++count;
      if (count > 1) name += "_" + std::to_string(count);
      (gap ? classes_[i].gap_name : classes_[i].name) = name;
    }
  }
}

// ---------------------------------------------------------------------------
// Cache document
// ---------------------------------------------------------------------------

std::string CcsTable::to_text() const {
  std::ostringstream os;
  os << "eqdeg-ccs/1\n";
  os << "group " << group_->descriptor().to_string() << "\n";
  os << "order " << group_->order() << "\n";
  os << "subgroups " << subgroups_.size() << "\n";
  for (const auto& s : subgroups_) {
    for (size_t i = 0; i < s.members.size(); ++i)
      os << (i ? " " : "") << s.members[i];
    os << "\n";
  }
  os << "classes " << classes_.size() << "\n";
  for (const auto& c : classes_) {
    os << "class " << c.weyl_order << " " << c.normalizer_order << " ; ";
    for (size_t i = 0; i < c.member_subgroups.size(); ++i)
      os << (i ? " " : "") << c.member_subgroups[i];
    os << " ; " << c.name << " ; " << c.gap_name << "\n";
  }
  os << "leq\n";
  const int C = class_count();
  for (int i = 0; i < C; ++i) {
    for (int j = 0; j < C; ++j) os << (leq(i, j) ? '1' : '0');
    os << "\n";
  }
  os << "ncounts\n";
  for (int i = 0; i < C; ++i)
    for (int j = 0; j < C; ++j)
      if (n_count(i, j) != 0) os << i << " " << j << " " << n_count(i, j) << "\n";
  os << "end\n";
  return os.str();
}

CcsPtr CcsTable::from_text(const std::string& doc, const GroupPtr& g) {
  std::istringstream is(doc);
  std::string line, word;
  if (!std::getline(is, line) || line != "eqdeg-ccs/1")
    throw Error("ccs cache: bad schema line");
  std::string gdesc;
  is >> word >> gdesc;
  if (word != "group" || gdesc != g->descriptor().to_string())
    throw Error("ccs cache: group descriptor mismatch");
  int order = 0;
  is >> word >> order;
  if (word != "order" || order != g->order()) throw Error("ccs cache: order mismatch");
  size_t nsub = 0;
  is >> word >> nsub;
  if (word != "subgroups") throw Error("ccs cache: missing subgroups");
  std::getline(is, line);
  auto table = std::shared_ptr<CcsTable>(new CcsTable());
  table->group_ = g;
  for (size_t i = 0; i < nsub; ++i) {
    std::getline(is, line);
    std::istringstream ls(line);
    std::vector<int> members;
    int v;
    while (ls >> v) members.push_back(v);
    Subgroup s(g, std::move(members));
    if (!s.is_closed()) throw Error("ccs cache: stored member set is not a subgroup");
    table->subgroups_.push_back(std::move(s));
  }
  size_t ncls = 0;
  is >> word >> ncls;
  if (word != "classes") throw Error("ccs cache: missing classes");
  std::getline(is, line);
  table->sub_class_.assign(nsub, -1);
  for (size_t i = 0; i < table->subgroups_.size(); ++i)
    table->mask_index_.emplace(table->subgroups_[i].mask, static_cast<int>(i));
  for (size_t c = 0; c < ncls; ++c) {
    std::getline(is, line);
    std::istringstream ls(line);
    CcsClass cls;
    std::string tag, sep;
    ls >> tag >> cls.weyl_order >> cls.normalizer_order >> sep;
    if (tag != "class" || sep != ";") throw Error("ccs cache: bad class line");
    std::string tok;
    while (ls >> tok && tok != ";") cls.member_subgroups.push_back(std::stoi(tok));
    std::string rest;
    std::getline(ls, rest);
    auto semi = rest.find(';');
    auto trim = [](std::string s) {
      while (!s.empty() && s.front() == ' ') s.erase(s.begin());
      while (!s.empty() && s.back() == ' ') s.pop_back();
      return s;
    };
    cls.name = trim(rest.substr(0, semi));
    cls.gap_name = trim(rest.substr(semi + 1));
    if (cls.member_subgroups.empty()) throw Error("ccs cache: empty class");
    cls.representative = table->subgroups_[cls.member_subgroups.front()];
    for (int sidx : cls.member_subgroups) table->sub_class_[sidx] = static_cast<int>(c);
    table->classes_.push_back(std::move(cls));
  }
  const int C = table->class_count();
  is >> word;
  if (word != "leq") throw Error("ccs cache: missing leq");
  std::getline(is, line);
  table->leq_.assign(static_cast<size_t>(C) * C, 0);
  for (int i = 0; i < C; ++i) {
    std::getline(is, line);
    for (int j = 0; j < C; ++j)
      table->leq_[static_cast<size_t>(i) * C + j] = line[j] == '1';
  }
  is >> word;
  if (word != "ncounts") throw Error("ccs cache: missing ncounts");
  table->n_counts_.assign(static_cast<size_t>(C) * C, 0);
  int i, j;
  long long v;
  while (is >> word && word != "end") {
    i = std::stoi(word);
    is >> j >> v;
    table->n_counts_[static_cast<size_t>(i) * C + j] = v;
  }
  for (int c = 0; c < C; ++c)
    if (table->classes_[c].representative.order() == g->order()) table->top_class_ = c;
  table->product_cache_ = std::make_unique<BurnsideProductCache>();
  return table;
}

}  // namespace eqdeg
