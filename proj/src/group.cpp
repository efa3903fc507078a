#include "eqdeg/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "eqdeg/errors.hpp"

namespace eqdeg {

std::string GroupDescriptor::to_string() const {
  switch (kind) {
    case Kind::trivial:
      return "Z1";
    case Kind::cyclic:
      return "Z" + std::to_string(n);
    case Kind::dihedral:
      return "D" + std::to_string(n);
    case Kind::custom:
      return "custom:" + custom_name;
    case Kind::product: {
      // Flatten left-nested products for display: product(D1,Z2,D3).
      std::vector<std::string> parts;
      const GroupDescriptor* cur = this;
      while (cur->kind == Kind::product) {
        parts.push_back(cur->factors[1].to_string());
        cur = &cur->factors[0];
      }
      parts.push_back(cur->to_string());
      std::string out = "product(";
      for (size_t i = parts.size(); i-- > 0;) {
        out += parts[i];
        if (i != 0) out += ",";
      }
      return out + ")";
    }
  }
  return "?";
}

bool GroupDescriptor::operator==(const GroupDescriptor& o) const {
  return to_string() == o.to_string();
}

GroupDescriptor GroupDescriptor::parse(const std::string& text) {
  auto atom = [](const std::string& s) -> GroupDescriptor {
    GroupDescriptor d;
    if (s == "Z1" || s == "trivial") {
      d.kind = Kind::trivial;
      return d;
    }
    if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'D')) {
      d.kind = s[0] == 'Z' ? Kind::cyclic : Kind::dihedral;
      d.n = std::stoi(s.substr(1));
      if (d.n < 1) throw Error("bad group atom: " + s);
      if (d.kind == Kind::cyclic && d.n == 1) d.kind = Kind::trivial;
      return d;
    }
    if (s.rfind("dihedral:", 0) == 0) {
      d.kind = Kind::dihedral;
      d.n = std::stoi(s.substr(9));
      return d;
    }
    if (s.rfind("cyclic:", 0) == 0) {
      d.kind = Kind::cyclic;
      d.n = std::stoi(s.substr(7));
      if (d.n == 1) d.kind = Kind::trivial;
      return d;
    }
    throw Error("cannot parse group descriptor atom: " + s);
  };
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.rfind("product(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(8, s.size() - 9);
    std::vector<std::string> parts;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= inner.size(); ++i) {
      if (i == inner.size() || (inner[i] == ',' && depth == 0)) {
        parts.push_back(inner.substr(start, i - start));
        start = i + 1;
      } else if (inner[i] == '(') {
        ++depth;
      } else if (inner[i] == ')') {
        --depth;
      }
    }
    if (parts.size() < 2) throw Error("product descriptor needs >= 2 factors: " + text);
    GroupDescriptor acc = parse(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i) {
      GroupDescriptor p;
      p.kind = Kind::product;
      p.factors = {acc, parse(parts[i])};
      acc = p;
    }
    return acc;
  }
  return atom(s);
}

int FiniteGroup::fixed_points(int g) const {
  int c = 0;
  for (int p = 0; p < points_; ++p)
    if (act(g, p) == p) ++c;
  return c;
}

int FiniteGroup::element_order(int e) const {
  int o = 1;
  int x = e;
  while (x != identity()) {
    x = mul(x, e);
    ++o;
  }
  return o;
}

void FiniteGroup::finalize() {
  const int n = order_;
  // Identity must be two-sided neutral.
  for (int a = 0; a < n; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      throw Error("group table: element 0 is not a two-sided identity");
  // Two-sided inverses.
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0) throw Error("group table: element without two-sided inverse");
  }
  // Associativity (n <= ~200, cubic scan is fine).
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw Error("group table: multiplication is not associative");
  // Element conjugacy classes.
  elt_class_.assign(n, -1);
  for (int e = 0; e < n; ++e) {
    if (elt_class_[e] >= 0) continue;
    int id = elt_class_count_++;
    elt_class_reps_.push_back(e);
    for (int g = 0; g < n; ++g) elt_class_[conj(g, e)] = id;
  }
  if (generators_.empty()) {
    for (int e = 1; e < n; ++e) generators_.push_back(e);
  }
}

GroupPtr FiniteGroup::dihedral(int n) {
  if (n < 1) throw Error("dihedral: n must be >= 1");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  const int N = 2 * n;
  g->order_ = N;
  g->mul_.assign(static_cast<size_t>(N) * N, 0);
  // Element (k, eps) = r^k * kappa^eps at index eps*n + k.
  auto idx = [n](int k, int eps) { return eps * n + ((k % n) + n) % n; };
  for (int k1 = 0; k1 < n; ++k1)
    for (int e1 = 0; e1 < 2; ++e1)
      for (int k2 = 0; k2 < n; ++k2)
        for (int e2 = 0; e2 < 2; ++e2)
          g->mul_[static_cast<size_t>(idx(k1, e1)) * N + idx(k2, e2)] =
              idx(k1 + (e1 ? -k2 : k2), e1 ^ e2);
  g->names_.resize(N);
  for (int k = 0; k < n; ++k) {
    g->names_[idx(k, 0)] = k == 0 ? "e" : (k == 1 ? "r" : "r^" + std::to_string(k));
    g->names_[idx(k, 1)] = k == 0 ? "s" : (k == 1 ? "s*r" : "s*r^" + std::to_string(k));
  }
  // Permutation action on {0..n-1}: r^k kappa^eps maps x to (-1)^eps x + k.
  g->points_ = n;
  g->action_.assign(static_cast<size_t>(N) * n, 0);
  for (int k = 0; k < n; ++k)
    for (int e = 0; e < 2; ++e)
      for (int x = 0; x < n; ++x)
        g->action_[static_cast<size_t>(idx(k, e)) * n + x] =
            (((e ? -x : x) + k) % n + n) % n;
  g->generators_ = n == 1 ? std::vector<int>{idx(0, 1)}
                          : std::vector<int>{idx(1, 0), idx(0, 1)};
  g->desc_.kind = GroupDescriptor::Kind::dihedral;
  g->desc_.n = n;
  g->finalize();
  return g;
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error("cyclic: n must be >= 1");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = n;
  g->mul_.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->mul_[static_cast<size_t>(a) * n + b] = (a + b) % n;
  g->names_.resize(n);
  if (n == 2) {
    g->names_[0] = "1";
    g->names_[1] = "-1";
  } else {
    for (int a = 0; a < n; ++a)
      g->names_[a] = a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a));
  }
  if (n > 1) g->generators_ = {1};
  g->desc_.kind = n == 1 ? GroupDescriptor::Kind::trivial : GroupDescriptor::Kind::cyclic;
  g->desc_.n = n;
  if (n == 1) {
    g->points_ = 1;
    g->action_.assign(1, 0);
  }
  g->finalize();
  return g;
}

GroupPtr FiniteGroup::trivial() { return cyclic(1); }

GroupPtr FiniteGroup::product(const GroupPtr& a, const GroupPtr& b) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  const int na = a->order(), nb = b->order(), n = na * nb;
  g->order_ = n;
  g->left_ = a;
  g->right_ = b;
  g->mul_.assign(static_cast<size_t>(n) * n, 0);
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          g->mul_[static_cast<size_t>(a1 * nb + b1) * n + (a2 * nb + b2)] =
              a->mul(a1, a2) * nb + b->mul(b1, b2);
  g->names_.resize(n);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      std::string ln = a->element_name(x), rn = b->element_name(y);
      // flatten nested tuples: "(a,b)" + c -> "(a,b,c)"
      if (!ln.empty() && ln.front() == '(' && ln.back() == ')')
        ln = ln.substr(1, ln.size() - 2);
      g->names_[x * nb + y] = "(" + ln + "," + rn + ")";
    }
  for (int e : a->generators()) g->generators_.push_back(e * nb);
  for (int e : b->generators()) g->generators_.push_back(e);
  g->desc_.kind = GroupDescriptor::Kind::product;
  g->desc_.factors = {a->descriptor(), b->descriptor()};
  g->finalize();
  return g;
}

GroupPtr FiniteGroup::from_permutations(const std::string& name, int npoints,
                                        const std::vector<std::vector<int>>& perm_gens,
                                        int order_bound) {
  if (npoints < 1) throw Error("from_permutations: need at least one point");
  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, int> index;
  std::vector<int> id(npoints);
  for (int i = 0; i < npoints; ++i) id[i] = i;
  elems.push_back(id);
  index[id] = 0;
  auto compose = [&](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(npoints);
    for (int i = 0; i < npoints; ++i) h[i] = f[g[i]];
    return h;
  };
  for (size_t i = 0; i < elems.size(); ++i) {
    for (const auto& p : perm_gens) {
      auto next = compose(p, elems[i]);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(next);
        if (static_cast<int>(elems.size()) > order_bound)
          throw GroupTooLarge("permutation group exceeds order bound " +
                              std::to_string(order_bound));
      }
    }
  }
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  const int n = static_cast<int>(elems.size());
  g->order_ = n;
  g->mul_.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g->mul_[static_cast<size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
  g->points_ = npoints;
  g->action_.assign(static_cast<size_t>(n) * npoints, 0);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < npoints; ++x)
      g->action_[static_cast<size_t>(a) * npoints + x] = elems[a][x];
  g->names_.resize(n);
  for (int a = 0; a < n; ++a) {
    // cycle notation, 1-based
    std::vector<bool> seen(npoints, false);
    std::string s;
    for (int start = 0; start < npoints; ++start) {
      if (seen[start] || elems[a][start] == start) continue;
      s += "(";
      int x = start;
      bool first = true;
      while (!seen[x]) {
        seen[x] = true;
        if (!first) s += ",";
        s += std::to_string(x + 1);
        first = false;
        x = elems[a][x];
      }
      s += ")";
    }
    g->names_[a] = s.empty() ? "()" : s;
  }
  for (const auto& p : perm_gens) g->generators_.push_back(index.at(p));
  g->desc_.kind = GroupDescriptor::Kind::custom;
  g->desc_.custom_name = name;
  g->finalize();
  return g;
}

GroupPtr FiniteGroup::build(const GroupDescriptor& d) {
  switch (d.kind) {
    case GroupDescriptor::Kind::trivial:
      return trivial();
    case GroupDescriptor::Kind::cyclic:
      return cyclic(d.n);
    case GroupDescriptor::Kind::dihedral:
      return dihedral(d.n);
    case GroupDescriptor::Kind::product:
      return product(build(d.factors[0]), build(d.factors[1]));
    case GroupDescriptor::Kind::custom:
      throw Error("cannot build a custom group from a descriptor alone");
  }
  throw Error("unreachable");
}

std::vector<int> parse_permutation(const std::string& word, int npoints) {
  std::vector<int> img(npoints);
  for (int i = 0; i < npoints; ++i) img[i] = i;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < word.size() && std::isspace(static_cast<unsigned char>(word[pos]))) ++pos;
  };
  skip_ws();
  while (pos < word.size()) {
    if (word[pos] != '(') throw Error("bad permutation word: " + word);
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_ws();
      if (pos < word.size() && word[pos] == ')') {
        ++pos;
        break;
      }
      size_t start = pos;
      while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
      if (start == pos) throw Error("bad permutation word: " + word);
      int v = std::stoi(word.substr(start, pos - start));
      if (v < 1 || v > npoints)
        throw Error("permutation point out of range in: " + word);
      cycle.push_back(v - 1);
      skip_ws();
      if (pos < word.size() && word[pos] == ',') ++pos;
    }
    for (size_t i = 0; i < cycle.size(); ++i)
      img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return img;
}

}  // namespace eqdeg
