#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "eqdeg/degree.hpp"
#include "eqdeg/errors.hpp"

using namespace eqdeg;

namespace {

GroupPtr klein() {
  return FiniteGroup::product(FiniteGroup::dihedral(1), FiniteGroup::cyclic(2));
}

struct Setup {
  GroupPtr gamma, g;
  CcsPtr table;
  IsotypicDecomposition decomp;
  std::vector<SignedPair> pairs;
};

Setup setup(int n) {
  Setup s;
  s.gamma = FiniteGroup::dihedral(n);
  s.g = FiniteGroup::product(klein(), s.gamma);
  s.table = ccs(s.g);
  s.decomp = isotypic_decomposition(s.gamma);
  s.pairs = signed_irreps(s.decomp, s.g);
  return s;
}

BurnsideElement named(const CcsTable& t, const std::vector<std::pair<const char*, int>>& terms) {
  BurnsideElement e(&t);
  for (auto [name, c] : terms) {
    int cls = t.class_by_name(name);
    REQUIRE(cls >= 0);
    e.set_coeff(cls, BigInt(c));
  }
  return e;
}

// Explicit real matrix model of U_l^{sign} over (D1 x Z2) x D_n, used as an
// independent numeric oracle for orbit-type realization. Element
// (a, r^c kappa^eps) acts on R^2 (or R^1 for l = 0) by
// chi_{V±}(a) * rotation(2*pi*l*c/n) * conj^eps.
struct ModelRep {
  int n, l, sign, dim;
  const FiniteGroup* g;
  void apply(int elem, const double* x, double* out) const {
    int a = elem / (2 * n);
    int gam = elem % (2 * n);
    int c = gam % n, eps = gam / n;
    double s = 1.0;
    if (sign > 0)
      s = (a == 1 || a == 3) ? -1.0 : 1.0;  // V+: (1,-1) and (k,-1) act by -1
    else
      s = (a == 1 || a == 2) ? -1.0 : 1.0;  // V-: (1,-1) and (k,1) act by -1
    if (l == 0) {
      out[0] = s * x[0];
      out[1] = 0.0;
      return;
    }
    double vx = x[0], vy = eps ? -x[1] : x[1];
    double th = 2.0 * M_PI * l * c / n;
    out[0] = s * (std::cos(th) * vx - std::sin(th) * vy);
    out[1] = s * (std::sin(th) * vx + std::cos(th) * vy);
  }
};

}  // namespace

TEST_CASE("basic degree of the trivial irrep is -(G)") {
  auto s = setup(3);
  auto reps = irreps_of(s.g);
  const RealIrrep* triv = nullptr;
  for (const auto& r : reps)
    if (r.dim == 1 && fixed_dim(r, s.table->cls(s.table->top_class()).representative) == 1)
      triv = &r;
  REQUIRE(triv);
  BurnsideElement d = basic_degree(*triv, *s.table);
  CHECK(d == -BurnsideElement::unit(*s.table));
}

TEST_CASE("the four signed basic degrees over D1 x Z2 x D3") {
  auto s = setup(3);
  CHECK(basic_degree(s.pairs[0].minus, *s.table) ==
        named(*s.table, {{"G", 1}, {"D1z x D3", -1}}));
  CHECK(basic_degree(s.pairs[0].plus, *s.table) ==
        named(*s.table, {{"G", 1}, {"D1 x D3", -1}}));
  CHECK(basic_degree(s.pairs[1].minus, *s.table) ==
        named(*s.table, {{"G", 1},
                         {"D1z x D1", -1},
                         {"(D1xZ2)^{D1z} x_{Z2}^{Z1} D1", -1},
                         {"D1z x Z1", 1}}));
  CHECK(basic_degree(s.pairs[1].plus, *s.table) ==
        named(*s.table, {{"G", 1},
                         {"D1 x D1", -1},
                         {"(D1xZ2)^{D1} x_{Z2}^{Z1} D1", -1},
                         {"D1 x Z1", 1}}));
}

TEST_CASE("involution: deg^2 = (G) for every irreducible") {
  for (int n : {3, 5}) {
    auto s = setup(n);
    BurnsideElement unit = BurnsideElement::unit(*s.table);
    for (const auto& rep : irreps_of(s.g)) {
      BurnsideElement d = basic_degree(rep, *s.table);
      CHECK(d * d == unit);
      BigInt top = d.coeff(s.table->top_class());
      CHECK((top == BigInt(1) || top == BigInt(-1)));
    }
  }
}

TEST_CASE("recurrence round-trip reproduces (-1)^{dim V^H} for every class") {
  auto s = setup(3);
  for (const auto& rep : irreps_of(s.g)) {
    BurnsideElement d = basic_degree(rep, *s.table);
    for (int h = 0; h < s.table->class_count(); ++h) {
      BigInt sum;
      for (int k = 0; k < s.table->class_count(); ++k) {
        if (!s.table->leq(h, k)) continue;
        sum += d.coeff(k) * BigInt(s.table->n_count(h, k)) *
               BigInt(s.table->cls(k).weyl_order);
      }
      long long dim = fixed_dim(rep, s.table->cls(h).representative);
      CHECK(sum == BigInt(dim % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("recurrence is order independent") {
  auto s = setup(5);
  for (const auto& p : s.pairs) {
    CHECK(basic_degree(p.plus, *s.table, 0) == basic_degree(p.plus, *s.table, 1));
    CHECK(basic_degree(p.minus, *s.table, 0) == basic_degree(p.minus, *s.table, 1));
  }
}

TEST_CASE("linear isomorphism degrees reduce exponents mod 2") {
  auto s = setup(3);
  BurnsideElement unit = BurnsideElement::unit(*s.table);
  const RealIrrep* u0m = &s.pairs[0].minus;
  const RealIrrep* u1p = &s.pairs[1].plus;
  const RealIrrep* u1m = &s.pairs[1].minus;
  const RealIrrep* u0p = &s.pairs[0].plus;
  CHECK(linear_iso_degree({{u0m, 2}, {u1p, 4}}, *s.table) == unit);
  CHECK(linear_iso_degree({{u0m, 1}}, *s.table) == basic_degree(*u0m, *s.table));
  // deg0p * deg1p^3 * deg1m^3 = deg0p * deg1p * deg1m
  CHECK(linear_iso_degree({{u0p, 1}, {u1p, 3}, {u1m, 3}}, *s.table) ==
        linear_iso_degree({{u0p, 1}, {u1p, 1}, {u1m, 1}}, *s.table));
  CHECK_THROWS_AS(linear_iso_degree({{u0m, -1}}, *s.table), Error);
}

TEST_CASE("exponent reduction mod 2 equals literal repeated products") {
  auto s = setup(3);
  std::mt19937 rng(41);
  std::vector<const RealIrrep*> reps;
  for (const auto& p : s.pairs) {
    reps.push_back(&p.plus);
    reps.push_back(&p.minus);
  }
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<const RealIrrep*, long long>> assign;
    BurnsideElement literal = BurnsideElement::unit(*s.table);
    for (const RealIrrep* r : reps) {
      long long e = rng() % 5;
      assign.emplace_back(r, e);
      BurnsideElement d = basic_degree(*r, *s.table);
      for (long long i = 0; i < e; ++i) literal = literal * d;
    }
    CHECK(linear_iso_degree(assign, *s.table) == literal);
  }
}

TEST_CASE("maximal orbit types") {
  auto s = setup(3);
  // trivial irrep alone: only (G)
  auto reps = irreps_of(s.g);
  const RealIrrep* triv = nullptr;
  for (const auto& r : reps)
    if (r.dim == 1 && fixed_dim(r, s.table->cls(s.table->top_class()).representative) == 1)
      triv = &r;
  auto only_g = maximal_orbit_types({triv}, *s.table);
  REQUIRE(only_g.size() == 1);
  CHECK(only_g[0] == s.table->top_class());

  std::vector<const RealIrrep*> minus = {&s.pairs[0].minus, &s.pairs[1].minus};
  auto mm = maximal_orbit_types(minus, *s.table);
  std::set<std::string> names;
  for (int c : mm) names.insert(s.table->cls(c).name);
  CHECK(names == std::set<std::string>(
                     {"D1z x D3", "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1"}));

  std::vector<const RealIrrep*> all = {&s.pairs[0].plus, &s.pairs[0].minus,
                                       &s.pairs[1].plus, &s.pairs[1].minus};
  auto me = maximal_orbit_types(all, *s.table);
  std::set<std::string> enames;
  for (int c : me) enames.insert(s.table->cls(c).name);
  CHECK(enames == std::set<std::string>({"D1z x D3", "D1 x D3",
                                         "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1",
                                         "(D1xZ2)^{D1} x_{Z2}^{Z1} D1"}));
}

TEST_CASE("orbit types are witnessed by explicit points (numeric oracle)") {
  for (int n : {3, 5}) {
    auto s = setup(n);
    const FiniteGroup& g = *s.g;
    for (const auto& p : s.pairs) {
      for (int sign : {1, -1}) {
        const RealIrrep& rep = sign > 0 ? p.plus : p.minus;
        ModelRep model{n, p.l, sign, rep.dim, s.g.get()};
        // cross-check the model character against the exact one
        for (int e = 0; e < g.order(); ++e) {
          double m[2][2] = {{0, 0}, {0, 0}};
          double basis[2][2] = {{1, 0}, {0, 1}};
          for (int c = 0; c < rep.dim; ++c) {
            double out[2];
            model.apply(e, basis[c], out);
            for (int r = 0; r < rep.dim; ++r) m[r][c] = out[r];
          }
          double trace = rep.dim == 1 ? m[0][0] : m[0][0] + m[1][1];
          CHECK(std::fabs(trace - rep.chi(e).approx_real()) < 1e-9);
        }
        auto types = orbit_types({&rep}, *s.table);
        for (int cls : types) {
          const Subgroup& h = s.table->cls(cls).representative;
          // generic point of V^H by averaging a random vector over H
          std::mt19937 rng(12345 + cls);
          std::uniform_real_distribution<double> dist(-1.0, 1.0);
          bool witnessed = false;
          for (int attempt = 0; attempt < 20 && !witnessed; ++attempt) {
            double x[2] = {dist(rng), rep.dim == 2 ? dist(rng) : 0.0};
            double proj[2] = {0, 0};
            for (int e : h.members) {
              double out[2];
              model.apply(e, x, out);
              proj[0] += out[0];
              proj[1] += out[1];
            }
            proj[0] /= h.order();
            proj[1] /= h.order();
            if (std::fabs(proj[0]) + std::fabs(proj[1]) < 1e-6) continue;
            // exact stabilizer of the projected point
            std::vector<int> stab;
            for (int e = 0; e < g.order(); ++e) {
              double out[2];
              model.apply(e, proj, out);
              if (std::fabs(out[0] - proj[0]) + std::fabs(out[1] - proj[1]) < 1e-9)
                stab.push_back(e);
            }
            witnessed = s.table->class_of(Subgroup(s.g, stab)) == cls;
          }
          CHECK(witnessed);
        }
      }
    }
  }
}
