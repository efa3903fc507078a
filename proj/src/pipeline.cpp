#include "eqdeg/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqdeg/errors.hpp"
#include "eqdeg/version.hpp"

namespace eqdeg {

using nlohmann::json;

namespace {

Scalar scalar_from_json(const json& v) {
  if (v.is_number_integer()) return Scalar(Rational(v.get<long long>()));
  if (v.is_number_float()) return Scalar(v.get<double>());
  if (v.is_string()) return Scalar(Rational::parse(v.get<std::string>()));
  throw ConfigError("expected a number or exact-rational string, got " + v.dump());
}

Rational rational_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_float()) {
    // Exact coefficients only: accept floats that are short decimals and
    // round-trip exactly; anything else needs a "p/q" string.
    double d = v.get<double>();
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", d);
    try {
      Rational r = Rational::parse(buf);
      if (r.to_double() == d) return r;
    } catch (const Error&) {
      // fall through to the error below
    }
    throw ConfigError("coefficient " + v.dump() +
                      " is not exactly representable; write it as a \"p/q\" string");
  }
  throw ConfigError("expected an exact number, got " + v.dump());
}

}  // namespace

AnalysisConfig AnalysisConfig::from_json(const json& j) {
  AnalysisConfig cfg;
  if (!j.contains("group")) throw ConfigError("config: missing \"group\"");
  const json& g = j.at("group");
  if (g.contains("dihedral")) {
    cfg.group_kind = GroupKind::dihedral;
    cfg.dihedral_n = g.at("dihedral").get<int>();
  } else if (g.contains("trivial")) {
    cfg.group_kind = GroupKind::trivial;
  } else if (g.contains("custom")) {
    cfg.group_kind = GroupKind::custom;
    const json& c = g.at("custom");
    cfg.custom.name = c.value("name", "Gamma");
    cfg.custom.points = c.at("points").get<int>();
    for (const auto& w : c.at("generators")) cfg.custom.generators.push_back(w.get<std::string>());
    cfg.custom.cyclo_order = c.value("cyclo_order", 1);
    for (const auto& ir : c.at("irreps")) {
      CustomIrrepSpec spec;
      spec.name = ir.at("name").get<std::string>();
      for (const auto& kv : ir.at("values"))
        spec.values.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
      cfg.custom.irreps.push_back(std::move(spec));
    }
  } else {
    throw ConfigError("config: group must be dihedral, trivial or custom");
  }

  if (!j.contains("delays")) throw ConfigError("config: missing \"delays\"");
  for (const auto& d : j.at("delays")) {
    if (d.is_string())
      cfg.delays.push_back(Delay::parse(d.get<std::string>()));
    else if (d.is_number())
      cfg.delays.push_back(Delay::from_radians(d.get<double>()));
    else
      throw ConfigError("config: delay entries must be strings or numbers");
  }

  if (!j.contains("matrices")) throw ConfigError("config: missing \"matrices\"");
  const json& m = j.at("matrices");
  int forms = 0;
  if (m.contains("circulant")) {
    ++forms;
    std::vector<std::pair<Rational, Rational>> coeffs;
    for (const auto& row : m.at("circulant")) {
      if (!row.is_array() || row.size() != 2)
        throw ConfigError("config: circulant entries are [a_j, b_j] pairs");
      coeffs.emplace_back(rational_from_json(row.at(0)), rational_from_json(row.at(1)));
    }
    cfg.circulant = std::move(coeffs);
  }
  if (m.contains("mu_table")) {
    ++forms;
    std::vector<std::vector<Scalar>> rows;
    for (const auto& row : m.at("mu_table")) {
      std::vector<Scalar> r;
      for (const auto& v : row) r.push_back(scalar_from_json(v));
      rows.push_back(std::move(r));
    }
    cfg.mu_rows = std::move(rows);
  }
  if (m.contains("commuting")) {
    ++forms;
    std::vector<DenseMatrix> mats;
    for (const auto& mat : m.at("commuting")) {
      DenseMatrix dm;
      for (const auto& row : mat) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.get<double>());
        dm.push_back(std::move(r));
      }
      mats.push_back(std::move(dm));
    }
    cfg.commuting = std::move(mats);
  }
  if (forms != 1)
    throw ConfigError("config: exactly one of matrices.circulant / matrices.mu_table / "
                      "matrices.commuting must be present");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    cfg.tolerances.sym_tol = t.value("sym_tol", 1e-9);
    cfg.tolerances.sign_tol = t.value("sign_tol", 1e-9);
    cfg.tolerances.cluster_tol = t.value("cluster_tol", 1e-9);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    cfg.output.format = o.value("format", "text");
    if (cfg.output.format == "json-like" || cfg.output.format == "json")
      cfg.output.format = "machine";
    cfg.output.cache_dir = o.value("cache_dir", "");
    cfg.output.audit = o.value("audit", false);
    if (cfg.output.format != "text" && cfg.output.format != "machine")
      throw ConfigError("config: output.format must be \"text\" or \"machine\"");
  }
  if (j.contains("expected_negative_spectrum")) {
    cfg.has_expected = true;
    for (const auto& e : j.at("expected_negative_spectrum")) {
      ExpectedSpectrumEntry entry;
      entry.l = e.at("l").get<int>();
      entry.k = e.at("k").get<int>();
      entry.value = e.contains("value") ? scalar_from_json(e.at("value")) : Scalar(0.0);
      cfg.expected_spectrum.push_back(entry);
    }
  }
  if (j.contains("expected_maximal_types")) {
    const json& e = j.at("expected_maximal_types");
    if (e.contains("U-"))
      cfg.expected_maximal_uminus = e.at("U-").get<std::vector<std::string>>();
    if (e.contains("E")) cfg.expected_maximal_e = e.at("E").get<std::vector<std::string>>();
  }
  cfg.group_order_bound = j.value("group_order_bound", 200);
  return cfg;
}

AnalysisConfig AnalysisConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

// ---------------------------------------------------------------------------
// CCS cache
// ---------------------------------------------------------------------------

namespace {
std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}
}  // namespace

CcsPtr load_or_build_ccs(const GroupPtr& g, const std::string& cache_dir, int order_bound) {
  if (cache_dir.empty()) return ccs(g, order_bound);
  std::filesystem::path file =
      std::filesystem::path(cache_dir) /
      ("ccs_v" + sanitize(kVersion) + "_" + sanitize(g->descriptor().to_string()) + ".txt");
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return CcsTable::from_text(buf.str(), g);
    } catch (const Error&) {
      // stale or corrupt cache: fall through and rebuild
    }
  }
  CcsPtr table = ccs(g, order_bound);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  std::ofstream out(file);
  if (out) out << table->to_text();
  return table;
}

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------

AnalysisContext build_context(const AnalysisConfig& cfg) {
  AnalysisContext ctx;
  switch (cfg.group_kind) {
    case AnalysisConfig::GroupKind::dihedral: {
      if (cfg.dihedral_n < 1 || cfg.dihedral_n % 2 == 0)
        throw ConfigError("group.dihedral: n must be odd (the even-n pipeline is "
                          "not supported)");
      ctx.gamma = FiniteGroup::dihedral(cfg.dihedral_n);
      ctx.gamma_irreps = irreps_of(ctx.gamma);
      break;
    }
    case AnalysisConfig::GroupKind::trivial:
      ctx.gamma = FiniteGroup::trivial();
      ctx.gamma_irreps = irreps_of(ctx.gamma);
      break;
    case AnalysisConfig::GroupKind::custom: {
      CustomGroup cg = load_custom_group(cfg.custom, cfg.group_order_bound);
      ctx.gamma = cg.group;
      ctx.gamma_irreps = std::move(cg.irreps);
      break;
    }
  }
  GroupPtr klein = FiniteGroup::product(FiniteGroup::dihedral(1), FiniteGroup::cyclic(2));
  ctx.g = FiniteGroup::product(klein, ctx.gamma);
  ctx.table = load_or_build_ccs(ctx.g, cfg.output.cache_dir, cfg.group_order_bound);

  if (cfg.commuting) {
    if (cfg.group_kind != AnalysisConfig::GroupKind::trivial)
      throw ConfigError("matrices.commuting is the non-equivariant route; it requires "
                        "group.trivial (use circulant or mu_table with a symmetry group)");
    CommutingResult res = commuting_mu(*cfg.commuting, cfg.tolerances.cluster_tol);
    ctx.mu = std::move(res.mu);
    ctx.multiplicities = std::move(res.multiplicities);
    ctx.decomposition.gamma = ctx.gamma;
    for (size_t l = 0; l < ctx.multiplicities.size(); ++l) {
      IsotypicComponent comp;
      comp.irrep = ctx.gamma_irreps.front();  // trivial representation
      comp.multiplicity = ctx.multiplicities[l];
      comp.dim_Vl = ctx.multiplicities[l];
      ctx.decomposition.components.push_back(std::move(comp));
    }
  } else {
    ctx.decomposition = isotypic_decomposition(ctx.gamma, ctx.gamma_irreps);
    for (const auto& c : ctx.decomposition.components)
      ctx.multiplicities.push_back(c.multiplicity);
    if (cfg.circulant) {
      if (cfg.group_kind != AnalysisConfig::GroupKind::dihedral)
        throw ConfigError("matrices.circulant requires group.dihedral");
      ctx.mu = circulant_mu(*cfg.circulant, cfg.dihedral_n);
    } else {
      MuTable t;
      t.provenance = MuProvenance::user_supplied;
      t.mu = *cfg.mu_rows;
      t.m = static_cast<int>(t.mu.size()) - 1;
      t.cols = t.mu.empty() ? 0 : static_cast<int>(t.mu.front().size());
      for (const auto& row : t.mu)
        if (static_cast<int>(row.size()) != t.cols)
          throw ConfigError("matrices.mu_table: ragged rows");
      ctx.mu = std::move(t);
    }
    if (ctx.mu.cols != static_cast<int>(ctx.decomposition.components.size()))
      throw ConfigError("mu table has " + std::to_string(ctx.mu.cols) +
                        " columns, the isotypic decomposition has " +
                        std::to_string(ctx.decomposition.components.size()) +
                        " components");
  }

  ctx.signed_pairs = signed_irreps(ctx.decomposition, ctx.g);
  std::vector<const RealIrrep*> minus_reps, all_reps;
  for (const auto& p : ctx.signed_pairs) {
    ctx.deg_plus.push_back(basic_degree(p.plus, *ctx.table));
    ctx.deg_minus.push_back(basic_degree(p.minus, *ctx.table));
    minus_reps.push_back(&p.minus);
    all_reps.push_back(&p.plus);
    all_reps.push_back(&p.minus);
  }
  ctx.maximal_minus = maximal_orbit_types(minus_reps, *ctx.table);
  ctx.maximal_e = maximal_orbit_types(all_reps, *ctx.table);

  // Twisted order-2 subgroup D1z = {(1,1,e), (k,-1,e)} of G.
  const int gam = ctx.gamma->order();
  Subgroup d1z(ctx.g, {0, 3 * gam});
  ctx.d1z_class = ctx.table->class_of(d1z);

  if (cfg.group_kind == AnalysisConfig::GroupKind::dihedral && cfg.dihedral_n >= 3) {
    const int n = cfg.dihedral_n;
    for (int p = 3; p <= n; p += 2) {
      if (n % p != 0) continue;
      bool prime = true;
      for (int q = 3; q * q <= p; q += 2)
        if (p % q == 0) {
          prime = false;
          break;
        }
      if (!prime) continue;
      AnalysisContext::HsEntry e;
      e.prime = p;
      e.n_s = n / p;
      // H_s = (D1 x Z2)^{D1z} x_{Z2}^{Z_{n_s}} D_{n_s}: pairs (h, gamma) with
      // h in D1z  <=>  gamma a rotation of D_{n_s} = <r^p, s>.
      std::vector<int> members;
      for (int t = 0; t < e.n_s; ++t) {
        int rot = (t * p) % n;          // r^{tp}
        int refl = n + (t * p) % n;     // s * r^{tp}
        for (int a : {0, 3}) members.push_back(a * (2 * n) + rot);
        for (int a : {1, 2}) members.push_back(a * (2 * n) + refl);
      }
      e.class_index = ctx.table->class_of(Subgroup(ctx.g, std::move(members)));
      ctx.hs_family.push_back(e);
    }
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Omega and verdicts
// ---------------------------------------------------------------------------

BurnsideElement compute_omega(const SpectralProfile& profile, const AnalysisContext& ctx) {
  std::vector<std::pair<const RealIrrep*, long long>> assignments;
  for (size_t l = 0; l < ctx.signed_pairs.size(); ++l) {
    long long plus_exp = 0;
    for (int k = 0; k <= profile.k_max; ++k) plus_exp += profile.nu[l][k];
    long long minus_exp = profile.frak_m_l[l];
    assignments.emplace_back(&ctx.signed_pairs[l].plus, plus_exp);
    assignments.emplace_back(&ctx.signed_pairs[l].minus, minus_exp);
  }
  return BurnsideElement::unit(*ctx.table) - linear_iso_degree(assignments, *ctx.table);
}

long long frak_m_of_class(int cls, const AnalysisContext& ctx,
                          const std::vector<long long>& frak_m_l) {
  long long total = 0;
  for (size_t l = 0; l < frak_m_l.size(); ++l)
    if (!ctx.deg_minus[l].coeff(cls).is_zero()) total += frak_m_l[l];
  return total;
}

ExistenceReport existence_verdicts(const BurnsideElement& omega,
                                   const SpectralProfile& profile,
                                   const AnalysisContext& ctx) {
  ExistenceReport rep;
  rep.omega = omega;
  for (auto [l, k] : profile.negative_pairs) {
    int mult = ctx.decomposition.components[l].dim_Vl * (k == 0 ? 1 : 2);
    rep.negative_spectrum.emplace_back(profile.xi[l][k], std::make_pair(l, k), mult);
  }
  for (int cls : ctx.maximal_minus)
    rep.maximal_types_uminus.push_back(ctx.table->cls(cls).name);

  const bool omega_zero = omega.is_zero();
  for (int cls : ctx.maximal_minus) {
    Verdict v;
    v.class_index = cls;
    v.orbit_type = ctx.table->cls(cls).name;
    v.in_maximal_minus = true;
    v.frak_m_H = frak_m_of_class(cls, ctx, profile.frak_m_l);
    v.odd = v.frak_m_H % 2 != 0;
    BigInt coeff = omega.coeff(cls);
    v.coeff_omega = coeff.to_string();
    v.nonconstant = ctx.table->leq(ctx.d1z_class, cls);
    long long w = ctx.table->cls(cls).weyl_order;
    if (v.odd) {
      v.x_o = w == 2 ? 1 : 2;
      if (!(coeff == BigInt(v.x_o)))
        throw Error("theorem consistency violated at (" + v.orbit_type +
                    "): frak_m odd but coeff^H(omega) = " + coeff.to_string() +
                    " != x_o = " + std::to_string(v.x_o));
      v.conclusion = std::string("orbit of ") +
                     (v.nonconstant ? "non-constant " : "") +
                     "periodic solutions with isotropy exactly (" + v.orbit_type + ")";
    } else if (!coeff.is_zero()) {
      v.x_o = 0;
      v.conclusion = "existence by nonzero coefficient: solutions with symmetry at "
                     "least (" + v.orbit_type + ")" +
                     (v.nonconstant ? ", non-constant" : "");
    } else {
      v.x_o = 0;
      v.conclusion = "inconclusive for (" + v.orbit_type + ")";
    }
    rep.verdicts.push_back(std::move(v));
  }
  // Supplementary: nonzero omega coefficients outside M_G(U^-).
  for (const auto& [cls, coeff] : omega.coeffs()) {
    if (std::find(ctx.maximal_minus.begin(), ctx.maximal_minus.end(), cls) !=
        ctx.maximal_minus.end())
      continue;
    Verdict v;
    v.class_index = cls;
    v.orbit_type = ctx.table->cls(cls).name;
    v.frak_m_H = frak_m_of_class(cls, ctx, profile.frak_m_l);
    v.odd = v.frak_m_H % 2 != 0;
    v.coeff_omega = coeff.to_string();
    v.nonconstant = ctx.table->leq(ctx.d1z_class, cls);
    v.conclusion = "existence by nonzero coefficient: solutions with symmetry at least (" +
                   v.orbit_type + ")" + (v.nonconstant ? ", non-constant" : "");
    rep.verdicts.push_back(std::move(v));
  }
  if (omega_zero) {
    Verdict v;
    v.orbit_type = "-";
    v.conclusion = "method inconclusive: omega = 0, no verdict fires";
    rep.verdicts.push_back(std::move(v));
  }

  if (ctx.gamma->order() == 1) {
    NonEquivariantVerdict nv;
    nv.frak_m = 0;
    for (long long f : profile.frak_m_l) nv.frak_m += f;
    nv.odd = nv.frak_m % 2 != 0;
    nv.coeff_d1z = omega.coeff(ctx.d1z_class).to_string();
    nv.conclusion = nv.odd
                        ? "frak_m odd: a non-constant periodic solution exists"
                        : "frak_m even: the non-equivariant criterion is inconclusive";
    rep.non_equivariant = std::move(nv);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

std::string class_display(const CcsTable& t, int cls, bool gap) {
  return gap ? t.cls(cls).gap_name : t.cls(cls).name;
}

json burnside_json(const BurnsideElement& e, bool gap) {
  json arr = json::array();
  for (const auto& [name, coeff] : e.serialized(gap)) arr.push_back({name, coeff});
  return arr;
}

struct AuditData {
  std::vector<std::string> notes;
  std::optional<BurnsideElement> omega_expected;
  std::optional<ExistenceReport> report_expected;
  std::vector<long long> frak_m_l_expected;
};

// Profile built from a user-supplied expected negative spectrum.
SpectralProfile profile_from_expected(const std::vector<ExpectedSpectrumEntry>& entries,
                                      const AnalysisContext& ctx, int k_max) {
  SpectralProfile p;
  p.k_max = k_max;
  for (const auto& e : entries) p.k_max = std::max(p.k_max, e.k);
  const int cols = static_cast<int>(ctx.multiplicities.size());
  p.xi.assign(cols, std::vector<Scalar>(p.k_max + 1, Scalar(0.0)));
  p.nu.assign(cols, std::vector<int>(p.k_max + 1, 0));
  p.frak_m_l.assign(cols, 0);
  for (const auto& e : entries) {
    if (e.l < 0 || e.l >= cols)
      throw ConfigError("expected_negative_spectrum: l out of range");
    p.xi[e.l][e.k] = e.value;
    p.nu[e.l][e.k] = ctx.multiplicities[e.l];
    p.negative_pairs.emplace_back(e.l, e.k);
    if (e.k >= 1) p.frak_m_l[e.l] += ctx.multiplicities[e.l];
  }
  return p;
}

}  // namespace

AnalysisResult run_analysis(const AnalysisConfig& cfg) {
  AnalysisContext ctx = build_context(cfg);
  DelaySet delays = validate_delays(cfg.delays, cfg.tolerances.sym_tol);
  if (ctx.mu.m != delays.m)
    throw ConfigError("mu table has " + std::to_string(ctx.mu.m + 1) + " rows (j = 0.." +
                      std::to_string(ctx.mu.m) + "), but " + std::to_string(delays.m) +
                      " delays were given");
  validate_mu_pairing(ctx.mu, cfg.tolerances.sym_tol);

  std::optional<SpectralProfile> profile;
  std::optional<DegenerateLinearization> degenerate;
  try {
    profile = analyze_spectrum(ctx.mu, delays, ctx.multiplicities, cfg.tolerances.sign_tol);
  } catch (const DegenerateLinearization& e) {
    degenerate = e;
  }
  std::vector<SpectrumAuditEntry> grid =
      audit_spectrum(ctx.mu, delays, cfg.tolerances.sign_tol);

  std::optional<BurnsideElement> omega;
  std::optional<ExistenceReport> report;
  if (profile) {
    omega = compute_omega(*profile, ctx);
    report = existence_verdicts(*omega, *profile, ctx);
  }

  // Audit block: compare the tool's grid against the expected spectrum and
  // evaluate omega from the expected data.
  AuditData audit;
  const bool gap = cfg.output.gap_compat;
  if (cfg.has_expected) {
    auto expected_at = [&](int l, int k) -> const ExpectedSpectrumEntry* {
      for (const auto& e : cfg.expected_spectrum)
        if (e.l == l && e.k == k) return &e;
      return nullptr;
    };
    for (const auto& g : grid) {
      const ExpectedSpectrumEntry* exp = expected_at(g.l, g.k);
      char where[64];
      std::snprintf(where, sizeof where, "(l=%d,k=%d)", g.l, g.k);
      if (g.degenerate) {
        audit.notes.push_back(std::string(where) + ": computed xi = " +
                              g.value.to_string() + " is DEGENERATE" +
                              (exp ? ", expected " + exp->value.to_string() : ""));
      } else if (g.sign < 0 && !exp) {
        audit.notes.push_back(std::string(where) + ": computed xi = " +
                              g.value.to_string() +
                              " < 0, absent from the expected negative spectrum");
      } else if (g.sign > 0 && exp) {
        audit.notes.push_back(std::string(where) + ": computed xi = " +
                              g.value.to_string() + " > 0, expected negative (" +
                              exp->value.to_string() + ")");
      } else if (g.sign < 0 && exp &&
                 !g.value.same_value(exp->value, cfg.tolerances.sign_tol)) {
        audit.notes.push_back(std::string(where) + ": sign agrees, value differs: computed " +
                              g.value.to_string() + ", expected " + exp->value.to_string());
      }
    }
    SpectralProfile pexp = profile_from_expected(cfg.expected_spectrum, ctx,
                                                 profile ? profile->k_max : k_cutoff(ctx.mu));
    audit.frak_m_l_expected = pexp.frak_m_l;
    audit.omega_expected = compute_omega(pexp, ctx);
    audit.report_expected = existence_verdicts(*audit.omega_expected, pexp, ctx);
  }
  auto names_of = [&](const std::vector<int>& classes) {
    std::vector<std::string> out;
    for (int c : classes) out.push_back(class_display(*ctx.table, c, gap));
    return out;
  };
  if (cfg.expected_maximal_uminus) {
    auto got = names_of(ctx.maximal_minus);
    auto want = *cfg.expected_maximal_uminus;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) {
      std::string note = "maximal types M(U-) differ from the expected list: computed {";
      for (size_t i = 0; i < got.size(); ++i) note += (i ? ", " : "") + got[i];
      note += "}, expected {";
      for (size_t i = 0; i < want.size(); ++i) note += (i ? ", " : "") + want[i];
      note += "}";
      audit.notes.push_back(note);
    }
  }
  if (cfg.expected_maximal_e) {
    auto got = names_of(ctx.maximal_e);
    auto want = *cfg.expected_maximal_e;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) {
      std::string note = "maximal types M(E) differ from the expected list: computed {";
      for (size_t i = 0; i < got.size(); ++i) note += (i ? ", " : "") + got[i];
      note += "}, expected {";
      for (size_t i = 0; i < want.size(); ++i) note += (i ? ", " : "") + want[i];
      note += "} (duplicate or misprinted entries are flagged here)";
      audit.notes.push_back(note);
    }
  }

  // ----- text report -----
  std::ostringstream os;
  os << "eqdeg report (schema " << kReportSchema << ", version " << kVersion << ")\n";
  os << "group: " << ctx.g->descriptor().to_string() << "  order " << ctx.g->order()
     << "  classes " << ctx.table->class_count() << "\n\n";
  os << "[delays]\n  m = " << delays.m << ", epsilon_m = " << delays.epsilon_m << "\n";
  for (int j = 1; j <= delays.m; ++j)
    os << "  tau_" << j << " = " << delays.taus[j - 1].to_string() << "\n";
  os << "\n[mu]\n  provenance: "
     << (ctx.mu.provenance == MuProvenance::circulant
             ? "circulant"
             : (ctx.mu.provenance == MuProvenance::commuting ? "commuting" : "user"))
     << "\n";
  for (int j = 0; j <= ctx.mu.m; ++j) {
    os << "  j=" << j << ":";
    for (int l = 0; l < ctx.mu.cols; ++l) os << " " << ctx.mu.mu[j][l].to_string();
    os << "\n";
  }
  os << "\n[isotypic decomposition]\n";
  for (size_t l = 0; l < ctx.decomposition.components.size(); ++l) {
    const auto& c = ctx.decomposition.components[l];
    os << "  l=" << l << ": " << c.irrep.name << " (dim " << c.irrep.dim
       << "), multiplicity " << c.multiplicity << "\n";
  }
  os << "\n[basic degrees]\n";
  for (size_t l = 0; l < ctx.signed_pairs.size(); ++l) {
    os << "  deg_{U" << l << "+} = " << ctx.deg_plus[l].to_text(gap) << "\n";
    os << "  deg_{U" << l << "-} = " << ctx.deg_minus[l].to_text(gap) << "\n";
  }
  auto set_text = [&](const std::vector<int>& classes) {
    std::string out = "{ ";
    for (size_t i = 0; i < classes.size(); ++i)
      out += (i ? ", (" : "(") + class_display(*ctx.table, classes[i], gap) + ")";
    return out + " }";
  };
  os << "\n[maximal orbit types]\n";
  os << "  M(U-) = " << set_text(ctx.maximal_minus) << "\n";
  os << "  M(E)  = " << set_text(ctx.maximal_e) << "\n";
  if (!ctx.hs_family.empty()) {
    os << "\n[H_s family]\n";
    for (size_t s = 0; s < ctx.hs_family.size(); ++s) {
      const auto& e = ctx.hs_family[s];
      bool in_minus = std::find(ctx.maximal_minus.begin(), ctx.maximal_minus.end(),
                                e.class_index) != ctx.maximal_minus.end();
      os << "  s=" << s + 1 << ": p=" << e.prime << ", n_s=" << e.n_s << ", (H_s) = ("
         << class_display(*ctx.table, e.class_index, gap) << ")"
         << (in_minus ? "  [in M(U-)]" : "") << "\n";
    }
  }
  os << "\n[spectrum]\n";
  if (degenerate) {
    os << "  DEGENERATE linearization at (l=" << degenerate->l << ", k=" << degenerate->k
       << "): margin " << degenerate->margin
       << " within sign_tol; the isomorphism hypothesis fails and no verdict is drawn "
          "from the computed spectrum\n";
  }
  {
    char buf[64];
    int km = profile ? profile->k_max : k_cutoff(ctx.mu);
    os << "  k_max = " << km << "\n";
    if (profile) {
      std::snprintf(buf, sizeof buf, "%.6g", profile->sign_margin);
      os << "  smallest |margin| = " << buf << "\n";
      os << "  negative xi:";
      if (profile->negative_pairs.empty()) os << " none";
      for (auto [l, k] : profile->negative_pairs)
        os << " (l=" << l << ",k=" << k << ") xi=" << profile->xi[l][k].to_string() << ";";
      os << "\n  frak_m_l:";
      for (size_t l = 0; l < profile->frak_m_l.size(); ++l)
        os << " l=" << l << ": " << profile->frak_m_l[l] << ";";
      os << "\n";
    }
  }
  if (omega) {
    os << "\n[omega]\n  omega = " << omega->to_text(gap) << "\n";
  }
  if (report) {
    os << "\n[verdicts]\n";
    for (const auto& v : report->verdicts) {
      if (v.class_index >= 0) {
        os << "  (" << class_display(*ctx.table, v.class_index, gap)
           << "): frak_m(H) = " << v.frak_m_H << (v.odd ? " (odd)" : " (even)")
           << ", coeff^H(omega) = " << v.coeff_omega;
        if (v.odd && v.in_maximal_minus) os << " = x_o";
        os << "\n      -> " << v.conclusion << "\n";
      } else {
        os << "  " << v.conclusion << "\n";
      }
    }
    if (report->non_equivariant) {
      const auto& nv = *report->non_equivariant;
      os << "\n[non-equivariant]\n  frak_m = " << nv.frak_m << (nv.odd ? " (odd)" : " (even)")
         << ", coeff^{D1z}(omega) = " << nv.coeff_d1z << "\n      -> " << nv.conclusion
         << "\n";
    }
  }
  if (cfg.output.audit && (cfg.has_expected || !audit.notes.empty())) {
    os << "\n[audit]\n";
    if (cfg.has_expected) {
      os << "  expected negative spectrum:";
      for (const auto& e : cfg.expected_spectrum)
        os << " (l=" << e.l << ",k=" << e.k << ")=" << e.value.to_string() << ";";
      os << "\n";
    }
    if (audit.notes.empty()) {
      os << "  no divergences: the computed sign pattern matches the expected spectrum\n";
    } else {
      os << "  divergences:\n";
      for (const auto& n : audit.notes) os << "    - " << n << "\n";
    }
    if (audit.omega_expected) {
      os << "  omega[expected] = " << audit.omega_expected->to_text(gap) << "\n";
      os << "  verdicts[expected]:\n";
      for (const auto& v : audit.report_expected->verdicts) {
        if (v.class_index >= 0) {
          os << "    (" << class_display(*ctx.table, v.class_index, gap)
             << "): frak_m(H) = " << v.frak_m_H << (v.odd ? " (odd)" : " (even)")
             << ", coeff^H(omega) = " << v.coeff_omega << " -> " << v.conclusion << "\n";
        } else {
          os << "    " << v.conclusion << "\n";
        }
      }
    }
  }

  // ----- machine report -----
  json mj;
  mj["schema"] = kReportSchema;
  mj["tool"] = {{"name", "eqdeg"}, {"version", kVersion}};
  mj["group"] = {{"descriptor", ctx.g->descriptor().to_string()},
                 {"order", ctx.g->order()},
                 {"classes", ctx.table->class_count()}};
  mj["gamma"] = {{"descriptor", ctx.gamma->descriptor().to_string()},
                 {"points", ctx.gamma->points()}};
  {
    json dj;
    dj["m"] = delays.m;
    dj["epsilon_m"] = delays.epsilon_m;
    json taus = json::array();
    for (const auto& t : delays.taus) taus.push_back(t.to_string());
    dj["taus"] = taus;
    mj["delays"] = dj;
  }
  {
    json mu;
    mu["provenance"] = ctx.mu.provenance == MuProvenance::circulant
                           ? "circulant"
                           : (ctx.mu.provenance == MuProvenance::commuting ? "commuting"
                                                                           : "user");
    json rows = json::array();
    for (int j = 0; j <= ctx.mu.m; ++j) {
      json row = json::array();
      for (int l = 0; l < ctx.mu.cols; ++l) row.push_back(ctx.mu.mu[j][l].to_string());
      rows.push_back(row);
    }
    mu["rows"] = rows;
    mj["mu"] = mu;
  }
  {
    json dec = json::array();
    for (size_t l = 0; l < ctx.decomposition.components.size(); ++l) {
      const auto& c = ctx.decomposition.components[l];
      dec.push_back({{"l", l},
                     {"irrep", c.irrep.name},
                     {"dim", c.irrep.dim},
                     {"multiplicity", c.multiplicity}});
    }
    mj["decomposition"] = dec;
  }
  {
    json bd;
    for (size_t l = 0; l < ctx.signed_pairs.size(); ++l) {
      bd["U" + std::to_string(l) + "+"] = burnside_json(ctx.deg_plus[l], gap);
      bd["U" + std::to_string(l) + "-"] = burnside_json(ctx.deg_minus[l], gap);
    }
    mj["basic_degrees"] = bd;
  }
  mj["maximal_types"] = {{"U-", names_of(ctx.maximal_minus)}, {"E", names_of(ctx.maximal_e)}};
  {
    json hs = json::array();
    for (size_t s = 0; s < ctx.hs_family.size(); ++s)
      hs.push_back({{"s", s + 1},
                    {"p", ctx.hs_family[s].prime},
                    {"n_s", ctx.hs_family[s].n_s},
                    {"class", class_display(*ctx.table, ctx.hs_family[s].class_index, gap)}});
    mj["hs_family"] = hs;
  }
  {
    json sp;
    sp["status"] = degenerate ? "degenerate" : "ok";
    sp["k_max"] = profile ? profile->k_max : k_cutoff(ctx.mu);
    if (degenerate)
      sp["degenerate_at"] = {{"l", degenerate->l},
                             {"k", degenerate->k},
                             {"margin", degenerate->margin}};
    if (profile) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", profile->sign_margin);
      sp["sign_margin"] = buf;
      json neg = json::array();
      for (auto [l, k] : profile->negative_pairs) {
        int mult = ctx.decomposition.components[l].dim_Vl * (k == 0 ? 1 : 2);
        neg.push_back({{"l", l},
                       {"k", k},
                       {"xi", profile->xi[l][k].to_string()},
                       {"multiplicity", mult}});
      }
      sp["negative"] = neg;
      sp["frak_m_l"] = profile->frak_m_l;
    }
    mj["spectrum"] = sp;
  }
  mj["omega"] = omega ? burnside_json(*omega, gap) : json();
  {
    json vj = json::array();
    if (report) {
      for (const auto& v : report->verdicts)
        vj.push_back({{"orbit_type", v.orbit_type},
                      {"frak_m_H", v.frak_m_H},
                      {"odd", v.odd},
                      {"coeff_omega", v.coeff_omega},
                      {"x_o", v.x_o},
                      {"nonconstant", v.nonconstant},
                      {"conclusion", v.conclusion}});
    }
    mj["verdicts"] = vj;
    if (report && report->non_equivariant) {
      const auto& nv = *report->non_equivariant;
      mj["non_equivariant"] = {{"frak_m", nv.frak_m},
                               {"odd", nv.odd},
                               {"coeff_d1z", nv.coeff_d1z},
                               {"conclusion", nv.conclusion}};
    } else {
      mj["non_equivariant"] = json();
    }
  }
  if (cfg.output.audit && (cfg.has_expected || !audit.notes.empty())) {
    json aj;
    aj["notes"] = audit.notes;
    if (cfg.has_expected) {
      json exp = json::array();
      for (const auto& e : cfg.expected_spectrum)
        exp.push_back({{"l", e.l}, {"k", e.k}, {"value", e.value.to_string()}});
      aj["expected_negative"] = exp;
    }
    if (audit.omega_expected) {
      aj["omega_expected"] = burnside_json(*audit.omega_expected, gap);
      json vj = json::array();
      for (const auto& v : audit.report_expected->verdicts)
        vj.push_back({{"orbit_type", v.orbit_type},
                      {"frak_m_H", v.frak_m_H},
                      {"odd", v.odd},
                      {"coeff_omega", v.coeff_omega},
                      {"x_o", v.x_o},
                      {"nonconstant", v.nonconstant},
                      {"conclusion", v.conclusion}});
      aj["verdicts_expected"] = vj;
      aj["frak_m_l_expected"] = audit.frak_m_l_expected;
    }
    mj["audit"] = aj;
  } else {
    mj["audit"] = json();
  }

  AnalysisResult res;
  res.exit_code = degenerate ? 2 : 0;
  res.text_report = os.str();
  res.machine_report = mj.dump(2) + "\n";
  return res;
}

}  // namespace eqdeg
