#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "eqdeg/errors.hpp"
#include "eqdeg/pipeline.hpp"

using namespace eqdeg;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "group": {"dihedral": 3},
    "delays": ["2*pi*1/5", "2*pi*2/5", "2*pi*3/5", "2*pi*4/5"],
    "matrices": {"circulant": [[-1,-2],[-2,-4],[-3,-5],[-3,-5],[-2,-4]]},
    "output": {"format": "machine", "audit": true},
    "expected_negative_spectrum": [
      {"l": 0, "k": 0, "value": "-97"},
      {"l": 1, "k": 1, "value": "-7"},
      {"l": 1, "k": 2, "value": "-11/5"},
      {"l": 1, "k": 3, "value": "-3/5"}
    ]
  })");
}

SpectralProfile profile_of_pairs(const AnalysisContext& ctx,
                                 const std::vector<std::pair<int, int>>& pairs) {
  SpectralProfile p;
  p.k_max = 0;
  for (auto [l, k] : pairs) p.k_max = std::max(p.k_max, k);
  const int cols = static_cast<int>(ctx.multiplicities.size());
  p.xi.assign(cols, std::vector<Scalar>(p.k_max + 1, Scalar(0.0)));
  p.nu.assign(cols, std::vector<int>(p.k_max + 1, 0));
  p.frak_m_l.assign(cols, 0);
  for (auto [l, k] : pairs) {
    p.nu[l][k] = ctx.multiplicities[l];
    p.negative_pairs.emplace_back(l, k);
    if (k >= 1) p.frak_m_l[l] += ctx.multiplicities[l];
  }
  return p;
}

}  // namespace

TEST_CASE("omega: empty negative spectrum gives zero and no verdict fires") {
  AnalysisConfig cfg = AnalysisConfig::from_json(base_config());
  AnalysisContext ctx = build_context(cfg);
  SpectralProfile p = profile_of_pairs(ctx, {});
  BurnsideElement omega = compute_omega(p, ctx);
  CHECK(omega.is_zero());
  ExistenceReport rep = existence_verdicts(omega, p, ctx);
  bool inconclusive = false;
  for (const auto& v : rep.verdicts)
    if (v.conclusion.find("method inconclusive") != std::string::npos) inconclusive = true;
  CHECK(inconclusive);
}

TEST_CASE("omega: single negative eigenvalue at k = 0 gives (G) - deg_{Ul+}") {
  AnalysisConfig cfg = AnalysisConfig::from_json(base_config());
  AnalysisContext ctx = build_context(cfg);
  SpectralProfile p = profile_of_pairs(ctx, {{0, 0}});
  CHECK(compute_omega(p, ctx) ==
        BurnsideElement::unit(*ctx.table) - ctx.deg_plus[0]);
  SpectralProfile q = profile_of_pairs(ctx, {{1, 0}});
  CHECK(compute_omega(q, ctx) ==
        BurnsideElement::unit(*ctx.table) - ctx.deg_plus[1]);
}

TEST_CASE("omega from the printed negative spectrum matches the product form") {
  AnalysisConfig cfg = AnalysisConfig::from_json(base_config());
  AnalysisContext ctx = build_context(cfg);
  SpectralProfile p = profile_of_pairs(ctx, {{0, 0}, {1, 1}, {1, 2}, {1, 3}});
  BurnsideElement omega = compute_omega(p, ctx);
  BurnsideElement expect = BurnsideElement::unit(*ctx.table) -
                           ctx.deg_plus[0] * ctx.deg_plus[1] * ctx.deg_minus[1];
  CHECK(omega == expect);
  int h = ctx.table->class_by_name("(D1xZ2)^{D1z} x_{Z2}^{Z1} D1");
  REQUIRE(h >= 0);
  CHECK(omega.coeff(h) == BigInt(1));
  // verdicts: exact orbit type at H, inconclusive at D1z x D3
  ExistenceReport rep = existence_verdicts(omega, p, ctx);
  bool found_h = false, found_dz = false;
  for (const auto& v : rep.verdicts) {
    if (v.class_index == h) {
      found_h = true;
      CHECK(v.frak_m_H == 3);
      CHECK(v.odd);
      CHECK(v.x_o == 1);
      CHECK(v.coeff_omega == "1");
      CHECK(v.nonconstant);
      CHECK(v.conclusion.find("isotropy exactly") != std::string::npos);
    }
    if (v.class_index == ctx.table->class_by_name("D1z x D3")) {
      found_dz = true;
      CHECK(v.frak_m_H == 0);
      CHECK(!v.odd);
      CHECK(v.coeff_omega == "0");
    }
  }
  CHECK(found_h);
  CHECK(found_dz);
}

TEST_CASE("frak_m bookkeeping follows the minus-degree coefficients") {
  AnalysisConfig cfg = AnalysisConfig::from_json(base_config());
  AnalysisContext ctx = build_context(cfg);
  SpectralProfile p = profile_of_pairs(ctx, {{0, 2}, {1, 1}});
  int h = ctx.table->class_by_name("(D1xZ2)^{D1z} x_{Z2}^{Z1} D1");
  int dz = ctx.table->class_by_name("D1z x D3");
  // coeff^h(deg_{U0-}) = 0, coeff^h(deg_{U1-}) != 0
  CHECK(frak_m_of_class(h, ctx, p.frak_m_l) == 1);
  // coeff^dz(deg_{U0-}) != 0, coeff^dz(deg_{U1-}) = 0
  CHECK(frak_m_of_class(dz, ctx, p.frak_m_l) == 1);
  CHECK(frak_m_of_class(ctx.table->top_class(), ctx, p.frak_m_l) <=
        p.frak_m_l[0] + p.frak_m_l[1]);
}

TEST_CASE("H_s family lands in M(U-) for composite and prime n") {
  for (int n : {3, 9, 15}) {
    json j = base_config();
    j["group"]["dihedral"] = n;
    // mu table path: rows of zeros except mu_0 = 1 (never used: context only)
    j["matrices"] = json::object();
    json row = json::array();
    for (int l = 0; l < n / 2 + 1; ++l) row.push_back(1);
    json rows = json::array();
    for (int r = 0; r < 5; ++r) rows.push_back(row);
    j["matrices"]["mu_table"] = rows;
    j.erase("expected_negative_spectrum");
    AnalysisConfig cfg = AnalysisConfig::from_json(j);
    AnalysisContext ctx = build_context(cfg);
    std::set<int> primes_expected;
    for (int p = 3; p <= n; p += 2)
      if (n % p == 0) {
        bool prime = true;
        for (int q = 3; q * q <= p; q += 2)
          if (p % q == 0) prime = false;
        if (prime) primes_expected.insert(p);
      }
    REQUIRE(ctx.hs_family.size() == primes_expected.size());
    for (const auto& e : ctx.hs_family) {
      CHECK(primes_expected.count(e.prime) == 1);
      CHECK(e.n_s == n / e.prime);
      // (H_s) is a maximal orbit type of U^-
      CHECK(std::find(ctx.maximal_minus.begin(), ctx.maximal_minus.end(),
                      e.class_index) != ctx.maximal_minus.end());
      // |H_s| = 4 n_s
      CHECK(ctx.table->cls(e.class_index).representative.order() == 4 * e.n_s);
    }
    // d1z class is below every maximal minus type
    for (int c : ctx.maximal_minus) CHECK(ctx.table->leq(ctx.d1z_class, c));
  }
}

TEST_CASE("end-to-end: the bundled dihedral example") {
  AnalysisConfig cfg = AnalysisConfig::load_file(std::string(EQDEG_SOURCE_DIR) +
                                                 "/configs/example_d3.json");
  cfg.output.format = "machine";
  AnalysisResult res = run_analysis(cfg);
  // the tool's own spectrum is degenerate at (l=1,k=1): exit code 2
  CHECK(res.exit_code == 2);
  json j = json::parse(res.machine_report);
  CHECK(j["spectrum"]["status"] == "degenerate");
  CHECK(j["spectrum"]["degenerate_at"]["l"] == 1);
  CHECK(j["spectrum"]["degenerate_at"]["k"] == 1);
  CHECK(j["omega"].is_null());
  // basic degrees as in the worked example
  json bd = j["basic_degrees"];
  CHECK(bd["U0-"] == json::parse(R"([["D1z x D3","-1"],["G","1"]])"));
  CHECK(bd["U0+"] == json::parse(R"([["D1 x D3","-1"],["G","1"]])"));
  CHECK(bd["U1-"] ==
        json::parse(
            R"([["(D1xZ2)^{D1z} x_{Z2}^{Z1} D1","-1"],["D1z x D1","-1"],["D1z x Z1","1"],["G","1"]])"));
  // maximal types
  auto uminus = j["maximal_types"]["U-"].get<std::vector<std::string>>();
  std::set<std::string> uset(uminus.begin(), uminus.end());
  CHECK(uset == std::set<std::string>({"D1z x D3", "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1"}));
  CHECK(j["maximal_types"]["E"].size() == 4);
  // audit: omega from the printed spectrum and the divergence notes
  REQUIRE(!j["audit"].is_null());
  json notes = j["audit"]["notes"];
  auto has_note = [&](const std::string& frag) {
    for (const auto& n : notes)
      if (n.get<std::string>().find(frag) != std::string::npos) return true;
    return false;
  };
  CHECK(has_note("(l=0,k=0): sign agrees, value differs: computed -51, expected -97"));
  CHECK(has_note("(l=0,k=5): computed xi = -1 < 0, absent"));
  CHECK(has_note("(l=1,k=1): computed xi = 0 is DEGENERATE, expected -7"));
  CHECK(has_note("(l=1,k=2): computed xi = 3/5 > 0, expected negative (-11/5)"));
  CHECK(has_note("(l=1,k=3): computed xi = 4/5 > 0, expected negative (-3/5)"));
  CHECK(has_note("maximal types M(E) differ"));
  // omega[expected] = (G) - deg0+ deg1+ deg1-, coeff at H equals 1
  json oexp = j["audit"]["omega_expected"];
  bool h_coeff_one = false;
  for (const auto& pair : oexp)
    if (pair[0] == "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1" && pair[1] == "1") h_coeff_one = true;
  CHECK(h_coeff_one);
  bool exact_verdict = false;
  for (const auto& v : j["audit"]["verdicts_expected"])
    if (v["orbit_type"] == "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1" && v["odd"] == true &&
        v["coeff_omega"] == "1" && v["nonconstant"] == true)
      exact_verdict = true;
  CHECK(exact_verdict);
}

TEST_CASE("end-to-end: exact n=5 run where the main verdict fires") {
  AnalysisConfig cfg = AnalysisConfig::load_file(std::string(EQDEG_SOURCE_DIR) +
                                                 "/configs/example_d5.json");
  cfg.output.format = "machine";
  AnalysisResult res = run_analysis(cfg);
  CHECK(res.exit_code == 0);
  json j = json::parse(res.machine_report);
  CHECK(j["spectrum"]["status"] == "ok");
  CHECK(j["spectrum"]["frak_m_l"] == json::parse("[2, 1, 0]"));
  // exact quadratic eigenvalue shows up verbatim in the report
  bool exact_seen = false;
  for (const auto& e : j["spectrum"]["negative"])
    if (e["xi"] == "-1/2 - 3/2*sqrt(5)") exact_seen = true;
  CHECK(exact_seen);
  bool fires = false;
  for (const auto& v : j["verdicts"])
    if (v["orbit_type"] == "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1" && v["odd"] == true &&
        v["x_o"] == 1 && v["coeff_omega"] == "1" &&
        v["conclusion"].get<std::string>().find("isotropy exactly") != std::string::npos)
      fires = true;
  CHECK(fires);
}

TEST_CASE("corrupt cache files are ignored and rebuilt") {
  auto dir = std::filesystem::temp_directory_path() / "eqdeg_corrupt_cache";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  AnalysisConfig cfg = AnalysisConfig::from_json(base_config());
  cfg.output.cache_dir = dir.string();
  AnalysisResult good = run_analysis(cfg);
  // trash every cache file, then run again: the result must not change
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ofstream out(entry.path());
    out << "eqdeg-ccs/1\ngarbage\n";
  }
  AnalysisResult rebuilt = run_analysis(cfg);
  CHECK(rebuilt.machine_report == good.machine_report);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exact coefficients reject unparseable floats") {
  json j = base_config();
  j["matrices"]["circulant"][0][0] = 1e-9;  // not exactly representable
  CHECK_THROWS_AS(AnalysisConfig::from_json(j), ConfigError);
  j = base_config();
  j["matrices"]["circulant"][0][0] = -1.5;  // short decimal: fine
  AnalysisConfig cfg = AnalysisConfig::from_json(j);
  CHECK(cfg.circulant->at(0).first == Rational(-3, 2));
  // format alias
  j = base_config();
  j["output"]["format"] = "json-like";
  CHECK(AnalysisConfig::from_json(j).output.format == "machine");
}

TEST_CASE("determinism: byte-identical reports, cold and warm cache") {
  AnalysisConfig cfg = AnalysisConfig::load_file(std::string(EQDEG_SOURCE_DIR) +
                                                 "/configs/example_d3.json");
  cfg.output.format = "machine";
  std::string dir = std::filesystem::temp_directory_path() / "eqdeg_cache_test";
  std::filesystem::remove_all(dir);
  cfg.output.cache_dir = dir;
  AnalysisResult cold = run_analysis(cfg);   // builds the cache
  AnalysisResult warm = run_analysis(cfg);   // loads it
  CHECK(cold.machine_report == warm.machine_report);
  CHECK(cold.text_report == warm.text_report);
  cfg.output.cache_dir.clear();
  AnalysisResult nocache = run_analysis(cfg);
  CHECK(nocache.machine_report == cold.machine_report);
  CHECK(std::filesystem::exists(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("non-equivariant route: scalar delay equation with odd frak_m") {
  AnalysisConfig cfg = AnalysisConfig::load_file(std::string(EQDEG_SOURCE_DIR) +
                                                 "/configs/example_scalar.json");
  cfg.output.format = "machine";
  AnalysisResult res = run_analysis(cfg);
  CHECK(res.exit_code == 0);
  json j = json::parse(res.machine_report);
  CHECK(j["spectrum"]["status"] == "ok");
  REQUIRE(!j["non_equivariant"].is_null());
  CHECK(j["non_equivariant"]["frak_m"] == 3);
  CHECK(j["non_equivariant"]["odd"] == true);
  CHECK(j["non_equivariant"]["coeff_d1z"] == "1");
  std::string conclusion = j["non_equivariant"]["conclusion"];
  CHECK(conclusion.find("non-constant periodic solution exists") != std::string::npos);
  // omega = (D1z): the twisted class certifies a non-constant solution
  json omega = j["omega"];
  REQUIRE(omega.size() == 1);
  CHECK(omega[0][0] == "D1z");
  CHECK(omega[0][1] == "1");
}

TEST_CASE("config validation errors") {
  json j = base_config();
  j["delays"] = {"pi/2"};
  CHECK_THROWS_AS(run_analysis(AnalysisConfig::from_json(j)), DelaySymmetryViolation);
  j = base_config();
  j["matrices"]["mu_table"] = {{1, 1}};
  CHECK_THROWS_AS(AnalysisConfig::from_json(j), ConfigError);  // two matrix forms
  j = base_config();
  j["matrices"] = json::object();
  CHECK_THROWS_AS(AnalysisConfig::from_json(j), ConfigError);
  j = base_config();
  j["group"] = {{"dihedral", 4}};
  CHECK_THROWS_AS(build_context(AnalysisConfig::from_json(j)), ConfigError);
  j = base_config();
  j["matrices"] = {{"circulant", {{-1, -2}, {-2, -4}}}};  // 2 rows for 4 delays
  CHECK_THROWS_AS(run_analysis(AnalysisConfig::from_json(j)), ConfigError);
  // commuting matrices demand the trivial group
  j = base_config();
  j["matrices"] = {{"commuting", {{{1.0}}}}};
  CHECK_THROWS_AS(build_context(AnalysisConfig::from_json(j)), ConfigError);
}

TEST_CASE("gap-compatible naming renders the alternate abbreviations") {
  AnalysisConfig cfg = AnalysisConfig::load_file(std::string(EQDEG_SOURCE_DIR) +
                                                 "/configs/example_d3.json");
  cfg.output.gap_compat = true;
  AnalysisResult res = run_analysis(cfg);
  // Z2 factor renders as Z1p, full Klein factor as D1p
  CHECK(res.text_report.find("D1p^{D1z}") != std::string::npos);
  AnalysisConfig plain = AnalysisConfig::load_file(std::string(EQDEG_SOURCE_DIR) +
                                                   "/configs/example_d3.json");
  AnalysisResult res2 = run_analysis(plain);
  CHECK(res2.text_report.find("(D1xZ2)^{D1z}") != std::string::npos);
  CHECK(res2.text_report.find("D1p") == std::string::npos);
}

TEST_CASE("custom character table drives the same pipeline as builtin D3") {
  json j = base_config();
  j["group"] = json::parse(R"eoj({"custom": {
    "name": "D3c", "points": 3,
    "generators": ["(1,2,3)", "(2,3)"],
    "cyclo_order": 3,
    "irreps": [
      {"name": "A", "values": [["()","1"], ["(1,2,3)","1"], ["(2,3)","1"]]},
      {"name": "B", "values": [["()","1"], ["(1,2,3)","1"], ["(2,3)","-1"]]},
      {"name": "C", "values": [["()","2"], ["(1,2,3)","-1"], ["(2,3)","0"]]}
    ]}})eoj");
  // custom groups take the explicit mu-table route (same values as circulant)
  j["matrices"] = json::parse(
      R"({"mu_table": [[-5, 1], [-10, 2], [-13, 2], [-13, 2], [-10, 2]]})");
  AnalysisConfig cfg = AnalysisConfig::from_json(j);
  cfg.output.format = "machine";
  AnalysisResult res = run_analysis(cfg);
  CHECK(res.exit_code == 2);  // same degenerate spectrum as the builtin route
  json mj = json::parse(res.machine_report);
  CHECK(mj["basic_degrees"]["U0-"] == json::parse(R"([["D1z x U6","-1"],["G","1"]])"));
  CHECK(mj["decomposition"].size() == 2);
}
