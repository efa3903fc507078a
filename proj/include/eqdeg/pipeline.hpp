#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "eqdeg/degree.hpp"
#include "eqdeg/rep.hpp"
#include "eqdeg/spectral.hpp"

namespace eqdeg {

struct Tolerances {
  double sym_tol = 1e-9;
  double sign_tol = 1e-9;
  double cluster_tol = 1e-9;
};

struct OutputOptions {
  std::string format = "text";  // "text" | "machine"
  std::string cache_dir;
  bool audit = false;
  bool gap_compat = false;
};

struct ExpectedSpectrumEntry {
  int l = 0, k = 0;
  Scalar value;
};

struct AnalysisConfig {
  enum class GroupKind { dihedral, trivial, custom };
  GroupKind group_kind = GroupKind::dihedral;
  int dihedral_n = 3;
  CustomGroupSpec custom;

  std::vector<Delay> delays;

  std::optional<std::vector<std::pair<Rational, Rational>>> circulant;
  std::optional<std::vector<std::vector<Scalar>>> mu_rows;
  std::optional<std::vector<DenseMatrix>> commuting;

  Tolerances tolerances;
  OutputOptions output;

  std::vector<ExpectedSpectrumEntry> expected_spectrum;
  bool has_expected = false;
  std::optional<std::vector<std::string>> expected_maximal_uminus;
  std::optional<std::vector<std::string>> expected_maximal_e;

  int group_order_bound = 200;

  static AnalysisConfig from_json(const nlohmann::json& j);
  static AnalysisConfig load_file(const std::string& path);
};

// Prebuilt group-theoretic data for G = (D1 x Z2) x Gamma.
struct AnalysisContext {
  GroupPtr gamma;
  std::vector<RealIrrep> gamma_irreps;
  GroupPtr g;
  CcsPtr table;
  IsotypicDecomposition decomposition;
  std::vector<SignedPair> signed_pairs;
  std::vector<BurnsideElement> deg_plus;   // per component l
  std::vector<BurnsideElement> deg_minus;  // per component l
  std::vector<int> maximal_minus;          // M_G(U^-) class indices
  std::vector<int> maximal_e;              // M_G over all signed irreps
  struct HsEntry {
    int prime = 0;
    int n_s = 0;
    int class_index = -1;
  };
  std::vector<HsEntry> hs_family;  // dihedral Gamma only
  int d1z_class = -1;              // class of the twisted order-2 subgroup

  MuTable mu;
  std::vector<int> multiplicities;  // m_l per component
};

AnalysisContext build_context(const AnalysisConfig& cfg);

// omega = (G) - prod_l deg_{U_l^+}^{sum_{k>=0} nu(l,k)} * deg_{U_l^-}^{frak_m_l},
// exponents reduced mod 2.
BurnsideElement compute_omega(const SpectralProfile& profile, const AnalysisContext& ctx);

// frak_m(H) = sum over l with coeff^H(deg_{U_l^-}) != 0 of frak_m_l.
long long frak_m_of_class(int cls, const AnalysisContext& ctx,
                          const std::vector<long long>& frak_m_l);

struct Verdict {
  int class_index = -1;
  std::string orbit_type;
  long long frak_m_H = 0;
  bool odd = false;
  std::string coeff_omega;  // decimal string
  int x_o = 0;
  bool nonconstant = false;
  bool in_maximal_minus = false;
  std::string conclusion;
};

struct NonEquivariantVerdict {
  long long frak_m = 0;
  bool odd = false;
  std::string coeff_d1z;
  std::string conclusion;
};

struct ExistenceReport {
  BurnsideElement omega;
  // (value, (l,k), eigenvalue multiplicity in the function space)
  std::vector<std::tuple<Scalar, std::pair<int, int>, int>> negative_spectrum;
  std::vector<std::string> maximal_types_uminus;
  std::vector<Verdict> verdicts;
  std::vector<std::string> audit_notes;
  std::optional<NonEquivariantVerdict> non_equivariant;
};

ExistenceReport existence_verdicts(const BurnsideElement& omega,
                                   const SpectralProfile& profile,
                                   const AnalysisContext& ctx);

struct AnalysisResult {
  int exit_code = 0;  // 0 ok, 2 degenerate linearization
  std::string text_report;
  std::string machine_report;  // JSON document
};

AnalysisResult run_analysis(const AnalysisConfig& cfg);

// CCS cache: load when a matching document exists, else build and store.
CcsPtr load_or_build_ccs(const GroupPtr& g, const std::string& cache_dir,
                         int order_bound = 200);

int cli_main(int argc, char** argv);

}  // namespace eqdeg
