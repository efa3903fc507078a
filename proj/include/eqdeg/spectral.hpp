#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqdeg/qreal.hpp"

namespace eqdeg {

// One delay: stored exactly as a fraction of a full turn when possible.
struct Delay {
  std::optional<Rational> turn;  // tau / (2*pi) when exactly known
  double radians = 0.0;

  static Delay from_turn(const Rational& t);
  static Delay from_radians(double r);
  // Accepts "2*pi*p/q", "2*pi/q", "pi", "pi*p/q", "pi/q", or a decimal.
  static Delay parse(const std::string& text);
  std::string to_string() const;
};

struct DelaySet {
  int m = 0;
  std::vector<Delay> taus;  // sorted ascending, 1-based j maps to taus[j-1]
  int epsilon_m = 0;        // 1 iff m odd (middle delay is then pi)
};

// Sorts, range-checks (0 < tau_1 < ... < tau_m < 2*pi) and verifies the
// pairing tau_{m-j+1} = 2*pi - tau_j (exactly for rational turns, within
// sym_tol otherwise).
DelaySet validate_delays(const std::vector<Delay>& taus, double sym_tol = 1e-9);

enum class MuProvenance { circulant, user_supplied, commuting };

// Isotypic scalars of the linearization: rows j = 0..m, columns l.
struct MuTable {
  int m = 0;     // delay count (rows = m + 1)
  int cols = 0;  // component count
  std::vector<std::vector<Scalar>> mu;  // mu[j][l]
  MuProvenance provenance = MuProvenance::user_supplied;
};

// mu_j^l = a_j + 2 b_j cos(2*pi*l/n) for the dihedral circulant family;
// exact whenever cos(2*pi*l/n) is a quadratic rational. n must be odd >= 3.
MuTable circulant_mu(const std::vector<std::pair<Rational, Rational>>& coeffs, int n);

struct CommutingResult {
  MuTable mu;
  std::vector<int> multiplicities;  // m_l = dim of the common eigenspace
};

// Common eigenspace decomposition of a pairwise commuting family of
// symmetric matrices (the non-equivariant route).
using DenseMatrix = std::vector<std::vector<double>>;
CommutingResult commuting_mu(const std::vector<DenseMatrix>& matrices, double cluster_tol);

// Checks mu_j^l == mu_{m-j+1}^l (the structure the folded cosine form needs).
void validate_mu_pairing(const MuTable& mu, double tol = 1e-9);

// xi_{l,k} = 1 + (mu_0^l + sum_{j=1}^{floor(m/2)} 2 mu_j^l cos(k tau_j)
//                 + eps_m (-1)^k mu_{(m+1)/2}^l - 1) / (k^2 + 1)
Scalar xi(int l, int k, const MuTable& mu, const DelaySet& delays);

// (k^2+1) * xi_{l,k} = k^2 + mu_0^l + (delay cosine sum); same sign as xi,
// and the quantity whose vanishing is the degeneracy of the linearization.
Scalar xi_margin(int l, int k, const MuTable& mu, const DelaySet& delays);

// Smallest cutoff with xi_{l,k} > 0 guaranteed for every k > k_max.
int k_cutoff(const MuTable& mu);

struct SpectralProfile {
  int k_max = 0;
  std::vector<std::vector<Scalar>> xi;  // xi[l][k], k = 0..k_max
  std::vector<std::vector<int>> nu;     // nu[l][k]
  std::vector<long long> frak_m_l;      // sum_{k>=1} nu(l,k)
  double sign_margin = 0.0;             // smallest |margin| seen on the grid
  std::vector<std::pair<int, int>> negative_pairs;  // (l,k) with xi < 0
};

// Full grid scan; throws DegenerateLinearization when any margin vanishes
// (exact path: exactly zero; float path: |margin| <= sign_tol).
SpectralProfile analyze_spectrum(const MuTable& mu, const DelaySet& delays,
                                 const std::vector<int>& multiplicities,
                                 double sign_tol = 1e-9);

struct SpectrumAuditEntry {
  int l = 0, k = 0;
  Scalar value;
  int sign = 0;         // -1, 0 (degenerate), +1
  bool degenerate = false;
};

// Non-throwing variant for auditing: reports every (l,k) on the grid with
// its sign decision, degeneracies included.
std::vector<SpectrumAuditEntry> audit_spectrum(const MuTable& mu, const DelaySet& delays,
                                               double sign_tol = 1e-9);

}  // namespace eqdeg
