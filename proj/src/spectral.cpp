#include "eqdeg/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "eqdeg/errors.hpp"

namespace eqdeg {

Delay Delay::from_turn(const Rational& t) {
  Delay d;
  d.turn = t;
  d.radians = 2.0 * M_PI * t.to_double();
  return d;
}

Delay Delay::from_radians(double r) {
  Delay d;
  d.radians = r;
  return d;
}

Delay Delay::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto tail_fraction = [](const std::string& rest) -> Rational {
    // rest is "", "*p/q", "*p", "/q"
    if (rest.empty()) return Rational(1);
    if (rest[0] == '*') return Rational::parse(rest.substr(1));
    if (rest[0] == '/') return Rational(1) / Rational::parse(rest.substr(1));
    throw Error("cannot parse delay: " + rest);
  };
  if (s.rfind("2*pi", 0) == 0) return Delay::from_turn(tail_fraction(s.substr(4)));
  if (s.rfind("pi", 0) == 0)
    return Delay::from_turn(tail_fraction(s.substr(2)) * Rational(1, 2));
  return Delay::from_radians(std::stod(s));
}

std::string Delay::to_string() const {
  if (turn) return "2*pi*" + turn->to_string();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", radians);
  return buf;
}

DelaySet validate_delays(const std::vector<Delay>& taus, double sym_tol) {
  DelaySet out;
  out.taus = taus;
  out.m = static_cast<int>(taus.size());
  std::sort(out.taus.begin(), out.taus.end(),
            [](const Delay& a, const Delay& b) { return a.radians < b.radians; });
  const double two_pi = 2.0 * M_PI;
  for (int j = 0; j < out.m; ++j) {
    const Delay& d = out.taus[j];
    bool ok = d.turn ? (Rational(0) < *d.turn && *d.turn < Rational(1))
                     : (d.radians > 0.0 && d.radians < two_pi);
    if (!ok)
      throw DelayRangeViolation("delay " + d.to_string() + " outside (0, 2*pi)");
    if (j > 0 && !(out.taus[j - 1].radians < d.radians))
      throw DelayRangeViolation("delays must be strictly increasing");
  }
  for (int j = 1; j <= out.m; ++j) {
    const Delay& a = out.taus[j - 1];
    const Delay& b = out.taus[out.m - j];
    bool ok;
    if (a.turn && b.turn)
      ok = (*a.turn + *b.turn) == Rational(1);
    else
      ok = std::fabs(a.radians + b.radians - two_pi) <= sym_tol;
    if (!ok)
      throw DelaySymmetryViolation(
          j, "delay symmetry tau_{m-j+1} = 2*pi - tau_j fails at j=" + std::to_string(j) +
                 ": " + a.to_string() + " vs " + b.to_string());
  }
  out.epsilon_m = out.m % 2;
  return out;
}

MuTable circulant_mu(const std::vector<std::pair<Rational, Rational>>& coeffs, int n) {
  if (n < 3 || n % 2 == 0)
    throw EvenN("circulant_mu: n must be odd and >= 3, got " + std::to_string(n));
  MuTable t;
  t.m = static_cast<int>(coeffs.size()) - 1;
  t.cols = n / 2 + 1;
  t.provenance = MuProvenance::circulant;
  for (const auto& [a, b] : coeffs) {
    std::vector<Scalar> row;
    for (int l = 0; l < t.cols; ++l) {
      auto c = exact_cos_turn(Rational(l, n));
      Scalar cl = c ? Scalar(*c) : Scalar(std::cos(2.0 * M_PI * l / n));
      row.push_back(Scalar(a) + Scalar(Rational(2)) * Scalar(b) * cl);
    }
    t.mu.push_back(std::move(row));
  }
  return t;
}

void validate_mu_pairing(const MuTable& mu, double tol) {
  for (int j = 1; j <= mu.m; ++j)
    for (int l = 0; l < mu.cols; ++l)
      if (!mu.mu[j][l].same_value(mu.mu[mu.m - j + 1][l], tol))
        throw MuPairingViolation("mu pairing mu_j = mu_{m-j+1} fails at j=" +
                                 std::to_string(j) + ", l=" + std::to_string(l));
}

namespace {

Scalar cos_k_tau(int k, const Delay& tau) {
  if (tau.turn) {
    Rational kt = *tau.turn * Rational(k);
    if (auto c = exact_cos_turn(kt)) return Scalar(*c);
  }
  return Scalar(std::cos(k * tau.radians));
}

// mu_0^l + sum_{j<=m/2} 2 mu_j cos(k tau_j) + eps (-1)^k mu_mid
Scalar delay_sum(int l, int k, const MuTable& mu, const DelaySet& delays) {
  Scalar acc = mu.mu[0][l];
  for (int j = 1; j <= delays.m / 2; ++j)
    acc += Scalar(Rational(2)) * mu.mu[j][l] * cos_k_tau(k, delays.taus[j - 1]);
  if (delays.epsilon_m) {
    Scalar mid = mu.mu[(delays.m + 1) / 2][l];
    acc += (k % 2 == 0) ? mid : -mid;
  }
  return acc;
}

}  // namespace

Scalar xi(int l, int k, const MuTable& mu, const DelaySet& delays) {
  if (mu.m != delays.m)
    throw Error("xi: mu table has " + std::to_string(mu.m) + " delays, delay set has " +
                std::to_string(delays.m));
  if (l < 0 || l >= mu.cols || k < 0)
    throw Error("xi: (l,k) out of range");
  validate_mu_pairing(mu);
  Scalar numer = delay_sum(l, k, mu, delays) - Scalar(Rational(1));
  Rational inv(1, static_cast<long long>(k) * k + 1);
  return Scalar(Rational(1)) + numer * Scalar(inv);
}

Scalar xi_margin(int l, int k, const MuTable& mu, const DelaySet& delays) {
  Scalar s = delay_sum(l, k, mu, delays);
  return s + Scalar(Rational(static_cast<long long>(k) * k));
}

int k_cutoff(const MuTable& mu) {
  int k_max = 1;
  for (int l = 0; l < mu.cols; ++l) {
    double s = std::fabs(mu.mu[0][l].approx - 1.0);
    for (int j = 1; j <= mu.m; ++j) s += std::fabs(mu.mu[j][l].approx);
    long long floor_sm1 = static_cast<long long>(std::floor(std::max(0.0, s - 1.0) + 1e-9));
    long long r = 0;
    while ((r + 1) * (r + 1) <= floor_sm1) ++r;
    k_max = std::max(k_max, static_cast<int>(r) + 1);
  }
  return k_max;
}

SpectralProfile analyze_spectrum(const MuTable& mu, const DelaySet& delays,
                                 const std::vector<int>& multiplicities,
                                 double sign_tol) {
  if (static_cast<int>(multiplicities.size()) != mu.cols)
    throw Error("analyze_spectrum: multiplicity list does not match mu columns");
  validate_mu_pairing(mu);
  SpectralProfile p;
  p.k_max = k_cutoff(mu);
  p.sign_margin = std::numeric_limits<double>::infinity();
  p.xi.assign(mu.cols, {});
  p.nu.assign(mu.cols, {});
  p.frak_m_l.assign(mu.cols, 0);
  for (int l = 0; l < mu.cols; ++l) {
    for (int k = 0; k <= p.k_max; ++k) {
      Scalar margin = xi_margin(l, k, mu, delays);
      bool degenerate =
          margin.is_exact() ? margin.exact->is_zero() : std::fabs(margin.approx) <= sign_tol;
      if (degenerate)
        throw DegenerateLinearization(
            l, k, margin.approx,
            "degenerate linearization at (l=" + std::to_string(l) +
                ", k=" + std::to_string(k) + "): margin " + margin.to_string());
      p.sign_margin = std::min(p.sign_margin, std::fabs(margin.approx));
      int sgn = margin.is_exact() ? margin.exact->sign() : (margin.approx < 0 ? -1 : 1);
      p.xi[l].push_back(xi(l, k, mu, delays));
      int nu = sgn < 0 ? multiplicities[l] : 0;
      p.nu[l].push_back(nu);
      if (sgn < 0) p.negative_pairs.emplace_back(l, k);
      if (k >= 1) p.frak_m_l[l] += nu;
    }
  }
  return p;
}

std::vector<SpectrumAuditEntry> audit_spectrum(const MuTable& mu, const DelaySet& delays,
                                               double sign_tol) {
  validate_mu_pairing(mu);
  std::vector<SpectrumAuditEntry> out;
  const int k_max = k_cutoff(mu);
  for (int l = 0; l < mu.cols; ++l) {
    for (int k = 0; k <= k_max; ++k) {
      SpectrumAuditEntry e;
      e.l = l;
      e.k = k;
      e.value = xi(l, k, mu, delays);
      Scalar margin = xi_margin(l, k, mu, delays);
      bool degenerate =
          margin.is_exact() ? margin.exact->is_zero() : std::fabs(margin.approx) <= sign_tol;
      e.degenerate = degenerate;
      e.sign = degenerate ? 0
                          : (margin.is_exact() ? margin.exact->sign()
                                               : (margin.approx < 0 ? -1 : 1));
      out.push_back(e);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commuting symmetric families
// ---------------------------------------------------------------------------

namespace {

// Cyclic Jacobi eigenvalue iteration for a small symmetric matrix.
// Returns eigenvalues (diagonal) and accumulates rotations into vecs.
void jacobi_eigen(DenseMatrix a, std::vector<double>* eigenvalues, DenseMatrix* vecs) {
  const size_t n = a.size();
  vecs->assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) (*vecs)[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26) break;
    for (size_t p = 0; p < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-15) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (size_t i = 0; i < n; ++i) {
          double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (size_t i = 0; i < n; ++i) {
          double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (size_t i = 0; i < n; ++i) {
          double vip = (*vecs)[i][p], viq = (*vecs)[i][q];
          (*vecs)[i][p] = c * vip - s * viq;
          (*vecs)[i][q] = s * vip + c * viq;
        }
      }
    }
  }
  eigenvalues->resize(n);
  for (size_t i = 0; i < n; ++i) (*eigenvalues)[i] = a[i][i];
}

}  // namespace

CommutingResult commuting_mu(const std::vector<DenseMatrix>& matrices, double cluster_tol) {
  if (matrices.empty()) throw Error("commuting_mu: no matrices given");
  const size_t n = matrices[0].size();
  double scale = 1.0;
  for (const auto& a : matrices) {
    if (a.size() != n) throw Error("commuting_mu: matrices of different sizes");
    for (const auto& row : a) {
      if (row.size() != n) throw Error("commuting_mu: matrix is not square");
      for (double v : row) scale = std::max(scale, std::fabs(v));
    }
  }
  for (size_t j = 0; j < matrices.size(); ++j)
    for (size_t r = 0; r < n; ++r)
      for (size_t c = r + 1; c < n; ++c)
        if (std::fabs(matrices[j][r][c] - matrices[j][c][r]) > cluster_tol * scale)
          throw ComplexSpectrum("commuting_mu: matrix A_" + std::to_string(j) +
                                " is not symmetric; only symmetric commuting families "
                                "are supported");
  for (size_t i = 0; i < matrices.size(); ++i) {
    for (size_t j = i + 1; j < matrices.size(); ++j) {
      double res = 0;
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
          double ab = 0, ba = 0;
          for (size_t t = 0; t < n; ++t) {
            ab += matrices[i][r][t] * matrices[j][t][c];
            ba += matrices[j][r][t] * matrices[i][t][c];
          }
          res = std::max(res, std::fabs(ab - ba));
        }
      if (res > cluster_tol * scale * scale)
        throw NonCommuting(static_cast<int>(i), static_cast<int>(j), res,
                           "commuting_mu: A_" + std::to_string(i) + " and A_" +
                               std::to_string(j) + " do not commute (residual " +
                               std::to_string(res) + ")");
    }
  }

  // Clusters carry an orthonormal basis (columns) and one eigenvalue per
  // processed matrix; refined matrix by matrix.
  struct Cluster {
    DenseMatrix basis;  // n x d, columns are basis vectors
    std::vector<double> values;
  };
  std::vector<Cluster> clusters(1);
  clusters[0].basis.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) clusters[0].basis[i][i] = 1.0;

  for (const auto& a : matrices) {
    std::vector<Cluster> next;
    for (auto& cl : clusters) {
      const size_t d = cl.basis[0].size();
      // M = Q^T A Q
      DenseMatrix aq(n, std::vector<double>(d, 0.0));
      for (size_t i = 0; i < n; ++i)
        for (size_t c = 0; c < d; ++c)
          for (size_t t = 0; t < n; ++t) aq[i][c] += a[i][t] * cl.basis[t][c];
      DenseMatrix m(d, std::vector<double>(d, 0.0));
      for (size_t r = 0; r < d; ++r)
        for (size_t c = 0; c < d; ++c)
          for (size_t t = 0; t < n; ++t) m[r][c] += cl.basis[t][r] * aq[t][c];
      std::vector<double> ev;
      DenseMatrix vecs;
      jacobi_eigen(m, &ev, &vecs);
      std::vector<size_t> order(d);
      for (size_t i = 0; i < d; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return ev[x] < ev[y]; });
      size_t start = 0;
      while (start < d) {
        size_t stop = start + 1;
        while (stop < d && ev[order[stop]] - ev[order[stop - 1]] <= cluster_tol * scale)
          ++stop;
        Cluster sub;
        sub.values = cl.values;
        double mean = 0;
        for (size_t i = start; i < stop; ++i) mean += ev[order[i]];
        mean /= static_cast<double>(stop - start);
        sub.values.push_back(mean);
        sub.basis.assign(n, std::vector<double>(stop - start, 0.0));
        for (size_t i = 0; i < n; ++i)
          for (size_t c = start; c < stop; ++c)
            for (size_t t = 0; t < d; ++t)
              sub.basis[i][c - start] += cl.basis[i][t] * vecs[t][order[c]];
        next.push_back(std::move(sub));
        start = stop;
      }
    }
    clusters = std::move(next);
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.values < b.values; });
  CommutingResult out;
  out.mu.m = static_cast<int>(matrices.size()) - 1;
  out.mu.cols = static_cast<int>(clusters.size());
  out.mu.provenance = MuProvenance::commuting;
  out.mu.mu.assign(matrices.size(), {});
  for (size_t j = 0; j < matrices.size(); ++j)
    for (const auto& cl : clusters) out.mu.mu[j].push_back(Scalar(cl.values[j]));
  for (const auto& cl : clusters)
    out.multiplicities.push_back(static_cast<int>(cl.basis[0].size()));
  return out;
}

}  // namespace eqdeg
