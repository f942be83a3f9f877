#pragma once
// Diagonal spectral operators on the CR sphere S^{2n+1} and round sphere
// S^d: the fractional conformal family A_s (two equivalent evaluation
// forms), its differentiated limit A' acting on CR-pluriharmonic functions,
// and the round intertwinor family P_s.  All energies are computed
// spectrally from bidegree/degree components; no grid differentiation.

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tracelab/spectral.hpp"
#include "tracelab/special.hpp"

namespace tracelab {

/// Multiplier of A_s on H_{j,k}: lambda_j(s) lambda_k(s) with
/// lambda_j(s) = Gamma((Q+s)/4 + j) / Gamma((Q-s)/4 + j), Q = 2n+2.
/// Valid for -Q < s <= Q; at s = Q the factor lambda_0 vanishes (the
/// denominator Gamma has a pole), which annihilates pluriharmonic modes.
inline double multiplier_As(int n, int j, int k, double s) {
  if (n < 1 || j < 0 || k < 0)
    throw std::domain_error("multiplier_As: bad mode indices");
  const double Q = homogeneous_dim(n);
  if (!(s > -Q) || !(s <= Q))
    throw std::domain_error("multiplier_As: need -Q < s <= Q");
  auto lam = [&](int mode) {
    const double num = 0.25 * (Q + s) + mode;
    const double den = 0.25 * (Q - s) + mode;
    if (den <= 0.0) {
      // only reachable at s = Q, mode = 0: pole of the denominator Gamma
      return 0.0;
    }
    return gamma_ratio(num, den);
  };
  return lam(j) * lam(k);
}

/// The same multiplier through the operator-Gamma form: with
/// g = (j+k+n)/2 the eigenvalue of sqrt(D - T^2) and (j-k)/2 that of -iT,
///   Gamma(g + (j-k)/2 + (2+s)/4) Gamma(g - (j-k)/2 + (2+s)/4)
///   / [ same with (2-s)/4 ].
/// Algebraically equal to multiplier_As; evaluated independently as a
/// cross-check of the eigenvalue bookkeeping.
inline double multiplier_As_gamma_form(int n, int j, int k, double s) {
  if (n < 1 || j < 0 || k < 0)
    throw std::domain_error("multiplier_As_gamma_form: bad mode indices");
  const double Q = homogeneous_dim(n);
  if (!(s > -Q) || !(s <= Q))
    throw std::domain_error("multiplier_As_gamma_form: need -Q < s <= Q");
  const double g = 0.5 * (j + k + n);
  const double h = 0.5 * (j - k);
  const double up = 0.25 * (2.0 + s);
  const double dn = 0.25 * (2.0 - s);
  const double d1 = g + h + dn, d2 = g - h + dn;
  if (d1 <= 0.0 || d2 <= 0.0) return 0.0;  // s = Q pole, as above
  return std::exp(log_gamma(g + h + up) + log_gamma(g - h + up) -
                  log_gamma(d1) - log_gamma(d2));
}

/// Multiplier of the differentiated operator A' on the pluriharmonic modes
/// H_{j,0} and H_{0,j}: 0 at (0,0) and Gamma(Q/2 + j)/Gamma(j) for j >= 1.
/// Mixed bidegrees are outside the operator's domain.
inline double multiplier_AsPrime(int n, int j, int k) {
  if (n < 1 || j < 0 || k < 0)
    throw std::domain_error("multiplier_AsPrime: bad mode indices");
  if (j > 0 && k > 0)
    throw std::domain_error(
        "multiplier_AsPrime: mixed bidegree is outside the pluriharmonic "
        "domain");
  const int mode = std::max(j, k);
  if (mode == 0) return 0.0;
  return gamma_ratio(0.5 * homogeneous_dim(n) + mode,
                     static_cast<double>(mode));
}

/// Multiplier of the round intertwinor P_s on degree-l harmonics of S^d:
/// Gamma(l + (d+s)/2) / Gamma(l + (d-s)/2), for 0 < s <= d.  At s = d the
/// l = 0 mode is annihilated (denominator pole).
inline double multiplier_Ps(int d, int l, double s) {
  if (d < 1 || l < 0) throw std::domain_error("multiplier_Ps: bad mode");
  if (!(s > 0.0) || !(s > -static_cast<double>(d)) || !(s <= d))
    throw std::domain_error("multiplier_Ps: need 0 < s <= d");
  const double num = l + 0.5 * (d + s);
  const double den = l + 0.5 * (d - s);
  if (den <= 0.0) return 0.0;  // s = d, l = 0
  return gamma_ratio(num, den);
}

// ---------------------------------------------------------------------------
// Tagged multiplier object
// ---------------------------------------------------------------------------

struct Multiplier {
  enum class Kind { cr_As, cr_AsPrime, round_Ps };
  Kind kind = Kind::cr_As;
  int dim_param = 1;  // n for CR kinds, d for the round kind
  double s = 0.0;
  bool project_pluriharmonic = false;  // opt-in behaviour of cr_AsPrime

  double at(int j, int k) const {
    switch (kind) {
      case Kind::cr_As:
        return multiplier_As(dim_param, j, k, s);
      case Kind::cr_AsPrime:
        return multiplier_AsPrime(dim_param, j, k);
      default:
        throw std::domain_error("Multiplier::at(j,k): round kind");
    }
  }
  double at(int l) const {
    if (kind != Kind::round_Ps)
      throw std::domain_error("Multiplier::at(l): CR kind");
    return multiplier_Ps(dim_param, l, s);
  }
};

inline Multiplier make_As(int n, double s) {
  Multiplier m;
  m.kind = Multiplier::Kind::cr_As;
  m.dim_param = n;
  m.s = s;
  multiplier_As(n, 0, 0, s);  // validate the domain eagerly
  return m;
}

inline Multiplier make_AsPrime(int n, bool project_pluriharmonic = false) {
  Multiplier m;
  m.kind = Multiplier::Kind::cr_AsPrime;
  m.dim_param = n;
  m.project_pluriharmonic = project_pluriharmonic;
  return m;
}

inline Multiplier make_Ps(int d, double s) {
  Multiplier m;
  m.kind = Multiplier::Kind::round_Ps;
  m.dim_param = d;
  m.s = s;
  multiplier_Ps(d, 0, s);
  return m;
}

// ---------------------------------------------------------------------------
// Applying multipliers and energies
// ---------------------------------------------------------------------------

namespace detail {

/// For the pluriharmonic-only operator: decide whether a mixed component is
/// materially present (relative to the field's total squared norm).
inline void guard_pluriharmonic(const CRField& F, const Multiplier& m) {
  if (m.kind != Multiplier::Kind::cr_AsPrime || m.project_pluriharmonic)
    return;
  double total = 0.0;
  for (const auto& [jk, comp] : F.components) total += norm_sq(*F.rule, comp);
  for (const auto& [jk, comp] : F.components) {
    if (jk.first > 0 && jk.second > 0) {
      const double ns = norm_sq(*F.rule, comp);
      if (ns > 1e-12 * total)
        throw std::domain_error(
            "A' applied to a field with mixed bidegree content; pass the "
            "pluriharmonic-projection flag to drop it explicitly");
    }
  }
}

}  // namespace detail

/// Apply a diagonal CR multiplier componentwise; the grid entry of the
/// result is the synthesis of the scaled components.
inline CRField apply_multiplier(const CRField& F, const Multiplier& m) {
  detail::guard_pluriharmonic(F, m);
  CRField out;
  out.n = F.n;
  out.L = F.L;
  out.rule = F.rule;
  for (const auto& [jk, comp] : F.components) {
    const bool mixed = jk.first > 0 && jk.second > 0;
    if (m.kind == Multiplier::Kind::cr_AsPrime && mixed) continue;
    const double mult = m.at(jk.first, jk.second);
    std::vector<complexd> scaled(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) scaled[i] = mult * comp[i];
    out.components[jk] = std::move(scaled);
  }
  out.grid = synthesize(out);
  return out;
}

/// Quadratic energy sum_modes multiplier * ||component||^2; by Parseval this
/// equals the pairing of F with (operator F) under the rule's measure.
inline double energy(const CRField& F, const Multiplier& m) {
  detail::guard_pluriharmonic(F, m);
  double e = 0.0;
  for (const auto& [jk, comp] : F.components) {
    const bool mixed = jk.first > 0 && jk.second > 0;
    if (m.kind == Multiplier::Kind::cr_AsPrime && mixed) continue;
    e += m.at(jk.first, jk.second) * norm_sq(*F.rule, comp);
  }
  return e;
}

inline SphereField apply_multiplier(const SphereField& F, const Multiplier& m) {
  SphereField out;
  out.d = F.d;
  out.L = F.L;
  out.rule = F.rule;
  for (const auto& [l, comp] : F.components) {
    const double mult = m.at(l);
    std::vector<double> scaled(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) scaled[i] = mult * comp[i];
    out.components[l] = std::move(scaled);
  }
  out.grid = synthesize(out);
  return out;
}

inline double energy(const SphereField& F, const Multiplier& m) {
  double e = 0.0;
  for (const auto& [l, comp] : F.components)
    e += m.at(l) * inner(*F.rule, comp, comp);
  return e;
}

/// CSV dump of a CR multiplier over a mode rectangle, for inspection and
/// regression diffs.
inline std::string multiplier_table_csv(const Multiplier& m, int jmax,
                                        int kmax) {
  std::ostringstream os;
  os << std::setprecision(17) << "j,k,value\n";
  for (int j = 0; j <= jmax; ++j)
    for (int k = 0; k <= kmax; ++k) {
      if (m.kind == Multiplier::Kind::cr_AsPrime && j > 0 && k > 0) continue;
      os << j << "," << k << "," << m.at(j, k) << "\n";
    }
  return os.str();
}

}  // namespace tracelab
