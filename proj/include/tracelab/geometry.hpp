#pragma once
// Sphere and Heisenberg-group geometry: point types, tensor-product
// quadrature on round spheres S^d and CR spheres S^{2n+1} (unit spheres of
// C^{n+1}), the Cayley transform between the Heisenberg group H^n and
// S^{2n+1}, stereographic projection, and the sub-sphere embeddings used by
// the trace operators.

#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "tracelab/quadrature.hpp"
#include "tracelab/special.hpp"

namespace tracelab {

using complexd = std::complex<double>;

/// Point of the unit sphere of C^{n+1} (dimension 2n+1 as a real manifold).
struct CRPoint {
  std::vector<complexd> z;  // n+1 complex coordinates, |z| = 1
};

/// Point of the unit sphere S^d of R^{d+1}.
struct RoundPoint {
  std::vector<double> x;  // d+1 real coordinates, |x| = 1
};

/// Point of the Heisenberg group H^n.
struct HeisPoint {
  std::vector<complexd> z;  // n complex coordinates
  double t = 0.0;
};

/// Surface area of S^d: 2 pi^{(d+1)/2} / Gamma((d+1)/2).  Small dimensions
/// are served from a precomputed table because this sits inside every zonal
/// kernel evaluation.
inline double sphere_area(int d) {
  if (d < 1) throw std::domain_error("sphere_area: dimension must be >= 1");
  const auto direct = [](int dd) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * (dd + 1)) /
           gamma_pos(0.5 * (dd + 1));
  };
  static const std::array<double, 32> table = [&] {
    std::array<double, 32> t{};
    for (int dd = 1; dd < 32; ++dd) t[dd] = direct(dd);
    return t;
  }();
  return d < 32 ? table[d] : direct(d);
}

/// Hermitian pairing zeta . conj(eta) of two CR points.
inline complexd herm_dot(const CRPoint& a, const CRPoint& b) {
  if (a.z.size() != b.z.size())
    throw std::domain_error("herm_dot: dimension mismatch");
  complexd s = 0.0;
  for (std::size_t j = 0; j < a.z.size(); ++j) s += a.z[j] * std::conj(b.z[j]);
  return s;
}

inline double dot(const RoundPoint& a, const RoundPoint& b) {
  if (a.x.size() != b.x.size())
    throw std::domain_error("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.x.size(); ++j) s += a.x[j] * b.x[j];
  return s;
}

/// |1 - zeta . conj(eta)|, the square of the natural CR distance kernel.
inline double cr_pseudodistance(const CRPoint& a, const CRPoint& b) {
  return std::abs(1.0 - herm_dot(a, b));
}

inline CRPoint north_pole_cr(int n) {
  CRPoint p;
  p.z.assign(n + 1, 0.0);
  p.z[n] = 1.0;
  return p;
}

inline RoundPoint north_pole_round(int d) {
  RoundPoint p;
  p.x.assign(d + 1, 0.0);
  p.x[d] = 1.0;
  return p;
}

// ---------------------------------------------------------------------------
// Quadrature on spheres
// ---------------------------------------------------------------------------

/// Tensor-product rule on the unit sphere of C^{n+1}.  Exact for polynomial
/// integrands in (zeta, conj zeta) of total degree <= exactness_degree.
struct CRQuadrature {
  int n = 0;
  int resolution = 0;
  int exactness_degree = 0;
  std::vector<CRPoint> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Tensor-product rule on S^d with the same exactness convention.
struct RoundQuadrature {
  int d = 0;
  int resolution = 0;
  int exactness_degree = 0;
  std::vector<RoundPoint> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Build the S^{2n+1} rule: moduli |zeta_j|^2 through a stick-breaking map of
/// the simplex (Gauss-Jacobi absorbs the simplex Jacobian exactly) and one
/// periodic trapezoid axis per complex phase.  Writing u_j = |zeta_j|^2, the
/// measure is  d sigma = 2^{-n} du_1..du_n dphi_1..dphi_{n+1}.
inline CRQuadrature build_quadrature_cr(int n, int resolution) {
  if (n < 0) throw std::domain_error("build_quadrature_cr: n must be >= 0");
  if (resolution < 2)
    throw std::domain_error("build_quadrature_cr: resolution must be >= 2");
  const int n_mod = (resolution + 1) / 2;  // Gauss nodes per modulus axis
  const int n_phase = resolution;          // trapezoid nodes per phase axis

  // stick-breaking axes: v_k in (0,1) with weight (1-v_k)^{n-k}, k = 1..n
  std::vector<Rule1D> stick(n);
  for (int k = 1; k <= n; ++k) {
    Rule1D r = gauss_jacobi(n_mod, static_cast<double>(n - k), 0.0);
    // map [-1,1] -> [0,1] and absorb the interval scaling into the weight
    const double scale = std::pow(0.5, (n - k) + 1);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r.x[i] = 0.5 * (r.x[i] + 1.0);
      r.w[i] *= scale;
    }
    stick[k - 1] = r;
  }
  const Rule1D phase = trapezoid_periodic(n_phase);

  CRQuadrature q;
  q.n = n;
  q.resolution = resolution;
  q.exactness_degree = resolution - 1;

  // iterate the tensor product with odometer indices
  std::vector<int> mi(n, 0), pi_idx(n + 1, 0);
  const double base = std::pow(0.5, n);
  bool done = false;
  while (!done) {
    // moduli from the stick-breaking prefix products
    double rem = 1.0;
    double wmod = base;
    std::vector<double> u(n + 1);
    for (int k = 0; k < n; ++k) {
      const double v = stick[k].x[mi[k]];
      u[k] = rem * v;
      wmod *= stick[k].w[mi[k]];
      rem *= (1.0 - v);
    }
    u[n] = rem;

    // phases
    std::vector<int> pcur(n + 1, 0);
    bool pdone = false;
    while (!pdone) {
      CRPoint p;
      p.z.resize(n + 1);
      double w = wmod;
      for (int j = 0; j <= n; ++j) {
        const double phi = phase.x[pcur[j]];
        p.z[j] = std::sqrt(u[j]) * complexd(std::cos(phi), std::sin(phi));
        w *= phase.w[pcur[j]];
      }
      q.nodes.push_back(std::move(p));
      q.weights.push_back(w);
      // advance phase odometer
      int j = 0;
      for (; j <= n; ++j) {
        if (++pcur[j] < n_phase) break;
        pcur[j] = 0;
      }
      pdone = (j > n);
    }
    // advance modulus odometer
    int k = 0;
    for (; k < n; ++k) {
      if (++mi[k] < n_mod) break;
      mi[k] = 0;
    }
    done = (k >= n);
  }
  return q;
}

/// Build the S^d rule recursively: S^d = {(cos theta, sin theta * omega')},
/// omega' in S^{d-1}, with d sigma_d = (1-t^2)^{(d-2)/2} dt d sigma_{d-1}
/// for t = cos theta; the base circle uses the periodic trapezoid.
inline RoundQuadrature build_quadrature_round(int d, int resolution) {
  if (d < 1) throw std::domain_error("build_quadrature_round: d must be >= 1");
  if (resolution < 2)
    throw std::domain_error("build_quadrature_round: resolution must be >= 2");
  RoundQuadrature q;
  q.d = d;
  q.resolution = resolution;
  q.exactness_degree = resolution - 1;
  if (d == 1) {
    const Rule1D phase = trapezoid_periodic(resolution);
    for (std::size_t i = 0; i < phase.size(); ++i) {
      RoundPoint p;
      p.x = {std::cos(phase.x[i]), std::sin(phase.x[i])};
      q.nodes.push_back(std::move(p));
      q.weights.push_back(phase.w[i]);
    }
    return q;
  }
  const RoundQuadrature inner = build_quadrature_round(d - 1, resolution);
  const int n_polar = (resolution + 1) / 2;
  const Rule1D polar = gauss_jacobi(n_polar, 0.5 * (d - 2), 0.5 * (d - 2));
  for (std::size_t a = 0; a < polar.size(); ++a) {
    const double t = polar.x[a];
    const double s = std::sqrt(1.0 - t * t);
    for (std::size_t b = 0; b < inner.size(); ++b) {
      RoundPoint p;
      p.x.resize(d + 1);
      p.x[0] = t;
      for (int j = 0; j < d; ++j) p.x[j + 1] = s * inner.nodes[b].x[j];
      q.nodes.push_back(std::move(p));
      q.weights.push_back(polar.w[a] * inner.weights[b]);
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// Cayley transform between H^n and the unit sphere of C^{n+1}
// ---------------------------------------------------------------------------

/// Homogeneous dimension of H^n (and of the CR sphere S^{2n+1}).
inline double homogeneous_dim(int n) { return 2.0 * n + 2.0; }

inline CRPoint cayley(const HeisPoint& u) {
  const int n = static_cast<int>(u.z.size());
  double zsq = 0.0;
  for (const auto& zj : u.z) zsq += std::norm(zj);
  const complexd den(1.0 + zsq, u.t);
  CRPoint p;
  p.z.resize(n + 1);
  for (int j = 0; j < n; ++j) p.z[j] = 2.0 * u.z[j] / den;
  p.z[n] = complexd(1.0 - zsq, -u.t) / den;
  return p;
}

inline HeisPoint cayley_inv(const CRPoint& zeta) {
  const int n = static_cast<int>(zeta.z.size()) - 1;
  const complexd one_plus = 1.0 + zeta.z[n];
  if (std::abs(one_plus) < 1e-14)
    throw std::domain_error("cayley_inv: pole at zeta_{n+1} = -1");
  HeisPoint u;
  u.z.resize(n);
  for (int j = 0; j < n; ++j) u.z[j] = zeta.z[j] / one_plus;
  u.t = std::imag((1.0 - zeta.z[n]) / one_plus);
  return u;
}

/// Returns 2|J| = (4/((1+|z|^2)^2 + t^2))^{Q/2} with Q = 2n+2; the factor-2
/// convention matches the normalization in which the sphere and group
/// functionals are compared.  |J| itself is 2^{2n+1}/((1+|z|^2)^2+t^2)^{n+1}.
inline double cayley_jacobian(const HeisPoint& u) {
  const int n = static_cast<int>(u.z.size());
  double zsq = 0.0;
  for (const auto& zj : u.z) zsq += std::norm(zj);
  const double denom = (1.0 + zsq) * (1.0 + zsq) + u.t * u.t;
  return std::pow(4.0 / denom, 0.5 * homogeneous_dim(n));
}

// ---------------------------------------------------------------------------
// Stereographic projection R^n -> S^n
// ---------------------------------------------------------------------------

inline RoundPoint stereographic(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  double xsq = 0.0;
  for (double xi : x) xsq += xi * xi;
  const double den = 1.0 + xsq;
  RoundPoint p;
  p.x.resize(n + 1);
  for (int j = 0; j < n; ++j) p.x[j] = 2.0 * x[j] / den;
  p.x[n] = (1.0 - xsq) / den;
  return p;
}

inline std::vector<double> stereographic_inv(const RoundPoint& w) {
  const int n = static_cast<int>(w.x.size()) - 1;
  const double one_plus = 1.0 + w.x[n];
  if (std::fabs(one_plus) < 1e-14)
    throw std::domain_error("stereographic_inv: pole at omega_{n+1} = -1");
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = w.x[j] / one_plus;
  return x;
}

inline double stereographic_jacobian(const std::vector<double>& x) {
  double xsq = 0.0;
  for (double xi : x) xsq += xi * xi;
  return std::pow(2.0 / (1.0 + xsq), static_cast<double>(x.size()));
}

// ---------------------------------------------------------------------------
// Heisenberg group structure
// ---------------------------------------------------------------------------

/// Group law (z,t)(w,mu) = (z + w, t + mu + 2 Im<z, w>), where <z, w> is the
/// Hermitian pairing conjugate-linear in its first argument.  This sign is
/// the one compatible with the Cayley distance identity
///   |1 - cayley(u) . conj(cayley(v))|
///     = 2 |u^{-1}v|^2 / sqrt(((1+|z|^2)^2+t^2)((1+|w|^2)^2+mu^2)),
/// given the transform convention with +it in the denominator.
inline HeisPoint heisenberg_group_law(const HeisPoint& u, const HeisPoint& v) {
  if (u.z.size() != v.z.size())
    throw std::domain_error("heisenberg_group_law: dimension mismatch");
  HeisPoint r;
  r.z.resize(u.z.size());
  double im = 0.0;
  for (std::size_t j = 0; j < u.z.size(); ++j) {
    r.z[j] = u.z[j] + v.z[j];
    im += std::imag(std::conj(u.z[j]) * v.z[j]);
  }
  r.t = u.t + v.t + 2.0 * im;
  return r;
}

inline HeisPoint heisenberg_inverse(const HeisPoint& u) {
  HeisPoint r;
  r.z.resize(u.z.size());
  for (std::size_t j = 0; j < u.z.size(); ++j) r.z[j] = -u.z[j];
  r.t = -u.t;
  return r;
}

/// Homogeneous norm |u| = (|z|^4 + t^2)^{1/4}.
inline double heisenberg_norm(const HeisPoint& u) {
  double zsq = 0.0;
  for (const auto& zj : u.z) zsq += std::norm(zj);
  return std::pow(zsq * zsq + u.t * u.t, 0.25);
}

/// Anisotropic dilation delta_r(z,t) = (r z, r^2 t).
inline HeisPoint heisenberg_dilate(const HeisPoint& u, double r) {
  HeisPoint d;
  d.z.resize(u.z.size());
  for (std::size_t j = 0; j < u.z.size(); ++j) d.z[j] = r * u.z[j];
  d.t = r * r * u.t;
  return d;
}

// ---------------------------------------------------------------------------
// Sub-sphere embeddings
// ---------------------------------------------------------------------------

/// Embed S^{2(n-m)+1} (unit sphere of C^{n-m+1}) into S^{2n+1} by zero
/// padding the trailing m complex coordinates.
inline CRPoint subsphere_embed_cr(const CRPoint& eta, int n, int m) {
  if (m < 1 || m > n)
    throw std::domain_error("subsphere_embed_cr: need 1 <= m <= n");
  if (static_cast<int>(eta.z.size()) != n - m + 1)
    throw std::domain_error("subsphere_embed_cr: wrong sub-sphere dimension");
  CRPoint p;
  p.z.assign(n + 1, 0.0);
  for (int j = 0; j < n - m + 1; ++j) p.z[j] = eta.z[j];
  return p;
}

/// Embed S^{n-m} into S^n by zero padding the trailing m real coordinates.
inline RoundPoint subsphere_embed_round(const RoundPoint& eta, int n, int m) {
  if (m < 1 || m > n - 1)
    throw std::domain_error("subsphere_embed_round: need 1 <= m <= n-1");
  if (static_cast<int>(eta.x.size()) != n - m + 1)
    throw std::domain_error("subsphere_embed_round: wrong sub-sphere dimension");
  RoundPoint p;
  p.x.assign(n + 1, 0.0);
  for (int j = 0; j < n - m + 1; ++j) p.x[j] = eta.x[j];
  return p;
}

/// Embed S^{2(n-m)+1}, the unit sphere of C^{n-m+1}, into H^n: its complex
/// coordinates fill the first n-m+1 slots of z, the remaining m-1 slots and
/// the t coordinate vanish.  This is the slot alignment forced by the
/// subgroup picture; no other convention is consistent with the Cayley
/// identification of the sub-sphere.
inline HeisPoint subsphere_embed_heis(const CRPoint& eta, int n, int m) {
  if (m < 1 || m > n)
    throw std::domain_error("subsphere_embed_heis: need 1 <= m <= n");
  if (static_cast<int>(eta.z.size()) != n - m + 1)
    throw std::domain_error("subsphere_embed_heis: wrong sub-sphere dimension");
  HeisPoint u;
  u.z.assign(n, 0.0);
  for (int j = 0; j < n - m + 1; ++j) u.z[j] = eta.z[j];
  u.t = 0.0;
  return u;
}

// ---------------------------------------------------------------------------
// Serialization (portable text, full precision)
// ---------------------------------------------------------------------------

inline void save_quadrature(std::ostream& os, const CRQuadrature& q) {
  os << "cr " << q.n << " " << q.resolution << " " << q.exactness_degree << " "
     << q.size() << "\n"
     << std::setprecision(17);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (const auto& zj : q.nodes[i].z)
      os << zj.real() << " " << zj.imag() << " ";
    os << q.weights[i] << "\n";
  }
}

inline CRQuadrature load_quadrature_cr(std::istream& is) {
  std::string tag;
  CRQuadrature q;
  std::size_t count = 0;
  if (!(is >> tag >> q.n >> q.resolution >> q.exactness_degree >> count) ||
      tag != "cr")
    throw std::runtime_error("load_quadrature_cr: bad header");
  q.nodes.resize(count);
  q.weights.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    q.nodes[i].z.resize(q.n + 1);
    for (int j = 0; j <= q.n; ++j) {
      double re, im;
      if (!(is >> re >> im))
        throw std::runtime_error("load_quadrature_cr: bad row");
      q.nodes[i].z[j] = complexd(re, im);
    }
    if (!(is >> q.weights[i]))
      throw std::runtime_error("load_quadrature_cr: bad weight");
  }
  return q;
}

inline void save_quadrature(std::ostream& os, const RoundQuadrature& q) {
  os << "round " << q.d << " " << q.resolution << " " << q.exactness_degree
     << " " << q.size() << "\n"
     << std::setprecision(17);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (double xj : q.nodes[i].x) os << xj << " ";
    os << q.weights[i] << "\n";
  }
}

inline RoundQuadrature load_quadrature_round(std::istream& is) {
  std::string tag;
  RoundQuadrature q;
  std::size_t count = 0;
  if (!(is >> tag >> q.d >> q.resolution >> q.exactness_degree >> count) ||
      tag != "round")
    throw std::runtime_error("load_quadrature_round: bad header");
  q.nodes.resize(count);
  q.weights.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    q.nodes[i].x.resize(q.d + 1);
    for (int j = 0; j <= q.d; ++j)
      if (!(is >> q.nodes[i].x[j]))
        throw std::runtime_error("load_quadrature_round: bad row");
    if (!(is >> q.weights[i]))
      throw std::runtime_error("load_quadrature_round: bad weight");
  }
  return q;
}

}  // namespace tracelab
