#pragma once
// One-dimensional quadrature rules and the planar disk rule used for zonal
// kernel integrals.  Three families cover every integral in the library:
//   * Gauss-Legendre / Gauss-Jacobi (polynomial exactness),
//   * periodic trapezoid (spectral exactness for phase integrals),
//   * tanh-sinh (double-exponential) rules for endpoint-singular factors.
// Tanh-sinh nodes are stored together with their distance to each endpoint
// so integrands can evaluate boundary layers without cancellation.

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracelab/special.hpp"

namespace tracelab {

/// Nodes and weights on an interval.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
inline Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    // Refresh the derivative at the converged node for the weight formula.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    // store in ascending order to match the eigensolver-based rules
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

/// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1],
/// built by the Golub-Welsch eigenvalue method.
inline Rule1D gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw std::domain_error("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("gauss_jacobi: weight exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    if (k == 0)
      J(k, k) = (beta - alpha) / (ab + 2.0);
    else
      J(k, k) = (beta * beta - alpha * alpha) /
                ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    if (k == 1) {
      // The general off-diagonal formula is 0/0 at k=1 when ab = -1; this
      // cancelled form is valid for all admissible (alpha, beta).
      const double b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
                        ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      J(1, 0) = J(0, 1) = std::sqrt(b2);
    } else if (k >= 2) {
      const double dk = 2.0 * k + ab;
      const double b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                        (dk * dk * (dk + 1.0) * (dk - 1.0));
      J(k, k - 1) = J(k - 1, k) = std::sqrt(b2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp((ab + 1.0) * std::numbers::ln2 +
                              log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) -
                              log_gamma(ab + 2.0));
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v0 * v0;
  }
  return r;
}

/// Equispaced rule on [0, 2*pi), exact for trigonometric polynomials with
/// fewer than n harmonics.
inline Rule1D trapezoid_periodic(int n) {
  if (n < 1) throw std::domain_error("trapezoid_periodic: need nodes");
  Rule1D r;
  r.x.resize(n);
  r.w.assign(n, 2.0 * std::numbers::pi / n);
  for (int i = 0; i < n; ++i) r.x[i] = 2.0 * std::numbers::pi * i / n;
  return r;
}

/// Tanh-sinh node on (0, 1): position u, complement 1-u held to full relative
/// precision, and quadrature weight.
struct NodeTS {
  double u;
  double one_minus_u;
  double w;
};

/// Double-exponential rule on (0, 1).  Handles integrable endpoint
/// singularities u^p (1-u)^q (p, q > -1) with rapid convergence; the
/// complement field keeps boundary-layer evaluations cancellation-free.
/// `half_points` nodes are placed on each side of the midpoint; `t_max`
/// truncates the transformed axis.  The default 4.5 keeps the truncated
/// tail below 1e-15 for endpoint exponents as strong as -3/4, the worst
/// case arising in the singular zonal sweeps.
inline std::vector<NodeTS> tanh_sinh01(int half_points, double t_max = 4.5) {
  if (half_points < 2) throw std::domain_error("tanh_sinh01: too few nodes");
  std::vector<NodeTS> nodes;
  nodes.reserve(2 * half_points + 1);
  const double h = t_max / half_points;
  constexpr double half_pi = std::numbers::pi / 2.0;
  for (int k = -half_points; k <= half_points; ++k) {
    const double t = h * k;
    const double a = half_pi * std::sinh(t);
    // u = 1/(1+e^{-2a}) and 1-u = 1/(1+e^{2a}), each computed directly so
    // that no endpoint distance is lost to rounding.
    const double u = 1.0 / (1.0 + std::exp(-2.0 * a));
    const double omu = 1.0 / (1.0 + std::exp(2.0 * a));
    const double sech = 1.0 / std::cosh(a);
    const double w = h * (std::numbers::pi / 4.0) * std::cosh(t) * sech * sech;
    if (w > 0.0 && u > 0.0 && omu > 0.0) nodes.push_back({u, omu, w});
  }
  return nodes;
}

/// Node of the planar disk rule in the chord frame centred at w = 1.
/// The complex node is w = 1 - 2*cos(phi)*sigma*e^{i*phi}; storing sigma and
/// the trigonometric pair lets kernels evaluate quantities like 1 - r*w
/// without cancellation:
///   1 - r*w = (1 - r) + 2*r*cos(phi)*sigma*e^{i*phi}.
struct NodeDisk {
  double sigma;   // fraction of the chord from w=1 to the circle, in (0,1)
  double cphi;    // cos(phi), phi in (-pi/2, pi/2)
  double sphi;    // sin(phi)
  double re_w;    // Re w
  double im_w;    // Im w
  double abs_one_minus_w;     // |1 - w| = 2*cos(phi)*sigma
  double one_minus_abs_w_sq;  // 1 - |w|^2 = 4*cos(phi)^2*sigma*(1-sigma)
  double weight;  // quadrature weight including the area Jacobian
};

/// Quadrature rule for integrals over the unit disk with power singularities
/// at w = 1 and/or on the boundary |w| = 1.  For phi in (-pi/2, pi/2) and
/// sigma in (0, 1), w = 1 - 2*cos(phi)*sigma*e^{i*phi} traces the chord from
/// w = 1 through the disk; the map covers the disk once with area element
/// 4*cos(phi)^2*sigma dsigma dphi.  Both axes use tanh-sinh nodes so the
/// boundary layers at sigma -> 0, sigma -> 1 and phi -> +-pi/2 are resolved.
inline std::vector<NodeDisk> disk_rule(int half_sigma, int half_phi,
                                       double t_max = 4.5) {
  const auto s_nodes = tanh_sinh01(half_sigma, t_max);
  const auto p_nodes = tanh_sinh01(half_phi, t_max);
  std::vector<NodeDisk> out;
  out.reserve(s_nodes.size() * p_nodes.size());
  for (const auto& pn : p_nodes) {
    // phi = pi*(u - 1/2).  cos(phi) = sin(pi*u) = sin(pi*(1-u)); evaluating
    // at the smaller of u, 1-u keeps full relative precision near the ends,
    // which matters because kernels carry negative powers of cos(phi).
    const double c = std::sin(std::numbers::pi * std::min(pn.u, pn.one_minus_u));
    const double s = -std::cos(std::numbers::pi * pn.u);
    for (const auto& sn : s_nodes) {
      NodeDisk nd;
      nd.sigma = sn.u;
      nd.cphi = c;
      nd.sphi = s;
      const double rho = 2.0 * c * sn.u;  // |1 - w|
      nd.abs_one_minus_w = rho;
      nd.re_w = 1.0 - rho * c;
      nd.im_w = -rho * s;
      nd.one_minus_abs_w_sq = 4.0 * c * c * sn.u * sn.one_minus_u;
      nd.weight = 4.0 * c * c * sn.u * sn.w * (std::numbers::pi * pn.w);
      if (nd.weight > 0.0) out.push_back(nd);
    }
  }
  return out;
}

/// Serialize a 1-D rule as portable text (17 significant digits).
inline void save_rule(std::ostream& os, const Rule1D& r) {
  os << r.size() << "\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.size(); ++i)
    os << r.x[i] << " " << r.w[i] << "\n";
}

inline Rule1D load_rule(std::istream& is) {
  std::size_t n = 0;
  if (!(is >> n)) throw std::runtime_error("load_rule: bad header");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!(is >> r.x[i] >> r.w[i]))
      throw std::runtime_error("load_rule: bad row");
  return r;
}

inline void save_disk_rule(std::ostream& os, const std::vector<NodeDisk>& d) {
  os << d.size() << "\n" << std::setprecision(17);
  for (const auto& n : d)
    os << n.sigma << " " << n.cphi << " " << n.sphi << " " << n.re_w << " "
       << n.im_w << " " << n.abs_one_minus_w << " " << n.one_minus_abs_w_sq
       << " " << n.weight << "\n";
}

inline std::vector<NodeDisk> load_disk_rule(std::istream& is) {
  std::size_t n = 0;
  if (!(is >> n)) throw std::runtime_error("load_disk_rule: bad header");
  std::vector<NodeDisk> d(n);
  for (auto& nd : d)
    if (!(is >> nd.sigma >> nd.cphi >> nd.sphi >> nd.re_w >> nd.im_w >>
          nd.abs_one_minus_w >> nd.one_minus_abs_w_sq >> nd.weight))
      throw std::runtime_error("load_disk_rule: bad row");
  return d;
}

}  // namespace tracelab
