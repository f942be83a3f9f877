#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "oracle_data.hpp"
#include "tracelab/geometry.hpp"
#include "tracelab/quadrature.hpp"
#include "tracelab/special.hpp"

using namespace tracelab;

namespace {

HeisPoint random_heis(std::mt19937& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  HeisPoint p;
  p.z.resize(n);
  for (int j = 0; j < n; ++j) p.z[j] = complexd(u(rng), u(rng));
  p.t = u(rng);
  return p;
}

// integral over S^{2n+1} of zeta^a conj(zeta)^b equals
// delta_{ab} * 2 pi^{n+1} * prod a_j! / (n + |a|)!
double monomial_integral_cr(const std::vector<int>& a,
                            const std::vector<int>& b) {
  if (a != b) return 0.0;
  const int n = static_cast<int>(a.size()) - 1;
  int total = 0;
  double fact = 1.0;
  for (int aj : a) {
    total += aj;
    fact *= factorial(aj);
  }
  return 2.0 * std::pow(std::numbers::pi, n + 1) * fact / factorial(n + total);
}

}  // namespace

TEST_CASE("sphere areas match closed forms and frozen references") {
  CHECK(std::fabs(sphere_area(1) - 2.0 * std::numbers::pi) < 1e-14);
  CHECK(std::fabs(sphere_area(3) - 2.0 * std::numbers::pi * std::numbers::pi) <
        1e-13);
  CHECK(std::fabs(sphere_area(5) - std::pow(std::numbers::pi, 3)) < 1e-13);
  CHECK(std::fabs(sphere_area(2) - oracle::area_s2) < 1e-13);
  CHECK(std::fabs(sphere_area(4) - oracle::area_s4) < 1e-13);
  CHECK(std::fabs(sphere_area(7) - oracle::area_s7) < 1e-13);
  CHECK_THROWS_AS(sphere_area(0), std::domain_error);
}

TEST_CASE("circle quadrature is the plain equispaced rule") {
  const auto q = build_quadrature_cr(0, 16);
  REQUIRE(q.size() == 16);
  for (double w : q.weights)
    CHECK(std::fabs(w - 2.0 * std::numbers::pi / 16.0) < 1e-15);
  for (const auto& p : q.nodes) CHECK(std::fabs(std::abs(p.z[0]) - 1.0) < 1e-14);
}

TEST_CASE("CR sphere quadrature integrates all monomials in its degree range") {
  const auto q = build_quadrature_cr(1, 12);
  // group node weights once; check every monomial of total degree <= 11
  for (int a1 = 0; a1 <= 5; ++a1)
    for (int a2 = 0; a2 + a1 <= 5; ++a2)
      for (int b1 = 0; b1 <= 5; ++b1)
        for (int b2 = 0; b2 + b1 <= 5 && a1 + a2 + b1 + b2 <= 11; ++b2) {
          complexd s = 0.0;
          for (std::size_t i = 0; i < q.size(); ++i) {
            const complexd z1 = q.nodes[i].z[0], z2 = q.nodes[i].z[1];
            s += q.weights[i] * std::pow(z1, a1) * std::pow(z2, a2) *
                 std::pow(std::conj(z1), b1) * std::pow(std::conj(z2), b2);
          }
          const double exact = monomial_integral_cr({a1, a2}, {b1, b2});
          CHECK(std::abs(s - exact) < 1e-12 * (1.0 + std::fabs(exact)));
        }
}

TEST_CASE("CR sphere quadrature totals and moments match frozen references") {
  {
    const auto q = build_quadrature_cr(1, 12);
    double total = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      total += q.weights[i];
      const double r2 = std::norm(q.nodes[i].z[0]);
      m2 += q.weights[i] * r2;
      m4 += q.weights[i] * r2 * r2;
    }
    CHECK(std::fabs(total - sphere_area(3)) < 1e-10 * sphere_area(3));
    CHECK(std::fabs(m2 - 0.5 * sphere_area(3)) < 1e-10);
    CHECK(std::fabs(m4 - oracle::s3_abs_z1_4) < 1e-10);
  }
  {
    const auto q = build_quadrature_cr(2, 10);
    double total = 0.0, m2 = 0.0, mix = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      total += q.weights[i];
      const double r1 = std::norm(q.nodes[i].z[0]);
      const double r2 = std::norm(q.nodes[i].z[1]);
      m2 += q.weights[i] * r1;
      mix += q.weights[i] * r1 * r2 * r2;
    }
    CHECK(std::fabs(total - sphere_area(5)) < 1e-10 * sphere_area(5));
    CHECK(std::fabs(m2 - oracle::s5_abs_z1_sq) < 1e-10);
    CHECK(std::fabs(mix - oracle::s5_abs_z1_sq_z2_4) < 1e-10);
  }
}

TEST_CASE("CR quadrature is invariant under the circle action") {
  const auto q = build_quadrature_cr(1, 10);
  const complexd rot = std::polar(1.0, 0.37);
  auto f = [](const complexd& z1, const complexd& z2) {
    return std::real(z1 * z1 * std::conj(z2) * std::conj(z2)) +
           std::norm(z1) * std::norm(z1);
  };
  double plain = 0.0, rotated = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    plain += q.weights[i] * f(q.nodes[i].z[0], q.nodes[i].z[1]);
    rotated += q.weights[i] * f(rot * q.nodes[i].z[0], rot * q.nodes[i].z[1]);
  }
  CHECK(std::fabs(plain - rotated) < 1e-10);
}

TEST_CASE("round sphere quadrature reproduces classical moments") {
  {
    const auto q = build_quadrature_round(2, 12);
    double total = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      total += q.weights[i];
      const double x = q.nodes[i].x[0];
      m2 += q.weights[i] * x * x;
      m4 += q.weights[i] * x * x * x * x;
    }
    CHECK(std::fabs(total - sphere_area(2)) < 1e-10 * sphere_area(2));
    CHECK(std::fabs(m2 - sphere_area(2) / 3.0) < 1e-10);
    CHECK(std::fabs(m4 - 0.2 * sphere_area(2)) < 1e-10);  // 4 pi / 5
  }
  {
    const auto q = build_quadrature_round(4, 10);
    double total = 0.0;
    for (double w : q.weights) total += w;
    CHECK(std::fabs(total - sphere_area(4)) < 1e-10 * sphere_area(4));
  }
  {
    const auto q = build_quadrature_round(3, 8);
    double m2_last = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double x = q.nodes[i].x[3];
      m2_last += q.weights[i] * x * x;
    }
    CHECK(std::fabs(m2_last - sphere_area(3) / 4.0) < 1e-10);
  }
}

TEST_CASE("every quadrature node is on the sphere with positive weight") {
  const auto qc = build_quadrature_cr(2, 6);
  for (std::size_t i = 0; i < qc.size(); ++i) {
    double nsq = 0.0;
    for (const auto& zj : qc.nodes[i].z) nsq += std::norm(zj);
    CHECK(std::fabs(nsq - 1.0) < 1e-14);
    CHECK(qc.weights[i] > 0.0);
  }
  const auto qr = build_quadrature_round(3, 6);
  for (std::size_t i = 0; i < qr.size(); ++i) {
    double nsq = 0.0;
    for (double xj : qr.nodes[i].x) nsq += xj * xj;
    CHECK(std::fabs(nsq - 1.0) < 1e-14);
    CHECK(qr.weights[i] > 0.0);
  }
}

TEST_CASE("Cayley transform maps the origin to the pole and is involutive") {
  {
    HeisPoint o;
    o.z.assign(1, 0.0);
    o.t = 0.0;
    const auto p = cayley(o);
    CHECK(std::abs(p.z[0]) < 1e-15);
    CHECK(std::abs(p.z[1] - 1.0) < 1e-15);
  }
  {
    HeisPoint e1;
    e1.z = {complexd(1.0, 0.0)};
    e1.t = 0.0;
    const auto p = cayley(e1);  // denominator 1 + 1 = 2
    CHECK(std::abs(p.z[0] - 1.0) < 1e-15);
    CHECK(std::abs(p.z[1]) < 1e-15);
  }
  std::mt19937 rng(20240817);
  for (int n : {1, 2, 3}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto u = random_heis(rng, n, 3.0);
      const auto zeta = cayley(u);
      double nsq = 0.0;
      for (const auto& zj : zeta.z) nsq += std::norm(zj);
      CHECK(std::fabs(nsq - 1.0) < 1e-14);
      const auto back = cayley_inv(zeta);
      for (int j = 0; j < n; ++j) CHECK(std::abs(back.z[j] - u.z[j]) < 1e-12);
      CHECK(std::fabs(back.t - u.t) < 1e-12);
    }
  }
  CRPoint pole;
  pole.z = {complexd(0.0, 0.0), complexd(-1.0, 0.0)};
  CHECK_THROWS_AS(cayley_inv(pole), std::domain_error);
}

TEST_CASE("Cayley Jacobian value, decay, and change of variables") {
  HeisPoint o;
  o.z.assign(1, 0.0);
  o.t = 0.0;
  CHECK(std::fabs(cayley_jacobian(o) - 16.0) < 1e-13);

  double prev = cayley_jacobian(o);
  for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    HeisPoint u = o;
    u.t = t;
    const double j = cayley_jacobian(u);
    CHECK(j < prev);
    prev = j;
  }

  // change of variables: integral over S^3 of F equals the integral over H^1
  // of |J| * (F o cayley), tested on a rapidly decaying profile
  auto G = [](const HeisPoint& u) {
    const double zsq = std::norm(u.z[0]);
    return std::exp(-zsq * zsq - u.t * u.t);
  };
  const auto gl = gauss_legendre(48);
  double lhs = 0.0;
  {
    const double bx = 3.5, bt = 6.0;
    for (std::size_t a = 0; a < gl.size(); ++a)
      for (std::size_t b = 0; b < gl.size(); ++b)
        for (std::size_t c = 0; c < gl.size(); ++c) {
          HeisPoint u;
          u.z = {complexd(bx * gl.x[a], bx * gl.x[b])};
          u.t = bt * gl.x[c];
          const double w = bx * gl.w[a] * bx * gl.w[b] * bt * gl.w[c];
          lhs += w * 0.5 * cayley_jacobian(u) * G(u);
        }
  }
  double rhs = 0.0;
  {
    const auto q = build_quadrature_cr(1, 40);
    for (std::size_t i = 0; i < q.size(); ++i) {
      // nodes never sit at the pole; the profile vanishes there anyway
      rhs += q.weights[i] * G(cayley_inv(q.nodes[i]));
    }
  }
  CHECK(std::fabs(lhs - rhs) < 1e-2 * std::fabs(rhs));
}

TEST_CASE("stereographic projection identities") {
  {
    const auto p = stereographic({0.0, 0.0, 0.0});
    CHECK(std::fabs(p.x[3] - 1.0) < 1e-15);
    CHECK(std::fabs(stereographic_jacobian({0.0, 0.0, 0.0}) - 8.0) < 1e-15);
  }
  std::mt19937 rng(911);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> x = {u(rng), u(rng), u(rng)};
    std::vector<double> y = {u(rng), u(rng), u(rng)};
    const auto px = stereographic(x);
    const auto py = stereographic(y);
    double nsq = 0.0;
    for (double c : px.x) nsq += c * c;
    CHECK(std::fabs(nsq - 1.0) < 1e-14);

    // squared chordal distance factors through the two conformal factors
    double chord = 0.0, dxy = 0.0, xsq = 0.0, ysq = 0.0;
    for (std::size_t j = 0; j < px.x.size(); ++j) {
      const double d = px.x[j] - py.x[j];
      chord += d * d;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - y[j];
      dxy += d * d;
      xsq += x[j] * x[j];
      ysq += y[j] * y[j];
    }
    const double rhs = (2.0 / (1.0 + xsq)) * dxy * (2.0 / (1.0 + ysq));
    CHECK(std::fabs(chord - rhs) < 1e-12 * (1.0 + rhs));

    const auto back = stereographic_inv(px);
    for (std::size_t j = 0; j < x.size(); ++j)
      CHECK(std::fabs(back[j] - x[j]) < 1e-12);
  }
}

TEST_CASE("pseudodistance basics and the Cayley distance identity") {
  const auto pole = north_pole_cr(1);
  CHECK(cr_pseudodistance(pole, pole) < 1e-15);
  CRPoint anti;
  anti.z = {complexd(0.0, 0.0), complexd(-1.0, 0.0)};
  CHECK(std::fabs(cr_pseudodistance(pole, anti) - 2.0) < 1e-15);

  // |1 - zeta . conj(eta)| in group coordinates: product of the two
  // conformal factors with the squared homogeneous norm of u^{-1} v
  std::mt19937 rng(5150);
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto u = random_heis(rng, n, 2.0);
      const auto v = random_heis(rng, n, 2.0);
      const double lhs = cr_pseudodistance(cayley(u), cayley(v));
      double uz = 0.0, vz = 0.0;
      for (const auto& zj : u.z) uz += std::norm(zj);
      for (const auto& zj : v.z) vz += std::norm(zj);
      const auto diff = heisenberg_group_law(heisenberg_inverse(u), v);
      const double nrm = heisenberg_norm(diff);
      const double rhs = 2.0 * nrm * nrm /
                         std::sqrt((1.0 + uz) * (1.0 + uz) + u.t * u.t) /
                         std::sqrt((1.0 + vz) * (1.0 + vz) + v.t * v.t);
      CHECK(std::fabs(lhs - rhs) < 1e-12 * (1.0 + rhs));
    }
  }
}

TEST_CASE("Heisenberg group axioms, norm homogeneity, dilation") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_heis(rng, 2, 3.0);
    const auto b = random_heis(rng, 2, 3.0);
    const auto c = random_heis(rng, 2, 3.0);

    const auto ab_c = heisenberg_group_law(heisenberg_group_law(a, b), c);
    const auto a_bc = heisenberg_group_law(a, heisenberg_group_law(b, c));
    for (int j = 0; j < 2; ++j) CHECK(std::abs(ab_c.z[j] - a_bc.z[j]) < 1e-13);
    CHECK(std::fabs(ab_c.t - a_bc.t) < 1e-13);

    const auto e = heisenberg_group_law(a, heisenberg_inverse(a));
    for (int j = 0; j < 2; ++j) CHECK(std::abs(e.z[j]) < 1e-13);
    CHECK(std::fabs(e.t) < 1e-13);

    const double r = 1.7;
    CHECK(std::fabs(heisenberg_norm(heisenberg_dilate(a, r)) -
                    r * heisenberg_norm(a)) < 1e-12);
  }
  HeisPoint u;
  u.z = {complexd(1.0, 0.0)};
  u.t = 0.0;
  CHECK(std::fabs(heisenberg_norm(u) - 1.0) < 1e-15);  // (1 + 0)^{1/4}
}

TEST_CASE("sub-sphere embeddings zero-pad and invert") {
  {
    CRPoint eta;
    eta.z = {complexd(0.6, 0.0), complexd(0.0, 0.8)};
    const auto p = subsphere_embed_cr(eta, 2, 1);
    REQUIRE(p.z.size() == 3);
    CHECK(std::abs(p.z[0] - eta.z[0]) < 1e-16);
    CHECK(std::abs(p.z[1] - eta.z[1]) < 1e-16);
    CHECK(std::abs(p.z[2]) == 0.0);
    double head = 0.0;
    for (int j = 0; j < 2; ++j) head += std::norm(p.z[j]);
    CHECK(std::fabs(head - 1.0) < 1e-14);
  }
  {
    RoundPoint eta;
    eta.x = {0.6, -0.8};
    const auto p = subsphere_embed_round(eta, 3, 2);
    REQUIRE(p.x.size() == 4);
    CHECK(p.x[0] == 0.6);
    CHECK(p.x[1] == -0.8);
    CHECK(p.x[2] == 0.0);
    CHECK(p.x[3] == 0.0);
  }
  {
    CRPoint eta;
    eta.z = {complexd(0.0, 1.0)};
    const auto u = subsphere_embed_heis(eta, 2, 2);
    REQUIRE(u.z.size() == 2);
    CHECK(std::abs(u.z[0] - eta.z[0]) < 1e-16);
    CHECK(std::abs(u.z[1]) == 0.0);
    CHECK(u.t == 0.0);
  }
  CRPoint bad;
  bad.z = {complexd(1.0, 0.0)};
  CHECK_THROWS_AS(subsphere_embed_cr(bad, 2, 1), std::domain_error);
}

TEST_CASE("zonal disk reduction agrees with full sphere quadrature") {
  // f depending only on w = zeta . conj(eta0): full quadrature vs the disk
  // rule with density c_n (1-|w|^2)^{n-1}, c_n = 2 pi^n / (n-1)!
  auto f = [](const complexd& w) {
    return std::exp(std::real(w)) + 0.5 * std::norm(w);
  };
  for (int n : {1, 2}) {
    const auto q = build_quadrature_cr(n, 14);
    const auto eta0 = north_pole_cr(n);
    double full = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
      full += q.weights[i] * f(herm_dot(q.nodes[i], eta0));
    const auto d = disk_rule(40, 40);
    const double cn =
        2.0 * std::pow(std::numbers::pi, n) / factorial(n - 1);
    double reduced = 0.0;
    for (const auto& nd : d)
      reduced += nd.weight * f(complexd(nd.re_w, nd.im_w)) *
                 std::pow(nd.one_minus_abs_w_sq, n - 1);
    reduced *= cn;
    CHECK(std::fabs(full - reduced) < 1e-8 * std::fabs(full));
  }
}

TEST_CASE("sphere quadratures serialize and reload") {
  {
    const auto q = build_quadrature_cr(1, 6);
    std::stringstream ss;
    save_quadrature(ss, q);
    const auto q2 = load_quadrature_cr(ss);
    REQUIRE(q2.size() == q.size());
    CHECK(q2.n == q.n);
    CHECK(q2.exactness_degree == q.exactness_degree);
    for (std::size_t i = 0; i < q.size(); ++i) {
      CHECK(q2.weights[i] == q.weights[i]);
      for (int j = 0; j <= 1; ++j) CHECK(q2.nodes[i].z[j] == q.nodes[i].z[j]);
    }
  }
  {
    const auto q = build_quadrature_round(2, 6);
    std::stringstream ss;
    save_quadrature(ss, q);
    const auto q2 = load_quadrature_round(ss);
    REQUIRE(q2.size() == q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
      CHECK(q2.weights[i] == q.weights[i]);
  }
}
