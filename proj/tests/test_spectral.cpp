#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "tracelab/geometry.hpp"
#include "tracelab/spectral.hpp"
#include "tracelab/special.hpp"

using namespace tracelab;

namespace {

// ---------------------------------------------------------------------------
// Brute-force construction of the bidegree spaces for n = 1 (sphere of C^2):
// enumerate monomials z^a conj(z)^b of bidegree (j,k), intersect with the
// kernel of the Euclidean Laplacian (harmonicity), orthonormalize with the
// exact monomial Gram matrix on the sphere.  Completely independent of the
// kernel-projection machinery under test.
// ---------------------------------------------------------------------------

struct Mono {
  int a1, a2, b1, b2;  // z1^a1 z2^a2 conj(z1)^b1 conj(z2)^b2
};

std::vector<Mono> monomials(int j, int k) {
  std::vector<Mono> out;
  for (int a1 = 0; a1 <= j; ++a1)
    for (int b1 = 0; b1 <= k; ++b1) out.push_back({a1, j - a1, b1, k - b1});
  return out;
}

// exact sphere inner product <z^a conj z^b, z^c conj z^d> on S^3
double mono_inner(const Mono& p, const Mono& q) {
  const int e1 = p.a1 + q.b1, e2 = p.a2 + q.b2;
  const int f1 = p.b1 + q.a1, f2 = p.b2 + q.a2;
  if (e1 != f1 || e2 != f2) return 0.0;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 2.0 * pi2 * factorial(e1) * factorial(e2) / factorial(1 + e1 + e2);
}

complexd mono_eval(const Mono& m, const CRPoint& p) {
  return std::pow(p.z[0], m.a1) * std::pow(p.z[1], m.a2) *
         std::pow(std::conj(p.z[0]), m.b1) * std::pow(std::conj(p.z[1]), m.b2);
}

/// Orthonormal basis of H_{j,k} on S^3 as coefficient columns over the
/// monomial list.
std::pair<std::vector<Mono>, Eigen::MatrixXd> brute_onb(int j, int k) {
  const auto monos = monomials(j, k);
  const int M = static_cast<int>(monos.size());

  Eigen::MatrixXd basis;
  if (j == 0 || k == 0) {
    basis = Eigen::MatrixXd::Identity(M, M);  // no Laplacian constraint
  } else {
    // Laplacian of z^a conj z^b lands in bidegree (j-1, k-1) monomials
    const auto lower = monomials(j - 1, k - 1);
    auto index_of = [&lower](int a1, int a2, int b1, int b2) {
      for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i].a1 == a1 && lower[i].a2 == a2 && lower[i].b1 == b1 &&
            lower[i].b2 == b2)
          return static_cast<int>(i);
      return -1;
    };
    Eigen::MatrixXd D =
        Eigen::MatrixXd::Zero(static_cast<int>(lower.size()), M);
    for (int c = 0; c < M; ++c) {
      const Mono& m = monos[c];
      if (m.a1 >= 1 && m.b1 >= 1)
        D(index_of(m.a1 - 1, m.a2, m.b1 - 1, m.b2), c) +=
            4.0 * m.a1 * m.b1;
      if (m.a2 >= 1 && m.b2 >= 1)
        D(index_of(m.a1, m.a2 - 1, m.b1, m.b2 - 1), c) +=
            4.0 * m.a2 * m.b2;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
    basis = lu.kernel();
  }

  // Gram of the harmonic basis, then symmetric orthonormalization
  Eigen::MatrixXd G(M, M);
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q) G(p, q) = mono_inner(monos[p], monos[q]);
  const Eigen::MatrixXd GH = basis.transpose() * G * basis;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(GH);
  Eigen::MatrixXd onb = basis * es.eigenvectors() *
                        es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  return {monos, onb};
}

CRPoint random_sphere_point(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CRPoint p;
  p.z.resize(n + 1);
  double nsq = 0.0;
  for (int j = 0; j <= n; ++j) {
    p.z[j] = complexd(gauss(rng), gauss(rng));
    nsq += std::norm(p.z[j]);
  }
  for (auto& zj : p.z) zj /= std::sqrt(nsq);
  return p;
}

}  // namespace

TEST_CASE("disk polynomials are normalized and conjugate-symmetric") {
  for (int n : {1, 2, 3})
    for (int j : {0, 1, 2, 4})
      for (int k : {0, 1, 3}) {
        CHECK(std::abs(disk_poly(n, j, k, complexd(1.0, 0.0)) - 1.0) < 1e-12);
        const complexd w(0.31, -0.44);
        CHECK(std::abs(disk_poly(n, j, k, w) -
                       std::conj(disk_poly(n, k, j, w))) < 1e-13);
        CHECK(std::abs(disk_poly(n, j, k, w)) < 1.0 + 1e-12);
      }
  CHECK(std::abs(disk_poly(1, 1, 0, complexd(0.3, 0.1)) - complexd(0.3, 0.1)) <
        1e-15);
}

TEST_CASE("bidegree dimensions match closed forms and low cases") {
  for (int n : {1, 2, 3}) {
    CHECK(bidegree_dim(n, 0, 0) == 1);
    CHECK(bidegree_dim(n, 1, 0) == n + 1);
  }
  CHECK(bidegree_dim(2, 1, 1) == 8);  // 3*3 - 1 harmonic (1,1) forms on C^3
  for (int j = 0; j <= 5; ++j)
    for (int k = 0; k <= 5; ++k)
      CHECK(bidegree_dim(1, j, k) == j + k + 1);
}

TEST_CASE("round harmonic dimensions") {
  for (int l = 0; l <= 6; ++l) {
    CHECK(degree_dim(2, l) == 2 * l + 1);
    CHECK(degree_dim(3, l) == (l + 1) * (l + 1));
  }
}

TEST_CASE("kernel equals the brute-force orthonormal sum for n = 1") {
  std::mt19937 rng(311);
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; j + k <= 3; ++k) {
      const auto [monos, onb] = brute_onb(j, k);
      CHECK(onb.cols() == bidegree_dim(1, j, k));
      for (int trial = 0; trial < 8; ++trial) {
        const auto zeta = random_sphere_point(rng, 1);
        const auto eta = random_sphere_point(rng, 1);
        complexd sum = 0.0;
        for (int c = 0; c < onb.cols(); ++c) {
          complexd yz = 0.0, ye = 0.0;
          for (std::size_t p = 0; p < monos.size(); ++p) {
            yz += onb(static_cast<int>(p), c) * mono_eval(monos[p], zeta);
            ye += onb(static_cast<int>(p), c) * mono_eval(monos[p], eta);
          }
          sum += yz * std::conj(ye);
        }
        const complexd kval =
            zonal_kernel_cr(1, j, k, herm_dot(zeta, eta));
        CHECK(std::abs(sum - kval) < 1e-10 * (1.0 + std::abs(kval)));
      }
    }
}

TEST_CASE("trivial projections land in the expected bidegrees") {
  auto rule = std::make_shared<const CRQuadrature>(build_quadrature_cr(1, 10));
  const std::size_t N = rule->size();

  {
    std::vector<complexd> one(N, 1.0);
    const auto F = expand(rule, one, 3);
    for (const auto& [jk, comp] : F.components) {
      const double ns = norm_sq(*rule, comp);
      if (jk.first == 0 && jk.second == 0)
        CHECK(std::fabs(ns - sphere_area(3)) < 1e-9 * sphere_area(3));
      else
        CHECK(ns < 1e-16);
    }
  }
  {
    std::vector<complexd> f(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = rule->nodes[i].z[0];
    const auto F = expand(rule, f, 3);
    for (const auto& [jk, comp] : F.components) {
      const double ns = norm_sq(*rule, comp);
      if (jk.first == 1 && jk.second == 0)
        CHECK(ns > 1e-2);
      else
        CHECK(ns < 1e-16);
    }
  }
  {
    // |zeta_1|^2 - 1/(n+1) is the harmonic part of |zeta_1|^2
    std::vector<complexd> f(N);
    for (std::size_t i = 0; i < N; ++i)
      f[i] = std::norm(rule->nodes[i].z[0]) - 0.5;
    const auto F = expand(rule, f, 3);
    for (const auto& [jk, comp] : F.components) {
      const double ns = norm_sq(*rule, comp);
      if (jk.first == 1 && jk.second == 1)
        CHECK(ns > 1e-2);
      else
        CHECK(ns < 1e-16);
    }
  }
}

TEST_CASE("random band-limited field round-trips through projection") {
  const int L = 4;
  auto rule = std::make_shared<const CRQuadrature>(build_quadrature_cr(1, 12));
  const auto RF = random_bandlimited_cr(1, L, 20240823u);

  std::vector<complexd> grid(rule->size());
  for (std::size_t i = 0; i < rule->size(); ++i)
    grid[i] = RF.value_at(rule->nodes[i]);
  const auto F = expand(rule, grid, L);

  // components agree with the analytically known ones
  double sup = 0.0;
  for (const auto& [jk, comp] : F.components) {
    for (std::size_t i = 0; i < comp.size(); ++i)
      sup = std::max(sup, std::abs(comp[i] - RF.component_at(jk.first,
                                                             jk.second,
                                                             rule->nodes[i])));
  }
  CHECK(sup < 1e-8);

  // synthesis reproduces the grid
  const auto back = synthesize(F);
  double sup2 = 0.0;
  for (std::size_t i = 0; i < back.size(); ++i)
    sup2 = std::max(sup2, std::abs(back[i] - grid[i]));
  CHECK(sup2 < 1e-8);

  // Parseval
  double sum_comp = 0.0;
  for (const auto& [jk, comp] : F.components)
    sum_comp += norm_sq(*rule, comp);
  const double total = norm_sq(*rule, grid);
  CHECK(std::fabs(sum_comp - total) < 1e-8 * total);

  // orthogonality of distinct components
  const auto& c10 = F.components.at({1, 0});
  const auto& c21 = F.components.at({2, 1});
  const double denom = std::sqrt(norm_sq(*rule, c10) * norm_sq(*rule, c21));
  CHECK(std::abs(inner(*rule, c10, c21)) < 1e-8 * denom);

  // idempotence
  const auto again = project_bidegree(*rule, c21, 2, 1);
  double sup3 = 0.0;
  for (std::size_t i = 0; i < again.size(); ++i)
    sup3 = std::max(sup3, std::abs(again[i] - c21[i]));
  CHECK(sup3 < 1e-9);

  // phase grading under the circle action
  for (const auto& [jk, comp] : F.components) {
    const double defect =
        phase_equivariance_check(*rule, grid, jk.first, jk.second, 0.7);
    CHECK(defect < 1e-8);
  }
}

TEST_CASE("bidegree dimension recovered from the kernel trace") {
  const auto rule = build_quadrature_cr(1, 10);
  CHECK(bidegree_dim_traced(rule, 0, 0) == 1);
  CHECK(bidegree_dim_traced(rule, 1, 0) == 2);
  CHECK(bidegree_dim_traced(rule, 2, 3) == 6);
  const auto rule5 = build_quadrature_cr(2, 8);
  CHECK(bidegree_dim_traced(rule5, 1, 1) == 8);
}

TEST_CASE("tail energy of a zonal kernel profile decreases with band limit") {
  auto rule = std::make_shared<const CRQuadrature>(build_quadrature_cr(1, 14));
  const auto eta0 = north_pole_cr(1);
  std::vector<complexd> f(rule->size());
  for (std::size_t i = 0; i < rule->size(); ++i)
    f[i] = std::pow(cr_pseudodistance(rule->nodes[i], eta0), -0.5);
  const double total = norm_sq(*rule, f);
  const auto F = expand(rule, f, 6);
  double prev_tail = total;
  for (int L : {2, 4, 6}) {
    double sum = 0.0;
    for (const auto& [jk, comp] : F.components)
      if (jk.first + jk.second <= L) sum += norm_sq(*rule, comp);
    const double tail = total - sum;
    CHECK(tail > 0.0);
    CHECK(tail < prev_tail);
    prev_tail = tail;
  }
}

TEST_CASE("round sphere projections: trivial cases and band-limited fields") {
  auto rule =
      std::make_shared<const RoundQuadrature>(build_quadrature_round(2, 14));
  const std::size_t N = rule->size();

  {
    std::vector<double> one(N, 1.0);
    const auto F = expand_round(rule, one, 3);
    for (const auto& [l, comp] : F.components) {
      const double ns = inner(*rule, comp, comp);
      if (l == 0)
        CHECK(std::fabs(ns - sphere_area(2)) < 1e-9 * sphere_area(2));
      else
        CHECK(ns < 1e-16);
    }
  }
  {
    std::vector<double> f(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = rule->nodes[i].x[2];
    const auto F = expand_round(rule, f, 3);
    for (const auto& [l, comp] : F.components) {
      const double ns = inner(*rule, comp, comp);
      if (l == 1)
        CHECK(ns > 1e-2);
      else
        CHECK(ns < 1e-14);
    }
  }
  {
    // zonal Gegenbauer profile of degree 3 lands in degree 3 alone
    const RoundPoint e = north_pole_round(2);
    std::vector<double> f(N);
    for (std::size_t i = 0; i < N; ++i)
      f[i] = gegenbauer_poly(3, 0.5, dot(rule->nodes[i], e));
    const auto F = expand_round(rule, f, 4);
    for (const auto& [l, comp] : F.components) {
      const double ns = inner(*rule, comp, comp);
      if (l == 3)
        CHECK(ns > 1e-3);
      else
        CHECK(ns < 1e-13);
    }
    // completeness and Parseval for this band-limited f
    const auto back = synthesize(F);
    double sup = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      sup = std::max(sup, std::fabs(back[i] - f[i]));
    CHECK(sup < 1e-8);
  }
}

TEST_CASE("expansion guards reject bad inputs") {
  auto rule = std::make_shared<const CRQuadrature>(build_quadrature_cr(1, 8));
  std::vector<complexd> wrong(3, 0.0);
  CHECK_THROWS_AS(expand(rule, wrong, 2), std::domain_error);
  std::vector<complexd> ok(rule->size(), 1.0);
  CHECK_THROWS_AS(expand(rule, ok, 6), std::runtime_error);  // 2L > exactness
}

TEST_CASE("coefficient table exports as CSV") {
  auto rule = std::make_shared<const CRQuadrature>(build_quadrature_cr(1, 8));
  std::vector<complexd> one(rule->size(), 1.0);
  const auto F = expand(rule, one, 2);
  const std::string csv = coefficient_table_csv(F);
  CHECK(csv.rfind("j,k,norm_sq", 0) == 0);
  // header plus one row per stored component
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 1 + static_cast<long>(F.components.size()));
}
