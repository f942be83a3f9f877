#pragma once
// Special functions underlying every constant and zonal kernel in the
// library: log-gamma, gamma ratios, digamma, and the Jacobi/Gegenbauer
// orthogonal polynomial families.  All functions are pure and thread-safe.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tracelab {

namespace detail {

inline void require_positive(double x, const char* fn) {
  if (!(x > 0.0))
    throw std::domain_error(std::string(fn) + ": argument must be positive, got " +
                            std::to_string(x));
}

// Lanczos approximation (g = 7, 9 terms); relative error below 1e-14 on the
// positive axis.  Working in log space keeps every downstream constant a sum
// of logs, exponentiated last.
inline double lanczos_log_gamma(double x) {
  static constexpr double g = 7.0;
  static constexpr double coef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  double a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (x - 1.0 + i);
  const double t = x + g - 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (x - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

/// Natural log of Gamma(x) for x > 0.
inline double log_gamma(double x) {
  detail::require_positive(x, "log_gamma");
  // Shift small arguments up with the recurrence ln G(x) = ln G(x+1) - ln x;
  // the Lanczos core is most accurate for x >= 0.5.
  if (x < 0.5) return detail::lanczos_log_gamma(x + 1.0) - std::log(x);
  return detail::lanczos_log_gamma(x);
}

/// Gamma(a)/Gamma(b) for a, b > 0, evaluated stably in log space.
inline double gamma_ratio(double a, double b) {
  detail::require_positive(a, "gamma_ratio");
  detail::require_positive(b, "gamma_ratio");
  return std::exp(log_gamma(a) - log_gamma(b));
}

/// Gamma(x) for x > 0.
inline double gamma_pos(double x) {
  detail::require_positive(x, "gamma_pos");
  return std::exp(log_gamma(x));
}

/// Digamma psi(x) = d/dx ln Gamma(x) for x > 0.
inline double digamma(double x) {
  detail::require_positive(x, "digamma");
  // Recur up to the asymptotic region, then use the Bernoulli-number series.
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // psi(x) ~ ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k})
  double series = 0.0;
  series += 1.0 / 12.0;
  series -= (1.0 / 120.0) * inv2;
  series += (1.0 / 252.0) * inv2 * inv2;
  series -= (1.0 / 240.0) * inv2 * inv2 * inv2;
  series += (1.0 / 132.0) * inv2 * inv2 * inv2 * inv2;
  series -= (691.0 / 32760.0) * inv2 * inv2 * inv2 * inv2 * inv2;
  return acc + std::log(x) - 0.5 / x - series * inv2;
}

/// Jacobi polynomial P_k^{(alpha,beta)}(x) by forward three-term recurrence.
/// Requires alpha, beta > -1; stable on x in [-1, 1] (and usable slightly
/// outside for endpoint evaluations).
inline double jacobi_poly(int k, double alpha, double beta, double x) {
  if (k < 0) throw std::domain_error("jacobi_poly: negative degree");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("jacobi_poly: parameters must exceed -1");
  if (k == 0) return 1.0;
  double pm1 = 1.0;
  double p = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
  for (int i = 2; i <= k; ++i) {
    const double a = 2.0 * i * (i + alpha + beta) * (2.0 * i + alpha + beta - 2.0);
    const double b = (2.0 * i + alpha + beta - 1.0) *
                     ((2.0 * i + alpha + beta) * (2.0 * i + alpha + beta - 2.0) * x +
                      alpha * alpha - beta * beta);
    const double c =
        2.0 * (i + alpha - 1.0) * (i + beta - 1.0) * (2.0 * i + alpha + beta);
    const double next = (b * p - c * pm1) / a;
    pm1 = p;
    p = next;
  }
  return p;
}

/// Gegenbauer polynomial C_l^{lambda}(x) by forward three-term recurrence.
inline double gegenbauer_poly(int l, double lambda, double x) {
  if (l < 0) throw std::domain_error("gegenbauer_poly: negative degree");
  detail::require_positive(lambda, "gegenbauer_poly");
  if (l == 0) return 1.0;
  double cm1 = 1.0;
  double c = 2.0 * lambda * x;
  for (int i = 2; i <= l; ++i) {
    const double next =
        (2.0 * (i + lambda - 1.0) * x * c - (i + 2.0 * lambda - 2.0) * cm1) / i;
    cm1 = c;
    c = next;
  }
  return c;
}

/// Squared L^2 norm of P_k^{(alpha,beta)} against the weight
/// (1-x)^alpha (1+x)^beta on [-1, 1].
inline double jacobi_sq_norm(int k, double alpha, double beta) {
  if (k < 0) throw std::domain_error("jacobi_sq_norm: negative degree");
  const double ab = alpha + beta;
  return std::exp((ab + 1.0) * std::numbers::ln2 + log_gamma(k + alpha + 1.0) +
                  log_gamma(k + beta + 1.0) - log_gamma(k + ab + 1.0) -
                  log_gamma(k + 1.0)) /
         (2.0 * k + ab + 1.0);
}

/// Binomial coefficient with real upper argument, binom(a, k) for integer k.
inline double binomial(double a, int k) {
  if (k < 0) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (a - i) / (k - i);
  return r;
}

/// n! as a double (exact through 22!, log-gamma afterwards).
inline double factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  if (n <= 22) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  }
  return std::exp(log_gamma(n + 1.0));
}

}  // namespace tracelab
