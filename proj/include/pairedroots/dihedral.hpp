#pragma once

#include <numeric>

#include "pairedroots/datum.hpp"

namespace pairedroots {

// Tolerance for comparing literal matrix products against their closed forms.
inline constexpr double kRelTol = 1e-8;

// Parameters of the rank-2 engine: the 2x2 matrices
//
//   A = | -1  2*gamma*sqrt(q)*X |      B = |        q          0 |
//       |  0          q         |          | 2*gamma*sqrt(q)/X  -1 |
//
// q > 0 with the positive square root, X != 0.
struct DihedralParams {
  double gamma = 0.0;
  double q = 1.0;
  double x = 1.0;

  void check() const {
    if (!(q > 0.0)) fail(errc::precondition_fail, "dihedral: q must be positive");
    if (x == 0.0) fail(errc::precondition_fail, "dihedral: X must be nonzero");
  }
};

// The Chebyshev-type sequence p_{-1} = -1, p_0 = 0, p_{n+1} = 2*gamma*p_n - p_{n-1}.
// Entry i of the result is p_{i-1}, so the vector runs p_{-1} .. p_{n_max}.
inline Vec p_sequence(double gamma, int n_max) {
  if (n_max < 0) fail(errc::precondition_fail, "p_sequence: n_max must be >= 0");
  Vec p(static_cast<std::size_t>(n_max) + 2);
  p[0] = -1.0;
  p[1] = 0.0;
  for (int n = 0; n < n_max; ++n) p[n + 2] = 2.0 * gamma * p[n + 1] - p[n];
  return p;
}

inline double p_at(const Vec& p, int n) { return p[static_cast<std::size_t>(n) + 1]; }

// Closed-form solution of the recurrence. The trigonometric and hyperbolic
// branches meet at gamma = +-1, where the solution degenerates to +-n; the
// gamma < -1 branch carries the alternating sign that keeps it a solution
// (substitute p_n = (-1)^{n+1} r_n to reduce to the gamma > 1 case).
inline double p_closed_form(double gamma, int n) {
  if (n < -1) fail(errc::precondition_fail, "p_closed_form: n must be >= -1");
  const double branch_eps = 1e-12;
  double parity = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n+1)
  if (std::abs(gamma - 1.0) <= branch_eps) return static_cast<double>(n);
  if (std::abs(gamma + 1.0) <= branch_eps) return parity * n;
  if (std::abs(gamma) < 1.0) {
    double theta = std::acos(gamma);
    return std::sin(n * theta) / std::sin(theta);
  }
  if (gamma > 1.0) {
    double theta = std::acosh(gamma);
    return std::sinh(n * theta) / std::sinh(theta);
  }
  double theta = std::acosh(-gamma);
  return parity * std::sinh(n * theta) / std::sinh(theta);
}

// ---------------------------------------------------------------------------
// Classification of gamma by the sign pattern of the p-sequence: either all
// consecutive products p_n * p_{n+1} are nonnegative (exactly when gamma is
// some cos(pi/m) or >= 1) or the first violation index is located.

enum class GammaKind { CosPiOverM, AtLeastOne, Fails };

struct GammaClass {
  GammaKind kind;
  int m = 0;  // CosPiOverM
  int n = 0;  // Fails: least n >= 1 with p_n * p_{n+1} < -eps
};

inline GammaClass classify_gamma(double gamma, double eps = kDefaultTolerance,
                                 int m_max = kDefaultMaxBond, int n_max = 2000) {
  for (int m = 2; m <= m_max; ++m)
    if (std::abs(gamma - std::cos(kPi / m)) <= eps) return {GammaKind::CosPiOverM, m, 0};
  if (gamma >= 1.0 - eps) return {GammaKind::AtLeastOne, 0, 0};
  Vec p = p_sequence(gamma, n_max + 1);
  for (int n = 1; n <= n_max; ++n)
    if (p_at(p, n) * p_at(p, n + 1) < -eps) return {GammaKind::Fails, 0, n};
  fail(errc::inconclusive, "classify_gamma: no case triggered within bounds");
}

// ---------------------------------------------------------------------------
// The matrices themselves and their power identities.

inline std::pair<Mat, Mat> dihedral_matrices(const DihedralParams& params) {
  params.check();
  double c = 2.0 * params.gamma * std::sqrt(params.q);
  Mat a(2, 2), b(2, 2);
  a(0, 0) = -1.0;      a(0, 1) = c * params.x;
  a(1, 0) = 0.0;       a(1, 1) = params.q;
  b(0, 0) = params.q;  b(0, 1) = 0.0;
  b(1, 0) = c / params.x;  b(1, 1) = -1.0;
  return {a, b};
}

enum class PowerKind { B_AB_n, A_BA_n, BA_n, AB_n };

struct PowerProduct {
  Mat computed;   // the literal matrix product
  Mat predicted;  // the closed form in terms of the p-sequence
};

inline PowerProduct power_product(const DihedralParams& params, PowerKind kind, int n) {
  params.check();
  if (n < 0) fail(errc::precondition_fail, "power_product: n must be >= 0");
  auto [a, b] = dihedral_matrices(params);

  Mat ab = a * b, ba = b * a;
  Mat pow_ab = Mat::identity(2), pow_ba = Mat::identity(2);
  for (int i = 0; i < n; ++i) {
    pow_ab = pow_ab * ab;
    pow_ba = pow_ba * ba;
  }
  Mat computed;
  switch (kind) {
    case PowerKind::B_AB_n: computed = b * pow_ab; break;
    case PowerKind::A_BA_n: computed = a * pow_ba; break;
    case PowerKind::BA_n: computed = pow_ba; break;
    case PowerKind::AB_n: computed = pow_ab; break;
  }

  Vec p = p_sequence(params.gamma, 2 * n + 2);
  const double q = params.q, x = params.x;
  auto qp = [&](double e) { return std::pow(q, e); };
  Mat m(2, 2);
  switch (kind) {
    case PowerKind::B_AB_n:
      m(0, 0) = qp(n + 1.0) * p_at(p, 2 * n + 1);
      m(0, 1) = -qp(n + 0.5) * p_at(p, 2 * n) * x;
      m(1, 0) = qp(n + 0.5) * p_at(p, 2 * n + 2) / x;
      m(1, 1) = -qp(n) * p_at(p, 2 * n + 1);
      break;
    case PowerKind::A_BA_n:
      m(0, 0) = -qp(n) * p_at(p, 2 * n + 1);
      m(0, 1) = qp(n + 0.5) * p_at(p, 2 * n + 2) * x;
      m(1, 0) = -qp(n + 0.5) * p_at(p, 2 * n) / x;
      m(1, 1) = qp(n + 1.0) * p_at(p, 2 * n + 1);
      break;
    case PowerKind::BA_n:
      m(0, 0) = -qp(n) * p_at(p, 2 * n - 1);
      m(0, 1) = qp(n + 0.5) * p_at(p, 2 * n) * x;
      m(1, 0) = -qp(n - 0.5) * p_at(p, 2 * n) / x;
      m(1, 1) = qp(n) * p_at(p, 2 * n + 1);
      break;
    case PowerKind::AB_n:
      m(0, 0) = qp(n) * p_at(p, 2 * n + 1);
      m(0, 1) = -qp(n - 0.5) * p_at(p, 2 * n) * x;
      m(1, 0) = qp(n + 0.5) * p_at(p, 2 * n) / x;
      m(1, 1) = -qp(n) * p_at(p, 2 * n - 1);
      break;
  }
  return {computed, m};
}

// Do the alternating products ABA... and BAB..., m factors each, coincide?
inline bool braid_products_agree(double gamma, int m, double q, double x) {
  DihedralParams params{gamma, q, x};
  auto [a, b] = dihedral_matrices(params);
  Mat lhs = Mat::identity(2), rhs = Mat::identity(2);
  for (int i = 0; i < m; ++i) {
    // build ABA... and BAB... left to right
    lhs = lhs * (i % 2 == 0 ? a : b);
    rhs = rhs * (i % 2 == 0 ? b : a);
  }
  return rel_close(lhs, rhs, kRelTol);
}

// The braid relation at gamma = cos(k*pi/m), 0 < k < m.
inline bool braid_check(int k, int m, double q, double x) {
  if (k <= 0 || k >= m) fail(errc::precondition_fail, "braid_check: need 0 < k < m");
  return braid_products_agree(std::cos(k * kPi / m), m, q, x);
}

// ---------------------------------------------------------------------------
// Order of AB at q = 1.

enum class OrderKind { Finite, Infinite, Inconclusive };

struct OrderLabel {
  OrderKind kind;
  int m = 0;      // Finite: the order
  int bound = 0;  // Infinite/Inconclusive: how far powers were taken
};

// Finite order m is recognised by scanning gamma against cos(k*pi/m) with
// gcd(k, m) = 1 (robust under the tolerance, unlike inverting arccos);
// otherwise powers of AB are taken literally until the identity shows up or
// the bound runs out.
inline OrderLabel order_of_AB(double gamma, double eps = kDefaultTolerance,
                              int m_max = kDefaultMaxBond, int n_max = 1000) {
  for (int m = 2; m <= m_max; ++m)
    for (int k = 1; k < m; ++k) {
      if (std::gcd(k, m) != 1) continue;
      if (std::abs(gamma - std::cos(k * kPi / m)) <= eps) return {OrderKind::Finite, m, 0};
    }
  DihedralParams params{gamma, 1.0, 1.0};
  auto [a, b] = dihedral_matrices(params);
  Mat ab = a * b;
  Mat power = ab;
  for (int n = 1; n <= n_max; ++n) {
    if (power.is_identity(kRelTol))
      return {OrderKind::Inconclusive, 0, n};  // finite order missed by the scan
    // a determinant-1 matrix this far out never comes back
    if (power.max_abs() > 1e12) return {OrderKind::Infinite, 0, n};
    power = power * ab;
  }
  return {OrderKind::Infinite, 0, n_max};
}

}  // namespace pairedroots
