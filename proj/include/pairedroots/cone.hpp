#pragma once

#include "pairedroots/core.hpp"

namespace pairedroots {

// Membership of v in the positive linear cone of `generators`: is there a
// c >= 0 with sum_a c_a * a = v and some c_a > 0?
//
// Decided by a phase-1 simplex with artificial variables and Bland's rule.
// For v != 0 any nonnegative combination automatically has a positive
// coefficient; for v == 0 the coefficients are normalised to sum to 1, which
// turns "nonzero nonnegative solution" into plain feasibility.
inline bool cone_membership(const std::vector<Vec>& generators, const Vec& v, double eps = 1e-9) {
  if (generators.empty()) return false;
  const int dim = static_cast<int>(v.size());
  for (const Vec& g : generators)
    if (static_cast<int>(g.size()) != dim)
      fail(errc::dimension_mismatch, "cone_membership: generator dimension mismatch");

  const bool zero_target = inf_norm(v) <= eps;
  const int k = static_cast<int>(generators.size());
  const int m = dim + (zero_target ? 1 : 0);
  const int n = k + m;  // structural + artificial columns

  // Tableau rows: [A | b] with b >= 0, basis starts as the artificials.
  std::vector<Vec> tab(m, Vec(n + 1, 0.0));
  for (int i = 0; i < dim; ++i) {
    double sign = (i < dim && v[i] < 0.0) ? -1.0 : 1.0;
    for (int j = 0; j < k; ++j) tab[i][j] = sign * generators[j][i];
    tab[i][n] = sign * v[i];
  }
  if (zero_target) {
    for (int j = 0; j < k; ++j) tab[dim][j] = 1.0;
    tab[dim][n] = 1.0;
  }
  for (int i = 0; i < m; ++i) tab[i][k + i] = 1.0;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = k + i;

  // Reduced-cost row for the phase-1 objective (sum of artificials).
  Vec cost(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += tab[i][j];
    cost[j] = (j >= k && j < n ? 1.0 : 0.0) - s;
  }

  const double pivot_tol = 1e-11;
  const int max_iter = 50 * (n + m) + 200;
  for (int iter = 0; iter < max_iter; ++iter) {
    int enter = -1;
    for (int j = 0; j < n; ++j)
      if (cost[j] < -pivot_tol) { enter = j; break; }  // Bland: lowest index
    if (enter < 0) break;

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter] <= pivot_tol) continue;
      double ratio = tab[i][n] / tab[i][enter];
      if (leave < 0 || ratio < best - pivot_tol ||
          (ratio < best + pivot_tol && basis[i] < basis[leave]))
        { leave = i; best = ratio; }
    }
    if (leave < 0) break;  // cannot happen for a bounded phase-1; bail out

    double p = tab[leave][enter];
    for (int j = 0; j <= n; ++j) tab[leave][j] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0.0) continue;
      double f = tab[i][enter];
      for (int j = 0; j <= n; ++j) tab[i][j] -= f * tab[leave][j];
    }
    double f = cost[enter];
    if (f != 0.0)
      for (int j = 0; j <= n; ++j) cost[j] -= f * tab[leave][j];
    basis[leave] = enter;
  }

  double infeasibility = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= k) infeasibility += tab[i][n];
  return infeasibility <= eps * std::max(1.0, inf_norm(v));
}

}  // namespace pairedroots
