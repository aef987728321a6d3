#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pairedroots/cone.hpp"
#include "pairedroots/core.hpp"

namespace pairedroots {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultTolerance = 1e-9;

// Largest bond order recognised when matching a pairing product against
// cos^2(pi/m). Beyond a few hundred the gaps between consecutive cos^2(pi/m)
// values drop under any workable tolerance, so recognition stops being
// meaningful.
inline constexpr int kDefaultMaxBond = 360;

// Coxeter-matrix entries are integers >= 2, with 0 standing for an infinite
// bond (keeps the file format purely numeric); the diagonal is 1.
using CoxeterMatrix = std::vector<std::vector<int>>;
inline constexpr int kInfiniteBond = 0;

// Optional concrete realisation of the simple roots in a pair of ambient
// spaces. Row s of alpha_coords/beta_coords holds the coordinates of the
// s-th simple root; ambient_form is the matrix of the bilinear pairing on
// the ambient bases.
struct Embedding {
  Mat alpha_coords;  // n x d1
  Mat beta_coords;   // n x d2
  Mat ambient_form;  // d1 x d2
};

// The input object of the whole library: generator labels plus the pairing
// matrix C[s][t] = <alpha_s, beta_t>, optionally with an ambient embedding.
// Without an embedding the simple roots are the unit coordinate vectors
// ("standard mode"), which makes them linearly independent by construction.
struct CoxeterDatum {
  std::vector<std::string> labels;
  Mat pairing;  // n x n
  std::optional<Embedding> embedding;
  double tolerance = kDefaultTolerance;

  int rank() const { return static_cast<int>(labels.size()); }
  int dim1() const { return embedding ? embedding->alpha_coords.cols() : rank(); }
  int dim2() const { return embedding ? embedding->beta_coords.cols() : rank(); }

  int index_of(std::string_view label) const {
    for (int s = 0; s < rank(); ++s)
      if (labels[s] == label) return s;
    fail(errc::unknown_generator, "unknown generator '" + std::string(label) + "'");
  }

  void check_generator(int s) const {
    if (s < 0 || s >= rank()) fail(errc::unknown_generator, "generator index out of range");
  }

  Vec alpha(int s) const {
    if (embedding) return embedding->alpha_coords.row(s);
    Vec v(rank(), 0.0);
    v[s] = 1.0;
    return v;
  }

  Vec beta(int s) const {
    if (embedding) return embedding->beta_coords.row(s);
    Vec v(rank(), 0.0);
    v[s] = 1.0;
    return v;
  }
};

// ---------------------------------------------------------------------------
// Bond orders

enum class BondKind { Finite, Infinite, Invalid };

struct BondLabel {
  BondKind kind;
  int m = 0;           // set for Finite
  double product = 0;  // c_st * c_ts, always recorded

  bool finite() const { return kind == BondKind::Finite; }
};

// Classifies the product <alpha_s,beta_t><alpha_t,beta_s>: equal to
// cos^2(pi/m) for the smallest matching m in [2, m_max], or >= 1, or neither.
// A product below -eps cannot arise once the off-diagonal sign conditions
// hold, so it is reported as an error rather than a label.
inline BondLabel bond_order(double c_st, double c_ts, double eps = kDefaultTolerance,
                            int m_max = kDefaultMaxBond) {
  double product = c_st * c_ts;
  if (product < -eps) fail(errc::negative_product, "bond_order: negative pairing product");
  for (int m = 2; m <= m_max; ++m) {
    double c = std::cos(kPi / m);
    if (std::abs(product - c * c) <= eps) return {BondKind::Finite, m, product};
  }
  if (product >= 1.0 - eps) return {BondKind::Infinite, 0, product};
  return {BondKind::Invalid, 0, product};
}

// ---------------------------------------------------------------------------
// Validation

enum class Verdict { Pass, Fail, Assumed };

struct Violation {
  int s = -1, t = -1;
  double value = 0.0;
};

struct ConditionReport {
  Verdict verdict = Verdict::Pass;
  std::vector<Violation> violations;

  void flag(int s, int t, double value) {
    verdict = Verdict::Fail;
    violations.push_back({s, t, value});
  }
};

struct ValidationReport {
  ConditionReport d1, d2i, d2ii, d3, d4, d5;

  // No condition failed (Assumed counts as acceptable).
  bool ok() const {
    for (const ConditionReport* c : {&d1, &d2i, &d2ii, &d3, &d4, &d5})
      if (c->verdict == Verdict::Fail) return false;
    return true;
  }

  // Every condition positively verified.
  bool all_pass() const {
    for (const ConditionReport* c : {&d1, &d2i, &d2ii, &d3, &d4, &d5})
      if (c->verdict != Verdict::Pass) return false;
    return true;
  }
};

// Checks the defining conditions of the datum:
//   D1  unit diagonal of the pairing;
//   D2  0 not in PLC(Pi_i), and no simple root inside the cone of the others
//       (decided by LP on the embedding; Assumed in standard mode, where the
//       simple roots are unit vectors and both parts hold trivially);
//   D3  off-diagonal pairing entries <= 0;
//   D4  <alpha_s,beta_t> = 0 iff <alpha_t,beta_s> = 0;
//   D5  every off-diagonal product is cos^2(pi/m) or >= 1.
// Failures are report entries, never exceptions: invalid data are legitimate
// inputs for counterexample hunting.
inline ValidationReport validate(const CoxeterDatum& datum, int m_max = kDefaultMaxBond) {
  ValidationReport report;
  const int n = datum.rank();
  const double eps = datum.tolerance;
  const Mat& c = datum.pairing;

  for (int s = 0; s < n; ++s)
    if (std::abs(c(s, s) - 1.0) > eps) report.d1.flag(s, s, c(s, s));

  if (datum.embedding) {
    const Embedding& e = *datum.embedding;
    std::vector<Vec> alphas, betas;
    for (int s = 0; s < n; ++s) {
      alphas.push_back(e.alpha_coords.row(s));
      betas.push_back(e.beta_coords.row(s));
    }
    Vec zero1(datum.dim1(), 0.0), zero2(datum.dim2(), 0.0);
    if (cone_membership(alphas, zero1, eps)) report.d2i.flag(-1, -1, 0.0);
    if (cone_membership(betas, zero2, eps)) report.d2i.flag(-1, -1, 0.0);
    for (int s = 0; s < n; ++s) {
      std::vector<Vec> others1, others2;
      for (int t = 0; t < n; ++t)
        if (t != s) {
          others1.push_back(alphas[t]);
          others2.push_back(betas[t]);
        }
      if (cone_membership(others1, alphas[s], eps)) report.d2ii.flag(s, -1, 0.0);
      if (cone_membership(others2, betas[s], eps)) report.d2ii.flag(s, -1, 0.0);
    }
  } else {
    report.d2i.verdict = Verdict::Assumed;
    report.d2ii.verdict = Verdict::Assumed;
  }

  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      if (c(s, t) > eps) report.d3.flag(s, t, c(s, t));
    }

  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      bool st_zero = std::abs(c(s, t)) <= eps;
      bool ts_zero = std::abs(c(t, s)) <= eps;
      if (st_zero != ts_zero) report.d4.flag(s, t, st_zero ? c(t, s) : c(s, t));
    }

  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      double product = c(s, t) * c(t, s);
      if (product < -eps) {
        report.d5.flag(s, t, product);  // subsumed by the D3 failure upstream
        continue;
      }
      BondLabel label = bond_order(c(s, t), c(t, s), eps, m_max);
      if (label.kind == BondKind::Invalid) report.d5.flag(s, t, product);
    }

  return report;
}

// ---------------------------------------------------------------------------
// Construction from a Coxeter matrix (the classical symmetric realisation,
// C[s][t] = -cos(pi/m_st)) and recovery of the matrix from a datum.

inline CoxeterDatum from_coxeter_matrix(const CoxeterMatrix& m,
                                        std::vector<std::string> labels = {}) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      fail(errc::non_symmetric, "coxeter matrix is not square");
  for (int s = 0; s < n; ++s) {
    if (m[s][s] != 1) fail(errc::bad_diagonal, "coxeter matrix diagonal must be 1");
    for (int t = s + 1; t < n; ++t) {
      if (m[s][t] != m[t][s]) fail(errc::non_symmetric, "coxeter matrix is not symmetric");
      if (m[s][t] != kInfiniteBond && m[s][t] < 2)
        fail(errc::entry_out_of_range, "off-diagonal coxeter matrix entries must be >= 2 or 0");
    }
  }

  CoxeterDatum datum;
  if (labels.empty())
    for (int s = 0; s < n; ++s) labels.push_back("s" + std::to_string(s));
  if (static_cast<int>(labels.size()) != n)
    fail(errc::dimension_mismatch, "label count does not match matrix size");
  datum.labels = std::move(labels);
  datum.pairing = Mat(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      datum.pairing(s, t) =
          s == t ? 1.0 : (m[s][t] == kInfiniteBond ? -1.0 : -std::cos(kPi / m[s][t]));
  return datum;
}

inline CoxeterMatrix coxeter_matrix_of(const CoxeterDatum& datum, int m_max = kDefaultMaxBond) {
  if (!validate(datum, m_max).ok()) fail(errc::invalid_datum, "coxeter_matrix_of: invalid datum");
  const int n = datum.rank();
  CoxeterMatrix m(n, std::vector<int>(n, 1));
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      BondLabel label = bond_order(datum.pairing(s, t), datum.pairing(t, s), datum.tolerance, m_max);
      m[s][t] = m[t][s] = label.finite() ? label.m : kInfiniteBond;
    }
  return m;
}

}  // namespace pairedroots
