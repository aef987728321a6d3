#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pairedroots {

// ---------------------------------------------------------------------------
// Errors

enum class errc {
  non_symmetric,
  bad_diagonal,
  entry_out_of_range,
  negative_product,
  invalid_datum,
  duplicate_reflection,
  unknown_generator,
  dimension_mismatch,
  zero_vector,
  inconclusive,
  no_descent,
  cap_exceeded,
  not_in_subgroup,
  incomplete_parent,
  infinite_case,
  precondition_fail,
  degenerate_span,
};

struct Error : std::runtime_error {
  errc code;
  Error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

// ---------------------------------------------------------------------------
// Vectors

using Vec = std::vector<double>;
using Word = std::vector<int>;  // generator indices, leftmost factor first

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec axpy(const Vec& x, double c, const Vec& y) {  // x + c*y
  Vec r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += c * y[i];
  return r;
}

inline Vec negated(Vec v) {
  for (double& t : v) t = -t;
  return v;
}

inline double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double t : v) m = std::max(m, std::abs(t));
  return m;
}

inline double inf_dist(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline bool approx_eq(const Vec& a, const Vec& b, double eps) {
  return a.size() == b.size() && inf_dist(a, b) <= eps;
}

// ---------------------------------------------------------------------------
// Dense row-major matrix. Dimensions here are tiny (the rank of the datum or
// an ambient dimension), so no attempt is made at being clever.

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  Mat operator*(const Mat& o) const {
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        double a = (*this)(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Vec operator*(const Vec& v) const {
    Vec r(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  Vec row(int i) const {
    Vec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  Vec col(int j) const {
    Vec r(rows_);
    for (int i = 0; i < rows_; ++i) r[i] = (*this)(i, j);
    return r;
  }

  // v^T * (*this), as a vector of length cols()
  Vec left_mul(const Vec& v) const {
    Vec r(cols_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      if (v[i] == 0.0) continue;
      for (int j = 0; j < cols_; ++j) r[j] += v[i] * (*this)(i, j);
    }
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (double t : data_) m = std::max(m, std::abs(t));
    return m;
  }

  bool approx(const Mat& o, double eps) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (std::abs(data_[i] - o.data_[i]) > eps) return false;
    return true;
  }

  bool is_identity(double eps) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        // written so that NaN entries fail the test
        if (!(std::abs((*this)(i, j) - (i == j ? 1.0 : 0.0)) <= eps)) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// |a-b| <= tol * max(1, |a|, |b|), the comparison used for all the closed-form
// versus literal-product checks.
inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool rel_close(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!rel_close(a(i, j), b(i, j), tol)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Interning table for vectors under epsilon-equality.
//
// Orbit arithmetic drifts, so straight hashing of doubles would either merge
// distinct vectors or split equal ones. Two stages instead: vectors are
// bucketed on a coarse grid (default 1e-6), then compared exactly within the
// epsilon inside a bucket. A vector sitting within eps of a grid boundary is
// probed in the adjacent cell as well, so near-boundary drift cannot split a
// bucket.

class QuantizedTable {
 public:
  explicit QuantizedTable(double grid = 1e-6, double eps = 1e-9) : grid_(grid), eps_(eps) {}

  int size() const { return static_cast<int>(items_.size()); }
  const Vec& at(int id) const { return items_[id]; }
  double eps() const { return eps_; }

  // Returns the id of a stored vector within eps of v, or -1.
  int find(const Vec& v) const {
    for (const Key& k : candidate_keys(v)) {
      auto it = buckets_.find(k);
      if (it == buckets_.end()) continue;
      for (int id : it->second)
        if (approx_eq(items_[id], v, eps_)) return id;
    }
    return -1;
  }

  // Find-or-insert.
  int intern(const Vec& v) {
    int id = find(v);
    if (id >= 0) return id;
    id = size();
    items_.push_back(v);
    buckets_[primary_key(v)].push_back(id);
    return id;
  }

 private:
  using Key = std::vector<std::int64_t>;

  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ull;
      for (std::int64_t x : k) {
        h ^= static_cast<std::size_t>(x);
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  Key primary_key(const Vec& v) const {
    Key k(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) k[i] = llround(v[i]);
    return k;
  }

  std::int64_t llround(double x) const { return static_cast<std::int64_t>(std::llround(x / grid_)); }

  // Primary cell plus neighbours along coordinates that sit near a cell wall.
  std::vector<Key> candidate_keys(const Vec& v) const {
    std::vector<Key> keys;
    keys.push_back(primary_key(v));
    double margin = eps_ / grid_;
    for (std::size_t i = 0; i < v.size(); ++i) {
      double r = v[i] / grid_;
      std::int64_t q = keys[0][i];
      double frac = r - static_cast<double>(q);  // in [-0.5, 0.5]
      std::int64_t neighbour = 0;
      if (frac > 0.5 - margin) neighbour = q + 1;
      else if (frac < -0.5 + margin) neighbour = q - 1;
      else continue;
      std::size_t n = keys.size();
      if (n > 64) break;  // pathological; primary cell still covers exact hits
      for (std::size_t j = 0; j < n; ++j) {
        Key k = keys[j];
        k[i] = neighbour;
        keys.push_back(std::move(k));
      }
    }
    return keys;
  }

  double grid_, eps_;
  std::vector<Vec> items_;
  std::unordered_map<Key, std::vector<int>, KeyHash> buckets_;
};

}  // namespace pairedroots
