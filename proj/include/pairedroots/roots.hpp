#pragma once

#include <thread>

#include "pairedroots/datum.hpp"

namespace pairedroots {

// ---------------------------------------------------------------------------
// Pairing and reflections

// Bilinear evaluation <x, y> of a V1 vector against a V2 vector, through the
// pairing matrix in standard mode or the ambient form of the embedding.
inline double pairing_value(const CoxeterDatum& datum, const Vec& x, const Vec& y) {
  const Mat& form = datum.embedding ? datum.embedding->ambient_form : datum.pairing;
  if (static_cast<int>(x.size()) != form.rows() || static_cast<int>(y.size()) != form.cols())
    fail(errc::dimension_mismatch, "pairing_value: coordinate dimension mismatch");
  return dot(x, form * y);
}

// rho_1(s): x -> x - 2<x, beta_s> alpha_s
inline Vec reflect1(const CoxeterDatum& datum, int s, const Vec& x) {
  datum.check_generator(s);
  return axpy(x, -2.0 * pairing_value(datum, x, datum.beta(s)), datum.alpha(s));
}

// rho_2(s): y -> y - 2<alpha_s, y> beta_s
inline Vec reflect2(const CoxeterDatum& datum, int s, const Vec& y) {
  datum.check_generator(s);
  return axpy(y, -2.0 * pairing_value(datum, datum.alpha(s), y), datum.beta(s));
}

// Applies a word of generators to a vector, rightmost letter first.
inline Vec apply_word(const CoxeterDatum& datum, const Word& word, int side, Vec v) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    v = side == 1 ? reflect1(datum, *it, v) : reflect2(datum, *it, v);
  return v;
}

// ---------------------------------------------------------------------------
// Root pairs and projective classes

// A root x in Phi_1 carried jointly with its partner phi(x) in Phi_2. The
// witness word, applied to the simple pair with index `seed`, reproduces
// (x, y); its length is the BFS depth at which the pair was found.
struct RootPair {
  Vec x;
  Vec y;
  int depth = 0;
  Word witness;
  int seed = 0;
};

inline RootPair negated_pair(RootPair p) {
  p.x = negated(p.x);
  p.y = negated(p.y);
  return p;
}

// r_alpha: x -> x - 2<x, phi(alpha)> alpha, the reflection attached to a root.
inline Vec reflect_by_root(const CoxeterDatum& datum, const RootPair& r, const Vec& x) {
  return axpy(x, -2.0 * pairing_value(datum, x, r.y), r.x);
}

inline Vec reflect_by_root_side2(const CoxeterDatum& datum, const RootPair& r, const Vec& y) {
  return axpy(y, -2.0 * pairing_value(datum, r.x, y), r.y);
}

enum class SignClass { Positive, Negative, Mixed };

// Positive/negative cone membership of v relative to the simple roots of the
// given side. Standard mode reads the coordinate signs directly; embedded
// mode asks the LP.
inline SignClass sign_of(const CoxeterDatum& datum, const Vec& v, int side = 1) {
  const double eps = datum.tolerance;
  if (inf_norm(v) <= eps) fail(errc::zero_vector, "sign_of: zero vector");
  if (!datum.embedding) {
    bool nonneg = true, nonpos = true;
    for (double t : v) {
      if (t < -eps) nonneg = false;
      if (t > eps) nonpos = false;
    }
    if (nonneg) return SignClass::Positive;
    if (nonpos) return SignClass::Negative;
    return SignClass::Mixed;
  }
  std::vector<Vec> simples;
  for (int s = 0; s < datum.rank(); ++s)
    simples.push_back(side == 1 ? datum.alpha(s) : datum.beta(s));
  if (cone_membership(simples, v, eps)) return SignClass::Positive;
  if (cone_membership(simples, negated(v), eps)) return SignClass::Negative;
  return SignClass::Mixed;
}

// Equivalence class of a root under nonzero scaling. The representative is
// scaled so its entry of largest magnitude is +-1, with the overall sign
// chosen to make the first nonzero entry positive; `negated` records whether
// the input root sat on the flipped side of its class.
struct RootClass {
  Vec rep;
  bool negated = false;
};

inline RootClass root_class(const Vec& v, double eps = kDefaultTolerance) {
  int imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = static_cast<int>(i);
  double scale = std::abs(v[imax]);
  if (scale <= eps) fail(errc::zero_vector, "root_class: zero vector");
  RootClass c;
  c.rep.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c.rep[i] = v[i] / scale;
  for (double t : c.rep) {
    if (std::abs(t) <= eps) continue;
    if (t < 0.0) {
      c.rep = negated(c.rep);
      c.negated = true;
    }
    break;
  }
  return c;
}

// Normalised representatives of the same class agree to rounding error, so
// class equality is checked at a fixed scale-free tolerance.
inline constexpr double kClassEps = 1e-7;

inline bool classes_equal(const RootClass& a, const RootClass& b, double eps = kClassEps) {
  return approx_eq(a.rep, b.rep, eps);
}

// Assigns stable integer ids to root classes.
class ClassInterner {
 public:
  explicit ClassInterner(double eps = kClassEps) : table_(1e-6, eps), eps_(eps) {}

  int intern(const Vec& root) {
    RootClass c = root_class(root, 1e-12);
    int id = table_.intern(c.rep);
    if (id == static_cast<int>(classes_.size())) classes_.push_back(std::move(c));
    return id;
  }

  int find(const Vec& root) const { return table_.find(root_class(root, 1e-12).rep); }

  const RootClass& at(int id) const { return classes_[id]; }
  int size() const { return static_cast<int>(classes_.size()); }
  double eps() const { return eps_; }

 private:
  QuantizedTable table_;
  std::vector<RootClass> classes_;
  double eps_;
};

// ---------------------------------------------------------------------------
// Orbit generation

struct RootGenOptions {
  int max_depth = 20;
  int cap = 100000;
  int side = 1;               // which side drives dedup and sign classification
  bool allow_invalid = false; // permit data failing validation (counterexample hunting)
  int threads = 1;
};

// Depth-bounded enumeration of the paired root system, deduplicated on the
// chosen side, with every pair sign-classified.
struct SignedRootSet {
  std::vector<RootPair> pairs;            // discovery (BFS) order
  std::vector<SignClass> signs;           // per pair, on the dedup side
  std::vector<int> positives, negatives, mixed;
  ClassInterner classes;                  // classes of the dedup-side vectors
  std::vector<int> class_of;              // pair index -> class id
  std::vector<std::vector<int>> class_members;
  int side = 1;
  int depth_reached = 0;
  bool complete = false;
  bool cap_exceeded = false;
  QuantizedTable index{1e-6, kDefaultTolerance};  // dedup-side vector -> pair id

  const Vec& key_of(int pair_id) const {
    return side == 1 ? pairs[pair_id].x : pairs[pair_id].y;
  }

  // Pair whose dedup-side vector matches v, or -1.
  int find(const Vec& v) const { return index.find(v); }

  // A positive member of the class, or -1 if none was generated.
  int positive_member(int class_id) const {
    for (int id : class_members[class_id])
      if (signs[id] == SignClass::Positive) return id;
    return -1;
  }

  std::vector<int> positive_class_ids() const {
    std::vector<int> ids;
    for (int c = 0; c < static_cast<int>(class_members.size()); ++c)
      if (positive_member(c) >= 0) ids.push_back(c);
    return ids;
  }
};

namespace detail {

// Computes f(i) for i in [0, count) into `out`, chunked over threads. Results
// are merged in index order afterwards, so the outcome matches a serial run.
template <typename F>
void parallel_map(int count, int threads, std::vector<RootPair>& out, F&& f) {
  if (threads <= 1 || count < 64) {
    for (int i = 0; i < count; ++i) out[i] = f(i);
    return;
  }
  int used = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(used);
  for (int t = 0; t < used; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += used) out[i] = f(i);
    });
  for (std::thread& th : pool) th.join();
}

}  // namespace detail

inline SignedRootSet generate_roots(const CoxeterDatum& datum, const RootGenOptions& opt = {}) {
  if (opt.side != 1 && opt.side != 2) fail(errc::precondition_fail, "generate_roots: side must be 1 or 2");
  if (!opt.allow_invalid && !validate(datum).ok())
    fail(errc::invalid_datum, "generate_roots: datum fails validation (pass allow_invalid to override)");

  const int n = datum.rank();
  SignedRootSet set;
  set.side = opt.side;
  set.index = QuantizedTable(1e-6, datum.tolerance);

  std::vector<int> frontier;
  for (int s = 0; s < n; ++s) {
    RootPair seed{datum.alpha(s), datum.beta(s), 0, {}, s};
    const Vec& key = opt.side == 1 ? seed.x : seed.y;
    if (set.index.find(key) >= 0) continue;
    set.index.intern(key);
    set.pairs.push_back(std::move(seed));
    frontier.push_back(static_cast<int>(set.pairs.size()) - 1);
  }

  int depth = 0;
  while (!frontier.empty() && depth < opt.max_depth && !set.cap_exceeded) {
    // One BFS layer: reflect every frontier pair by every generator (pure,
    // parallelisable), then dedup serially in a fixed order.
    int count = static_cast<int>(frontier.size()) * n;
    std::vector<RootPair> candidates(count);
    detail::parallel_map(count, opt.threads, candidates, [&](int i) {
      const RootPair& p = set.pairs[frontier[i / n]];
      int s = i % n;
      RootPair next;
      next.x = reflect1(datum, s, p.x);
      next.y = reflect2(datum, s, p.y);
      next.depth = depth + 1;
      next.seed = p.seed;
      next.witness.reserve(p.witness.size() + 1);
      next.witness.push_back(s);
      next.witness.insert(next.witness.end(), p.witness.begin(), p.witness.end());
      return next;
    });

    std::vector<int> next_frontier;
    for (RootPair& cand : candidates) {
      const Vec& key = opt.side == 1 ? cand.x : cand.y;
      if (set.index.find(key) >= 0) continue;
      if (static_cast<int>(set.pairs.size()) >= opt.cap) {
        set.cap_exceeded = true;
        break;
      }
      set.index.intern(key);
      set.pairs.push_back(std::move(cand));
      next_frontier.push_back(static_cast<int>(set.pairs.size()) - 1);
    }
    if (!next_frontier.empty()) depth += 1;
    frontier = std::move(next_frontier);
  }

  set.depth_reached = depth;
  set.complete = frontier.empty() && !set.cap_exceeded;

  set.signs.reserve(set.pairs.size());
  set.class_of.reserve(set.pairs.size());
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const Vec& key = set.key_of(static_cast<int>(i));
    set.signs.push_back(sign_of(datum, key, opt.side));
    int which = static_cast<int>(i);
    switch (set.signs.back()) {
      case SignClass::Positive: set.positives.push_back(which); break;
      case SignClass::Negative: set.negatives.push_back(which); break;
      case SignClass::Mixed: set.mixed.push_back(which); break;
    }
    int cls = set.classes.intern(key);
    set.class_of.push_back(cls);
    if (cls == static_cast<int>(set.class_members.size())) set.class_members.emplace_back();
    set.class_members[cls].push_back(which);
  }
  return set;
}

// ---------------------------------------------------------------------------
// The positive/negative decomposition test

struct DecompositionResult {
  bool holds = true;
  int depth_reached = 0;
  bool complete = false;
  std::optional<RootPair> counterexample;  // first mixed pair in BFS order
  int side = 0;                            // side on which it was found
};

// Searches both root systems for a root lying in neither cone. For data
// passing validation none exists at any depth; a violated sign condition
// surfaces as a Mixed root, usually within a few layers.
inline DecompositionResult decomposition_check(const CoxeterDatum& datum, int max_depth = 20,
                                               int cap = 100000, int threads = 1) {
  DecompositionResult result;
  result.complete = true;
  for (int side : {1, 2}) {
    RootGenOptions opt;
    opt.max_depth = max_depth;
    opt.cap = cap;
    opt.side = side;
    opt.allow_invalid = true;
    opt.threads = threads;
    SignedRootSet set = generate_roots(datum, opt);
    result.depth_reached = side == 1 ? set.depth_reached
                                     : std::min(result.depth_reached, set.depth_reached);
    result.complete = result.complete && set.complete;
    if (!set.mixed.empty()) {
      result.holds = false;
      result.counterexample = set.pairs[set.mixed.front()];
      result.side = side;
      return result;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Datum induced by a set of positive root pairs (the simple roots of a
// reflection subgroup). Labels index the given roots; the pairing is
// inherited by bilinearity and the embedding records the parent coordinates.

inline CoxeterDatum induced_datum(const CoxeterDatum& parent, const std::vector<RootPair>& delta1) {
  const int k = static_cast<int>(delta1.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (classes_equal(root_class(delta1[i].x), root_class(delta1[j].x)))
        fail(errc::duplicate_reflection, "induced_datum: two roots span the same reflection");

  CoxeterDatum datum;
  datum.tolerance = parent.tolerance;
  for (int i = 0; i < k; ++i) datum.labels.push_back("d" + std::to_string(i));
  datum.pairing = Mat(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      datum.pairing(i, j) = pairing_value(parent, delta1[i].x, delta1[j].y);

  Embedding embedding;
  embedding.alpha_coords = Mat(k, parent.dim1());
  embedding.beta_coords = Mat(k, parent.dim2());
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < parent.dim1(); ++j) embedding.alpha_coords(i, j) = delta1[i].x[j];
    for (int j = 0; j < parent.dim2(); ++j) embedding.beta_coords(i, j) = delta1[i].y[j];
  }
  embedding.ambient_form = parent.embedding ? parent.embedding->ambient_form : parent.pairing;
  datum.embedding = std::move(embedding);
  return datum;
}

}  // namespace pairedroots
