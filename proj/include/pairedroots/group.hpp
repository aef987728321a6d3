#pragma once

#include "pairedroots/dihedral.hpp"
#include "pairedroots/roots.hpp"

namespace pairedroots {

// ---------------------------------------------------------------------------
// Generator and reflection matrices

// Matrix of rho_1(s) acting on V1 coordinates.
inline Mat gen_matrix1(const CoxeterDatum& datum, int s) {
  datum.check_generator(s);
  const int d = datum.dim1();
  Mat m = Mat::identity(d);
  Vec a = datum.alpha(s);
  Vec w = datum.embedding ? datum.embedding->ambient_form * datum.beta(s)
                          : datum.pairing.col(s);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) -= 2.0 * a[i] * w[j];
  return m;
}

// Matrix of rho_2(s) acting on V2 coordinates.
inline Mat gen_matrix2(const CoxeterDatum& datum, int s) {
  datum.check_generator(s);
  const int d = datum.dim2();
  Mat m = Mat::identity(d);
  Vec b = datum.beta(s);
  Vec w = datum.embedding ? datum.embedding->ambient_form.left_mul(datum.alpha(s))
                          : datum.pairing.row(s);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) -= 2.0 * b[i] * w[j];
  return m;
}

// Matrices of r_alpha for an arbitrary root pair, on each side.
inline Mat reflection_matrix1(const CoxeterDatum& datum, const RootPair& r) {
  const int d = datum.dim1();
  const Mat& form = datum.embedding ? datum.embedding->ambient_form : datum.pairing;
  Vec w = form * r.y;
  Mat m = Mat::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) -= 2.0 * r.x[i] * w[j];
  return m;
}

inline Mat reflection_matrix2(const CoxeterDatum& datum, const RootPair& r) {
  const int d = datum.dim2();
  const Mat& form = datum.embedding ? datum.embedding->ambient_form : datum.pairing;
  Vec w = form.left_mul(r.x);
  Mat m = Mat::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) -= 2.0 * r.y[i] * w[j];
  return m;
}

// ---------------------------------------------------------------------------
// Group elements

// A group element as a word over the generators together with its matrix
// actions on both coordinate spaces. Matrix equality on side 1 is element
// equality: for valid data the paired representation is faithful.
struct Element {
  Word word;
  Mat act1;
  Mat act2;
  int cached_length = -1;  // set when the length is known (e.g. BFS layer)
};

inline Element identity_element(const CoxeterDatum& datum) {
  return {{}, Mat::identity(datum.dim1()), Mat::identity(datum.dim2()), 0};
}

inline Element element_from_word(const CoxeterDatum& datum, const Word& word) {
  Element e = identity_element(datum);
  e.cached_length = -1;
  for (int s : word) {
    e.act1 = e.act1 * gen_matrix1(datum, s);
    e.act2 = e.act2 * gen_matrix2(datum, s);
  }
  e.word = word;
  return e;
}

inline Element multiply(const Element& a, const Element& b) {
  Element e;
  e.word = a.word;
  e.word.insert(e.word.end(), b.word.begin(), b.word.end());
  e.act1 = a.act1 * b.act1;
  e.act2 = a.act2 * b.act2;
  return e;
}

// Generators are involutions, so the inverse is the reversed word.
inline Element inverse(const CoxeterDatum& datum, const Element& e) {
  Word w(e.word.rbegin(), e.word.rend());
  Element inv = element_from_word(datum, w);
  inv.cached_length = e.cached_length;
  return inv;
}

inline bool equals(const Element& a, const Element& b, double eps = kDefaultTolerance) {
  return a.act1.approx(b.act1, eps);
}

inline bool is_identity(const Element& e, double eps = kDefaultTolerance) {
  return e.act1.is_identity(eps);
}

// Length by greedy descent: some simple root must be sent negative as long as
// the element is not the identity, and multiplying by that generator drops
// the length by one. The count is independent of which descent is taken.
inline int length(const CoxeterDatum& datum, const Element& e) {
  if (e.cached_length >= 0) return e.cached_length;
  const int n = datum.rank();
  Mat act = e.act1;
  int steps = 0;
  int guard = static_cast<int>(e.word.size()) + 8;
  while (!act.is_identity(datum.tolerance)) {
    int descent = -1;
    for (int s = 0; s < n; ++s)
      if (sign_of(datum, act * datum.alpha(s), 1) == SignClass::Negative) {
        descent = s;
        break;
      }
    if (descent < 0 || steps > guard)
      fail(errc::no_descent, "length: no descent generator found (datum numerically broken?)");
    act = act * gen_matrix1(datum, descent);
    ++steps;
  }
  return steps;
}

// ---------------------------------------------------------------------------
// N-sets

namespace detail {

// Roots deep enough to see every positive root the element can flip: a root
// sent negative by w is flipped along some reduced word of w, so depth l(w)
// always suffices.
inline SignedRootSet roots_for_element(const CoxeterDatum& datum, int len, int side) {
  RootGenOptions opt;
  opt.max_depth = len;
  opt.side = side;
  return generate_roots(datum, opt);
}

}  // namespace detail

// Indices (into `roots`) of positive roots sent negative by e, one per class.
inline std::vector<int> flipped_positive_roots(const CoxeterDatum& datum, const Element& e,
                                               int side, const SignedRootSet& roots) {
  const Mat& act = side == 1 ? e.act1 : e.act2;
  std::vector<int> flipped;
  std::vector<int> seen_classes;
  for (int id : roots.positives) {
    if (sign_of(datum, act * roots.key_of(id), side) != SignClass::Negative) continue;
    int cls = roots.class_of[id];
    if (std::find(seen_classes.begin(), seen_classes.end(), cls) != seen_classes.end()) continue;
    seen_classes.push_back(cls);
    flipped.push_back(id);
  }
  return flipped;
}

// N_i(e): classes of positive roots of side i sent negative by e. Cardinality
// equals the length of e. A pre-generated root set may be supplied; it is
// used when it covers depth l(e) or is complete.
inline std::vector<RootClass> n_set(const CoxeterDatum& datum, const Element& e, int side = 1,
                                    const SignedRootSet* roots = nullptr) {
  int len = length(datum, e);
  SignedRootSet local;
  if (!roots || roots->side != side || (!roots->complete && roots->depth_reached < len)) {
    local = detail::roots_for_element(datum, len, side);
    roots = &local;
  }
  std::vector<RootClass> classes;
  for (int id : flipped_positive_roots(datum, e, side, *roots))
    classes.push_back(root_class(roots->key_of(id)));
  return classes;
}

// Class-set algebra under epsilon equality (sets here are small).
inline bool class_in(const std::vector<RootClass>& set, const RootClass& c, double eps = kClassEps) {
  for (const RootClass& member : set)
    if (classes_equal(member, c, eps)) return true;
  return false;
}

inline bool class_sets_equal(const std::vector<RootClass>& a, const std::vector<RootClass>& b,
                             double eps = kClassEps) {
  if (a.size() != b.size()) return false;
  for (const RootClass& c : a)
    if (!class_in(b, c, eps)) return false;
  return true;
}

inline std::vector<RootClass> class_symmetric_difference(const std::vector<RootClass>& a,
                                                         const std::vector<RootClass>& b,
                                                         double eps = kClassEps) {
  std::vector<RootClass> result;
  for (const RootClass& c : a)
    if (!class_in(b, c, eps)) result.push_back(c);
  for (const RootClass& c : b)
    if (!class_in(a, c, eps)) result.push_back(c);
  return result;
}

inline std::vector<RootClass> class_intersection(const std::vector<RootClass>& a,
                                                 const std::vector<RootClass>& b,
                                                 double eps = kClassEps) {
  std::vector<RootClass> result;
  for (const RootClass& c : a)
    if (class_in(b, c, eps)) result.push_back(c);
  return result;
}

// ---------------------------------------------------------------------------
// Reflections

// A reflection r_x packaged with the class and the witnessed pair it comes
// from. The element is the conjugate of the seed generator by the witness
// word, so its own word is witness + seed + reversed witness.
struct Reflection {
  Element element;
  RootClass root_class;
  RootPair root_pair;
};

inline Reflection make_reflection(const CoxeterDatum& datum, const RootPair& pair) {
  Reflection r;
  r.root_pair = pair;
  r.root_class = root_class(pair.x);
  r.element.word = pair.witness;
  r.element.word.push_back(pair.seed);
  r.element.word.insert(r.element.word.end(), pair.witness.rbegin(), pair.witness.rend());
  r.element.act1 = reflection_matrix1(datum, pair);
  r.element.act2 = reflection_matrix2(datum, pair);
  return r;
}

// N-bar(e) = { r_x : class(x) in N_1(e) }.
inline std::vector<Reflection> nbar(const CoxeterDatum& datum, const Element& e,
                                    const SignedRootSet* roots = nullptr) {
  int len = length(datum, e);
  SignedRootSet local;
  if (!roots || roots->side != 1 || (!roots->complete && roots->depth_reached < len)) {
    local = detail::roots_for_element(datum, len, 1);
    roots = &local;
  }
  std::vector<Reflection> result;
  for (int id : flipped_positive_roots(datum, e, 1, *roots))
    result.push_back(make_reflection(datum, roots->pairs[id]));
  return result;
}

// ---------------------------------------------------------------------------
// Cayley enumeration

struct GroupEnumeration {
  std::vector<Element> elements;  // BFS order from the identity; cached_length set
  bool complete = false;
  bool cap_exceeded = false;
  QuantizedTable index{1e-6, kDefaultTolerance};  // flattened act1 -> element id

  int find(const Mat& act1) const { return index.find(act1.data()); }
  int find(const Element& e) const { return find(e.act1); }
};

// Breadth-first closure of the Cayley graph, deduplicating elements by their
// side-1 matrices. BFS layer = word length, so every element comes out with a
// reduced word and its length cached.
inline GroupEnumeration enumerate_group(const CoxeterDatum& datum, int max_length,
                                        int cap = 1 << 20) {
  if (!validate(datum).ok()) fail(errc::invalid_datum, "enumerate_group: invalid datum");
  const int n = datum.rank();
  std::vector<Mat> gens1, gens2;
  for (int s = 0; s < n; ++s) {
    gens1.push_back(gen_matrix1(datum, s));
    gens2.push_back(gen_matrix2(datum, s));
  }

  GroupEnumeration group;
  group.index = QuantizedTable(1e-6, datum.tolerance);
  group.elements.push_back(identity_element(datum));
  group.index.intern(group.elements[0].act1.data());

  std::vector<int> frontier{0};
  int depth = 0;
  while (!frontier.empty() && depth < max_length && !group.cap_exceeded) {
    std::vector<int> next;
    for (int id : frontier) {
      for (int s = 0; s < n; ++s) {
        Element e;
        e.word = group.elements[id].word;
        e.word.push_back(s);
        e.act1 = group.elements[id].act1 * gens1[s];
        if (group.index.find(e.act1.data()) >= 0) continue;
        if (static_cast<int>(group.elements.size()) >= cap) {
          group.cap_exceeded = true;
          break;
        }
        e.act2 = group.elements[id].act2 * gens2[s];
        e.cached_length = depth + 1;
        group.index.intern(e.act1.data());
        group.elements.push_back(std::move(e));
        next.push_back(static_cast<int>(group.elements.size()) - 1);
      }
      if (group.cap_exceeded) break;
    }
    ++depth;
    frontier = std::move(next);
  }
  group.complete = frontier.empty() && !group.cap_exceeded;
  return group;
}

// ---------------------------------------------------------------------------
// Orders and the symmetric-difference identity

// Order of rho_1(s) rho_1(t) by literal matrix iteration. For valid data this
// must reproduce the bond order m_st.
inline OrderLabel order_of_product(const CoxeterDatum& datum, int s, int t,
                                   int bound = 2 * kDefaultMaxBond) {
  Mat product = gen_matrix1(datum, s) * gen_matrix1(datum, t);
  Mat power = product;
  for (int m = 1; m <= bound; ++m) {
    if (power.is_identity(kRelTol)) return {OrderKind::Finite, m, 0};
    if (power.max_abs() > 1e12) return {OrderKind::Infinite, 0, m};
    power = power * product;
  }
  return {OrderKind::Infinite, 0, bound};
}

// N_i(w1 w2) = w2^{-1} N_i(w1) (+) N_i(w2), symmetric difference of class sets.
inline bool symmetric_difference_identity_check(const CoxeterDatum& datum, const Element& e1,
                                                const Element& e2, int side = 1,
                                                const SignedRootSet* roots = nullptr) {
  Element product = multiply(e1, e2);
  product.cached_length = -1;
  std::vector<RootClass> lhs = n_set(datum, product, side, roots);

  Element w2_inv = inverse(datum, e2);
  const Mat& act = side == 1 ? w2_inv.act1 : w2_inv.act2;
  std::vector<RootClass> moved;
  for (const RootClass& c : n_set(datum, e1, side, roots))
    moved.push_back(root_class(act * c.rep));
  std::vector<RootClass> rhs =
      class_symmetric_difference(moved, n_set(datum, e2, side, roots));
  return class_sets_equal(lhs, rhs);
}

}  // namespace pairedroots
