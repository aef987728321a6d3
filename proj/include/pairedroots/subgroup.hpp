#pragma once

#include "pairedroots/group.hpp"

namespace pairedroots {

struct SubgroupCaps {
  int root_depth = 16;       // depth of the parent root enumeration
  int max_classes = 500;     // closure cap on root-subsystem classes
  int max_elements = 20000;  // cap on subgroup element enumeration
  int max_length = 64;       // word-length bound for the element BFS
};

// A reflection subgroup W' of the parent datum's group, carried together with
// the parent root system it lives in: the classes of its root subsystem
// Phi(W') (positive representatives), its canonical roots Delta(W'), and a
// full element enumeration when the closure is finite.
struct ReflectionSubgroup {
  CoxeterDatum parent;
  SubgroupCaps caps;
  SignedRootSet parent_roots;  // side 1

  std::vector<Reflection> generators;  // one per distinct seed class
  std::vector<int> phi_class_ids;      // class ids in parent_roots.classes
  std::vector<int> phi_pair_ids;       // positive representative pair per class
  std::vector<RootPair> delta;         // canonical roots, positive representatives
  std::vector<int> delta_class_ids;

  std::vector<Element> elements;  // identity first; empty words are parent words
  QuantizedTable element_index{1e-6, kDefaultTolerance};

  bool closure_complete = false;
  bool elements_complete = false;
  bool complete = false;

  bool contains(const Mat& act1) const { return element_index.find(act1.data()) >= 0; }
  bool contains(const Element& e) const { return contains(e.act1); }

  bool has_phi_class(int class_id) const {
    return std::find(phi_class_ids.begin(), phi_class_ids.end(), class_id) != phi_class_ids.end();
  }

  // Positive representative pair of a parent root class, or -1.
  int positive_rep(int class_id) const { return parent_roots.positive_member(class_id); }
};

namespace detail {

// Resolves an arbitrary root vector to the positive representative pair of
// its class in the parent enumeration. Returns -1 when the root (or its
// positive twin) lies beyond the generated depth.
inline int positive_rep_of(const SignedRootSet& roots, const Vec& v) {
  int id = roots.find(v);
  if (id < 0) return -1;
  return roots.positive_member(roots.class_of[id]);
}

}  // namespace detail

inline std::vector<RootPair> canonical_roots(const ReflectionSubgroup& sub);

// Builds the subgroup generated by the reflections of the given seed roots:
// closes the seed classes under mutual reflection to obtain Phi(W'),
// enumerates the elements while the closure stays finite, and computes the
// canonical roots.
inline ReflectionSubgroup subgroup_from_reflections(const CoxeterDatum& parent,
                                                    const std::vector<RootPair>& seeds,
                                                    const SubgroupCaps& caps = {}) {
  ReflectionSubgroup sub;
  sub.parent = parent;
  sub.caps = caps;
  RootGenOptions opt;
  opt.max_depth = caps.root_depth;
  sub.parent_roots = generate_roots(parent, opt);
  sub.element_index = QuantizedTable(1e-6, parent.tolerance);

  // Seed classes, through their positive representatives.
  for (const RootPair& seed : seeds) {
    int rep = detail::positive_rep_of(sub.parent_roots, seed.x);
    if (rep < 0)
      fail(errc::precondition_fail, "subgroup_from_reflections: seed is not a generated parent root");
    int cls = sub.parent_roots.class_of[rep];
    if (!sub.has_phi_class(cls)) {
      sub.phi_class_ids.push_back(cls);
      sub.phi_pair_ids.push_back(rep);
      sub.generators.push_back(make_reflection(parent, sub.parent_roots.pairs[rep]));
    }
  }

  // Root-subsystem closure: r_x y stays in Phi(W') for x, y in Phi(W').
  // Sweep all ordered pairs until a whole sweep adds nothing.
  sub.closure_complete = true;
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t count = sub.phi_pair_ids.size();
    for (std::size_t i = 0; i < count; ++i) {
      const RootPair mirror = sub.parent_roots.pairs[sub.phi_pair_ids[i]];
      for (std::size_t j = 0; j < count; ++j) {
        const RootPair& p = sub.parent_roots.pairs[sub.phi_pair_ids[j]];
        Vec rx = reflect_by_root(parent, mirror, p.x);
        int rep = detail::positive_rep_of(sub.parent_roots, rx);
        if (rep < 0) {
          // root exists but fell outside the generated parent depth
          sub.closure_complete = false;
          continue;
        }
        int cls = sub.parent_roots.class_of[rep];
        if (!sub.has_phi_class(cls)) {
          sub.phi_class_ids.push_back(cls);
          sub.phi_pair_ids.push_back(rep);
          grew = true;
        }
      }
    }
    if (static_cast<int>(sub.phi_pair_ids.size()) > caps.max_classes) {
      sub.closure_complete = false;
      break;
    }
  }

  // Element enumeration over the seed reflections.
  sub.elements.push_back(identity_element(parent));
  sub.element_index.intern(sub.elements[0].act1.data());
  std::vector<int> frontier{0};
  int depth = 0;
  bool capped = false;
  while (!frontier.empty() && depth < caps.max_length && !capped) {
    std::vector<int> next;
    for (int id : frontier) {
      for (const Reflection& g : sub.generators) {
        Element e = multiply(sub.elements[id], g.element);
        e.cached_length = -1;
        if (sub.element_index.find(e.act1.data()) >= 0) continue;
        if (static_cast<int>(sub.elements.size()) >= caps.max_elements) {
          capped = true;
          break;
        }
        sub.element_index.intern(e.act1.data());
        sub.elements.push_back(std::move(e));
        next.push_back(static_cast<int>(sub.elements.size()) - 1);
      }
      if (capped) break;
    }
    ++depth;
    frontier = std::move(next);
  }
  sub.elements_complete = frontier.empty() && !capped;
  sub.complete = sub.closure_complete && sub.elements_complete;

  sub.delta = canonical_roots(sub);
  for (const RootPair& d : sub.delta)
    sub.delta_class_ids.push_back(sub.parent_roots.classes.find(d.x));
  return sub;
}

// ---------------------------------------------------------------------------
// Phi(W') by the definition: which parent roots have their reflection inside
// the enumerated subgroup. Must agree with the closure route.

inline std::vector<RootClass> phi_of(const ReflectionSubgroup& sub) {
  if (!sub.parent_roots.complete)
    fail(errc::incomplete_parent, "phi_of: parent root enumeration is truncated");
  if (!sub.elements_complete)
    fail(errc::incomplete_parent, "phi_of: subgroup enumeration is truncated");
  std::vector<RootClass> result;
  for (int cls : sub.parent_roots.positive_class_ids()) {
    int rep = sub.parent_roots.positive_member(cls);
    Mat refl = reflection_matrix1(sub.parent, sub.parent_roots.pairs[rep]);
    if (sub.contains(refl)) result.push_back(sub.parent_roots.classes.at(cls));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Canonical roots: positive classes x of Phi(W') whose reflection flips no
// other class of the subsystem, N(r_x) intersect Phi-hat(W') = {x-hat}.

inline std::vector<RootPair> canonical_roots(const ReflectionSubgroup& sub) {
  std::vector<RootPair> delta;
  for (std::size_t i = 0; i < sub.phi_pair_ids.size(); ++i) {
    const RootPair& pair = sub.parent_roots.pairs[sub.phi_pair_ids[i]];
    Reflection r = make_reflection(sub.parent, pair);
    std::vector<RootClass> flipped = n_set(sub.parent, r.element, 1, &sub.parent_roots);
    int in_phi = 0;
    bool self_only = true;
    for (const RootClass& c : flipped) {
      int cls = sub.parent_roots.classes.find(c.rep);
      if (cls < 0 || !sub.has_phi_class(cls)) continue;
      ++in_phi;
      if (cls != sub.phi_class_ids[i]) self_only = false;
    }
    if (in_phi == 1 && self_only) delta.push_back(pair);
  }
  return delta;
}

// ---------------------------------------------------------------------------
// Brute-force canonical generators straight from the defining condition
// S(W') = { t in T : Nbar(t) intersect W' = {t} }, with Nbar evaluated through
// true Cayley-graph lengths of the fully enumerated parent group. This is the
// oracle the class-based route above is checked against.

inline std::vector<Reflection> canonical_generators_bruteforce(const ReflectionSubgroup& sub) {
  if (!sub.parent_roots.complete || !sub.elements_complete)
    fail(errc::infinite_case, "canonical_generators_bruteforce: needs finite, fully enumerated data");

  GroupEnumeration parent_group = enumerate_group(sub.parent, sub.caps.max_length);
  if (!parent_group.complete)
    fail(errc::infinite_case, "canonical_generators_bruteforce: parent group did not close");

  auto length_of = [&](const Mat& act1) {
    int id = parent_group.find(act1);
    if (id < 0) fail(errc::incomplete_parent, "canonical_generators_bruteforce: element not found");
    return parent_group.elements[id].cached_length;
  };

  // T as positive-class representatives.
  std::vector<Reflection> all_reflections;
  for (int cls : sub.parent_roots.positive_class_ids()) {
    int rep = sub.parent_roots.positive_member(cls);
    all_reflections.push_back(make_reflection(sub.parent, sub.parent_roots.pairs[rep]));
  }

  std::vector<Reflection> result;
  for (const Reflection& t : all_reflections) {
    if (!sub.contains(t.element)) continue;
    int len_t = length_of(t.element.act1);
    bool self_only = true;
    for (const Reflection& u : all_reflections) {
      if (!sub.contains(u.element)) continue;
      if (length_of(t.element.act1 * u.element.act1) >= len_t) continue;
      // u is in Nbar(t) and in W'; it must be t itself
      if (!t.element.act1.approx(u.element.act1, sub.parent.tolerance)) {
        self_only = false;
        break;
      }
    }
    if (self_only) result.push_back(t);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Length inside the subgroup: the number of subsystem classes flipped.

inline int sub_length(const ReflectionSubgroup& sub, const Element& e) {
  if (!sub.contains(e)) fail(errc::not_in_subgroup, "sub_length: element is not in the subgroup");
  int count = 0;
  for (const RootClass& c : n_set(sub.parent, e, 1, &sub.parent_roots)) {
    int cls = sub.parent_roots.classes.find(c.rep);
    if (cls >= 0 && sub.has_phi_class(cls)) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// The canonical-set conditions on a prospective Delta: partners consistent,
// mutually nonpositive pairings, and every product a legal bond.

inline bool validate_canonical_set(const CoxeterDatum& parent, const std::vector<RootPair>& delta1) {
  const double eps = parent.tolerance;
  const int k = static_cast<int>(delta1.size());
  for (int i = 0; i < k; ++i)
    if (!rel_close(pairing_value(parent, delta1[i].x, delta1[i].y), 1.0, kRelTol))
      return false;  // partner is not phi(x)
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if (pairing_value(parent, delta1[i].x, delta1[j].y) > eps) return false;
    }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (classes_equal(root_class(delta1[i].x), root_class(delta1[j].x))) continue;
      double c_xy = pairing_value(parent, delta1[i].x, delta1[j].y);
      double c_yx = pairing_value(parent, delta1[j].x, delta1[i].y);
      if (c_xy * c_yx < -eps) return false;
      if (bond_order(c_xy, c_yx, eps).kind == BondKind::Invalid) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Conjugation behaviour of Delta: for a simple root x outside Phi(W'),
// Delta(r_x W' r_x) = r_x Delta(W'). Both sides are computed independently.

inline bool conjugate_delta_check(const ReflectionSubgroup& sub, const RootPair& x) {
  int s = -1;
  for (int i = 0; i < sub.parent.rank(); ++i)
    if (approx_eq(x.x, sub.parent.alpha(i), sub.parent.tolerance)) s = i;
  if (s < 0) fail(errc::precondition_fail, "conjugate_delta_check: root is not simple");
  int cls = sub.parent_roots.classes.find(x.x);
  if (cls >= 0 && sub.has_phi_class(cls))
    fail(errc::precondition_fail, "conjugate_delta_check: simple root lies in Phi(W')");

  // Seeds of the conjugated subgroup.
  std::vector<RootPair> conjugated_seeds;
  for (const Reflection& g : sub.generators) {
    RootPair p;
    p.x = reflect1(sub.parent, s, g.root_pair.x);
    p.y = reflect2(sub.parent, s, g.root_pair.y);
    int rep = detail::positive_rep_of(sub.parent_roots, p.x);
    if (rep < 0) fail(errc::incomplete_parent, "conjugate_delta_check: conjugated seed not generated");
    conjugated_seeds.push_back(sub.parent_roots.pairs[rep]);
  }
  ReflectionSubgroup conjugated = subgroup_from_reflections(sub.parent, conjugated_seeds, sub.caps);

  std::vector<RootClass> lhs;
  for (const RootPair& d : conjugated.delta) lhs.push_back(root_class(d.x));
  std::vector<RootClass> rhs;
  for (const RootPair& d : sub.delta) rhs.push_back(root_class(reflect1(sub.parent, s, d.x)));
  return class_sets_equal(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Span check: the subgroup orbit of Delta covers exactly Phi(W').

inline bool span_check(const ReflectionSubgroup& sub) {
  if (!sub.elements_complete)
    fail(errc::infinite_case, "span_check: subgroup enumeration is truncated");
  std::vector<int> orbit_classes;
  for (const Element& w : sub.elements)
    for (const RootPair& d : sub.delta) {
      int cls = sub.parent_roots.classes.find(w.act1 * d.x);
      if (cls < 0) return false;  // left the generated parent system
      if (std::find(orbit_classes.begin(), orbit_classes.end(), cls) == orbit_classes.end())
        orbit_classes.push_back(cls);
    }
  if (orbit_classes.size() != sub.phi_class_ids.size()) return false;
  for (int cls : orbit_classes)
    if (!sub.has_phi_class(cls)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Pairing classification of the canonical roots: for each pair x != y in
// Delta, <x, phi(y)> must be nonpositive and the product must match the
// literal order of r_x r_y (cos^2(pi/n) for order n, >= 1 for infinite).

struct CanonicalPairRecord {
  int i = 0, j = 0;
  double value_xy = 0.0, value_yx = 0.0, product = 0.0;
  BondLabel bond{BondKind::Invalid, 0, 0.0};
  OrderLabel order{OrderKind::Inconclusive, 0, 0};
  bool consistent = false;
};

struct CanonicalReport {
  std::vector<CanonicalPairRecord> pairs;
  int skipped = 0;  // pairs carrying the same reflection, excluded by the statement

  bool consistent() const {
    for (const CanonicalPairRecord& r : pairs)
      if (!r.consistent) return false;
    return true;
  }
};

inline OrderLabel order_of_reflection_product(const CoxeterDatum& datum, const RootPair& x,
                                              const RootPair& y, int bound = 2 * kDefaultMaxBond) {
  Mat product = reflection_matrix1(datum, x) * reflection_matrix1(datum, y);
  Mat power = product;
  for (int m = 1; m <= bound; ++m) {
    if (power.is_identity(kRelTol)) return {OrderKind::Finite, m, 0};
    if (power.max_abs() > 1e12) return {OrderKind::Infinite, 0, m};
    power = power * product;
  }
  return {OrderKind::Infinite, 0, bound};
}

inline CanonicalReport d34_report(const ReflectionSubgroup& sub) {
  CanonicalReport report;
  const double eps = sub.parent.tolerance;
  const int k = static_cast<int>(sub.delta.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (classes_equal(root_class(sub.delta[i].x), root_class(sub.delta[j].x))) {
        ++report.skipped;
        continue;
      }
      CanonicalPairRecord rec;
      rec.i = i;
      rec.j = j;
      rec.value_xy = pairing_value(sub.parent, sub.delta[i].x, sub.delta[j].y);
      rec.value_yx = pairing_value(sub.parent, sub.delta[j].x, sub.delta[i].y);
      rec.product = rec.value_xy * rec.value_yx;
      rec.bond = rec.product < -eps ? BondLabel{BondKind::Invalid, 0, rec.product}
                                    : bond_order(rec.value_xy, rec.value_yx, eps);
      rec.order = order_of_reflection_product(sub.parent, sub.delta[i], sub.delta[j]);
      bool orders_match =
          (rec.bond.kind == BondKind::Finite && rec.order.kind == OrderKind::Finite &&
           rec.bond.m == rec.order.m) ||
          (rec.bond.kind == BondKind::Infinite && rec.order.kind == OrderKind::Infinite);
      rec.consistent = orders_match && rec.value_xy <= eps && rec.value_yx <= eps;
      report.pairs.push_back(rec);
    }
  return report;
}

// ---------------------------------------------------------------------------
// Rank-2 coefficient positivity: the alternating orbit of two canonical roots
// stays in the positive cone, with nonnegative coefficients over {x, y}.

namespace detail {

// Least-squares coordinates of v over the (independent) pair {a, b}, with a
// residual check that v really lies in their span.
inline std::pair<double, double> span_coordinates(const Vec& a, const Vec& b, const Vec& v,
                                                  double eps) {
  double aa = dot(a, a), ab = dot(a, b), bb = dot(b, b);
  double det = aa * bb - ab * ab;
  if (det <= 1e-12 * aa * bb)
    fail(errc::degenerate_span, "span_coordinates: roots are numerically dependent");
  double av = dot(a, v), bv = dot(b, v);
  double c = (bb * av - ab * bv) / det;
  double d = (aa * bv - ab * av) / det;
  Vec residual = axpy(axpy(v, -c, a), -d, b);
  if (inf_norm(residual) > eps * std::max(1.0, inf_norm(v)))
    fail(errc::degenerate_span, "span_coordinates: vector is outside the span");
  return {c, d};
}

}  // namespace detail

// Checks, for 0 <= m < min(order, max_m + 1), that the alternating products
// (...r_y r_x r_y) x and (...r_x r_y r_x) y are positive roots with
// nonnegative coefficients over {x, y}. max_m < 0 means "up to the order",
// which requires the order to be finite.
inline bool dihedral_coeff_check(const CoxeterDatum& parent, const RootPair& x, const RootPair& y,
                                 int max_m = -1) {
  if (classes_equal(root_class(x.x), root_class(y.x)))
    fail(errc::precondition_fail, "dihedral_coeff_check: the two roots carry the same reflection");
  OrderLabel order = order_of_reflection_product(parent, x, y);
  int limit;
  if (order.kind == OrderKind::Finite)
    limit = max_m < 0 ? order.m - 1 : std::min(max_m, order.m - 1);
  else if (max_m >= 0)
    limit = max_m;
  else
    fail(errc::infinite_case, "dihedral_coeff_check: infinite order needs an explicit bound");

  const double eps = std::max(parent.tolerance, 1e-9);
  Vec v = x.x, w = y.x;
  for (int m = 0; m <= limit; ++m) {
    for (const Vec* vec : {&v, &w}) {
      auto [c, d] = detail::span_coordinates(x.x, y.x, *vec, eps);
      if (c < -eps || d < -eps) return false;
      if (sign_of(parent, *vec, 1) != SignClass::Positive) return false;
    }
    // extend the alternating products by one factor on the left
    v = reflect_by_root(parent, m % 2 == 0 ? y : x, v);
    w = reflect_by_root(parent, m % 2 == 0 ? x : y, w);
  }
  return true;
}

}  // namespace pairedroots
