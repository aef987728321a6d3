#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "pairedroots/datum.hpp"
#include "pairedroots/roots.hpp"

using namespace pairedroots;

namespace {

CoxeterDatum a2() { return from_coxeter_matrix({{1, 3}, {3, 1}}); }

CoxeterDatum infinite_dihedral() { return from_coxeter_matrix({{1, 0}, {0, 1}}); }

CoxeterDatum datum_from_pairing(std::vector<std::vector<double>> rows) {
  CoxeterDatum d;
  int n = static_cast<int>(rows.size());
  for (int s = 0; s < n; ++s) d.labels.push_back("s" + std::to_string(s));
  d.pairing = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.pairing(i, j) = rows[i][j];
  return d;
}

// Independent route to the bond check: the product is cos^2(pi/m) exactly
// when pi / arccos(sqrt(product)) is an integer >= 2.
bool product_matches_some_bond(double product, double tol = 1e-6) {
  if (product < 0.0 || product >= 1.0) return false;
  double m_real = kPi / std::acos(std::sqrt(product));
  return m_real >= 2.0 - tol && std::abs(m_real - std::round(m_real)) < tol;
}

}  // namespace

TEST_CASE("from_coxeter_matrix builds the symmetric cosine pairing") {
  CoxeterDatum d = a2();
  CHECK(d.pairing(0, 0) == Catch::Approx(1.0));
  CHECK(d.pairing(0, 1) == Catch::Approx(-0.5));
  CHECK(d.pairing(1, 0) == Catch::Approx(-0.5));

  CoxeterDatum inf = infinite_dihedral();
  CHECK(inf.pairing(0, 1) == Catch::Approx(-1.0));
  CHECK(inf.pairing(1, 0) == Catch::Approx(-1.0));

  CoxeterDatum commuting = from_coxeter_matrix({{1, 2}, {2, 1}});
  CHECK(commuting.pairing(0, 1) == Catch::Approx(0.0).margin(1e-15));
  CHECK(commuting.pairing(1, 0) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("from_coxeter_matrix rejects malformed matrices") {
  CHECK_THROWS_MATCHES(from_coxeter_matrix({{1, 3}, {4, 1}}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code == errc::non_symmetric; }));
  CHECK_THROWS_MATCHES(from_coxeter_matrix({{2, 3}, {3, 1}}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code == errc::bad_diagonal; }));
  CHECK_THROWS_MATCHES(from_coxeter_matrix({{1, 1}, {1, 1}}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code == errc::entry_out_of_range; }));
}

TEST_CASE("bond_order recognises finite, infinite and invalid products") {
  BondLabel b = bond_order(-0.5, -0.5);
  REQUIRE(b.kind == BondKind::Finite);
  CHECK(b.m == 3);  // product 1/4 = cos^2(pi/3)

  b = bond_order(0.0, 0.0);
  REQUIRE(b.kind == BondKind::Finite);
  CHECK(b.m == 2);

  b = bond_order(-1.0, -0.25);  // asymmetric entries are fine
  REQUIRE(b.kind == BondKind::Finite);
  CHECK(b.m == 3);

  b = bond_order(-1.0, -1.0);
  CHECK(b.kind == BondKind::Infinite);

  // oracle: 0.3 sits strictly between cos^2(pi/3) and cos^2(pi/4) grid points
  REQUIRE_FALSE(product_matches_some_bond(0.3));
  b = bond_order(-0.6, -0.5);
  REQUIRE(b.kind == BondKind::Invalid);
  CHECK(b.product == Catch::Approx(0.3));

  CHECK_THROWS_MATCHES(bond_order(0.5, -0.5), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code == errc::negative_product; }));
}

TEST_CASE("bond_order is symmetric in its scalar arguments") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.05, 1.4);
  for (int trial = 0; trial < 200; ++trial) {
    double a = -dist(rng), b = -dist(rng);
    BondLabel ab = bond_order(a, b), ba = bond_order(b, a);
    CHECK(ab.kind == ba.kind);
    CHECK(ab.m == ba.m);
  }
}

TEST_CASE("validate reports each condition") {
  SECTION("standard datum passes with D2 assumed") {
    ValidationReport r = validate(a2());
    CHECK(r.ok());
    CHECK(r.d1.verdict == Verdict::Pass);
    CHECK(r.d2i.verdict == Verdict::Assumed);
    CHECK(r.d2ii.verdict == Verdict::Assumed);
    CHECK(r.d3.verdict == Verdict::Pass);
    CHECK(r.d4.verdict == Verdict::Pass);
    CHECK(r.d5.verdict == Verdict::Pass);
  }

  SECTION("positive off-diagonal entry fails D3") {
    ValidationReport r = validate(datum_from_pairing({{1.0, 0.5}, {-0.5, 1.0}}));
    CHECK_FALSE(r.ok());
    REQUIRE(r.d3.verdict == Verdict::Fail);
    CHECK(r.d3.violations[0].s == 0);
    CHECK(r.d3.violations[0].t == 1);
    CHECK(r.d3.violations[0].value == Catch::Approx(0.5));
    // both entries are nonzero, so the zero-symmetry condition itself holds
    CHECK(r.d4.verdict == Verdict::Pass);
    // the product is negative, which no bond label accepts
    CHECK(r.d5.verdict == Verdict::Fail);
  }

  SECTION("one-sided zero fails D4 only") {
    ValidationReport r = validate(datum_from_pairing({{1.0, 0.0}, {-0.5, 1.0}}));
    CHECK(r.d3.verdict == Verdict::Pass);
    CHECK(r.d4.verdict == Verdict::Fail);
    CHECK(r.d5.verdict == Verdict::Pass);  // product 0 = cos^2(pi/2)
  }

  SECTION("off-grid product fails D5 only") {
    ValidationReport r = validate(datum_from_pairing({{1.0, -0.6}, {-0.5, 1.0}}));
    CHECK(r.d3.verdict == Verdict::Pass);
    CHECK(r.d4.verdict == Verdict::Pass);
    REQUIRE(r.d5.verdict == Verdict::Fail);
    CHECK(r.d5.violations[0].value == Catch::Approx(0.3));
  }

  SECTION("broken diagonal fails D1") {
    ValidationReport r = validate(datum_from_pairing({{0.9, -0.5}, {-0.5, 1.0}}));
    CHECK(r.d1.verdict == Verdict::Fail);
  }
}

TEST_CASE("validate decides D2 through the embedding when present") {
  // A2 realised in the Euclidean plane: unit simple roots at 120 degrees.
  CoxeterDatum d = a2();
  Embedding e;
  e.alpha_coords = Mat(2, 2);
  e.alpha_coords(0, 0) = 1.0;
  e.alpha_coords(0, 1) = 0.0;
  e.alpha_coords(1, 0) = -0.5;
  e.alpha_coords(1, 1) = std::sqrt(3.0) / 2.0;
  e.beta_coords = e.alpha_coords;
  e.ambient_form = Mat::identity(2);
  d.embedding = e;

  ValidationReport r = validate(d);
  CHECK(r.all_pass());

  // Flip one simple root: alpha_1 = -alpha_0 makes 0 a positive combination.
  CoxeterDatum bad = d;
  bad.embedding->alpha_coords(1, 0) = -1.0;
  bad.embedding->alpha_coords(1, 1) = 0.0;
  bad.pairing(0, 1) = -1.0;
  bad.pairing(1, 0) = -1.0;
  bad.embedding->beta_coords = bad.embedding->alpha_coords;
  CHECK(validate(bad).d2i.verdict == Verdict::Fail);
}

TEST_CASE("coxeter_matrix_of inverts from_coxeter_matrix") {
  CHECK(coxeter_matrix_of(a2()) == CoxeterMatrix{{1, 3}, {3, 1}});
  CHECK(coxeter_matrix_of(infinite_dihedral()) == CoxeterMatrix{{1, 0}, {0, 1}});

  CoxeterDatum asymmetric = datum_from_pairing({{1.0, -1.0}, {-0.25, 1.0}});
  CHECK(coxeter_matrix_of(asymmetric) == CoxeterMatrix{{1, 3}, {3, 1}});

  CHECK_THROWS_MATCHES(coxeter_matrix_of(datum_from_pairing({{1.0, 0.5}, {-0.5, 1.0}})), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code == errc::invalid_datum; }));
}

TEST_CASE("round trip holds for random legal coxeter matrices") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> rank_dist(2, 4);
  std::uniform_int_distribution<int> bond_dist(0, 8);  // 0, or will be clamped to >= 2
  for (int trial = 0; trial < 50; ++trial) {
    int n = rank_dist(rng);
    CoxeterMatrix m(n, std::vector<int>(n, 1));
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t) {
        int b = bond_dist(rng);
        if (b == 1) b = 2;
        m[s][t] = m[t][s] = b;
      }
    CoxeterDatum d = from_coxeter_matrix(m);
    CHECK(validate(d).ok());
    CHECK(coxeter_matrix_of(d) == m);
  }
}

TEST_CASE("induced_datum inherits the pairing by bilinearity") {
  SECTION("the simple pairs induce the parent datum") {
    CoxeterDatum parent = a2();
    std::vector<RootPair> delta;
    for (int s = 0; s < 2; ++s) delta.push_back({parent.alpha(s), parent.beta(s), 0, {}, s});
    CoxeterDatum induced = induced_datum(parent, delta);
    CHECK(induced.pairing.approx(parent.pairing, 1e-12));
    CHECK(validate(induced).ok());
  }

  SECTION("the highest root of A2 induces a rank-1 datum") {
    CoxeterDatum parent = a2();
    RootPair highest{{1.0, 1.0}, {1.0, 1.0}, 1, {0}, 1};
    CoxeterDatum induced = induced_datum(parent, {highest});
    REQUIRE(induced.rank() == 1);
    CHECK(induced.pairing(0, 0) == Catch::Approx(1.0));
    CHECK(validate(induced).ok());
  }

  SECTION("the index-2 pair in the infinite dihedral datum") {
    CoxeterDatum parent = infinite_dihedral();
    RootPair first{{1.0, 0.0}, {1.0, 0.0}, 0, {}, 0};
    RootPair second{{1.0, 2.0}, {1.0, 2.0}, 1, {1}, 0};
    CoxeterDatum induced = induced_datum(parent, {first, second});
    CHECK(induced.pairing(0, 0) == Catch::Approx(1.0));
    CHECK(induced.pairing(0, 1) == Catch::Approx(-1.0));
    CHECK(induced.pairing(1, 0) == Catch::Approx(-1.0));
    CHECK(induced.pairing(1, 1) == Catch::Approx(1.0));
    CHECK(validate(induced).ok());
  }

  SECTION("proportional roots are rejected") {
    CoxeterDatum parent = a2();
    RootPair one{{1.0, 1.0}, {1.0, 1.0}, 1, {0}, 1};
    RootPair twice{{2.0, 2.0}, {2.0, 2.0}, 1, {0}, 1};
    CHECK_THROWS_MATCHES(induced_datum(parent, {one, twice}), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code == errc::duplicate_reflection; }));
  }
}
