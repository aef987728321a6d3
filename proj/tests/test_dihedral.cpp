#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "pairedroots/dihedral.hpp"

using namespace pairedroots;

TEST_CASE("p_sequence unrolls the recurrence") {
  CHECK(p_sequence(1.0, 4) == Vec{-1, 0, 1, 2, 3, 4});
  CHECK(p_sequence(0.5, 4) == Vec{-1, 0, 1, 1, 0, -1});
  CHECK(p_sequence(0.0, 3) == Vec{-1, 0, 1, 0, -1});
}

TEST_CASE("p_closed_form matches the degenerate cases") {
  CHECK(p_closed_form(1.0, 7) == Catch::Approx(7.0));
  CHECK(p_closed_form(0.5, 3) == Catch::Approx(0.0).margin(1e-12));  // sin(pi) / sin(pi/3)
  CHECK(p_closed_form(-1.0, 3) == Catch::Approx(3.0));
  CHECK(p_closed_form(-1.0, 4) == Catch::Approx(-4.0));
  CHECK(p_closed_form(2.0, -1) == Catch::Approx(-1.0));
  CHECK(p_closed_form(-1.7, 0) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("recurrence and closed form agree across the gamma range") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    double gamma = dist(rng);
    Vec p = p_sequence(gamma, 200);
    for (int n = -1; n <= 200; ++n) {
      double expected = p_at(p, n);
      double got = p_closed_form(gamma, n);
      REQUIRE(std::abs(got - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("classify_gamma") {
  GammaClass c = classify_gamma(std::cos(kPi / 5));
  REQUIRE(c.kind == GammaKind::CosPiOverM);
  CHECK(c.m == 5);

  CHECK(classify_gamma(1.3).kind == GammaKind::AtLeastOne);
  // 1 is the accumulation point of cos(pi/m) but matches no single m
  CHECK(classify_gamma(1.0).kind == GammaKind::AtLeastOne);

  c = classify_gamma(0.3);
  REQUIRE(c.kind == GammaKind::Fails);
  CHECK(c.n == 2);  // p2 = 0.6, p3 = -0.64

  SECTION("every recognised cosine value is classified") {
    for (int m = 2; m <= 100; ++m) {
      GammaClass g = classify_gamma(std::cos(kPi / m));
      REQUIRE(g.kind == GammaKind::CosPiOverM);
      REQUIRE(g.m == m);
    }
  }

  SECTION("reported failure index is a real sign violation") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-0.999, 0.999);
    for (int trial = 0; trial < 100; ++trial) {
      double gamma = dist(rng);
      GammaClass g{GammaKind::Fails, 0, 0};
      try {
        g = classify_gamma(gamma);
      } catch (const Error& e) {
        REQUIRE(e.code == errc::inconclusive);
        continue;
      }
      if (g.kind != GammaKind::Fails) continue;
      Vec p = p_sequence(gamma, g.n + 1);
      REQUIRE(p_at(p, g.n) * p_at(p, g.n + 1) < 0.0);
      for (int n = 1; n < g.n; ++n) REQUIRE(p_at(p, n) * p_at(p, n + 1) >= -1e-9);
    }
  }
}

TEST_CASE("dihedral_matrices") {
  auto [a, b] = dihedral_matrices({0.0, 1.0, 1.0});
  CHECK(a(0, 0) == -1.0);
  CHECK(a(0, 1) == 0.0);
  CHECK(a(1, 1) == 1.0);
  CHECK(b(0, 0) == 1.0);
  CHECK(b(1, 1) == -1.0);

  auto [a2, b2] = dihedral_matrices({0.5, 1.0, 1.0});
  CHECK(a2(0, 1) == Catch::Approx(1.0));
  CHECK(b2(1, 0) == Catch::Approx(1.0));

  auto [a3, b3] = dihedral_matrices({1.0, 4.0, 1.0});
  CHECK(a3(0, 1) == Catch::Approx(4.0));  // 2 * 1 * 2 * 1
  CHECK(a3(1, 1) == Catch::Approx(4.0));
  CHECK(b3(1, 0) == Catch::Approx(4.0));

  SECTION("q = 1 makes both matrices involutions") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> gdist(-2.0, 2.0), xdist(0.2, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
      auto [ma, mb] = dihedral_matrices({gdist(rng), 1.0, xdist(rng)});
      CHECK((ma * ma).is_identity(1e-12));
      CHECK((mb * mb).is_identity(1e-12));
    }
  }

  CHECK_THROWS_AS(dihedral_matrices({0.5, -1.0, 1.0}), Error);
  CHECK_THROWS_AS(dihedral_matrices({0.5, 1.0, 0.0}), Error);
}

TEST_CASE("power_product closed forms") {
  SECTION("n = 0 gives identities") {
    for (PowerKind kind : {PowerKind::BA_n, PowerKind::AB_n}) {
      PowerProduct p = power_product({0.7, 2.0, 1.5}, kind, 0);
      CHECK(p.computed.is_identity(1e-12));
      CHECK(p.predicted.is_identity(1e-12));
    }
  }

  SECTION("gamma = cos(pi/3) gives (AB)^3 = 1") {
    PowerProduct p = power_product({0.5, 1.0, 1.0}, PowerKind::AB_n, 3);
    CHECK(p.computed.is_identity(1e-12));
    CHECK(rel_close(p.computed, p.predicted, kRelTol));
  }

  SECTION("gamma = 1, q = 1: (AB)^2 = [[5,-4],[4,-3]]") {
    PowerProduct p = power_product({1.0, 1.0, 1.0}, PowerKind::AB_n, 2);
    CHECK(p.computed(0, 0) == Catch::Approx(5.0));
    CHECK(p.computed(0, 1) == Catch::Approx(-4.0));
    CHECK(p.computed(1, 0) == Catch::Approx(4.0));
    CHECK(p.computed(1, 1) == Catch::Approx(-3.0));
    CHECK(rel_close(p.computed, p.predicted, kRelTol));
  }

  SECTION("all four identities hold for random parameters") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> gdist(-2.0, 2.0), qdist(0.1, 3.0), xdist(0.2, 3.0);
    std::bernoulli_distribution flip(0.5);
    for (int trial = 0; trial < 50; ++trial) {
      DihedralParams params{gdist(rng), qdist(rng), xdist(rng) * (flip(rng) ? -1.0 : 1.0)};
      for (PowerKind kind :
           {PowerKind::B_AB_n, PowerKind::A_BA_n, PowerKind::BA_n, PowerKind::AB_n})
        for (int n = 0; n <= 15; ++n) {
          PowerProduct p = power_product(params, kind, n);
          REQUIRE(rel_close(p.computed, p.predicted, kRelTol));
        }
    }
  }
}

TEST_CASE("braid relation at gamma = cos(k pi / m)") {
  CHECK(braid_check(1, 3, 1.0, 1.0));
  CHECK(braid_check(2, 5, 1.0, 1.0));
  CHECK_FALSE(braid_products_agree(0.3, 3, 1.0, 1.0));

  std::mt19937 rng(29);
  std::uniform_real_distribution<double> qdist(0.1, 3.0), xdist(0.2, 3.0);
  for (int m = 2; m <= 12; ++m)
    for (int k = 1; k < m; ++k)
      for (int trial = 0; trial < 10; ++trial)
        REQUIRE(braid_check(k, m, qdist(rng), xdist(rng)));
}

TEST_CASE("order_of_AB") {
  OrderLabel o = order_of_AB(std::cos(kPi / 4));
  REQUIRE(o.kind == OrderKind::Finite);
  CHECK(o.m == 4);

  o = order_of_AB(std::cos(2 * kPi / 5));
  REQUIRE(o.kind == OrderKind::Finite);
  CHECK(o.m == 5);

  o = order_of_AB(1.1);
  CHECK(o.kind == OrderKind::Infinite);

  SECTION("a finite order beyond the scan bound is flagged, not mislabelled") {
    OrderLabel tight = order_of_AB(std::cos(kPi / 15), 1e-9, 12, 100);
    CHECK(tight.kind == OrderKind::Inconclusive);
    CHECK(tight.bound == 15);
  }

  SECTION("every detected order is the literal matrix order") {
    for (int m = 2; m <= 12; ++m)
      for (int k = 1; k < m; ++k) {
        if (std::gcd(k, m) != 1) continue;
        double gamma = std::cos(k * kPi / m);
        OrderLabel label = order_of_AB(gamma, 1e-9, 12, 500);
        REQUIRE(label.kind == OrderKind::Finite);
        REQUIRE(label.m == m);
        for (int n = 1; n <= m; ++n) {
          Mat power = power_product({gamma, 1.0, 1.0}, PowerKind::AB_n, n).computed;
          REQUIRE(power.is_identity(kRelTol) == (n == m));
        }
      }
  }
}
