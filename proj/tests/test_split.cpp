/**
 * @file test_split.cpp
 * @brief Split sets, initial collections, SICs, depths and final points.
 */
#include <doctest.h>

#include <random>

#include "gic/rational.hpp"
#include "gic/split.hpp"

using namespace gic;

namespace {

Hyperplane hp(int id, Vec a, double b) { return Hyperplane{id, std::move(a), b, "h" + std::to_string(id)}; }

/** Cone at apex with tight rows diag(s) x >= diag(s) apex; ray j is e_j / s_j. */
Cone diagonalCone(const Vec& apex, const Vec& s) {
  std::vector<Hyperplane> all;
  std::vector<int> tight;
  for (std::size_t j = 0; j < apex.size(); ++j) {
    Vec a(apex.size(), 0.0);
    a[j] = s[j];
    all.push_back(hp(static_cast<int>(j), a, s[j] * apex[j]));
    tight.push_back(static_cast<int>(j));
  }
  return Cone::fromTight(all, apex, tight);
}

Cone fixtureCone(bool withBounds) {
  Instance s = toStandardForm(parseMps("data/fixtures/tilt_fixture.mps"));
  auto all = hyperplanesOf(s);
  if (!withBounds) all.resize(5);
  return Cone::fromTight(all, {0.25, 0.25, 0.5}, {0, 1, 4});
}

SplitSet box() {
  SplitSet b;
  b.terms = {{0, 0.0, 1.0}, {1, 0.0, 1.0}};
  return b;
}

}  // namespace

TEST_CASE("fractional indices respect the tolerance") {
  const std::vector<bool> integer = {true, true, true, false};
  CHECK(fractionalIndices({1.0, 2.0, 0.0, 0.5}, integer).empty());
  CHECK(fractionalIndices({0.5, 2.0, 0.0, 0.5}, integer) == std::vector<int>{0});
  CHECK(fractionalIndices({0.9995, 0.0005, 0.3, 0.5}, integer) == std::vector<int>{2});
}

TEST_CASE("boundary distance along a ray") {
  SUBCASE("ray moving down reaches the lower facet") {
    Cone c = diagonalCone({0.25, 0.0}, {-1.0, 1.0});
    SplitGeometry g(c, SplitSet::simple(0, 0.25));
    CHECK(g.boundaryDistance(0) == doctest::Approx(0.25));
    CHECK(isInf(g.boundaryDistance(1)));
  }
  SUBCASE("ray moving up reaches the upper facet") {
    Cone c = diagonalCone({0.25, 0.0}, {2.0, 1.0});
    SplitGeometry g(c, SplitSet::simple(0, 0.25));
    CHECK(g.boundaryDistance(0) == doctest::Approx(1.5));
  }
}

TEST_CASE("initial collection sizes") {
  SUBCASE("rays with zero split component become rays") {
    Cone c = diagonalCone({0.5, 0.0, 0.0}, {-1.0, 1.0, 1.0});
    SplitGeometry g(c, SplitSet::simple(0, 0.5));
    auto coll = initialCollection(c, g);
    CHECK(coll.points.size() == 1);
    CHECK(coll.rays.size() == 2);
    CHECK(coll.parallelRays == std::vector<int>{1, 2});
  }
  SUBCASE("tilting fixture cone with the box has three points and no rays") {
    Cone c = fixtureCone(true);
    SplitGeometry g(c, box());
    auto coll = initialCollection(c, g);
    CHECK(coll.points.size() == 3);
    CHECK(coll.rays.empty());
    for (const auto& p : coll.points) CHECK(g.facetOf(p.coords) >= 0);
  }
  SUBCASE("random cones always give n elements") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    int trials = 0;
    while (trials < 30) {
      const int n = 4;
      std::vector<Hyperplane> all;
      std::vector<int> tight;
      QMatrix m;
      for (int i = 0; i < n; ++i) {
        Vec a(n);
        for (double& v : a) v = coef(rng);
        all.push_back(hp(i, a, 0.0));
        tight.push_back(i);
        m.push_back(toRational(a));
      }
      if (rankExact(m) < n) continue;
      Vec apex = {0.5, 0.0, 0.0, 0.0};
      for (auto& h : all) h.b = dot(h.a, apex);
      Cone c = Cone::fromTight(all, apex, tight);
      SplitGeometry g(c, SplitSet::simple(0, 0.5));
      auto coll = initialCollection(c, g);
      CHECK(coll.points.size() + coll.rays.size() == 4);
      // Independent count: ray j meets bd S iff the exact x_0 component of M^{-1} e_j is nonzero.
      QMatrix inv;
      REQUIRE(invertExact(m, inv));
      std::size_t meets = 0;
      for (int j = 0; j < n; ++j)
        if (inv[0][j] != 0) ++meets;
      CHECK(coll.points.size() == meets);
      ++trials;
    }
  }
}

TEST_CASE("point depth relative to the SIC") {
  Cone c = diagonalCone({0.5, 0.5, 0.0}, {-0.25, 0.125, 1.0});
  SplitGeometry g(c, SplitSet::simple(0, 0.5));
  auto coll = initialCollection(c, g);
  Cut sic = sicFromInitial(c, coll);
  REQUIRE(sic.alpha.size() == 3);
  CHECK(sic.alpha[0] == doctest::Approx(1.0 / coll.initialDistance[0]));
  CHECK(sic.alpha[2] == 0.0);
  for (const auto& p : coll.points) {
    CHECK(pointDepth(p.coords, sic.alpha) == doctest::Approx(0.0));
    SparseVec q = p.coords;
    for (double& v : q.val) v *= 2.0;
    CHECK(pointDepth(q, sic.alpha) == doctest::Approx(1.0 / norm2(sic.alpha)));
  }
}

TEST_CASE("SIC alpha equals reciprocal distances for (2, 4)") {
  Cone c = diagonalCone({0.5, 0.5}, {-4.0, -8.0});
  SplitSet s;
  s.terms = {{0, 0.0, 1.0}};
  // Ray 0 moves x_0 at rate -1/4 from 0.5, reaching 0 after 2.
  SplitGeometry g(c, s);
  auto coll = initialCollection(c, g);
  REQUIRE(coll.initialDistance[0] == doctest::Approx(2.0));
  REQUIRE(isInf(coll.initialDistance[1]));
  Cut k = sicFromInitial(c, coll);
  CHECK(k.alpha[0] == doctest::Approx(0.5));
  CHECK(k.alpha[1] == 0.0);
  Cone c2 = Cone::fromTight({hp(0, {-4.0, 0.0}, -2.0), hp(1, {0.0, -8.0}, -4.0)}, {0.5, 0.5}, {0, 1});
  SplitSet s2;
  s2.terms = {{0, 0.0, 1.0}, {1, 0.0, 1.0}};
  SplitGeometry g2(c2, s2);
  auto coll2 = initialCollection(c2, g2);
  CHECK(coll2.initialDistance[1] == doctest::Approx(4.0));
  Cut k2 = sicFromInitial(c2, coll2);
  CHECK(k2.alpha[0] == doctest::Approx(0.5));
  CHECK(k2.alpha[1] == doctest::Approx(0.25));
}

TEST_CASE("final points satisfy every hyperplane of P") {
  Cone c = fixtureCone(true);
  SplitGeometry g(c, box());
  auto coll = initialCollection(c, g);
  // Exact check of each initial point against the five rows and the bounds.
  Instance s = toStandardForm(parseMps("data/fixtures/tilt_fixture.mps"));
  auto all = hyperplanesOf(s);
  for (const auto& p : coll.points) {
    Vec x = c.toStructural(p.coords);
    bool inside = true;
    for (const auto& h : all)
      if (dot(toRational(h.a), toRational(x)) < fromDouble(h.b) - Rational(1, 1000000)) inside = false;
    CHECK(p.isFinal == inside);
  }
  SparseVec far;
  far.push(0, 100.0);
  CHECK_FALSE(pointInP(c, far));
  CHECK(pointInP(c, SparseVec{}));
}

TEST_CASE("collections merge near-duplicate points and rays") {
  Cone c = fixtureCone(true);
  SplitGeometry g(c, box());
  PointRayCollection coll(&g);
  CollectionElem a;
  a.coords.push(0, 1.0);
  a.coords.push(2, 0.5);
  CHECK(coll.addPoint(a));
  CollectionElem b;
  b.coords.push(2, 0.5 + 5e-8);
  b.coords.push(0, 1.0);
  b.step = 7;
  CHECK_FALSE(coll.addPoint(b));
  CHECK(coll.points.size() == 1);
  CHECK(coll.points[0].step == 0);
  CollectionElem r1, r2;
  r1.coords.push(1, 2.0);
  r2.coords.push(1, 5.0);
  CHECK(coll.addRay(r1));
  CHECK_FALSE(coll.addRay(r2));
  coll.removeMarked({true}, {false});
  CHECK(coll.points.empty());
  CHECK(coll.addPoint(b));
}

TEST_CASE("dynamism and efficacy") {
  CHECK(dynamism({1.0, -4.0, 0.0}) == doctest::Approx(4.0));
  Inequality q{{3.0, 4.0}, 5.0};
  CHECK(efficacy(q, {0.0, 0.0}) == doctest::Approx(1.0));
}
