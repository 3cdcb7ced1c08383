/**
 * @file test_pha.cpp
 * @brief Partial hyperplane activation, hyperplane selection and tilting support.
 */
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gic/pha.hpp"
#include "gic/rational.hpp"

using namespace gic;

namespace {

Hyperplane hp(int id, Vec a, double b) { return Hyperplane{id, std::move(a), b, "h" + std::to_string(id)}; }

const Vec kApexC = {0.25, 0.25, 0.5};

std::vector<Hyperplane> fixtureRows(bool withBounds) {
  Instance s = toStandardForm(parseMps("data/fixtures/tilt_fixture.mps"));
  auto all = hyperplanesOf(s);
  if (!withBounds) all.resize(5);
  return all;
}

SplitSet box() {
  SplitSet b;
  b.terms = {{0, 0.0, 1.0}, {1, 0.0, 1.0}};
  return b;
}

/** Index of the cone ray parallel to the given direction. */
int rayAlong(const Cone& c, const Vec& dir) {
  for (int j = 0; j < c.dim(); ++j) {
    Vec r = c.ray(j);
    const double s = dot(r, dir) / dot(dir, dir);
    if (s <= 0) continue;
    double err = 0;
    for (int k = 0; k < c.dim(); ++k) err += std::fabs(r[k] - s * dir[k]);
    if (err < 1e-9) return j;
  }
  return -1;
}

/** Exact structural point on H, on the split facet, and on the 2-face of the 3D cone spanned by the edge's rays. */
Vec exactEdgePoint(const std::vector<Hyperplane>& all, const Cone& c, int h, const CollectionElem& p, int facetVar,
                   double facetVal) {
  const int other = 3 - p.originRay - p.edgeDir.idx[0];
  QMatrix m = {toRational(all[h].a), toRational(all[c.rayHyperplane(other)].a)};
  QVec e(3, 0);
  e[facetVar] = 1;
  m.push_back(e);
  QVec rhs = {fromDouble(all[h].b), fromDouble(all[c.rayHyperplane(other)].b), fromDouble(facetVal)};
  QVec x;
  REQUIRE(solveExact(m, rhs, x));
  return toDouble(x);
}

}  // namespace

TEST_CASE("rays cut by a hyperplane on the tilting fixture cone") {
  auto all = fixtureRows(true);
  Cone c = Cone::fromTight(all, kApexC, {0, 1, 4});
  SplitGeometry g(c, box());
  auto coll = initialCollection(c, g);
  const int r1 = rayAlong(c, {3, -1, -2}), r2 = rayAlong(c, {-1, 3, -2}), r3 = rayAlong(c, {-1, -1, -2});
  REQUIRE(r1 >= 0);
  REQUIRE(r2 >= 0);
  REQUIRE(r3 >= 0);
  std::vector<int> expect = {r1, r2};
  std::sort(expect.begin(), expect.end());
  CHECK(raysCutBy(c, 2, coll) == expect);
  CHECK(raysCutBy(c, 3, coll) == expect);
  // x1 >= 0 is reached along r3 exactly where the box is: no strict cut.
  CHECK(raysCutBy(c, 5, coll).empty());
}

TEST_CASE("activation with an empty ray set leaves the collection unchanged") {
  auto all = fixtureRows(true);
  Cone c = Cone::fromTight(all, kApexC, {0, 1, 4});
  SplitGeometry g(c, box());
  auto coll = initialCollection(c, g);
  auto before = coll.points.size();
  auto res = pha1Activate(c, 5, {0, 1, 2}, coll);
  CHECK(res.raysCut.empty());
  CHECK(coll.points.size() == before);
  CHECK(coll.vertices.empty());
}

TEST_CASE("full activation sequence on the tilting fixture cone") {
  auto all = fixtureRows(true);
  Cone c = Cone::fromTight(all, kApexC, {0, 1, 4});
  SplitGeometry g(c, box());
  auto coll = initialCollection(c, g);
  const int r3 = rayAlong(c, {-1, -1, -2});
  const std::vector<int> every = {0, 1, 2};

  auto first = pha1Activate(c, 3, every, coll, {true, 1});
  CHECK(first.pointsRemoved == 2);
  CHECK(first.pointsAdded == 2);
  CHECK(coll.points.size() == 3);
  CHECK(coll.vertices.size() == 2);
  int onH = 0;
  for (const auto& p : coll.points) {
    if (p.hyperplane == 3) {
      ++onH;
      CHECK(std::fabs(c.hyperplaneValue(3, p.coords)) < 1e-9);
      CHECK(g.facetOf(p.coords) >= 0);
      // Both new edges run toward r3 and end on the 2-face missing the cut ray.
      Vec x = c.toStructural(p.coords);
      const int facetVar = p.facet / 2;
      const double facetVal = p.facet % 2 ? 1.0 : 0.0;
      Vec ex = exactEdgePoint(all, c, 3, p, facetVar, facetVal);
      for (int k = 0; k < 3; ++k) CHECK(x[k] == doctest::Approx(ex[k]).epsilon(1e-9));
    } else {
      CHECK(p.coords.idx == std::vector<int>{r3});
    }
  }
  CHECK(onH == 2);

  auto second = pha1Activate(c, 2, every, coll, {true, 2});
  CHECK(second.raysCut.size() == 2);
  CHECK(second.pointsRemoved == 1);
  CHECK(coll.vertices.size() == 4);
  for (const auto& p : coll.points) {
    if (p.hyperplane != 2) continue;
    Vec x = c.toStructural(p.coords);
    Vec ex = exactEdgePoint(all, c, 2, p, p.facet / 2, p.facet % 2 ? 1.0 : 0.0);
    for (int k = 0; k < 3; ++k) CHECK(x[k] == doctest::Approx(ex[k]).epsilon(1e-9));
  }
}

TEST_CASE("tilt rule enforcement") {
  auto all = fixtureRows(false);
  Cone c = Cone::fromTight(all, kApexC, {0, 1, 4});
  SplitGeometry g(c, SplitSet::simple(0, 0.25));
  const int r1 = rayAlong(c, {3, -1, -2}), r2 = rayAlong(c, {-1, 3, -2});
  auto coll = initialCollection(c, g);
  pha1Activate(c, 2, {r1}, coll);
  CHECK(coll.cutRays == std::set<int>{r1});
  auto enforced = coll;
  CHECK_THROWS_AS(pha1Activate(c, 3, {r2}, enforced), TiltRuleViolation);
  auto bypassed = coll;
  CHECK_NOTHROW(pha1Activate(c, 3, {r2}, bypassed, {false, 2}));
  auto compliant = coll;
  CHECK_NOTHROW(pha1Activate(c, 3, {r1, r2}, compliant));
}

TEST_CASE("a hyperplane violated at the apex is rejected") {
  Cone bad = Cone::fromTight({hp(0, {1, 0}, 0.5), hp(1, {0, 1}, 0), hp(2, {1, 1}, 2)}, {0.5, 0}, {0, 1});
  SplitGeometry g(bad, SplitSet::simple(0, 0.5));
  auto coll = initialCollection(bad, g);
  CHECK_THROWS_AS(pha1Activate(bad, 2, {0, 1}, coll), InvalidHyperplaneError);
}

TEST_CASE("activation on parallel rays keeps new elements on the SIC") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int trials = 0;
  while (trials < 50) {
    // Rays (-1,0,0) and (1,1,0) meet the split x_0 in [0, 1] from x0 = 0.5; ray 2 is parallel.
    std::vector<Hyperplane> all = {hp(0, {-1, 1, 0}, -0.5), hp(1, {0, 1, 0}, 0), hp(2, {0, 0, 1}, 0)};
    Vec apex = {0.5, 0.0, 0.0};
    Vec a = {u(rng), u(rng), u(rng)};
    all.push_back(hp(3, a, dot(a, apex) - 0.1 - std::fabs(u(rng))));
    Cone c = Cone::fromTight(all, apex, {0, 1, 2});
    SplitGeometry g(c, SplitSet::simple(0, 0.5));
    auto coll = initialCollection(c, g);
    REQUIRE(coll.parallelRays == std::vector<int>{2});
    if (!(c.rate(3, 2) < -kEps)) continue;
    Cut sic = sicFromInitial(c, coll);
    auto before = coll.points.size() + coll.rays.size();
    pha1Activate(c, 3, {2}, coll);
    for (const auto& p : coll.points)
      if (p.hyperplane == 3) CHECK(std::fabs(p.coords.dot(sic.alpha) - 1.0) < 1e-7);
    for (const auto& r : coll.rays)
      if (r.hyperplane == 3) CHECK(std::fabs(r.coords.dot(sic.alpha)) < 1e-7);
    CHECK(coll.points.size() + coll.rays.size() >= before - 1);
    ++trials;
  }
}

TEST_CASE("hyperplane selection") {
  std::vector<Hyperplane> all = {hp(0, {-1, 1, 0}, -0.5), hp(1, {0, 1, 0}, 0), hp(2, {0, 0, 1}, 0)};
  // Candidate 3 cuts only the parallel ray; candidate 4 cuts ray 0 at the same distance.
  all.push_back(hp(3, {0, 0, -1}, -0.25));
  all.push_back(hp(4, {1, -1, 0}, 0.25));
  Vec apex = {0.5, 0.0, 0.0};
  Cone c = Cone::fromTight(all, apex, {0, 1, 2});
  SplitGeometry g(c, SplitSet::simple(0, 0.5));
  auto coll = initialCollection(c, g);
  Cut sic = sicFromInitial(c, coll);
  REQUIRE(c.distance(3, 2) == doctest::Approx(0.25));
  REQUIRE(c.distance(4, 0) == doctest::Approx(0.25));
  const std::vector<int> targets = {0, 1, 2};
  SUBCASE("single candidate") {
    for (Criterion k : {Criterion::H1, Criterion::H2, Criterion::H3})
      CHECK(selectHyperplane(k, c, {4}, targets, coll, sic.alpha) == 4);
  }
  SUBCASE("H1 ties go to the lowest id, H2 prefers deeper points") {
    CHECK(selectHyperplane(Criterion::H1, c, {3, 4}, targets, coll, sic.alpha) == 3);
    std::vector<HyperplaneScore> sc;
    CHECK(selectHyperplane(Criterion::H2, c, {3, 4}, targets, coll, sic.alpha, 50, &sc) == 4);
    for (const auto& s : sc)
      if (s.hyperplane == 3) CHECK(s.avgDepth == doctest::Approx(0.0));
  }
  SUBCASE("no candidate") { CHECK(selectHyperplane(Criterion::H1, c, {}, targets, coll, sic.alpha) == -1); }
}

TEST_CASE("H1 agrees with exact distances on the tilting fixture cone") {
  auto all = fixtureRows(true);
  Cone c = Cone::fromTight(all, kApexC, {0, 1, 4});
  SplitGeometry g(c, box());
  auto coll = initialCollection(c, g);
  QMatrix m;
  for (int t : c.tightIds()) m.push_back(toRational(all[t].a));
  QMatrix inv;
  REQUIRE(invertExact(m, inv));
  for (int j = 0; j < 3; ++j) {
    QVec r(3);
    for (int k = 0; k < 3; ++k) r[k] = inv[k][j];
    auto dist = [&](int h) {
      Rational w = dot(toRational(all[h].a), r);
      Rational gval = dot(toRational(all[h].a), toRational(kApexC)) - fromDouble(all[h].b);
      return w < 0 ? Rational(gval / -w) : Rational(1000000);
    };
    const Rational d2 = dist(2), d3 = dist(3);
    if (d2 >= 1000000 && d3 >= 1000000) continue;
    const int expect = d2 <= d3 ? 2 : 3;
    CHECK(selectHyperplane(Criterion::H1, c, {2, 3}, {j}, coll, {}) == expect);
  }
}

TEST_CASE("degenerate tilting support") {
  std::vector<Hyperplane> all = {hp(0, {1, 0, 0}, 0.5), hp(1, {0, 1, 0}, 0), hp(2, {0, 0, 1}, 0)};
  Vec apex = {0.5, 0.0, 0.0};
  all.push_back(hp(3, {-1, 2, 0}, -0.5));
  all.push_back(hp(4, {-1, 2, 0}, -0.75));
  Cone c = Cone::fromTight(all, apex, {0, 1, 2});
  SplitSet s;
  s.terms = {{0, 0.0, 1.0}};
  SplitGeometry g(c, s);
  auto coll = initialCollection(c, g);
  SUBCASE("tight hyperplane cutting one ray") {
    TiltSpec t = degenerateTiltSupport(c, 3, coll);
    REQUIRE(t.entries.size() == 1);
    const TiltEntry& e = t.entries[0];
    CHECK(e.cutRay == 0);
    CHECK(e.uncutRay == 1);
    // w = (-1, 2, 0): lambda = 2 / 3 solves -lambda + 2 (1 - lambda) = 0.
    CHECK(e.lambda == doctest::Approx(2.0 / 3.0));
    CHECK(std::fabs(c.hyperplaneRate(3, tiltedDirection(e, 0.0))) < 1e-12);
    SparseVec d = tiltedDirection(e, -e.lambda);
    CHECK(d.idx == std::vector<int>{1});
    CHECK(d.val[0] == doctest::Approx(1.0));
    CHECK(TiltSpec::allowedDeltas(e) == std::vector<double>{0.0, -e.lambda});
  }
  SUBCASE("non-degenerate hyperplane has no table") { CHECK(degenerateTiltSupport(c, 4, coll).entries.empty()); }
}
