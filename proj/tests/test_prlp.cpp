/**
 * @file test_prlp.cpp
 * @brief Point-ray LP solves, boundedness predictions and objective families.
 */
#include <doctest.h>

#include <random>

#include "gic/pha.hpp"
#include "gic/prlp.hpp"
#include "gic/rational.hpp"

using namespace gic;

namespace {

Hyperplane hp(int id, Vec a, double b) { return Hyperplane{id, std::move(a), b, "h" + std::to_string(id)}; }

Cone fixtureCone() {
  Instance s = toStandardForm(parseMps("data/fixtures/tilt_fixture.mps"));
  return Cone::fromTight(hyperplanesOf(s), {0.25, 0.25, 0.5}, {0, 1, 4});
}

PointRayCollection fromElems(const SplitGeometry& g, const std::vector<Vec>& pts, const std::vector<Vec>& rays) {
  PointRayCollection c(&g);
  for (const auto& p : pts) {
    CollectionElem e;
    e.coords = SparseVec::fromDense(p);
    c.addPoint(e);
  }
  for (const auto& r : rays) {
    CollectionElem e;
    e.coords = SparseVec::fromDense(r);
    c.addRay(e);
  }
  return c;
}

/** Exact cone membership of v in cone(P u R) by a rational Farkas-free test: nonnegative solution of a square subsystem. */
bool exactMember(const std::vector<Vec>& gens, const Vec& v) {
  // Enumerate subsets of generators of size <= 3 and solve exactly (3D only).
  const int k = static_cast<int>(gens.size());
  const QVec tv = toRational(v);
  bool zero = true;
  for (const auto& q : tv) zero = zero && q == 0;
  if (zero) return true;
  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<int> sel;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) sel.push_back(i);
    if (sel.size() > 3) continue;
    // Least squares is not exact; use normal equations on the selected columns.
    QMatrix m(sel.size(), QVec(sel.size()));
    QVec rhs(sel.size());
    for (std::size_t a = 0; a < sel.size(); ++a) {
      for (std::size_t b = 0; b < sel.size(); ++b) m[a][b] = dot(toRational(gens[sel[a]]), toRational(gens[sel[b]]));
      rhs[a] = dot(toRational(gens[sel[a]]), tv);
    }
    QVec lam;
    if (!solveExact(m, rhs, lam)) continue;
    bool ok = true;
    for (const auto& l : lam) ok = ok && l >= 0;
    if (!ok) continue;
    QVec comb(3, 0);
    for (std::size_t a = 0; a < sel.size(); ++a)
      for (int d = 0; d < 3; ++d) comb[d] += lam[a] * fromDouble(gens[sel[a]][d]);
    if (comb == tv) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("objective family parsing keeps execution order") {
  auto f = parseFamilies("r,v,t,s");
  REQUIRE(f.size() == 4);
  CHECK(f[0] == Family::S);
  CHECK(f[1] == Family::T);
  CHECK(f[2] == Family::R);
  CHECK(f[3] == Family::V);
  CHECK(parseFamilies("T").size() == 1);
  CHECK_THROWS(parseFamilies("x"));
}

TEST_CASE("initial collection recovers the SIC") {
  Cone c = fixtureCone();
  SplitGeometry g(c, SplitSet::simple(0, 0.25));
  auto coll = initialCollection(c, g);
  Prlp lp(coll, 3);
  CHECK(lp.numRows() == 3);
  for (const auto& p : lp.points()) CHECK(p.size() == 1);
  Cut sic = sicFromInitial(c, coll);
  for (const auto& p : coll.points) {
    PrlpSolve s = lp.solve(p.coords.toDense(3));
    REQUIRE(s.status == PrlpStatus::Optimal);
    for (int j = 0; j < 3; ++j) CHECK(s.alpha[j] == doctest::Approx(sic.alpha[j]));
  }
  PrlpSolve z = lp.solve(Vec(3, 0.0));
  CHECK(z.status == PrlpStatus::Optimal);
  CHECK(lp.maxViolation(z.alpha) <= kEps);
}

TEST_CASE("empty collection is rejected") {
  Cone c = fixtureCone();
  SplitGeometry g(c, SplitSet::simple(0, 0.25));
  PointRayCollection empty(&g);
  CHECK_THROWS(Prlp(empty, 3));
}

TEST_CASE("boundedness predictions") {
  Cone c = fixtureCone();
  SplitGeometry g(c, SplitSet::simple(0, 0.25));
  auto coll = fromElems(g, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}, {});
  Prlp lp(coll, 3);
  CHECK(lp.checkBoundedness({1, 0, 0}));
  CHECK_FALSE(lp.checkBoundedness({-1, 0, 0}));
  CHECK(lp.solve({-1, 0, 0}).status == PrlpStatus::Unbounded);
  CHECK(lp.solvePrimalForm({-1, 0, 0}) == LpStatus::Unbounded);
  CHECK(lp.quickBoundedness({-1, 0, 0}) == 0);
  CHECK(lp.quickBoundedness({0, 4, 0}) == 1);
  CHECK(lp.quickBoundedness({1, 1, 0}) == -1);
}

TEST_CASE("random 3D collections: prediction, dual form and primal form agree") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 4);
  Cone c = fixtureCone();
  SplitGeometry g(c, SplitSet::simple(0, 0.25));
  int mismatches = 0, solves = 0, exactChecks = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Vec> pts, rays;
    const int np = 2 + trial % 4, nr = trial % 3;
    for (int i = 0; i < np; ++i) pts.push_back({double(coef(rng)), double(coef(rng)), double(coef(rng))});
    for (int i = 0; i < nr; ++i) rays.push_back({double(coef(rng)), double(coef(rng)), double(coef(rng))});
    auto coll = fromElems(g, pts, rays);
    if (coll.points.empty()) continue;
    Prlp lp(coll, 3);
    if (lp.solvePrimalForm(Vec(3, 0.0)) == LpStatus::Infeasible) continue;
    for (int k = 0; k < 5; ++k) {
      Vec w = {double(coef(rng)), double(coef(rng)), double(coef(rng))};
      const bool pred = lp.checkBoundedness(w);
      const int quick = lp.quickBoundedness(w);
      if (quick >= 0) CHECK((quick == 1) == pred);
      const PrlpStatus st = lp.solve(w).status;
      const LpStatus prim = lp.solvePrimalForm(w);
      ++solves;
      const bool bounded = st == PrlpStatus::Optimal || st == PrlpStatus::Rejected;
      if (pred != bounded) ++mismatches;
      if (pred != (prim == LpStatus::Optimal)) ++mismatches;
      std::vector<Vec> gens = pts;
      gens.insert(gens.end(), rays.begin(), rays.end());
      if (gens.size() <= 8) {
        CHECK(exactMember(gens, w) == pred);
        ++exactChecks;
      }
    }
  }
  CHECK(solves > 100);
  CHECK(exactChecks > 50);
  CHECK(mismatches == 0);
}

TEST_CASE("objective families") {
  Cone c = fixtureCone();
  SplitGeometry g(c, SplitSet::simple(0, 0.25));
  auto coll = initialCollection(c, g);
  ObjectiveContext ctx;
  ctx.coll = &coll;
  ctx.rayCosts = c.reducedCosts({0, 0, -1});
  CHECK(genObjectives(Family::R, ctx, 3).size() == 3);
  CHECK(genObjectives(Family::V, ctx, 3).empty());
  CHECK(genObjectives(Family::T, ctx, 3).size() == coll.points.size());
  CHECK(genObjectives(Family::S, ctx, 3).empty());
  ctx.pointBudget = 1;
  auto t = genObjectives(Family::T, ctx, 3);
  REQUIRE(t.size() == 1);
  double best = kInf;
  for (const auto& p : coll.points) best = std::min(best, p.coords.dot(ctx.rayCosts));
  CHECK(dot(t[0], ctx.rayCosts) == doctest::Approx(best));
  pha1Activate(c, 3, {0, 1, 2}, coll);
  CHECK(genObjectives(Family::V, ctx, 3).size() == 2);
}

TEST_CASE("tight point objectives are tight at their target") {
  Cone c = fixtureCone();
  SplitGeometry g(c, SplitSet::simple(0, 0.25));
  auto coll = initialCollection(c, g);
  pha1Activate(c, 3, {0, 1, 2}, coll);
  pha1Activate(c, 2, {0, 1, 2}, coll);
  Prlp lp(coll, 3);
  ObjectiveContext ctx;
  ctx.coll = &coll;
  ctx.rayCosts = c.reducedCosts({0, 0, -1});
  for (const Vec& w : genObjectives(Family::T, ctx, 3)) {
    PrlpSolve s = lp.solve(w);
    if (s.status != PrlpStatus::Optimal) continue;
    double tightest = kInf;
    for (const auto& p : lp.points()) tightest = std::min(tightest, p.dot(s.alpha));
    CHECK(tightest == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(dot(w, s.alpha) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("shared points go to the last split crossed") {
  Cone c = fixtureCone();
  SplitSet sx1 = SplitSet::simple(0, 0.25), sx2 = SplitSet::simple(1, 0.25);
  SplitGeometry g1(c, sx1), g2(c, sx2);
  auto c1 = initialCollection(c, g1), c2 = initialCollection(c, g2);
  for (auto* coll : {&c1, &c2}) {
    pha1Activate(c, 3, {0, 1, 2}, *coll);
    pha1Activate(c, 2, {0, 1, 2}, *coll);
  }
  auto routed = routeSharedPoints({&c1, &c2});
  std::size_t total = 0;
  for (int k = 0; k < 2; ++k) {
    const SplitSet& target = k == 0 ? sx1 : sx2;
    for (const auto& p : routed[k]) {
      ++total;
      // Exact membership: the point lies strictly between the facets of the target split.
      QVec x = toRational(c.toStructural(p));
      const Rational v = x[target.var()];
      CHECK(v > fromDouble(target.terms[0].lo) + Rational(1, 1000000));
      CHECK(v < fromDouble(target.terms[0].hi) - Rational(1, 1000000));
    }
  }
  CHECK(total > 0);
}
