/**
 * @file test_eval.cpp
 * @brief Cut generation end to end, gap closed, cut selection, grids and the quadratic fit.
 */
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gic/eval.hpp"

using namespace gic;

namespace {

Instance p0033() { return toStandardForm(parseMps("data/instances/p0033.mps")); }

const KnownOptima& optima() {
  static const KnownOptima k = loadKnownOptima("data/known_optima.csv");
  return k;
}

std::vector<Inequality> structurals(const std::vector<Cut>& cuts) {
  std::vector<Inequality> out;
  for (const auto& c : cuts) out.push_back(c.structural);
  return out;
}

std::string withoutSeconds(const EvalResult& r) {
  std::ostringstream os;
  writeResultsRow(os, r);
  std::string s = os.str();
  return s.substr(0, s.rfind(',', s.size() - 2));
}

}  // namespace

TEST_CASE("percent gap closed") {
  CHECK(percentGap(10.0, 20.0, 10.0) == doctest::Approx(0.0));
  CHECK(percentGap(10.0, 20.0, 20.0) == doctest::Approx(100.0));
  CHECK(percentGap(10.0, 20.0, 12.5) == doctest::Approx(25.0));
  CHECK(std::isnan(percentGap(10.0, 10.0, 10.0)));
}

TEST_CASE("configuration invariants") {
  GicConfig c;
  CHECK_NOTHROW(c.validate());
  c.kh = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.tilting = true;
  CHECK_NOTHROW(c.validate());
  c.families.clear();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(GicConfig{}.label() == "H1/STRV/notilt/kh1");
}

TEST_CASE("parameter grids") {
  CHECK(makeGrid("table2").size() == 3 * 15 * 2 * 5);
  CHECK(makeGrid("desk").size() == 15);
  CHECK(makeGrid("single").size() == 1);
  CHECK_THROWS_AS(makeGrid("nope"), std::invalid_argument);
}

TEST_CASE("quadratic fit recovers an exact parabola") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    y.push_back(2.0 * i * i + 3.0 * i + 1.0);
  }
  auto f = fitQuadratic(x, y);
  CHECK(f.a == doctest::Approx(2.0));
  CHECK(f.b == doctest::Approx(3.0));
  CHECK(f.c == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(fitQuadratic({1, 2}, {1, 2}).samples == 2);
}

TEST_CASE("cut selection") {
  Cut a;
  a.structural.pi = {1, 0};
  a.efficacy = 1.0;
  Cut b = a;
  Cut c;
  c.structural.pi = {0, 1};
  c.efficacy = 0.5;
  std::vector<Cut> cuts = {a, b, c};
  auto sel = selectCuts(cuts, 10);
  CHECK(sel.size() == 2);
  CHECK(sel[0] == 0);
  CHECK(sel[1] == 2);
  CHECK(selectCuts({a, c}, 10).size() == 2);
  CHECK(selectCuts(cuts, 1).size() == 1);
}

TEST_CASE("cut LP re-solve") {
  Instance inst = p0033();
  BasicSolution sol = solveLp(inst, inst.objVec());
  REQUIRE(sol.optimal());
  CutLpResult none = solveWithCuts(inst, {});
  REQUIRE(none.status == LpStatus::Optimal);
  CHECK(none.value == doctest::Approx(2520.571739).epsilon(1e-9));

  // Objective bound at OPT_IP closes the whole gap.
  Inequality bound;
  bound.pi = inst.objVec();
  bound.pi0 = 3089.0 - inst.objConstant.get_d();
  CutLpResult full = solveWithCuts(inst, {bound});
  REQUIRE(full.status == LpStatus::Optimal);
  CHECK(percentGap(none.value, 3089.0, full.value) == doctest::Approx(100.0));
  CHECK(full.active == 1);

  CutLpResult twice = solveWithCuts(inst, {bound, bound});
  CHECK(twice.value == doctest::Approx(full.value));
}

TEST_CASE("generated cuts on p0033") {
  Instance inst = p0033();
  BasicSolution sol = solveLp(inst, inst.objVec());
  REQUIRE(sol.optimal());
  Cone cone = Cone::fromSolution(inst, sol);
  GicConfig cfg;
  cfg.tilting = true;
  auto res = generateCuts(inst, cone, cfg);
  CHECK(res.sics.size() == res.sigma.size());
  CHECK(res.sigma.size() == 7);
  CHECK_FALSE(res.gics.empty());
  CHECK(res.stats.tiltViolations == 0);
  CHECK(res.stats.finalFlagFlips == 0);
  CHECK(res.stats.predictionMismatches == 0);
  for (const auto& c : res.gics) {
    CHECK(c.structural.violationAt(sol.x) > 0.0);
    CHECK(c.efficacy > 0.0);
    CHECK(c.dynamism <= kMaxDynamism);
  }
  for (const auto& c : res.sics) CHECK(c.structural.violationAt(sol.x) > 0.0);
  CHECK_FALSE(res.trace.empty());
}

TEST_CASE("SIC gap on p0033 is within a point of the published value") {
  Instance inst = p0033();
  GicConfig cfg;
  cfg.kh = 0;
  auto r = evaluateConfig(inst, cfg, optima().find(inst.name));
  REQUIRE(r.evaluable);
  CHECK(r.status == "sic_only");
  CHECK(r.optLp == doctest::Approx(2520.571739).epsilon(1e-9));
  CHECK(std::fabs(r.gapSic - 1.83) <= 1.0);
  CHECK(r.gapGicPlusSic == doctest::Approx(r.gapSic));
}

TEST_CASE("GICs never lower the gap and runs are deterministic") {
  Instance inst = p0033();
  for (const auto& cfg : makeGrid("desk")) {
    auto r = evaluateConfig(inst, cfg, optima().find(inst.name));
    REQUIRE(r.evaluable);
    CHECK(r.gapGicPlusSic >= r.gapSic - 1e-6);
    CHECK(r.gapGicPlusSic <= 100.0 + 1e-6);
  }
  GicConfig cfg;
  cfg.tilting = true;
  auto a = evaluateConfig(inst, cfg, optima().find(inst.name));
  auto b = evaluateConfig(inst, cfg, optima().find(inst.name));
  CHECK(withoutSeconds(a) == withoutSeconds(b));
  CHECK(a.gapGicPlusSic > a.gapSic);
}

TEST_CASE("a second round never loses gap") {
  Instance inst = p0033();
  GicConfig cfg;
  auto one = evaluateConfig(inst, cfg, optima().find(inst.name), 1);
  auto two = evaluateConfig(inst, cfg, optima().find(inst.name), 2);
  REQUIRE(two.evaluable);
  CHECK(two.rounds == 2);
  CHECK(two.gapSic >= one.gapSic - 1e-6);
  CHECK(two.gapGicPlusSic >= one.gapGicPlusSic - 1e-6);
}

TEST_CASE("selecting as many GICs as SICs keeps most of the desk gap") {
  double all = 0.0, selected = 0.0;
  for (const char* name : {"p0033", "stein27_nosym", "flugpl"}) {
    Instance inst = toStandardForm(parseMps(std::string("data/instances/") + name + ".mps"));
    GicConfig cfg;
    cfg.tilting = true;
    auto r = evaluateConfig(inst, cfg, optima().find(inst.name));
    REQUIRE(r.evaluable);
    std::vector<Cut> chosen = r.sicCuts;
    for (int i : selectCuts(r.gicCuts, static_cast<int>(r.sicCuts.size()))) chosen.push_back(r.gicCuts[i]);
    CutLpResult lp = solveWithCuts(inst, structurals(chosen));
    REQUIRE(lp.status == LpStatus::Optimal);
    const double gap = percentGap(r.optLp, r.optIp, lp.value);
    CHECK(gap >= r.gapSic - 1e-6);
    all += r.gapGicPlusSic;
    selected += gap;
  }
  CHECK(selected >= 0.9 * all);
}

TEST_CASE("derived stein27 variant keeps the tabulated LP bound") {
  Instance inst = toStandardForm(parseMps("data/instances/stein27_nosym.mps"));
  BasicSolution sol = solveLp(inst, inst.objVec());
  REQUIRE(sol.optimal());
  CHECK(inst.reportObjective(sol.objective) == doctest::Approx(126.0));
}

TEST_CASE("growth rows follow the CSV header") {
  EvalResult r;
  r.instance = "x";
  r.config = "c";
  GrowthSample g;
  g.algorithm = "ALG2";
  g.kr = 3;
  g.kh = 1;
  g.points = 5;
  r.stats.growth.push_back(g);
  std::ostringstream os;
  writeGrowthHeader(os);
  writeGrowthRows(os, r);
  std::istringstream in(os.str());
  std::string h, row;
  std::getline(in, h);
  std::getline(in, row);
  CHECK(std::count(h.begin(), h.end(), ',') == std::count(row.begin(), row.end(), ','));
}
