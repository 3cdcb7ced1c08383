/**
 * @file generator.cpp
 * @brief Per-split activation loops and PRLP cut rounds.
 */
#include "gic/generator.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace gic {

using json = nlohmann::json;

void GicConfig::validate() const {
  if (kh < 0 || kh > 4) throw std::invalid_argument("kh must be in 0..4");
  if (!tilting && kh == 0) throw std::invalid_argument("no activation mechanism: tilting is off and kh is 0");
  if (families.empty()) throw std::invalid_argument("no objective family selected");
  if (maxCuts < 0 || objPoints < 0) throw std::invalid_argument("limits must be nonnegative");
}

std::string GicConfig::label() const {
  std::string o;
  for (Family f : families) o += familyName(f);
  return criterionName(criterion) + "/" + o + "/" + (tilting ? "tilt" : "notilt") + "/kh" + std::to_string(kh);
}

namespace {

using Clock = std::chrono::steady_clock;

struct SplitState {
  std::unique_ptr<SplitGeometry> geom;
  PointRayCollection coll;
  Cut sic;
  std::vector<int> activationSet;  ///< R(C-bar) minus excluded rays
  std::set<int> excluded;
  int activations = 0;
};

class Generator {
 public:
  Generator(const Instance& inst, const Cone& cone, const GicConfig& cfg)
      : inst_(inst), cone_(cone), cfg_(cfg), start_(Clock::now()) {
    rayCosts_ = cone_.reducedCosts(inst_.objVec());
  }

  GenerationResult run(bool sicsOnly) {
    res_.sigma = fractionalIndices(cone_.apex(), inst_.integer);
    for (int k : res_.sigma) {
      auto st = std::make_unique<SplitState>();
      st->geom = std::make_unique<SplitGeometry>(cone_, SplitSet::simple(k, cone_.apex()[k]));
      st->coll = initialCollection(cone_, *st->geom);
      st->sic = sicFromInitial(cone_, st->coll);
      if (!st->sic.alpha.empty()) res_.sics.push_back(st->sic);
      st->excluded.insert(st->coll.parallelRays.begin(), st->coll.parallelRays.end());
      if (cfg_.excludeFinalRays)
        for (const auto& p : st->coll.points)
          if (p.isFinal) st->excluded.insert(p.coords.idx.front());
      for (int j = 0; j < cone_.dim(); ++j)
        if (!st->excluded.count(j)) st->activationSet.push_back(j);
      splits_.push_back(std::move(st));
    }
    res_.stats.splits = static_cast<int>(splits_.size());
    if (sicsOnly || splits_.empty()) return std::move(res_);
    for (int h = 0; h < cone_.numHyperplanes(); ++h)
      if (!cone_.isConeHyperplane(h)) pool_.push_back(h);
    if (cfg_.tilting) algorithm3();
    for (int round = 1; round <= cfg_.kh && !stop(); ++round) algorithm2Round(round);
    for (const auto& st : splits_) {
      res_.stats.totalPoints += static_cast<long>(st->coll.points.size());
      res_.stats.totalRays += static_cast<long>(st->coll.rays.size());
      res_.stats.finalPoints += st->coll.numFinalPoints();
      res_.stats.parallelRays += static_cast<long>(st->coll.parallelRays.size());
    }
    return std::move(res_);
  }

 private:
  bool stop() {
    if (static_cast<int>(res_.gics.size()) >= cfg_.maxCuts) return true;
    const double el = std::chrono::duration<double>(Clock::now() - start_).count();
    if (el > cfg_.timeLimit) res_.stats.timedOut = true;
    return res_.stats.timedOut;
  }

  std::vector<int> candidates(const SplitState& st) const {
    std::vector<int> out;
    for (int h : pool_)
      if (!st.coll.activated.count(h)) out.push_back(h);
    return out;
  }

  void activate(SplitState& st, int h, const std::vector<int>& rayset, const char* alg, int step) {
    ActivationOptions opt;
    opt.enforceTiltRule = cfg_.enforceTiltRule;
    opt.step = step;
    ActivationResult a;
    try {
      a = pha1Activate(cone_, h, rayset, st.coll, opt);
    } catch (const TiltRuleViolation&) {
      ++res_.stats.tiltViolations;
      return;
    }
    ++st.activations;
    ++res_.stats.activations;
    res_.stats.finalFlagFlips += a.finalRemoved;
    GrowthSample g;
    g.algorithm = alg;
    g.splitVar = st.geom->split().var();
    g.n = cone_.dim();
    g.kr = static_cast<int>(st.coll.cutRays.size());
    g.activationRays = static_cast<int>(rayset.size());
    g.kh = st.activations;
    g.points = static_cast<int>(st.coll.points.size());
    g.rays = static_cast<int>(st.coll.rays.size());
    res_.stats.growth.push_back(g);
    json line = {{"event", "activate"},
                 {"alg", alg},
                 {"split", g.splitVar},
                 {"step", step},
                 {"criterion", criterionName(cfg_.criterion)},
                 {"hyperplane", h},
                 {"rays_cut", a.raysCut},
                 {"points_added", a.pointsAdded},
                 {"points_removed", a.pointsRemoved},
                 {"rays_added", a.raysAdded},
                 {"rays_removed", a.raysRemoved},
                 {"points", g.points},
                 {"rays", g.rays}};
    res_.trace.push_back(line.dump());
  }

  void algorithm2Round(int round) {
    for (auto& st : splits_) {
      if (stop()) return;
      if (st->activationSet.empty()) continue;
      const int h = selectHyperplane(cfg_.criterion, cone_, candidates(*st), st->activationSet, st->coll,
                                     st->sic.alpha, cfg_.previewCap);
      if (h < 0) continue;
      activate(*st, h, st->activationSet, "ALG2", round);
    }
    cutRound("ALG2", round);
  }

  void algorithm3() {
    std::vector<int> order(cone_.dim());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rayCosts_[a] > rayCosts_[b]; });
    std::vector<int> chosen;
    int j = 0;
    bool pending = false;
    for (int r : order) {
      if (stop()) break;
      chosen.push_back(r);
      ++j;
      for (auto& st : splits_) {
        if (st->excluded.count(r)) continue;
        std::vector<int> rayset;
        for (int q : chosen)
          if (!st->excluded.count(q)) rayset.push_back(q);
        const int h = selectHyperplane(cfg_.criterion, cone_, candidates(*st), {r}, st->coll, st->sic.alpha,
                                       cfg_.previewCap, nullptr, &rayset);
        if (h < 0) continue;
        activate(*st, h, rayset, "ALG3", j);
        pending = true;
      }
      if ((j & (j - 1)) == 0) {
        cutRound("ALG3", j);
        pending = false;
      }
    }
    if (pending && !stop()) cutRound("ALG3", j);
  }

  bool duplicate(const Vec& alpha) const {
    for (const auto& c : res_.sics)
      if (sameCut(c.alpha, alpha)) return true;
    for (const auto& c : res_.gics)
      if (sameCut(c.alpha, alpha)) return true;
    return false;
  }

  void cutRound(const char* alg, int step) {
    std::vector<const PointRayCollection*> colls;
    for (const auto& st : splits_) colls.push_back(&st->coll);
    std::vector<std::vector<SparseVec>> shared;
    if (std::find(cfg_.families.begin(), cfg_.families.end(), Family::S) != cfg_.families.end())
      shared = routeSharedPoints(colls);
    const int budget = std::max(1, cfg_.objPoints / std::max<int>(1, static_cast<int>(splits_.size())));
    int added = 0;
    for (std::size_t s = 0; s < splits_.size(); ++s) {
      SplitState& st = *splits_[s];
      if (st.coll.points.empty() || stop()) continue;
      PrlpOptions po;
      po.objTimeLimit = cfg_.objTime;
      Prlp lp(st.coll, cone_.dim(), po);
      for (const auto& p : lp.points()) res_.stats.maxRowNonzeros = std::max<int>(res_.stats.maxRowNonzeros, p.size());
      ObjectiveContext ctx;
      ctx.coll = &st.coll;
      ctx.rayCosts = rayCosts_;
      if (!shared.empty()) ctx.shared = shared[s];
      ctx.pointBudget = budget;
      for (Family f : cfg_.families) {
        for (const Vec& w : genObjectives(f, ctx, cone_.dim())) {
          if (stop()) break;
          int pred = -1;
          if (cfg_.crossCheck)
            pred = lp.checkBoundedness(w) ? 1 : 0;
          else if (cfg_.precheck)
            pred = lp.quickBoundedness(w);
          if (pred == 0 && !cfg_.crossCheck) {
            ++res_.stats.skippedByPrecheck;
            continue;
          }
          PrlpSolve sol = lp.solve(w);
          ++res_.stats.prlpSolves;
          const bool bounded = sol.status == PrlpStatus::Optimal || sol.status == PrlpStatus::Rejected;
          const bool decided = bounded || sol.status == PrlpStatus::Unbounded;
          if (pred >= 0 && decided) {
            ++res_.stats.predictions;
            if ((pred == 1) != bounded) ++res_.stats.predictionMismatches;
          }
          switch (sol.status) {
            case PrlpStatus::Optimal: ++res_.stats.optimal; break;
            case PrlpStatus::Unbounded: ++res_.stats.unbounded; break;
            case PrlpStatus::Infeasible: ++res_.stats.infeasible; break;
            case PrlpStatus::Timeout: ++res_.stats.timeouts; break;
            case PrlpStatus::Rejected: ++res_.stats.rejected; break;
            case PrlpStatus::Numerical: ++res_.stats.rejected; break;
          }
          if (sol.status != PrlpStatus::Optimal) continue;
          if (duplicate(sol.alpha)) {
            ++res_.stats.duplicates;
            continue;
          }
          Cut c;
          c.alpha = sol.alpha;
          c.structural = structuralImage(cone_, c.alpha, 1.0);
          c.splitVar = st.geom->split().var();
          c.family = familyName(f);
          c.algorithm = alg;
          c.step = step;
          c.efficacy = efficacy(c.structural, cone_.apex());
          c.dynamism = dynamism(c.alpha);
          res_.gics.push_back(std::move(c));
          ++added;
        }
      }
    }
    json line = {{"event", "cuts"}, {"alg", alg}, {"step", step}, {"added", added}, {"total", res_.gics.size()}};
    res_.trace.push_back(line.dump());
  }

  const Instance& inst_;
  const Cone& cone_;
  GicConfig cfg_;
  Clock::time_point start_;
  Vec rayCosts_;
  std::vector<int> pool_;
  std::vector<std::unique_ptr<SplitState>> splits_;
  GenerationResult res_;
};

}  // namespace

GenerationResult generateCuts(const Instance& inst, const Cone& cone, const GicConfig& cfg) {
  cfg.validate();
  return Generator(inst, cone, cfg).run(false);
}

std::vector<Cut> generateSics(const Instance& inst, const Cone& cone) {
  GicConfig cfg;
  return Generator(inst, cone, cfg).run(true).sics;
}

}  // namespace gic
