/**
 * @file prlp.cpp
 * @brief Point-ray LP construction, objective families and cut gates.
 */
#include "gic/prlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gic {

std::string familyName(Family f) {
  switch (f) {
    case Family::S: return "S";
    case Family::T: return "T";
    case Family::R: return "R";
    case Family::V: return "V";
  }
  return "?";
}

std::vector<Family> parseFamilies(const std::string& list) {
  std::vector<bool> on(4, false);
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])));
    if (tok.size() != 1) throw std::invalid_argument("unknown objective family '" + tok + "'");
    switch (c) {
      case 's': on[0] = true; break;
      case 't': on[1] = true; break;
      case 'r': on[2] = true; break;
      case 'v': on[3] = true; break;
      default: throw std::invalid_argument("unknown objective family '" + tok + "'");
    }
  }
  std::vector<Family> out;
  const Family order[] = {Family::S, Family::T, Family::R, Family::V};
  for (int i = 0; i < 4; ++i)
    if (on[i]) out.push_back(order[i]);
  return out;
}

std::string prlpStatusName(PrlpStatus s) {
  switch (s) {
    case PrlpStatus::Optimal: return "optimal";
    case PrlpStatus::Unbounded: return "unbounded";
    case PrlpStatus::Infeasible: return "infeasible";
    case PrlpStatus::Timeout: return "timeout";
    case PrlpStatus::Rejected: return "rejected";
    case PrlpStatus::Numerical: return "numerical";
  }
  return "?";
}

Prlp::Prlp(const PointRayCollection& coll, int dim, PrlpOptions opt) : n_(dim), opt_(opt) {
  if (coll.points.empty() && coll.rays.empty()) throw std::invalid_argument("point-ray collection is empty");
  for (const auto& p : coll.points) points_.push_back(p.coords);
  for (const auto& r : coll.rays) rays_.push_back(r.coords);
  dual_.rowLower.assign(n_, 0.0);
  dual_.rowUpper.assign(n_, 0.0);
  for (const auto& p : points_) dual_.addCol(-1.0, 0.0, kInf, p);
  for (const auto& r : rays_) dual_.addCol(0.0, 0.0, kInf, r);
  minCoord_.assign(n_, 0.0);
  for (const auto* set : {&points_, &rays_})
    for (const auto& e : *set)
      for (std::size_t k = 0; k < e.idx.size(); ++k) minCoord_[e.idx[k]] = std::min(minCoord_[e.idx[k]], e.val[k]);
}

double Prlp::maxViolation(const Vec& alpha) const {
  double v = 0.0;
  for (const auto& p : points_) v = std::max(v, 1.0 - p.dot(alpha));
  for (const auto& r : rays_) v = std::max(v, -r.dot(alpha));
  return v;
}

PrlpSolve Prlp::solve(const Vec& w) {
  PrlpSolve out;
  dual_.rowLower = w;
  dual_.rowUpper = w;
  LpOptions lo;
  lo.timeLimit = opt_.objTimeLimit;
  SimplexSolver solver(lo);
  LpResult r = warm_.empty() ? solver.solve(dual_) : solver.solve(dual_, warm_);
  out.iterations = r.iterations;
  switch (r.status) {
    case LpStatus::Optimal: break;
    case LpStatus::Infeasible: out.status = PrlpStatus::Unbounded; return out;
    case LpStatus::Unbounded: out.status = PrlpStatus::Infeasible; return out;
    case LpStatus::TimeLimit:
    case LpStatus::IterationLimit: out.status = PrlpStatus::Timeout; return out;
    default: out.status = PrlpStatus::Numerical; return out;
  }
  warm_ = r.basis;
  out.alpha.resize(n_);
  for (int i = 0; i < n_; ++i) out.alpha[i] = -r.rowDual[i];
  out.objective = dot(w, out.alpha);
  double mx = 0.0;
  for (double a : out.alpha) mx = std::max(mx, std::fabs(a));
  if (mx <= kEps) {
    out.status = PrlpStatus::Rejected;
    out.reason = "zero";
  } else if (dynamism(out.alpha) > opt_.maxDynamism) {
    out.status = PrlpStatus::Rejected;
    out.reason = "dynamism";
  } else if (maxViolation(out.alpha) > kEps) {
    out.status = PrlpStatus::Rejected;
    out.reason = "feasibility";
  } else {
    out.status = PrlpStatus::Optimal;
  }
  return out;
}

bool Prlp::checkBoundedness(const Vec& w) const {
  LpProblem cone;
  cone.rowLower = w;
  cone.rowUpper = w;
  for (const auto& p : points_) cone.addCol(0.0, 0.0, kInf, p);
  for (const auto& r : rays_) cone.addCol(0.0, 0.0, kInf, r);
  LpResult res = SimplexSolver().solve(cone);
  return res.status == LpStatus::Optimal;
}

int Prlp::quickBoundedness(const Vec& w) const {
  double scale = 0.0;
  for (double v : w) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return 1;
  for (int j = 0; j < n_; ++j)
    if (w[j] < -kEps * scale && minCoord_[j] >= 0.0) return 0;
  SparseVec sw = SparseVec::fromDense(w);
  for (const auto* set : {&points_, &rays_})
    for (const auto& e : *set) {
      if (e.idx.size() != sw.idx.size()) continue;
      double ratio = -1.0;
      bool ok = true;
      for (std::size_t k = 0; k < e.idx.size() && ok; ++k) {
        const double v = e.get(sw.idx[k]);
        if (v == 0.0) {
          ok = false;
          break;
        }
        const double q = sw.val[k] / v;
        if (q <= 0.0 || (ratio >= 0.0 && std::fabs(q - ratio) > kEps * std::max(1.0, q))) ok = false;
        ratio = q;
      }
      if (ok) return 1;
    }
  return -1;
}

LpStatus Prlp::solvePrimalForm(const Vec& w, Vec* alpha) const {
  LpProblem lp;
  for (int j = 0; j < n_; ++j) lp.addCol(w[j], -kInf, kInf);
  for (const auto& p : points_) lp.addRow(p, 1.0, kInf);
  for (const auto& r : rays_) lp.addRow(r, 0.0, kInf);
  LpResult res = SimplexSolver().solve(lp);
  if (alpha && res.status == LpStatus::Optimal) *alpha = res.x;
  return res.status;
}

namespace {

bool sameVec(const Vec& a, const Vec& b) {
  double scale = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) scale = std::max({scale, std::fabs(a[i]), std::fabs(b[i])});
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > kEps * scale) return false;
  return true;
}

void pushUnique(std::vector<Vec>& out, Vec v) {
  for (const auto& o : out)
    if (sameVec(o, v)) return;
  out.push_back(std::move(v));
}

}  // namespace

bool sameCut(const Vec& a, const Vec& b) { return a.size() == b.size() && sameVec(a, b); }

std::vector<Vec> genObjectives(Family f, const ObjectiveContext& ctx, int dim) {
  std::vector<Vec> out;
  switch (f) {
    case Family::R:
      for (int j = 0; j < dim; ++j) {
        Vec e(dim, 0.0);
        e[j] = 1.0;
        out.push_back(std::move(e));
      }
      break;
    case Family::V:
      for (const auto& v : ctx.coll->vertices) {
        Vec e(dim, 0.0);
        e[v.ray] = v.distance;
        pushUnique(out, std::move(e));
      }
      break;
    case Family::T: {
      const auto& pts = ctx.coll->points;
      std::vector<int> order(pts.size());
      std::iota(order.begin(), order.end(), 0);
      std::vector<double> cost(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) cost[i] = pts[i].coords.dot(ctx.rayCosts);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cost[a] < cost[b]; });
      const int cap = std::max(0, ctx.pointBudget);
      std::vector<int> pick;
      if (static_cast<int>(order.size()) <= cap) {
        pick = order;
      } else {
        const int head = cap / 2;
        for (int i = 0; i < head; ++i) pick.push_back(order[i]);
        const int rest = static_cast<int>(order.size()) - head;
        const int want = cap - head;
        for (int k = 0; k < want; ++k) pick.push_back(order[head + static_cast<int>((static_cast<long long>(k) * rest) / want)]);
      }
      for (int i : pick) pushUnique(out, pts[i].coords.toDense(dim));
      break;
    }
    case Family::S:
      for (const auto& p : ctx.shared) pushUnique(out, p.toDense(dim));
      break;
  }
  return out;
}

std::vector<std::vector<SparseVec>> routeSharedPoints(const std::vector<const PointRayCollection*>& colls) {
  std::vector<std::vector<SparseVec>> out(colls.size());
  for (std::size_t i = 0; i < colls.size(); ++i) {
    for (const auto& p : colls[i]->points) {
      int best = -1;
      double bestT = -1.0;
      for (std::size_t j = 0; j < colls.size(); ++j) {
        const SplitGeometry& g = colls[j]->geometry();
        for (std::size_t t = 0; t < g.split().terms.size(); ++t) {
          const double rate = g.rate(static_cast<int>(t), p.edgeDir);
          if (std::fabs(rate) <= 1e-12) continue;
          const double v0 = g.value(static_cast<int>(t), p.edgeStart);
          for (double bound : {g.split().terms[t].lo, g.split().terms[t].hi}) {
            const double cross = (bound - v0) / rate;
            if (cross < -kEps || cross > p.edgeLength) continue;
            if (cross > bestT + kEps) {
              bestT = cross;
              best = static_cast<int>(j);
            }
          }
        }
      }
      if (best < 0 || best == static_cast<int>(i)) continue;
      if (colls[best]->geometry().strictlyInside(p.coords)) out[best].push_back(p.coords);
    }
  }
  return out;
}

}  // namespace gic
