/**
 * @file eval.cpp
 * @brief Gap evaluation by row generation, cut selection, rounds, grids and CSV output.
 */
#include "gic/eval.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "gic/rational.hpp"

namespace gic {

namespace {

double infNorm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double scaledSlack(const Inequality& q, const Vec& x) { return -q.violationAt(x) / std::max(1.0, infNorm(q.pi)); }

}  // namespace

CutLpResult solveWithCuts(const Instance& inst, const std::vector<Inequality>& cuts, const std::vector<bool>& isSic) {
  CutLpResult out;
  LpProblem lp = toLp(inst, inst.objVec());
  SimplexSolver solver;
  LpResult r = solver.solve(lp);
  std::vector<bool> added(cuts.size(), false);
  const int n = inst.numCols();
  while (r.status == LpStatus::Optimal) {
    ++out.passes;
    std::vector<std::pair<double, int>> viol;
    for (std::size_t i = 0; i < cuts.size(); ++i)
      if (!added[i]) {
        const double s = scaledSlack(cuts[i], r.x);
        if (s < -1e-9) viol.emplace_back(s, static_cast<int>(i));
      }
    if (viol.empty()) break;
    std::sort(viol.begin(), viol.end());
    if (viol.size() > 50) viol.resize(50);
    WarmStart w = r.basis;
    for (auto [s, i] : viol) {
      (void)s;
      added[i] = true;
      lp.addRow(SparseVec::fromDense(cuts[i].pi), cuts[i].pi0, kInf);
      w.head.push_back(n + lp.numRows() - 1);
      w.status.push_back(VarStatus::Basic);
      ++out.rowsAdded;
    }
    r = solver.solve(lp, w);
  }
  out.status = r.status;
  if (r.status != LpStatus::Optimal) return out;
  out.x = r.x;
  out.value = inst.reportObjective(r.objective);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (scaledSlack(cuts[i], r.x) >= kEps) continue;
    ++out.active;
    if (!isSic.empty() && isSic[i])
      ++out.activeSic;
    else
      ++out.activeGic;
  }
  return out;
}

double percentGap(double optLp, double optIp, double optCuts) {
  const double den = optIp - optLp;
  if (std::fabs(den) < 1e-12) return std::nan("");
  return 100.0 * (optCuts - optLp) / den;
}

std::vector<int> selectCuts(const std::vector<Cut>& cuts, int limit) {
  std::vector<int> chosen;
  std::vector<double> orth(cuts.size(), 1.0);
  std::vector<bool> used(cuts.size(), false), dead(cuts.size(), false);
  std::vector<double> nrm(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) nrm[i] = norm2(cuts[i].structural.pi);
  while (static_cast<int>(chosen.size()) < limit) {
    int best = -1;
    double bestScore = -kInf;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (used[i] || dead[i]) continue;
      const double s = cuts[i].efficacy + orth[i];
      if (s > bestScore) {
        bestScore = s;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    used[best] = true;
    chosen.push_back(best);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (used[i] || dead[i]) continue;
      const double denom = nrm[i] * nrm[best];
      const double cosv = denom > 0 ? dot(cuts[i].structural.pi, cuts[best].structural.pi) / denom : 1.0;
      orth[i] = std::min(orth[i], 1.0 - std::fabs(cosv));
      if (orth[i] <= kEps) dead[i] = true;
    }
  }
  return chosen;
}

Instance appendCuts(const Instance& inst, const std::vector<Cut>& cuts) {
  Instance out = inst;
  for (const auto& c : cuts) {
    QSparseRow row;
    for (std::size_t j = 0; j < c.structural.pi.size(); ++j)
      if (c.structural.pi[j] != 0.0) row.emplace_back(static_cast<int>(j), fromDouble(c.structural.pi[j]));
    out.rows.push_back(std::move(row));
    out.sense.push_back(RowSense::GE);
    out.rhs.push_back(fromDouble(c.structural.pi0));
    if (out.range.size() + 1 == out.rows.size()) out.range.push_back(std::nullopt);
    out.rowNames.push_back("cut" + std::to_string(out.rows.size()));
    if (out.rowOrigin.size() + 1 == out.rows.size()) out.rowOrigin.push_back(-1);
  }
  return out;
}

namespace {

struct RoundOutcome {
  std::vector<Cut> sics;
  std::vector<Cut> gics;
  GenerationStats stats;
  bool ok = false;
  std::string status = "ok";
};

RoundOutcome runRound(const Instance& inst, const GicConfig& cfg, bool sicOnly) {
  RoundOutcome o;
  BasicSolution sol = solveLp(inst, inst.objVec());
  if (!sol.optimal()) {
    o.status = "lp_" + statusName(sol.status);
    return o;
  }
  try {
    Cone cone = Cone::fromSolution(inst, sol);
    if (sicOnly) {
      o.sics = generateSics(inst, cone);
    } else {
      GenerationResult g = generateCuts(inst, cone, cfg);
      o.sics = std::move(g.sics);
      o.gics = std::move(g.gics);
      o.stats = std::move(g.stats);
    }
    o.ok = true;
    if (fractionalIndices(sol.x, inst.integer).empty()) o.status = "integral";
  } catch (const DegenerateBasisError& e) {
    o.status = "degenerate_basis";
  }
  return o;
}

std::vector<Inequality> structurals(const std::vector<Cut>& a) {
  std::vector<Inequality> out;
  for (const auto& c : a) out.push_back(c.structural);
  return out;
}

}  // namespace

EvalResult evaluateConfig(const Instance& inst, const GicConfig& cfg, const KnownOptima::Entry* optima, int rounds) {
  const auto t0 = std::chrono::steady_clock::now();
  EvalResult r;
  r.instance = inst.name;
  r.config = cfg.label();
  r.rounds = rounds;
  const bool sicOnlyCfg = !cfg.tilting && cfg.kh == 0;
  if (sicOnlyCfg) r.status = "sic_only";
  BasicSolution base = solveLp(inst, inst.objVec());
  if (!base.optimal()) {
    r.status = "lp_" + statusName(base.status);
    return r;
  }
  r.optLp = inst.reportObjective(base.objective);

  Instance sicInst = inst, gicInst = inst;
  std::vector<Cut> allSics, allGics, allGicRoundSics;
  for (int round = 1; round <= rounds; ++round) {
    RoundOutcome s = runRound(sicInst, cfg, true);
    RoundOutcome g = sicOnlyCfg ? s : runRound(gicInst, cfg, false);
    if (!s.ok || !g.ok) {
      r.status = round == 1 ? (s.ok ? g.status : s.status) : "round2_" + (s.ok ? g.status : s.status);
      if (round == 1) return r;
      break;
    }
    if (round == 1) {
      r.stats = g.stats;
      r.sicCuts = s.sics;
      r.gicCuts = g.gics;
    }
    allSics.insert(allSics.end(), s.sics.begin(), s.sics.end());
    allGicRoundSics.insert(allGicRoundSics.end(), g.sics.begin(), g.sics.end());
    allGics.insert(allGics.end(), g.gics.begin(), g.gics.end());
    if (round < rounds) {
      sicInst = appendCuts(sicInst, s.sics);
      std::vector<Cut> both = g.sics;
      both.insert(both.end(), g.gics.begin(), g.gics.end());
      gicInst = appendCuts(gicInst, both);
    }
    if (round == rounds) {
      CutLpResult ls = solveWithCuts(sicInst, structurals(s.sics), std::vector<bool>(s.sics.size(), true));
      std::vector<Inequality> both = structurals(g.sics);
      std::vector<bool> flags(g.sics.size(), true);
      for (const auto& c : g.gics) {
        both.push_back(c.structural);
        flags.push_back(false);
      }
      CutLpResult lg = solveWithCuts(gicInst, both, flags);
      if (ls.status != LpStatus::Optimal || lg.status != LpStatus::Optimal) {
        r.status = "cut_lp_" + statusName(ls.status != LpStatus::Optimal ? ls.status : lg.status);
        return r;
      }
      r.optSic = ls.value;
      r.optGic = lg.value;
      r.activeSics = lg.activeSic;
      r.activeGics = lg.activeGic;
    }
  }
  r.sics = static_cast<int>(allSics.size());
  r.gics = static_cast<int>(allGics.size());
  r.points = r.stats.totalPoints;
  r.rays = r.stats.totalRays;
  r.pctFinal = r.stats.totalPoints ? 100.0 * r.stats.finalPoints / r.stats.totalPoints : 0.0;
  r.pctParallel = r.stats.totalRays ? 100.0 * r.stats.parallelRays / r.stats.totalRays : 0.0;
  r.activations = r.stats.activations;
  r.prlpSolves = r.stats.prlpSolves;
  if (optima && std::fabs(optima->optIp - r.optLp) > 1e-9) {
    r.evaluable = true;
    r.optIp = optima->optIp;
    r.gapSic = percentGap(r.optLp, r.optIp, r.optSic);
    r.gapGicPlusSic = percentGap(r.optLp, r.optIp, r.optGic);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<GicConfig> makeGrid(const std::string& name) {
  std::vector<GicConfig> out;
  const Criterion crits[] = {Criterion::H1, Criterion::H2, Criterion::H3};
  const Family fams[] = {Family::S, Family::T, Family::R, Family::V};
  if (name == "table2") {
    for (Criterion c : crits)
      for (int mask = 1; mask < 16; ++mask)
        for (bool tilt : {false, true})
          for (int kh = 0; kh <= 4; ++kh) {
            GicConfig g;
            g.criterion = c;
            g.families.clear();
            for (int b = 0; b < 4; ++b)
              if (mask >> b & 1) g.families.push_back(fams[b]);
            g.tilting = tilt;
            g.kh = kh;
            out.push_back(g);
          }
  } else if (name == "desk") {
    for (Criterion c : crits)
      for (bool tilt : {false, true})
        for (int kh : {0, 1, 2}) {
          if (!tilt && kh == 0) continue;
          GicConfig g;
          g.criterion = c;
          g.tilting = tilt;
          g.kh = kh;
          out.push_back(g);
        }
  } else if (name == "single") {
    out.push_back(GicConfig{});
  } else {
    throw std::invalid_argument("unknown grid '" + name + "'");
  }
  return out;
}

QuadraticFit fitQuadratic(const std::vector<double>& x, const std::vector<double>& y) {
  QuadraticFit f;
  f.samples = static_cast<int>(x.size());
  if (x.size() < 3) return f;
  Eigen::MatrixXd a(x.size(), 3);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(i, 0) = x[i] * x[i];
    a(i, 1) = x[i];
    a(i, 2) = 1.0;
    b(i) = y[i];
  }
  Eigen::Vector3d coef = a.colPivHouseholderQr().solve(b);
  f.a = coef(0);
  f.b = coef(1);
  f.c = coef(2);
  const double mean = b.mean();
  const double ssTot = (b.array() - mean).square().sum();
  const double ssRes = (a * coef - b).squaredNorm();
  f.r2 = ssTot > 0 ? 1.0 - ssRes / ssTot : 1.0;
  return f;
}

void writeResultsHeader(std::ostream& os) {
  os << "instance,config,rounds,status,opt_lp,opt_ip,opt_sic,opt_gic,gap_sic,gap_gic,sics,active_sics,gics,"
        "active_gics,points,rays,pct_final,pct_parallel,activations,prlp_solves,seconds\n";
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void writeResultsRow(std::ostream& os, const EvalResult& r) {
  os << r.instance << ',' << r.config << ',' << r.rounds << ',' << r.status << ',' << num(r.optLp) << ','
     << (r.evaluable ? num(r.optIp) : "") << ',' << num(r.optSic) << ',' << num(r.optGic) << ','
     << (r.evaluable ? num(r.gapSic) : "") << ',' << (r.evaluable ? num(r.gapGicPlusSic) : "") << ',' << r.sics << ','
     << r.activeSics << ',' << r.gics << ',' << r.activeGics << ',' << r.points << ',' << r.rays << ','
     << num(r.pctFinal) << ',' << num(r.pctParallel) << ',' << r.activations << ',' << r.prlpSolves << ','
     << num(r.seconds) << '\n';
}

void writeGrowthHeader(std::ostream& os) { os << "instance,config,algorithm,split,n,k_r,k_h,point_count,ray_count,activation_rays\n"; }

void writeGrowthRows(std::ostream& os, const EvalResult& r) {
  for (const auto& g : r.stats.growth)
    os << r.instance << ',' << r.config << ',' << g.algorithm << ',' << g.splitVar << ',' << g.n << ',' << g.kr << ','
       << g.kh << ',' << g.points << ',' << g.rays << ','
       << g.activationRays << '\n';
}

}  // namespace gic
