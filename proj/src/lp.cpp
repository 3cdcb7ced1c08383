/**
 * @file lp.cpp
 * @brief Dense revised simplex with explicit basis inverse.
 */
#include "gic/lp.hpp"

#include <algorithm>
#include <chrono>

namespace gic {

int LpProblem::addCol(double cost, double lo, double up, const SparseVec& column) {
  obj.push_back(cost);
  colLower.push_back(lo);
  colUpper.push_back(up);
  cols.push_back(column);
  return numCols++;
}

int LpProblem::addRow(const SparseVec& row, double lo, double up) {
  const int i = numRows();
  for (std::size_t k = 0; k < row.idx.size(); ++k) {
    if (row.val[k] == 0.0) continue;
    cols[row.idx[k]].push(i, row.val[k]);
  }
  rowLower.push_back(lo);
  rowUpper.push_back(up);
  return i;
}

DenseMatrix LpProblem::denseRows() const {
  DenseMatrix a(numRows(), numCols);
  for (int j = 0; j < numCols; ++j)
    for (std::size_t k = 0; k < cols[j].idx.size(); ++k) a(cols[j].idx[k], j) += cols[j].val[k];
  return a;
}

std::string statusName(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
    case LpStatus::TimeLimit: return "time_limit";
    case LpStatus::Numerical: return "numerical";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

class Engine {
 public:
  Engine(const LpProblem& p, const LpOptions& o)
      : p_(p), o_(o), n_(p.numCols), m_(p.numRows()), start_(Clock::now()) {
    const int total = n_ + 2 * m_;
    lo_.assign(total, 0.0);
    up_.assign(total, 0.0);
    cost_.assign(total, 0.0);
    x_.assign(total, 0.0);
    st_.assign(total, VarStatus::AtLower);
    dead_.assign(total, false);
    pos_.assign(total, -1);
    artSign_.assign(m_, 1.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = p.colLower[j];
      up_[j] = p.colUpper[j];
    }
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + i] = p.rowLower[i];
      up_[n_ + i] = p.rowUpper[i];
      dead_[n_ + m_ + i] = true;  // artificials start unused
    }
  }

  LpResult run(const WarmStart* warm) {
    LpStatus s = LpStatus::Numerical;
    bool done = false;
    if (warm && !warm->empty()) done = tryWarm(*warm, s);
    if (!done) s = cold();
    return finish(s);
  }

 private:
  const LpProblem& p_;
  const LpOptions& o_;
  int n_, m_;
  Vec lo_, up_, cost_, x_;
  std::vector<VarStatus> st_;
  std::vector<bool> dead_;
  std::vector<int> head_, pos_;
  Vec artSign_;
  DenseMatrix binv_;
  int sinceRefactor_ = 0;
  int iters_ = 0;
  bool usedDual_ = false;
  Clock::time_point start_;
  int unboundedVar_ = -1;
  int unboundedDir_ = 0;
  Vec unboundedAlpha_;

  bool isArt(int k) const { return k >= n_ + m_; }

  template <class F>
  void forCol(int k, F&& f) const {
    if (k < n_) {
      const SparseVec& c = p_.cols[k];
      for (std::size_t t = 0; t < c.idx.size(); ++t) f(c.idx[t], c.val[t]);
    } else if (k < n_ + m_) {
      f(k - n_, -1.0);
    } else {
      f(k - n_ - m_, artSign_[k - n_ - m_]);
    }
  }

  void ftran(int k, Vec& out) const {
    out.assign(m_, 0.0);
    forCol(k, [&](int i, double v) {
      for (int r = 0; r < m_; ++r) out[r] += binv_(r, i) * v;
    });
  }

  double rowDot(const double* rho, int k) const {
    double s = 0.0;
    forCol(k, [&](int i, double v) { s += rho[i] * v; });
    return s;
  }

  bool timeUp() const {
    if (isInf(o_.timeLimit)) return false;
    return std::chrono::duration<double>(Clock::now() - start_).count() > o_.timeLimit;
  }

  double nonbasicValue(int k) const {
    switch (st_[k]) {
      case VarStatus::AtLower: return lo_[k];
      case VarStatus::AtUpper: return up_[k];
      default: return 0.0;
    }
  }

  void setNonbasicStatus(int k, VarStatus want) {
    if (want == VarStatus::AtUpper && !isInf(up_[k])) {
      st_[k] = VarStatus::AtUpper;
    } else if (want == VarStatus::AtLower && !isInf(lo_[k])) {
      st_[k] = VarStatus::AtLower;
    } else if (!isInf(lo_[k])) {
      st_[k] = VarStatus::AtLower;
    } else if (!isInf(up_[k])) {
      st_[k] = VarStatus::AtUpper;
    } else {
      st_[k] = VarStatus::Free;
    }
    x_[k] = nonbasicValue(k);
  }

  bool refactor() {
    DenseMatrix b(m_, m_);
    for (int r = 0; r < m_; ++r) forCol(head_[r], [&](int i, double v) { b(i, r) += v; });
    if (!invertInPlace(b, 1e-13)) return false;
    binv_ = std::move(b);
    sinceRefactor_ = 0;
    computeBasics();
    return true;
  }

  void computeBasics() {
    Vec rhs(m_, 0.0);
    const int total = n_ + 2 * m_;
    for (int k = 0; k < total; ++k) {
      if (pos_[k] >= 0 || (dead_[k] && isArt(k))) continue;
      const double v = x_[k];
      if (v == 0.0) continue;
      forCol(k, [&](int i, double a) { rhs[i] -= a * v; });
    }
    for (int r = 0; r < m_; ++r) {
      double s = 0.0;
      const double* row = binv_.row(r);
      for (int i = 0; i < m_; ++i) s += row[i] * rhs[i];
      x_[head_[r]] = s;
    }
  }

  void duals(Vec& y) const {
    y.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = cost_[head_[r]];
      if (c == 0.0) continue;
      const double* row = binv_.row(r);
      for (int i = 0; i < m_; ++i) y[i] += c * row[i];
    }
  }

  double reduced(int k, const Vec& y) const {
    double d = cost_[k];
    forCol(k, [&](int i, double v) { d -= y[i] * v; });
    return d;
  }

  bool candidate(int k) const {
    if (pos_[k] >= 0 || dead_[k]) return false;
    return lo_[k] != up_[k];
  }

  void pivot(int r, int q, const Vec& alpha) {
    const int leaving = head_[r];
    const double piv = alpha[r];
    double* prow = binv_.row(r);
    for (int i = 0; i < m_; ++i) prow[i] /= piv;
    for (int rr = 0; rr < m_; ++rr) {
      if (rr == r) continue;
      const double f = alpha[rr];
      if (f == 0.0) continue;
      double* row = binv_.row(rr);
      for (int i = 0; i < m_; ++i) row[i] -= f * prow[i];
    }
    pos_[leaving] = -1;
    head_[r] = q;
    pos_[q] = r;
    st_[q] = VarStatus::Basic;
    if (isArt(leaving)) {
      dead_[leaving] = true;
      lo_[leaving] = up_[leaving] = 0.0;
      x_[leaving] = 0.0;
      st_[leaving] = VarStatus::AtLower;
    }
    ++sinceRefactor_;
    if (sinceRefactor_ >= o_.refactorEvery) refactor();
  }

  /** Primal simplex on the current cost vector. */
  LpStatus primal() {
    Vec y, alpha;
    int degenerate = 0;
    const int total = n_ + 2 * m_;
    while (true) {
      if (iters_ >= o_.maxIterations) return LpStatus::IterationLimit;
      if (timeUp()) return LpStatus::TimeLimit;
      const bool bland = degenerate > o_.degenerateBeforeBland;
      duals(y);
      int q = -1;
      double best = 0.0;
      double dq = 0.0;
      for (int k = 0; k < total; ++k) {
        if (!candidate(k)) continue;
        const double d = reduced(k, y);
        bool ok = false;
        switch (st_[k]) {
          case VarStatus::AtLower: ok = d < -o_.dualTol; break;
          case VarStatus::AtUpper: ok = d > o_.dualTol; break;
          case VarStatus::Free: ok = std::fabs(d) > o_.dualTol; break;
          default: break;
        }
        if (!ok) continue;
        if (bland) {
          q = k;
          dq = d;
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          q = k;
          dq = d;
        }
      }
      if (q < 0) return LpStatus::Optimal;
      const double dir = dq < 0 ? 1.0 : -1.0;
      ftran(q, alpha);

      // Harris two-pass ratio test; basic r moves by -dir * alpha_r per unit step.
      double tMax = kInf;
      for (int r = 0; r < m_; ++r) {
        const double rate = -dir * alpha[r];
        if (std::fabs(alpha[r]) <= o_.pivotTol) continue;
        const int b = head_[r];
        if (rate < 0 && !isInf(lo_[b]))
          tMax = std::min(tMax, (x_[b] - lo_[b] + o_.primalTol) / -rate);
        else if (rate > 0 && !isInf(up_[b]))
          tMax = std::min(tMax, (up_[b] - x_[b] + o_.primalTol) / rate);
      }
      const double flip = (!isInf(lo_[q]) && !isInf(up_[q])) ? up_[q] - lo_[q] : kInf;
      int leave = -1;
      double t = kInf;
      if (!isInf(tMax)) {
        double bestPiv = -1.0;
        int bestIdx = -1;
        for (int r = 0; r < m_; ++r) {
          const double rate = -dir * alpha[r];
          if (std::fabs(alpha[r]) <= o_.pivotTol) continue;
          const int b = head_[r];
          double ratio;
          if (rate < 0 && !isInf(lo_[b]))
            ratio = (x_[b] - lo_[b]) / -rate;
          else if (rate > 0 && !isInf(up_[b]))
            ratio = (up_[b] - x_[b]) / rate;
          else
            continue;
          if (ratio > tMax) continue;
          if (bland) {
            if (leave < 0 || ratio < t - 1e-12 || (ratio <= t + 1e-12 && b < bestIdx)) {
              leave = r;
              t = ratio;
              bestIdx = b;
            }
          } else if (std::fabs(alpha[r]) > bestPiv) {
            bestPiv = std::fabs(alpha[r]);
            leave = r;
            t = ratio;
          }
        }
        t = std::max(t, 0.0);
      }
      if (flip <= t) {
        t = flip;
        leave = -1;
      }
      if (isInf(t)) {
        unboundedVar_ = q;
        unboundedDir_ = static_cast<int>(dir);
        unboundedAlpha_ = alpha;
        return LpStatus::Unbounded;
      }
      ++iters_;
      degenerate = t <= 1e-12 ? degenerate + 1 : 0;
      x_[q] += dir * t;
      for (int r = 0; r < m_; ++r) x_[head_[r]] -= dir * t * alpha[r];
      if (leave < 0) {
        st_[q] = st_[q] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
        x_[q] = nonbasicValue(q);
        continue;
      }
      const int b = head_[leave];
      const double rate = -dir * alpha[leave];
      const VarStatus hit = rate < 0 ? VarStatus::AtLower : VarStatus::AtUpper;
      pivot(leave, q, alpha);
      if (!dead_[b]) {
        st_[b] = hit;
        x_[b] = nonbasicValue(b);
      }
    }
  }

  /** Dual simplex from a dual feasible basis. */
  LpStatus dual() {
    usedDual_ = true;
    Vec y, alpha;
    int degenerate = 0;
    const int total = n_ + 2 * m_;
    while (true) {
      if (iters_ >= o_.maxIterations) return LpStatus::IterationLimit;
      if (timeUp()) return LpStatus::TimeLimit;
      const bool bland = degenerate >= o_.degenerateBeforeBland;
      int r = -1;
      double worst = o_.primalTol;
      for (int rr = 0; rr < m_; ++rr) {
        const int b = head_[rr];
        double v = 0.0;
        if (x_[b] < lo_[b] - o_.primalTol) v = lo_[b] - x_[b];
        if (x_[b] > up_[b] + o_.primalTol) v = x_[b] - up_[b];
        if (v <= o_.primalTol) continue;
        if (bland ? (r < 0 || b < head_[r]) : v > worst) {
          worst = v;
          r = rr;
        }
      }
      if (r < 0) return LpStatus::Optimal;
      const int b = head_[r];
      const bool below = x_[b] < lo_[b];
      const double target = below ? lo_[b] : up_[b];
      duals(y);
      const double* rho = binv_.row(r);
      // Basic r changes by -alpha_rk * delta_k. Below: need increase.
      int q = -1;
      double bestRatio = kInf;
      double bestPiv = 0.0;
      double tMax = kInf;
      std::vector<std::pair<int, double>> elig;
      for (int k = 0; k < total; ++k) {
        if (!candidate(k)) continue;
        const double a = rowDot(rho, k);
        if (std::fabs(a) <= o_.pivotTol) continue;
        const double want = below ? -a : a;  // sign of change in x_b per unit increase of x_k
        bool ok = false;
        switch (st_[k]) {
          case VarStatus::AtLower: ok = want > 0; break;
          case VarStatus::AtUpper: ok = want < 0; break;
          case VarStatus::Free: ok = true; break;
          default: break;
        }
        if (!ok) continue;
        const double d = reduced(k, y);
        elig.emplace_back(k, a);
        tMax = std::min(tMax, (std::fabs(d) + o_.dualTol) / std::fabs(a));
      }
      for (const auto& [k, a] : elig) {
        const double d = reduced(k, y);
        const double ratio = std::fabs(d) / std::fabs(a);
        if (ratio > tMax) continue;
        if (bland) {
          if (q < 0 || ratio < bestRatio - 1e-12 || (ratio <= bestRatio + 1e-12 && k < q)) {
            bestPiv = std::fabs(a);
            bestRatio = ratio;
            q = k;
          }
          continue;
        }
        if (std::fabs(a) > bestPiv || (std::fabs(a) == bestPiv && ratio < bestRatio)) {
          bestPiv = std::fabs(a);
          bestRatio = ratio;
          q = k;
        }
      }
      if (q < 0) return LpStatus::Infeasible;
      ftran(q, alpha);
      if (std::fabs(alpha[r]) <= o_.pivotTol) return LpStatus::Numerical;
      const double delta = (x_[b] - target) / alpha[r];
      ++iters_;
      degenerate = bestRatio <= 1e-12 ? degenerate + 1 : 0;
      x_[q] += delta;
      for (int rr = 0; rr < m_; ++rr) x_[head_[rr]] -= delta * alpha[rr];
      pivot(r, q, alpha);
      if (!dead_[b]) {
        st_[b] = below ? VarStatus::AtLower : VarStatus::AtUpper;
        x_[b] = target;
      }
    }
  }

  bool dualFeasible() const {
    Vec y;
    duals(y);
    const int total = n_ + 2 * m_;
    for (int k = 0; k < total; ++k) {
      if (!candidate(k)) continue;
      const double d = reduced(k, y);
      if (st_[k] == VarStatus::AtLower && d < -o_.dualTol) return false;
      if (st_[k] == VarStatus::AtUpper && d > o_.dualTol) return false;
      if (st_[k] == VarStatus::Free && std::fabs(d) > o_.dualTol) return false;
    }
    return true;
  }

  bool primalFeasible() const {
    for (int r = 0; r < m_; ++r) {
      const int b = head_[r];
      if (x_[b] < lo_[b] - o_.primalTol || x_[b] > up_[b] + o_.primalTol) return false;
    }
    return true;
  }

  void usePhase2Costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = p_.obj[j];
  }

  bool tryWarm(const WarmStart& w, LpStatus& s) {
    if (static_cast<int>(w.head.size()) != m_ || static_cast<int>(w.status.size()) != n_ + m_) return false;
    head_ = w.head;
    std::fill(pos_.begin(), pos_.end(), -1);
    for (int r = 0; r < m_; ++r) {
      if (head_[r] < 0 || head_[r] >= n_ + m_ || pos_[head_[r]] >= 0) return false;
      pos_[head_[r]] = r;
    }
    for (int k = 0; k < n_ + m_; ++k) {
      if (pos_[k] >= 0) {
        st_[k] = VarStatus::Basic;
        continue;
      }
      setNonbasicStatus(k, w.status[k] == VarStatus::Basic ? VarStatus::AtLower : w.status[k]);
    }
    if (w.inverse && w.inverse->rows() == m_ && w.inverse->cols() == m_) {
      binv_ = *w.inverse;
      sinceRefactor_ = 0;
      computeBasics();
    } else if (!refactor()) {
      return false;
    }
    usePhase2Costs();
    if (primalFeasible()) {
      s = primal();
      return s != LpStatus::Numerical;
    }
    if (!dualFeasible()) return false;
    s = dual();
    if (s == LpStatus::Optimal) s = primal();
    return s != LpStatus::Numerical && s != LpStatus::IterationLimit;
  }

  LpStatus cold() {
    iters_ = std::max(iters_, 0);
    std::fill(pos_.begin(), pos_.end(), -1);
    head_.assign(m_, -1);
    for (int j = 0; j < n_; ++j) setNonbasicStatus(j, VarStatus::AtLower);
    Vec act(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      forCol(j, [&](int i, double v) { act[i] += v * x_[j]; });
    }
    bool needPhase1 = false;
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const int a = n_ + m_ + i;
      dead_[a] = true;
      lo_[a] = up_[a] = 0.0;
      x_[a] = 0.0;
      if (act[i] >= lo_[s] - o_.primalTol && act[i] <= up_[s] + o_.primalTol) {
        head_[i] = s;
        pos_[s] = i;
        st_[s] = VarStatus::Basic;
        x_[s] = act[i];
      } else {
        setNonbasicStatus(s, act[i] < lo_[s] ? VarStatus::AtLower : VarStatus::AtUpper);
        // a_i^T x - s + sign * art = 0  =>  art = (s - act) / sign
        artSign_[i] = x_[s] - act[i] >= 0 ? 1.0 : -1.0;
        dead_[a] = false;
        lo_[a] = 0.0;
        up_[a] = kInf;
        head_[i] = a;
        pos_[a] = i;
        st_[a] = VarStatus::Basic;
        needPhase1 = true;
      }
    }
    if (!refactor()) return LpStatus::Numerical;
    if (needPhase1) {
      std::fill(cost_.begin(), cost_.end(), 0.0);
      for (int i = 0; i < m_; ++i)
        if (!dead_[n_ + m_ + i]) cost_[n_ + m_ + i] = 1.0;
      const LpStatus s1 = primal();
      if (s1 != LpStatus::Optimal) return s1 == LpStatus::Unbounded ? LpStatus::Numerical : s1;
      refactor();
      double infeas = 0.0;
      for (int r = 0; r < m_; ++r)
        if (isArt(head_[r])) infeas += std::fabs(x_[head_[r]]);
      if (infeas > 1e-7) return LpStatus::Infeasible;
      for (int i = 0; i < m_; ++i) {
        const int a = n_ + m_ + i;
        lo_[a] = up_[a] = 0.0;
        if (pos_[a] < 0) dead_[a] = true;
      }
    }
    usePhase2Costs();
    return primal();
  }

  /** Pivots remaining zero-valued artificials out of the basis. */
  void driveOutArtificials() {
    const int total = n_ + m_;
    for (int r = 0; r < m_; ++r) {
      if (!isArt(head_[r])) continue;
      const double* rho = binv_.row(r);
      int q = -1;
      double best = 1e-9;
      for (int k = 0; k < total; ++k) {
        if (pos_[k] >= 0) continue;
        const double a = std::fabs(rowDot(rho, k));
        if (a > best) {
          best = a;
          q = k;
        }
      }
      if (q < 0) continue;
      Vec alpha;
      ftran(q, alpha);
      const int leaving = head_[r];
      const double delta = x_[leaving] / alpha[r];
      x_[q] += delta;
      for (int rr = 0; rr < m_; ++rr) x_[head_[rr]] -= delta * alpha[rr];
      pivot(r, q, alpha);
    }
  }

  LpResult finish(LpStatus s) {
    LpResult res;
    res.status = s;
    res.iterations = iters_;
    res.usedDual = usedDual_;
    if (s == LpStatus::Optimal) {
      driveOutArtificials();
      refactor();
    }
    res.x.assign(x_.begin(), x_.begin() + n_);
    res.rowActivity.assign(m_, 0.0);
    for (int j = 0; j < n_; ++j)
      for (std::size_t t = 0; t < p_.cols[j].idx.size(); ++t)
        res.rowActivity[p_.cols[j].idx[t]] += p_.cols[j].val[t] * x_[j];
    res.objective = 0.0;
    for (int j = 0; j < n_; ++j) res.objective += p_.obj[j] * x_[j];
    if (!head_.empty() || m_ == 0) {
      Vec y;
      usePhase2Costs();
      if (m_ > 0 && binv_.rows() == m_) duals(y);
      else y.assign(m_, 0.0);
      res.rowDual = y;
      res.reducedCost.resize(n_);
      for (int j = 0; j < n_; ++j) res.reducedCost[j] = reduced(j, y);
    }
    res.basis.head = head_;
    res.basis.status.assign(st_.begin(), st_.begin() + n_ + m_);
    if (s == LpStatus::Optimal && binv_.rows() == m_) res.basis.inverse = std::make_shared<const DenseMatrix>(binv_);
    if (s == LpStatus::Unbounded && unboundedVar_ >= 0) {
      res.ray.assign(n_, 0.0);
      if (unboundedVar_ < n_) res.ray[unboundedVar_] = unboundedDir_;
      for (int r = 0; r < m_; ++r)
        if (head_[r] < n_) res.ray[head_[r]] = -unboundedDir_ * unboundedAlpha_[r];
    }
    return res;
  }
};

}  // namespace

LpResult SimplexSolver::solve(const LpProblem& prob) const {
  Engine e(prob, opt_);
  return e.run(nullptr);
}

LpResult SimplexSolver::solve(const LpProblem& prob, const WarmStart& warm) const {
  Engine e(prob, opt_);
  return e.run(&warm);
}

}  // namespace gic
