/**
 * @file cone.cpp
 * @brief LP optimum, corner cone and ray distances.
 */
#include "gic/cone.hpp"

#include <cstdint>
#include <cstdio>

namespace gic {

std::vector<Hyperplane> hyperplanesOf(const Instance& inst) {
  const int m = inst.numRows();
  const int n = inst.numCols();
  std::vector<Hyperplane> out;
  out.reserve(m + n);
  for (int i = 0; i < m; ++i) {
    Hyperplane h;
    h.id = i;
    h.a.assign(n, 0.0);
    for (const auto& [j, v] : inst.rows[i]) h.a[j] += v.get_d();
    h.b = inst.rhs[i].get_d();
    h.name = inst.rowNames[i];
    out.push_back(std::move(h));
  }
  for (int j = 0; j < n; ++j) {
    Hyperplane h;
    h.id = m + j;
    h.a.assign(n, 0.0);
    h.a[j] = 1.0;
    h.b = 0.0;
    h.name = "lb_" + inst.colNames[j];
    out.push_back(std::move(h));
  }
  return out;
}

LpProblem toLp(const Instance& inst, const Vec& obj) {
  LpProblem p;
  const int n = inst.numCols();
  for (int j = 0; j < n; ++j) p.addCol(obj[j], 0.0, kInf);
  for (int i = 0; i < inst.numRows(); ++i) {
    SparseVec row;
    for (const auto& [j, v] : inst.rows[i]) row.push(j, v.get_d());
    p.addRow(row, inst.rhs[i].get_d(), kInf);
  }
  return p;
}

std::string BasicSolution::basisHash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (int v : basis.head) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BasicSolution solveLp(const Instance& inst, const Vec& obj, const LpOptions& opt) {
  const LpProblem p = toLp(inst, obj);
  const LpResult r = SimplexSolver(opt).solve(p);
  BasicSolution s;
  s.status = r.status;
  s.objective = r.objective;
  s.x = r.x;
  s.basis = r.basis;
  s.reducedCost = r.reducedCost;
  s.iterations = r.iterations;
  if (r.status != LpStatus::Optimal) return s;
  const int n = inst.numCols();
  const int m = inst.numRows();
  for (int k = 0; k < n + m; ++k) {
    if (r.basis.status[k] == VarStatus::Basic) continue;
    s.tight.push_back(k < n ? m + k : k - n);
  }
  return s;
}

Cone Cone::fromSolution(const Instance& inst, const BasicSolution& sol) {
  if (!sol.optimal()) throw DegenerateBasisError("no optimal basis");
  return fromTight(hyperplanesOf(inst), sol.x, sol.tight);
}

Cone Cone::fromTight(std::vector<Hyperplane> all, const Vec& apex, const std::vector<int>& tightIds) {
  Cone c;
  c.n_ = static_cast<int>(apex.size());
  if (static_cast<int>(tightIds.size()) != c.n_)
    throw DegenerateBasisError("expected one tight hyperplane per variable");
  c.apex_ = apex;
  c.hp_ = std::move(all);
  c.tight_ = tightIds;
  c.build();
  return c;
}

void Cone::build() {
  const int n = n_;
  DenseMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    const Vec& a = hp_[tight_[j]].a;
    for (int k = 0; k < n; ++k) m(j, k) = a[k];
  }
  if (!invertInPlace(m, 1e-10)) throw DegenerateBasisError("tight hyperplane system is singular");
  rays_ = std::move(m);  // columns of M^{-1} satisfy M r^j = e_j
  const int nh = numHyperplanes();
  coneHp_.assign(nh, false);
  for (int h : tight_) coneHp_[h] = true;
  g_.assign(nh, 0.0);
  w_ = DenseMatrix(nh, n);
  for (int h = 0; h < nh; ++h) {
    const Vec& a = hp_[h].a;
    g_[h] = dot(a, apex_) - hp_[h].b;
    double* wr = w_.row(h);
    for (int k = 0; k < n; ++k) {
      const double ak = a[k];
      if (ak == 0.0) continue;
      const double* rr = rays_.row(k);
      for (int j = 0; j < n; ++j) wr[j] += ak * rr[j];
    }
    for (int j = 0; j < n; ++j)
      if (std::fabs(wr[j]) < 1e-12) wr[j] = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    const int h = tight_[j];
    g_[h] = 0.0;
    double* wr = w_.row(h);
    for (int k = 0; k < n; ++k) wr[k] = (k == j) ? 1.0 : 0.0;
  }
}

double Cone::distance(int h, int j) const {
  const double w = w_(h, j);
  if (w >= -kEps) return kInf;
  return std::max(0.0, g_[h]) / -w;
}

double Cone::signedDistance(int h, int j) const {
  const double w = w_(h, j);
  if (std::fabs(w) <= kEps) return kInf;
  return -g_[h] / w;
}

double Cone::hyperplaneValue(int h, const SparseVec& s) const {
  const double* wr = w_.row(h);
  double v = g_[h];
  for (std::size_t k = 0; k < s.idx.size(); ++k) v += wr[s.idx[k]] * s.val[k];
  return v;
}

double Cone::hyperplaneRate(int h, const SparseVec& d) const {
  const double* wr = w_.row(h);
  double v = 0.0;
  for (std::size_t k = 0; k < d.idx.size(); ++k) v += wr[d.idx[k]] * d.val[k];
  return v;
}

Vec Cone::toStructural(const SparseVec& s) const {
  Vec x = apex_;
  for (std::size_t t = 0; t < s.idx.size(); ++t)
    for (int k = 0; k < n_; ++k) x[k] += rays_(k, s.idx[t]) * s.val[t];
  return x;
}

Vec Cone::directionToStructural(const SparseVec& d) const {
  Vec x(n_, 0.0);
  for (std::size_t t = 0; t < d.idx.size(); ++t)
    for (int k = 0; k < n_; ++k) x[k] += rays_(k, d.idx[t]) * d.val[t];
  return x;
}

Vec Cone::toNonbasic(const Vec& x) const {
  Vec s(n_);
  for (int j = 0; j < n_; ++j) {
    const Hyperplane& h = hp_[tight_[j]];
    s[j] = dot(h.a, x) - h.b;
  }
  return s;
}

Vec Cone::reducedCosts(const Vec& c) const {
  Vec out(n_, 0.0);
  for (int k = 0; k < n_; ++k) {
    if (c[k] == 0.0) continue;
    const double* rr = rays_.row(k);
    for (int j = 0; j < n_; ++j) out[j] += c[k] * rr[j];
  }
  return out;
}

Inequality structuralImage(const Cone& cone, const Vec& alpha, double beta) {
  // sum_j alpha_j (a_{N_j}^T x - b_{N_j}) >= beta
  Inequality ineq;
  ineq.pi.assign(cone.dim(), 0.0);
  ineq.pi0 = beta;
  for (int j = 0; j < cone.dim(); ++j) {
    if (alpha[j] == 0.0) continue;
    const Hyperplane& h = cone.hyperplanes()[cone.rayHyperplane(j)];
    for (int k = 0; k < cone.dim(); ++k) ineq.pi[k] += alpha[j] * h.a[k];
    ineq.pi0 += alpha[j] * h.b;
  }
  return ineq;
}

}  // namespace gic
