/**
 * @file oracle_lp.cpp
 * @brief Exact active-set simplex, basis-graph enumeration, integer points and cut validation.
 */
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "gic/oracle.hpp"

namespace gic {

bool QPolyhedron::contains(const QVec& x) const {
  for (int i = 0; i < numRows(); ++i)
    if (dot(A[i], x) < b[i]) return false;
  return true;
}

std::vector<int> QPolyhedron::tightRows(const QVec& x) const {
  std::vector<int> t;
  for (int i = 0; i < numRows(); ++i)
    if (dot(A[i], x) == b[i]) t.push_back(i);
  return t;
}

QPolyhedron polyhedronOf(const Instance& inst) {
  if (!inst.standard) throw UnsupportedError("polyhedronOf expects a standard-form instance");
  QPolyhedron p;
  p.n = inst.numCols();
  for (int i = 0; i < inst.numRows(); ++i) {
    QVec a(p.n, 0);
    for (const auto& [j, v] : inst.rows[i]) a[j] += v;
    p.addRow(std::move(a), inst.rhs[i]);
  }
  for (int j = 0; j < p.n; ++j) {
    QVec a(p.n, 0);
    a[j] = 1;
    p.addRow(std::move(a), 0);
  }
  return p;
}

QPolyhedron polyhedronOf(const std::vector<Hyperplane>& hps, int n) {
  QPolyhedron p;
  p.n = n;
  for (const auto& h : hps) p.addRow(toRational(h.a), fromDouble(h.b));
  return p;
}

namespace {

constexpr long kMaxPivots = 1000000;

/** Reduced row echelon form in place; returns pivot columns. */
std::vector<int> rref(QMatrix& m, int n) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < n && r < static_cast<int>(m.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (sgn(m[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    const Rational inv = 1 / m[r][c];
    for (int k = 0; k < n; ++k) m[r][k] *= inv;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (int k = 0; k < n; ++k) m[i][k] -= f * m[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

/** Basis of {d : rows d = 0}. */
std::vector<QVec> nullspace(QMatrix rows, int n) {
  auto piv = rref(rows, n);
  std::vector<bool> isPiv(n, false);
  for (int c : piv) isPiv[c] = true;
  std::vector<QVec> out;
  for (int f = 0; f < n; ++f) {
    if (isPiv[f]) continue;
    QVec d(n, 0);
    d[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) d[piv[r]] = -rows[r][f];
    out.push_back(std::move(d));
  }
  return out;
}

QMatrix rowsOf(const QPolyhedron& p, const std::vector<int>& idx) {
  QMatrix m;
  m.reserve(idx.size());
  for (int i : idx) m.push_back(p.A[i]);
  return m;
}

void axpy(QVec& x, const Rational& t, const QVec& d) {
  for (size_t k = 0; k < x.size(); ++k) x[k] += t * d[k];
}

/** Smallest step t >= 0 along d before some row becomes violated; all rows attaining it. */
bool ratioTest(const QPolyhedron& p, const QVec& x, const QVec& d, Rational& t, std::vector<int>& ties) {
  ties.clear();
  bool found = false;
  for (int k = 0; k < p.numRows(); ++k) {
    const Rational ad = dot(p.A[k], d);
    if (sgn(ad) >= 0) continue;
    const Rational tk = (dot(p.A[k], x) - p.b[k]) / (-ad);
    if (!found || tk < t) {
      t = tk;
      ties.assign(1, k);
      found = true;
    } else if (tk == t) {
      ties.push_back(k);
    }
  }
  return found;
}

/** Pointed copy: the lineality space is fixed to zero. Returns its basis. */
QPolyhedron pointedCopy(const QPolyhedron& p, std::vector<QVec>& lineality) {
  lineality = nullspace(p.A, p.n);
  QPolyhedron q = p;
  for (const auto& d : lineality) {
    QVec neg = d;
    for (auto& v : neg) v = -v;
    q.addRow(d, 0);
    q.addRow(std::move(neg), 0);
  }
  return q;
}

enum class Walk { Vertex, Unbounded };

/**
 * Moves a feasible point to a vertex of a pointed polyhedron without increasing c^T x.
 * On Unbounded, @p ray holds an improving direction.
 */
Walk crossover(const QPolyhedron& p, QVec& x, const QVec& c, std::vector<int>& basis, QVec& ray) {
  basis.clear();
  QMatrix sel;
  for (int i : p.tightRows(x)) {
    sel.push_back(p.A[i]);
    if (rankExact(sel) == static_cast<int>(sel.size())) {
      basis.push_back(i);
      if (static_cast<int>(basis.size()) == p.n) break;
    } else {
      sel.pop_back();
    }
  }
  std::vector<int> ties;
  while (static_cast<int>(basis.size()) < p.n) {
    auto ns = nullspace(rowsOf(p, basis), p.n);
    QVec d = ns.front();
    Rational cd = dot(c, d);
    if (sgn(cd) > 0) {
      for (auto& v : d) v = -v;
      cd = -cd;
    }
    Rational t;
    if (!ratioTest(p, x, d, t, ties)) {
      if (sgn(cd) < 0) {
        ray = d;
        return Walk::Unbounded;
      }
      for (auto& v : d) v = -v;
      if (!ratioTest(p, x, d, t, ties)) throw UnsupportedError("polyhedron is not pointed");
    }
    axpy(x, t, d);
    basis.push_back(*std::min_element(ties.begin(), ties.end()));
  }
  return Walk::Vertex;
}

/** Columns of the inverse of the basis rows: d_i with a_{B_j}^T d_i = delta_ij. */
QMatrix basisDirections(const QPolyhedron& p, const std::vector<int>& basis) {
  QMatrix inv;
  if (!invertExact(rowsOf(p, basis), inv)) throw DegenerateBasisError("singular exact basis");
  const int n = p.n;
  QMatrix dirs(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) dirs[i][k] = inv[k][i];
  return dirs;
}

/** Active-set simplex from a vertex. */
QLpStatus simplex(const QPolyhedron& p, const QVec& c, QVec& x, std::vector<int>& basis, QVec& ray, long& pivots) {
  std::vector<int> ties;
  for (;;) {
    if (++pivots > kMaxPivots) throw SizeGuardError("exact simplex exceeded its pivot limit");
    QMatrix dirs = basisDirections(p, basis);
    int leave = -1;
    for (int i = 0; i < p.n; ++i) {
      if (sgn(dot(c, dirs[i])) >= 0) continue;
      if (leave < 0 || basis[i] < basis[leave]) leave = i;
    }
    if (leave < 0) return QLpStatus::Optimal;
    Rational t;
    if (!ratioTest(p, x, dirs[leave], t, ties)) {
      ray = dirs[leave];
      return QLpStatus::Unbounded;
    }
    axpy(x, t, dirs[leave]);
    basis[leave] = *std::min_element(ties.begin(), ties.end());
  }
}

/** Feasible point of a pointed polyhedron by minimizing the largest row violation. */
bool phaseOne(const QPolyhedron& p, QVec& x, long& pivots) {
  const int n = p.n;
  QPolyhedron aux;
  aux.n = n + 1;
  Rational tau0 = 0;
  for (int i = 0; i < p.numRows(); ++i) {
    QVec a = p.A[i];
    a.push_back(1);
    aux.addRow(std::move(a), p.b[i]);
    if (p.b[i] > tau0) tau0 = p.b[i];
  }
  QVec e(n + 1, 0);
  e[n] = 1;
  aux.addRow(e, 0);
  QVec y(n + 1, 0);
  y[n] = tau0;
  std::vector<int> basis;
  QVec ray;
  if (crossover(aux, y, e, basis, ray) == Walk::Unbounded) return false;
  if (simplex(aux, e, y, basis, ray, pivots) != QLpStatus::Optimal) return false;
  if (sgn(y[n]) > 0) return false;
  x.assign(y.begin(), y.begin() + n);
  return true;
}

QVec primitive(QVec d) {
  Rational m = 0;
  for (const auto& v : d)
    if (abs(v) > m) m = abs(v);
  if (sgn(m) > 0)
    for (auto& v : d) v /= m;
  return d;
}

Rational floorQ(const Rational& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

Rational ceilQ(const Rational& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

}  // namespace

QLpResult solveRationalLp(const QPolyhedron& poly, const QVec& c) {
  QLpResult res;
  std::vector<QVec> lin;
  QPolyhedron p = pointedCopy(poly, lin);
  QVec x;
  if (!phaseOne(p, x, res.pivots)) {
    res.status = QLpStatus::Infeasible;
    return res;
  }
  for (const auto& d : lin) {
    const Rational cd = dot(c, d);
    if (sgn(cd) == 0) continue;
    res.status = QLpStatus::Unbounded;
    res.x = x;
    res.ray = d;
    if (sgn(cd) > 0)
      for (auto& v : res.ray) v = -v;
    return res;
  }
  QVec ray;
  if (crossover(p, x, c, res.basis, ray) == Walk::Unbounded) {
    res.status = QLpStatus::Unbounded;
    res.x = x;
    res.ray = ray;
    return res;
  }
  res.status = simplex(p, c, x, res.basis, ray, res.pivots);
  res.x = x;
  if (res.status == QLpStatus::Unbounded)
    res.ray = ray;
  else
    res.value = dot(c, x);
  return res;
}

VDescription enumerateVertices(const QPolyhedron& poly, int maxRows, long maxBases) {
  if (poly.n > 10 || poly.numRows() > maxRows)
    throw SizeGuardError("vertex enumeration limited to n <= 10 and " + std::to_string(maxRows) + " rows");
  VDescription vd;
  if (!nullspace(poly.A, poly.n).empty()) {
    vd.pointed = false;
    return vd;
  }
  QVec x;
  long pivots = 0;
  if (!phaseOne(poly, x, pivots)) return vd;
  std::vector<int> basis;
  QVec ray;
  crossover(poly, x, QVec(poly.n, 0), basis, ray);
  std::sort(basis.begin(), basis.end());

  std::map<QVec, int> vIndex, rIndex;
  std::set<std::pair<int, int>> edges, rayEdges;
  auto vertexId = [&](const QVec& v) {
    auto [it, added] = vIndex.emplace(v, static_cast<int>(vd.vertices.size()));
    if (added) vd.vertices.push_back(v);
    return it->second;
  };
  auto rayId = [&](const QVec& d) {
    QVec r = primitive(d);
    auto [it, added] = rIndex.emplace(r, static_cast<int>(vd.rays.size()));
    if (added) vd.rays.push_back(r);
    return it->second;
  };

  std::set<std::vector<int>> seen{basis};
  std::vector<std::pair<QVec, std::vector<int>>> queue{{x, basis}};
  std::vector<int> ties;
  for (size_t head = 0; head < queue.size(); ++head) {
    if (++vd.bases > maxBases) throw SizeGuardError("vertex enumeration exceeded its basis limit");
    const QVec cur = queue[head].first;
    const std::vector<int> b = queue[head].second;
    const int vi = vertexId(cur);
    QMatrix dirs = basisDirections(poly, b);
    for (int i = 0; i < poly.n; ++i) {
      Rational t;
      if (!ratioTest(poly, cur, dirs[i], t, ties)) {
        rayEdges.emplace(vi, rayId(dirs[i]));
        continue;
      }
      QVec next = cur;
      axpy(next, t, dirs[i]);
      if (sgn(t) > 0) {
        const int vj = vertexId(next);
        edges.emplace(std::min(vi, vj), std::max(vi, vj));
      }
      for (int k : ties) {
        std::vector<int> nb = b;
        nb[i] = k;
        std::sort(nb.begin(), nb.end());
        if (seen.insert(nb).second) queue.emplace_back(next, std::move(nb));
      }
    }
  }
  vd.edges.assign(edges.begin(), edges.end());
  vd.rayEdges.assign(rayEdges.begin(), rayEdges.end());
  return vd;
}

RationalPolyhedron::RationalPolyhedron(QPolyhedron poly, std::vector<bool> integer)
    : poly_(std::move(poly)), integer_(std::move(integer)) {
  integer_.resize(poly_.n, false);
}

RationalPolyhedron RationalPolyhedron::fromInstance(const Instance& inst) {
  return RationalPolyhedron(polyhedronOf(inst), inst.integer);
}

const VDescription& RationalPolyhedron::vdesc() const {
  if (!vdesc_) vdesc_ = enumerateVertices(poly_);
  return *vdesc_;
}

bool RationalPolyhedron::pureInteger() const {
  return std::all_of(integer_.begin(), integer_.end(), [](bool b) { return b; });
}

std::pair<std::optional<Rational>, std::optional<Rational>> RationalPolyhedron::bounds(int j) const {
  QVec c(poly_.n, 0);
  c[j] = 1;
  std::pair<std::optional<Rational>, std::optional<Rational>> out;
  auto lo = solveRationalLp(poly_, c);
  if (lo.status == QLpStatus::Optimal) out.first = lo.value;
  c[j] = -1;
  auto hi = solveRationalLp(poly_, c);
  if (hi.status == QLpStatus::Optimal) out.second = -hi.value;
  return out;
}

const std::vector<QVec>& RationalPolyhedron::integerPoints() const {
  if (ints_) return *ints_;
  std::vector<int> vars;
  std::vector<Rational> lo, hi;
  double product = 1.0;
  for (int j = 0; j < poly_.n; ++j) {
    if (!integer_[j]) continue;
    auto [l, h] = bounds(j);
    if (!l && !h && solveRationalLp(poly_, QVec(poly_.n, 0)).status == QLpStatus::Infeasible) {
      ints_ = std::vector<QVec>{};
      return *ints_;
    }
    if (!l || !h) throw SizeGuardError("integer variable " + std::to_string(j) + " is unbounded");
    vars.push_back(j);
    lo.push_back(ceilQ(*l));
    hi.push_back(floorQ(*h));
    product *= std::max(0.0, Rational(hi.back() - lo.back() + 1).get_d());
  }
  if (product > 1e6) throw SizeGuardError("integer box has more than 1e6 points");
  std::vector<QVec> out;
  const bool pure = pureInteger();
  QVec z(poly_.n, 0);
  std::vector<Rational> cur(lo);
  bool empty = false;
  for (size_t i = 0; i < vars.size(); ++i)
    if (lo[i] > hi[i]) empty = true;
  while (!empty) {
    for (size_t i = 0; i < vars.size(); ++i) z[vars[i]] = cur[i];
    if (pure) {
      if (poly_.contains(z)) out.push_back(z);
    } else {
      QPolyhedron fiber = poly_;
      for (int j : vars) {
        QVec e(poly_.n, 0);
        e[j] = 1;
        fiber.addRow(e, z[j]);
        e[j] = -1;
        fiber.addRow(e, -z[j]);
      }
      if (solveRationalLp(fiber, QVec(poly_.n, 0)).status != QLpStatus::Infeasible) out.push_back(z);
    }
    size_t i = 0;
    while (i < vars.size()) {
      if (cur[i] < hi[i]) {
        cur[i] += 1;
        break;
      }
      cur[i] = lo[i];
      ++i;
    }
    if (i == vars.size()) break;
  }
  ints_ = std::move(out);
  return *ints_;
}

CutVerdict validateCut(const QVec& pi, const Rational& pi0, const RationalPolyhedron& poly, const Rational& tol) {
  CutVerdict v;
  v.worst = 0;
  const Rational slack = tol * (1 + abs(pi0));
  auto record = [&](const QVec& z, const Rational& gap) {
    ++v.checked;
    if (gap < v.worst) v.worst = gap;
    if (gap < -slack) {
      v.valid = false;
      if (v.violators.size() < 10) v.violators.push_back(z);
    }
  };
  const bool pure = poly.pureInteger();
  for (const QVec& z : poly.integerPoints()) {
    if (pure) {
      record(z, dot(pi, z) - pi0);
      continue;
    }
    QPolyhedron fiber = poly.poly();
    for (int j = 0; j < poly.dim(); ++j) {
      if (!poly.integer()[j]) continue;
      QVec e(poly.dim(), 0);
      e[j] = 1;
      fiber.addRow(e, z[j]);
      e[j] = -1;
      fiber.addRow(e, -z[j]);
    }
    auto lp = solveRationalLp(fiber, pi);
    if (lp.status == QLpStatus::Optimal) {
      record(lp.x, lp.value - pi0);
    } else if (lp.status == QLpStatus::Unbounded) {
      ++v.checked;
      v.valid = false;
      v.worst = -1;
      if (v.violators.size() < 10) v.violators.push_back(lp.x);
    }
  }
  return v;
}

CutVerdict validateCut(const Inequality& cut, const RationalPolyhedron& poly, const Rational& tol) {
  return validateCut(toRational(cut.pi), fromDouble(cut.pi0), poly, tol);
}

QSplit QSplit::from(const SplitSet& s) {
  if (s.terms.size() != 1) throw UnsupportedError("exact splits have a single term");
  QSplit q;
  q.var = s.terms[0].var;
  q.lo = fromDouble(s.terms[0].lo);
  q.hi = fromDouble(s.terms[0].hi);
  return q;
}

double QBound::toDouble() const {
  if (kind == PlusInf) return kInf;
  if (kind == MinusInf) return -kInf;
  return value.get_d();
}

std::string QBound::str() const {
  if (kind == PlusInf) return "+inf";
  if (kind == MinusInf) return "-inf";
  return toString(value);
}

QBound skClosureOpt(const QPolyhedron& poly, const QSplit& s, const QVec& c) {
  QBound best;
  for (int side = 0; side < 2; ++side) {
    QPolyhedron q = poly;
    QVec e(poly.n, 0);
    e[s.var] = side == 0 ? -1 : 1;
    q.addRow(e, side == 0 ? Rational(-s.lo) : s.hi);
    auto lp = solveRationalLp(q, c);
    if (lp.status == QLpStatus::Unbounded) {
      best.kind = QBound::MinusInf;
      return best;
    }
    if (lp.status != QLpStatus::Optimal) continue;
    if (best.kind == QBound::PlusInf || lp.value < best.value) {
      best.kind = QBound::Finite;
      best.value = lp.value;
    }
  }
  return best;
}

}  // namespace gic
