/**
 * @file oracle.cpp
 * @brief Exact full activation, S_k-closure checks, randomized property trials and the
 *        tilting regression.
 */
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "gic/oracle.hpp"

namespace gic {

namespace {

QVec scaled(const QVec& v, const Rational& t) {
  QVec o = v;
  for (auto& e : o) e *= t;
  return o;
}

QVec added(const QVec& a, const QVec& b) {
  QVec o = a;
  for (size_t k = 0; k < o.size(); ++k) o[k] += b[k];
  return o;
}

QVec subtracted(const QVec& a, const QVec& b) {
  QVec o = a;
  for (size_t k = 0; k < o.size(); ++k) o[k] -= b[k];
  return o;
}

/** Exact nonbasic coordinates s_j = a_{tight_j}^T x - b_{tight_j}. */
QVec nonbasicOf(const QPolyhedron& p, const QCone& cone, const QVec& x) {
  QVec s(cone.dim());
  for (int j = 0; j < cone.dim(); ++j) s[j] = dot(p.A[cone.tight[j]], x) - p.b[cone.tight[j]];
  return s;
}

/** Initial boundary parameters per ray (nullopt for rays parallel to the split). */
std::vector<std::optional<Rational>> initialSteps(const QCone& cone, const QSplit& s, std::vector<int>* facet = nullptr) {
  std::vector<std::optional<Rational>> t(cone.dim());
  if (facet) facet->assign(cone.dim(), -1);
  for (int j = 0; j < cone.dim(); ++j) {
    const Rational& rate = cone.rays[j][s.var];
    if (sgn(rate) > 0) {
      t[j] = (s.hi - cone.apex[s.var]) / rate;
      if (facet) (*facet)[j] = 1;
    } else if (sgn(rate) < 0) {
      t[j] = (s.lo - cone.apex[s.var]) / rate;
      if (facet) (*facet)[j] = 0;
    }
  }
  return t;
}

int rayAlong(const Cone& c, const Vec& dir) {
  for (int j = 0; j < c.dim(); ++j) {
    Vec r = c.ray(j);
    const double sc = dot(r, dir) / dot(dir, dir);
    if (sc <= 0) continue;
    double err = 0;
    for (int k = 0; k < c.dim(); ++k) err += std::fabs(r[k] - sc * dir[k]);
    if (err < 1e-9) return j;
  }
  return -1;
}

QVec snapped(const Vec& v) {
  QVec o(v.size());
  for (size_t k = 0; k < v.size(); ++k) o[k] = snapRational(v[k]);
  return o;
}

/** Exact point-ray LP rows over a floating nonbasic collection, coordinates snapped. */
QPolyhedron prlpOfFloat(const PointRayCollection& coll, int n) {
  QPolyhedron q;
  q.n = n;
  for (const auto& p : coll.points) q.addRow(snapped(p.coords.toDense(n)), 1);
  for (const auto& r : coll.rays) q.addRow(snapped(r.coords.toDense(n)), 0);
  return q;
}

Rational randomRational(std::mt19937& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> u(lo * den, hi * den);
  Rational q(u(rng), den);
  q.canonicalize();
  return q;
}

/** Random exact 3D cone with apex x_0 fractional and every ray crossing the split. */
bool randomCone3(std::mt19937& rng, QPolyhedron& p, QCone& cone, QSplit& s) {
  std::uniform_int_distribution<int> coef(-4, 4);
  p = QPolyhedron{};
  p.n = 3;
  QVec apex = {randomRational(rng, 0, 2, 7), randomRational(rng, -2, 2, 5), randomRational(rng, -2, 2, 3)};
  if (apex[0].get_den() == 1) apex[0] += Rational(1, 3);
  for (int j = 0; j < 3; ++j) {
    QVec a(3);
    for (auto& v : a) v = coef(rng);
    p.addRow(a, dot(a, apex));
  }
  if (rankExact(p.A) < 3) return false;
  cone = QCone::fromTight(p, {0, 1, 2});
  for (int j = 0; j < 3; ++j)
    if (sgn(cone.rays[j][0]) == 0) return false;
  s.var = 0;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), apex[0].get_num_mpz_t(), apex[0].get_den_mpz_t());
  s.lo = Rational(fl);
  s.hi = s.lo + 1;
  return true;
}

}  // namespace

QCone QCone::fromTight(const QPolyhedron& poly, const std::vector<int>& tight) {
  const int n = poly.n;
  if (static_cast<int>(tight.size()) != n) throw DegenerateBasisError("expected one tight row per variable");
  QMatrix m;
  QVec rhs;
  for (int i : tight) {
    m.push_back(poly.A[i]);
    rhs.push_back(poly.b[i]);
  }
  QCone c;
  c.tight = tight;
  QMatrix inv;
  if (!solveExact(m, rhs, c.apex) || !invertExact(m, inv)) throw DegenerateBasisError("singular exact tight system");
  c.rays.assign(n, QVec(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) c.rays[j][k] = inv[k][j];
  return c;
}

QVec QCone::point(const QVec& s) const {
  QVec x = apex;
  for (int j = 0; j < dim(); ++j)
    if (sgn(s[j]) != 0)
      for (int k = 0; k < dim(); ++k) x[k] += s[j] * rays[j][k];
  return x;
}

QVec QCone::direction(const QVec& d) const {
  QVec x(dim(), 0);
  for (int j = 0; j < dim(); ++j)
    if (sgn(d[j]) != 0)
      for (int k = 0; k < dim(); ++k) x[k] += d[j] * rays[j][k];
  return x;
}

int QCollection::numFinal() const { return static_cast<int>(std::count(isFinal.begin(), isFinal.end(), true)); }

QCollection fullActivation(const QPolyhedron& p, const QCone& cone, const std::vector<int>& activated, const QSplit& s) {
  QPolyhedron c;
  c.n = p.n;
  for (int i : cone.tight) c.addRow(p.A[i], p.b[i]);
  for (int i : activated) c.addRow(p.A[i], p.b[i]);
  const VDescription vd = enumerateVertices(c, 64);

  QCollection out;
  std::set<QVec> seen;
  auto addPoint = [&](const QVec& x) {
    if (!seen.insert(x).second) return;
    const Rational& v = x[s.var];
    out.points.push_back(x);
    out.facet.push_back(v == s.lo ? 0 : (v == s.hi ? 1 : -1));
    out.isFinal.push_back(out.facet.back() >= 0 && p.contains(x));
  };
  for (const auto& v : vd.vertices)
    if (!s.interior(v)) addPoint(v);
  for (const auto& [i, j] : vd.edges) {
    const QVec& u = vd.vertices[i];
    const QVec& w = vd.vertices[j];
    const Rational a = u[s.var], b = w[s.var];
    if (a == b) continue;
    for (const Rational& level : {s.lo, s.hi}) {
      if (level <= std::min(a, b) || level >= std::max(a, b)) continue;
      const Rational t = (level - a) / (b - a);
      addPoint(added(u, scaled(subtracted(w, u), t)));
    }
  }
  std::vector<bool> keepRay(vd.rays.size(), false);
  for (const auto& [i, j] : vd.rayEdges) {
    const QVec& u = vd.vertices[i];
    const QVec& r = vd.rays[j];
    const Rational& rate = r[s.var];
    bool crosses = false;
    if (sgn(rate) != 0) {
      for (const Rational& level : {s.lo, s.hi}) {
        const Rational t = (level - u[s.var]) / rate;
        if (sgn(t) <= 0) continue;
        addPoint(added(u, scaled(r, t)));
        crosses = true;
      }
    }
    if (!crosses) keepRay[j] = true;
  }
  for (size_t j = 0; j < vd.rays.size(); ++j)
    if (keepRay[j]) out.rays.push_back(vd.rays[j]);
  return out;
}

QPolyhedron prlpPolyhedron(const QCollection& coll, const QVec& apex) {
  QPolyhedron q;
  q.n = static_cast<int>(apex.size());
  for (const auto& x : coll.points) q.addRow(subtracted(x, apex), 1);
  for (const auto& r : coll.rays) q.addRow(r, 0);
  return q;
}

std::string dominanceName(Dominance d) {
  switch (d) {
    case Dominance::Possible: return "possible";
    case Dominance::Impossible: return "impossible";
    case Dominance::NotApplicable: return "not-applicable";
  }
  return "?";
}

Dominance strictDominanceCheck(const QPolyhedron& p, const QCone& cone, int h, const QSplit& s) {
  std::vector<int> facet;
  auto t = initialSteps(cone, s, &facet);
  bool side[2] = {false, false};
  for (int j = 0; j < cone.dim(); ++j) {
    if (!t[j]) return Dominance::NotApplicable;
    side[facet[j]] = true;
  }
  if (!side[0] || !side[1]) return Dominance::NotApplicable;
  if (dot(p.A[h], cone.apex) < p.b[h]) return Dominance::NotApplicable;
  for (int f = 0; f < 2; ++f) {
    bool strictInside = false, strictOutside = false;
    for (int j = 0; j < cone.dim(); ++j) {
      if (facet[j] != f) continue;
      QVec sj(cone.dim(), 0);
      sj[j] = *t[j];
      const Rational val = dot(p.A[h], cone.point(sj)) - p.b[h];
      if (sgn(val) > 0) strictInside = true;
      if (sgn(val) < 0) strictOutside = true;
    }
    if (!strictInside && strictOutside) return Dominance::Possible;
  }
  return Dominance::Impossible;
}

bool strictDominanceBruteForce(const QPolyhedron& p, const QCone& cone, int h, const QSplit& s) {
  const int n = cone.dim();
  auto t = initialSteps(cone, s);
  QVec sic(n, 0);
  for (int j = 0; j < n; ++j) {
    if (!t[j]) return false;
    const QVec& a = p.A[cone.tight[j]];
    for (int k = 0; k < n; ++k) sic[k] += a[k] / *t[j];
  }
  QPolyhedron c;
  c.n = n;
  for (int i : cone.tight) c.addRow(p.A[i], p.b[i]);
  c.addRow(p.A[h], p.b[h]);
  QCollection coll = fullActivation(p, cone, {h}, s);
  QPolyhedron region = prlpPolyhedron(coll, cone.apex);
  const VDescription vd = enumerateVertices(region, 256);
  const Rational sicRhs = 1 + dot(sic, cone.apex);
  for (const QVec& alpha : vd.vertices) {
    if (alpha == sic) continue;
    const Rational rhs = 1 + dot(alpha, cone.apex);
    QPolyhedron dom = c;
    dom.addRow(alpha, rhs);
    auto d = solveRationalLp(dom, sic);
    const bool dominates = d.status == QLpStatus::Infeasible || (d.status == QLpStatus::Optimal && d.value >= sicRhs);
    if (!dominates) continue;
    QPolyhedron strict = c;
    strict.addRow(sic, sicRhs);
    auto st = solveRationalLp(strict, alpha);
    if (st.status == QLpStatus::Unbounded || (st.status == QLpStatus::Optimal && st.value < rhs)) return true;
  }
  return false;
}

MonotonicityResult monotonicityCheck(const QPolyhedron& p, const QCone& cone, int h, const QSplit& s, const QVec& c) {
  MonotonicityResult res;
  const int n = cone.dim();
  auto t = initialSteps(cone, s);
  int r = -1;
  for (int j = 0; j < n; ++j) {
    if (!t[j]) continue;
    QVec sj(n, 0);
    sj[j] = *t[j];
    const Rational cost = dot(c, cone.point(sj));
    if (r < 0 || cost < res.zLow) {
      r = j;
      res.zLow = cost;
    }
  }
  if (r < 0) return res;
  const Rational g = dot(p.A[h], cone.apex) - p.b[h];
  QVec w(n);
  for (int j = 0; j < n; ++j) w[j] = dot(p.A[h], cone.rays[j]);
  if (sgn(g) < 0 || sgn(w[r]) >= 0) return res;
  const Rational d = g / (-w[r]);
  if (d >= *t[r]) return res;
  res.applicable = true;
  QVec v(n, 0);
  v[r] = d;
  const QVec vx = cone.point(v);
  for (int j = 0; j < n; ++j) {
    if (j == r) continue;
    const Rational mu = -w[j] / w[r];
    QVec e(n, 0);
    e[j] = 1;
    e[r] = mu;
    const QVec ex = cone.direction(e);
    std::optional<Rational> tstar;
    if (sgn(mu) < 0) tstar = d / (-mu);
    std::optional<Rational> ts;
    const Rational& rate = ex[s.var];
    if (sgn(rate) > 0) ts = (s.hi - vx[s.var]) / rate;
    if (sgn(rate) < 0) ts = (s.lo - vx[s.var]) / rate;
    if (!ts || (tstar && *ts >= *tstar)) continue;
    const Rational cost = dot(c, added(vx, scaled(ex, *ts)));
    ++res.newPoints;
    if (!res.minNew || cost < *res.minNew) res.minNew = cost;
  }
  res.holds = !res.minNew || *res.minNew >= res.zLow;
  return res;
}

TrialSummary monotonicityTrials(int trials, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5), pos(1, 6);
  TrialSummary sum;
  int equalityCases = 0;
  while (sum.applicable < trials && sum.trials < 50 * trials) {
    QPolyhedron p;
    QCone cone;
    QSplit s;
    if (!randomCone3(rng, p, cone, s)) continue;
    ++sum.trials;
    QVec c(3, 0);
    for (int j = 0; j < 3; ++j) {
      const int y = pos(rng);
      for (int k = 0; k < 3; ++k) c[k] += y * p.A[j][k];
    }
    // Cheapest initial ray, then a hyperplane crossing it strictly before bd S.
    auto t = initialSteps(cone, s);
    int r = 0;
    Rational best;
    for (int j = 0; j < 3; ++j) {
      QVec sj(3, 0);
      sj[j] = *t[j];
      const Rational cost = dot(c, cone.point(sj));
      if (j == 0 || cost < best) {
        best = cost;
        r = j;
      }
    }
    QVec a(3);
    for (auto& v : a) v = coef(rng);
    Rational wr = dot(a, cone.rays[r]);
    if (sgn(wr) == 0) continue;
    if (sgn(wr) > 0) {
      for (auto& v : a) v = -v;
      wr = -wr;
    }
    const Rational frac = randomRational(rng, 0, 1, 9);
    if (sgn(frac) <= 0 || frac >= 1) continue;
    const Rational g = frac * (-wr) * *t[r];
    p.addRow(a, dot(a, cone.apex) - g);
    auto m = monotonicityCheck(p, cone, 3, s, c);
    if (!m.applicable) continue;
    ++sum.applicable;
    if (!m.holds) ++sum.failures;
    if (m.minNew && *m.minNew == m.zLow) ++equalityCases;
  }
  sum.detail = "equality cases " + std::to_string(equalityCases);
  return sum;
}

TrialSummary parallelRayTrials(int trials, unsigned seed, double tol) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrialSummary sum;
  double worst = 0.0;
  while (sum.applicable < trials && sum.trials < 50 * trials) {
    ++sum.trials;
    const double x0 = 0.2 + 0.6 * (u(rng) + 1.0) / 2.0;
    std::vector<Hyperplane> all = {{0, {-1, 1, 0}, -x0, "r0"}, {1, {0, 1, 0}, 0, "r1"}, {2, {0, 0, 1}, 0, "r2"}};
    const Vec apex = {x0, 0.0, 0.0};
    Vec a = {u(rng), u(rng), u(rng)};
    all.push_back({3, a, dot(a, apex) - 0.05 - std::fabs(u(rng)), "h"});
    Cone cone = Cone::fromTight(all, apex, {0, 1, 2});
    SplitGeometry geom(cone, SplitSet::simple(0, x0));
    auto coll = initialCollection(cone, geom);
    if (coll.parallelRays.empty() || !(cone.rate(3, coll.parallelRays[0]) < -kEps)) continue;
    ++sum.applicable;
    const Cut sic = sicFromInitial(cone, coll);
    pha1Activate(cone, 3, coll.parallelRays, coll);
    bool ok = true;
    for (const auto& p : coll.points) {
      if (p.hyperplane != 3) continue;
      const double e = std::fabs(p.coords.dot(sic.alpha) - 1.0);
      worst = std::max(worst, e);
      if (e >= tol) ok = false;
    }
    for (const auto& r : coll.rays) {
      if (r.hyperplane != 3) continue;
      const double e = std::fabs(r.coords.dot(sic.alpha));
      worst = std::max(worst, e);
      if (e >= tol) ok = false;
    }
    if (!ok) ++sum.failures;
  }
  std::ostringstream os;
  os << "worst residual " << worst;
  sum.detail = os.str();
  return sum;
}

TrialSummary strictDominanceTrials(int trials, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5), wt(0, 4);
  TrialSummary sum;
  int possible = 0;
  while (sum.applicable < trials && sum.trials < 50 * trials) {
    QPolyhedron p;
    QCone cone;
    QSplit s;
    if (!randomCone3(rng, p, cone, s)) continue;
    ++sum.trials;
    auto t = initialSteps(cone, s);
    // Hyperplane through a random nonnegative combination of the initial points.
    QVec q(3, 0);
    int total = 0;
    for (int j = 0; j < 3; ++j) {
      QVec sj(3, 0);
      sj[j] = *t[j];
      const int w = wt(rng);
      total += w;
      q = added(q, scaled(cone.point(sj), w));
    }
    if (total == 0) continue;
    q = scaled(q, Rational(1, total));
    q = added(cone.apex, scaled(subtracted(q, cone.apex), randomRational(rng, 0, 2, 4)));
    QVec a(3);
    for (auto& v : a) v = coef(rng);
    Rational g = dot(a, subtracted(cone.apex, q));
    if (sgn(g) == 0) continue;
    if (sgn(g) < 0)
      for (auto& v : a) v = -v;
    p.addRow(a, dot(a, q));
    const Dominance verdict = strictDominanceCheck(p, cone, 3, s);
    if (verdict == Dominance::NotApplicable) continue;
    ++sum.applicable;
    const bool brute = strictDominanceBruteForce(p, cone, 3, s);
    if (verdict == Dominance::Possible) ++possible;
    if (brute != (verdict == Dominance::Possible)) ++sum.failures;
  }
  sum.detail = "possible verdicts " + std::to_string(possible);
  return sum;
}

TiltingRegression tiltingRegression(const std::string& fixturePath) {
  TiltingRegression res;
  Instance inst = toStandardForm(parseMps(fixturePath));
  auto hps = hyperplanesOf(inst);
  hps.resize(5);
  const QPolyhedron P = polyhedronOf(hps, 3);
  const std::vector<int> tight = {0, 1, 4};
  const QCone qc = QCone::fromTight(P, tight);
  const Cone cone = Cone::fromTight(hps, toDouble(qc.apex), tight);
  SplitGeometry geom(cone, SplitSet::simple(0, toDouble(qc.apex[0])));
  const QSplit s = QSplit::from(geom.split());
  const int r1 = rayAlong(cone, {3, -1, -2}), r2 = rayAlong(cone, {-1, 3, -2});
  if (r1 < 0 || r2 < 0) {
    res.detail = "fixture rays not found";
    return res;
  }

  // V-description of conv(P \ int S): vertices and extreme rays of both sides of the split.
  std::vector<QVec> sideVertices, sideRays;
  for (int side = 0; side < 2; ++side) {
    QPolyhedron q = P;
    QVec e(3, 0);
    e[0] = side == 0 ? -1 : 1;
    q.addRow(e, side == 0 ? Rational(-s.lo) : s.hi);
    auto vd = enumerateVertices(q);
    sideVertices.insert(sideVertices.end(), vd.vertices.begin(), vd.vertices.end());
    sideRays.insert(sideRays.end(), vd.rays.begin(), vd.rays.end());
  }
  auto directionOf = [&](const QVec& r) {
    QVec d(3);
    for (int j = 0; j < 3; ++j) d[j] = dot(P.A[tight[j]], r);
    return d;
  };

  auto first = initialCollection(cone, geom);
  pha1Activate(cone, 2, {r1}, first, {true, 1});

  // Broken leg: the second activation leaves the previously cut ray out.
  auto broken = first;
  pha1Activate(cone, 3, {r2}, broken, {false, 2});
  const QPolyhedron brokenLp = prlpOfFloat(broken, 3);
  const Rational margin(1, 1000000);
  for (const QVec& z : sideVertices) {
    const QVec sz = nonbasicOf(P, qc, z);
    auto lp = solveRationalLp(brokenLp, sz);
    if (lp.status == QLpStatus::Infeasible) continue;
    QVec alpha = lp.x;
    if (lp.status == QLpStatus::Unbounded) {
      const Rational drop = -dot(lp.ray, sz);
      alpha = added(alpha, scaled(lp.ray, (dot(alpha, sz) + 1) / drop));
    }
    if (dot(alpha, sz) >= 1 - margin) continue;
    res.brokenLegInvalid = true;
    res.witness = z;
    res.cutPi.assign(3, 0);
    res.cutPi0 = 1;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) res.cutPi[k] += alpha[j] * P.A[tight[j]][k];
      res.cutPi0 += alpha[j] * P.b[tight[j]];
    }
    break;
  }

  // Enforced leg: the same sequence must be refused.
  auto enforced = first;
  try {
    pha1Activate(cone, 3, {r2}, enforced, {true, 2});
  } catch (const TiltRuleViolation&) {
    res.enforcedLegRejected = true;
  }

  // Compliant leg: the second activation includes the previously cut ray.
  auto compliant = first;
  pha1Activate(cone, 3, {r1, r2}, compliant, {true, 2});
  const QPolyhedron compliantLp = prlpOfFloat(compliant, 3);
  res.compliantLegValid = true;
  for (const QVec& z : sideVertices) {
    auto lp = solveRationalLp(compliantLp, nonbasicOf(P, qc, z));
    if (lp.status == QLpStatus::Unbounded || (lp.status == QLpStatus::Optimal && lp.value < 1 - margin))
      res.compliantLegValid = false;
  }
  for (const QVec& r : sideRays) {
    auto lp = solveRationalLp(compliantLp, directionOf(r));
    if (lp.status == QLpStatus::Unbounded || (lp.status == QLpStatus::Optimal && lp.value < -margin))
      res.compliantLegValid = false;
  }
  auto vd = enumerateVertices(compliantLp, 64);
  res.compliantVertices = static_cast<int>(vd.vertices.size());

  std::ostringstream os;
  os << "side vertices " << sideVertices.size() << ", side rays " << sideRays.size() << ", broken collection " << broken.points.size() << " points, "
     << "compliant collection " << compliant.points.size() << " points";
  if (res.brokenLegInvalid) {
    os << ", witness (";
    for (int k = 0; k < 3; ++k) os << (k ? "," : "") << toString(res.witness[k]);
    os << ")";
  }
  res.detail = os.str();
  return res;
}

Instance randomTinyMilp(unsigned seed, int n, int m) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-4, 4), ub(2, 3), slack(0, 2), obj(-6, 6);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Instance in;
    in.name = "tiny" + std::to_string(seed);
    QVec z(n);
    for (int j = 0; j < n; ++j) {
      in.colNames.push_back("x" + std::to_string(j));
      in.lower.emplace_back(Rational(0));
      const int u = ub(rng);
      in.upper.emplace_back(Rational(u));
      in.integer.push_back(true);
      in.obj.push_back(obj(rng));
      z[j] = std::uniform_int_distribution<int>(0, u)(rng);
    }
    for (int i = 0; i < m; ++i) {
      QSparseRow row;
      Rational lhs = 0;
      for (int j = 0; j < n; ++j) {
        const int a = coef(rng);
        if (a == 0) continue;
        row.emplace_back(j, Rational(a));
        lhs += a * z[j];
      }
      if (row.empty()) continue;
      in.rows.push_back(std::move(row));
      in.sense.push_back(RowSense::GE);
      in.rhs.push_back(lhs - slack(rng));
      in.range.emplace_back(std::nullopt);
      in.rowNames.push_back("c" + std::to_string(i));
    }
    Instance std = toStandardForm(in);
    BasicSolution sol = solveLp(std, std.objVec());
    if (!sol.optimal()) continue;
    if (fractionalIndices(sol.x, std.integer).empty()) continue;
    try {
      Cone::fromSolution(std, sol);
    } catch (const DegenerateBasisError&) {
      continue;
    }
    return std;
  }
  throw std::runtime_error("could not draw a tiny instance with a fractional optimum");
}

ValiditySummary validateConfigs(const Instance& inst, const std::vector<GicConfig>& configs) {
  ValiditySummary sum;
  const RationalPolyhedron rp = RationalPolyhedron::fromInstance(inst);
  sum.integerPoints = static_cast<int>(rp.integerPoints().size());
  BasicSolution sol = solveLp(inst, inst.objVec());
  if (!sol.optimal()) {
    sum.detail = "LP not optimal";
    return sum;
  }
  const Cone cone = Cone::fromSolution(inst, sol);
  std::ostringstream os;
  for (const auto& cfg : configs) {
    ++sum.configs;
    GenerationResult gen = generateCuts(inst, cone, cfg);
    std::vector<const Cut*> cuts;
    for (const auto& c : gen.sics) cuts.push_back(&c);
    for (const auto& c : gen.gics) cuts.push_back(&c);
    for (const Cut* c : cuts) {
      ++sum.cuts;
      CutVerdict v = validateCut(c->structural, rp);
      if (!v.valid) {
        ++sum.invalid;
        os << cfg.label() << " " << c->algorithm << "/" << c->family << " violated by " << v.violators.size()
           << " points; ";
      }
    }
  }
  sum.detail = os.str();
  return sum;
}

SandwichSummary sandwichCheck(const Instance& inst, int kh) {
  SandwichSummary sum;
  BasicSolution sol = solveLp(inst, inst.objVec());
  if (!sol.optimal()) {
    sum.detail = "LP not optimal";
    return sum;
  }
  const Cone cone = Cone::fromSolution(inst, sol);
  const QPolyhedron P = polyhedronOf(inst);
  const QVec c = inst.obj;
  const Vec costs = cone.reducedCosts(inst.objVec());
  const double base = dot(inst.objVec(), cone.apex());
  std::ostringstream os;
  std::vector<int> allRays(cone.dim());
  for (int j = 0; j < cone.dim(); ++j) allRays[j] = j;
  for (int k : fractionalIndices(cone.apex(), inst.integer)) {
    ++sum.splits;
    SplitGeometry geom(cone, SplitSet::simple(k, cone.apex()[k]));
    auto coll = initialCollection(cone, geom);
    const Cut sic = sicFromInitial(cone, coll);
    for (int round = 0; round < kh; ++round) {
      std::vector<int> cand;
      for (int h = 0; h < cone.numHyperplanes(); ++h)
        if (!cone.isConeHyperplane(h) && !coll.activated.count(h)) cand.push_back(h);
      const int h = selectHyperplane(Criterion::H1, cone, cand, allRays, coll, sic.alpha);
      if (h < 0) break;
      pha1Activate(cone, h, allRays, coll, {true, round + 1});
    }
    double zLow = kInf, zHigh = kInf;
    for (const auto& p : coll.points) {
      const double v = base + p.coords.dot(costs);
      zLow = std::min(zLow, v);
      if (p.isFinal) zHigh = std::min(zHigh, v);
    }
    for (const auto& r : coll.rays)
      if (r.coords.dot(costs) < -kEps) zLow = -kInf;
    const QSplit qs = QSplit::from(geom.split());
    const QBound closure = skClosureOpt(P, qs, c);
    if (zHigh < kInf && closure.finite()) {
      ++sum.checked;
      const double z = closure.toDouble();
      const double tol = 1e-6 * (1.0 + std::fabs(z));
      if (!(zLow <= z + tol && z <= zHigh + tol)) {
        ++sum.violations;
        os << "split x" << k << ": " << zLow << " <= " << z << " <= " << zHigh << " fails; ";
      }
    }
    try {
      const QCone qc = QCone::fromTight(P, sol.tight);
      std::vector<int> rest;
      for (int h = 0; h < P.numRows(); ++h)
        if (std::find(sol.tight.begin(), sol.tight.end(), h) == sol.tight.end()) rest.push_back(h);
      const QCollection full = fullActivation(P, qc, rest, qs);
      std::optional<Rational> best;
      for (size_t i = 0; i < full.points.size(); ++i)
        if (full.isFinal[i]) {
          const Rational v = dot(c, full.points[i]);
          if (!best || v < *best) best = v;
        }
      if (best) {
        ++sum.fullChecked;
        if (!closure.finite() || *best != closure.value) {
          ++sum.fullMismatches;
          os << "split x" << k << ": final-point minimum " << toString(*best) << " differs from closure "
             << closure.str() << "; ";
        }
      }
    } catch (const SizeGuardError& e) {
      os << "split x" << k << ": full activation refused (" << e.what() << "); ";
    }
  }
  sum.detail = os.str();
  return sum;
}

GrowthComparison compareGrowth(unsigned seed, int n, int kh) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (;;) {
    QPolyhedron p;
    p.n = n;
    QVec apex(n);
    for (int k = 0; k < n; ++k) apex[k] = randomRational(rng, 0, 2, 4);
    apex[0] = Rational(1, 2);
    for (int j = 0; j < n; ++j) {
      QVec a(n, 0);
      a[j] = 2;
      for (int k = 0; k < n; ++k)
        if (k != j && coef(rng) > 1) a[k] = coef(rng);
      p.addRow(a, dot(a, apex));
    }
    if (rankExact(p.A) < n) continue;
    std::vector<int> tight(n);
    for (int j = 0; j < n; ++j) tight[j] = j;
    QCone qc = QCone::fromTight(p, tight);
    QSplit s{0, Rational(0), Rational(1)};
    auto steps = initialSteps(qc, s);
    if (std::any_of(steps.begin(), steps.end(), [](const auto& t) { return !t; })) continue;

    // Each hyperplane cuts about half of the rays at 30-90% of their boundary distance.
    QMatrix inv;
    invertExact(p.A, inv);
    for (int h = 0; h < kh; ++h) {
      QVec w(n);
      for (int j = 0; j < n; ++j) {
        if (pick(rng) < n / 2)
          w[j] = -1 / (*steps[j] * randomRational(rng, 0, 1, 10) + *steps[j] * Rational(3, 10));
        else
          w[j] = randomRational(rng, 0, 1, 5);
      }
      QVec a(n, 0);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) a[k] += w[j] * p.A[j][k];
      p.addRow(a, dot(a, apex) - 1);
    }
    std::vector<Hyperplane> hps;
    for (int i = 0; i < p.numRows(); ++i) hps.push_back({i, toDouble(p.A[i]), toDouble(p.b[i]), "h" + std::to_string(i)});
    const Cone cone = Cone::fromTight(hps, toDouble(apex), tight);
    SplitGeometry geom(cone, SplitSet::simple(0, 0.5));
    auto coll = initialCollection(cone, geom);
    GrowthComparison out;
    std::vector<int> act;
    for (int h = 0; h < kh; ++h) {
      act.push_back(n + h);
      out.fullPoints.push_back(static_cast<int>(fullActivation(p, qc, act, s).points.size()));
      pha1Activate(cone, n + h, tight, coll, {true, h + 1});  // ray j is opposite tight row j
      out.phaPoints.push_back(static_cast<int>(coll.points.size()));
    }
    return out;
  }
}

}  // namespace gic
