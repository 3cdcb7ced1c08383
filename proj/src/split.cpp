/**
 * @file split.cpp
 * @brief Split geometry, point-ray collections, SICs and cut measures.
 */
#include "gic/split.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gic {

SplitSet SplitSet::simple(int k, double value) {
  SplitSet s;
  s.terms.push_back({k, std::floor(value), std::floor(value) + 1.0});
  return s;
}

bool SplitSet::contains(const Vec& x, double tol) const {
  for (const auto& t : terms)
    if (x[t.var] < t.lo - tol || x[t.var] > t.hi + tol) return false;
  return true;
}

bool SplitSet::interior(const Vec& x, double tol) const {
  for (const auto& t : terms)
    if (x[t.var] <= t.lo + tol || x[t.var] >= t.hi - tol) return false;
  return true;
}

bool SplitSet::onBoundary(const Vec& x, double tol) const { return contains(x, tol) && !interior(x, tol); }

std::string SplitSet::label() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " x ";
    os << terms[i].lo << "<=x" << terms[i].var << "<=" << terms[i].hi;
  }
  return os.str();
}

std::vector<int> fractionalIndices(const Vec& x, const std::vector<bool>& integer, double tol) {
  std::vector<int> out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k >= integer.size() || !integer[k]) continue;
    double f = x[k] - std::floor(x[k]);
    if (f >= tol && f <= 1.0 - tol) out.push_back(static_cast<int>(k));
  }
  return out;
}

SplitGeometry::SplitGeometry(const Cone& cone, SplitSet split) : split_(std::move(split)) {
  const int n = cone.dim();
  for (const auto& t : split_.terms) {
    apexValue_.push_back(cone.apex()[t.var]);
    Vec r(n);
    for (int j = 0; j < n; ++j) {
      double v = cone.rayEntry(t.var, j);
      r[j] = std::fabs(v) < 1e-12 ? 0.0 : v;
    }
    rayRate_.push_back(std::move(r));
  }
}

double SplitGeometry::value(int t, const SparseVec& s) const { return apexValue_[t] + s.dot(rayRate_[t]); }

double SplitGeometry::rate(int t, const SparseVec& d) const { return d.dot(rayRate_[t]); }

double SplitGeometry::exitParameter(const SparseVec& p, const SparseVec& d, int* facet) const {
  double best = kInf;
  int bestFacet = -1;
  for (std::size_t t = 0; t < split_.terms.size(); ++t) {
    const auto& term = split_.terms[t];
    double v = value(static_cast<int>(t), p);
    double r = rate(static_cast<int>(t), d);
    if (std::fabs(r) <= 1e-12) continue;
    double tt;
    int f;
    if (r > 0) {
      tt = (term.hi - v) / r;
      f = 2 * static_cast<int>(t) + 1;
    } else {
      tt = (term.lo - v) / r;
      f = 2 * static_cast<int>(t);
    }
    tt = std::max(tt, 0.0);
    if (tt < best) {
      best = tt;
      bestFacet = f;
    }
  }
  if (facet) *facet = bestFacet;
  return best;
}

double SplitGeometry::boundaryDistance(int j) const {
  SparseVec d;
  d.push(j, 1.0);
  return exitParameter(SparseVec{}, d);
}

int SplitGeometry::facetOf(const SparseVec& p, double tol) const {
  for (std::size_t t = 0; t < split_.terms.size(); ++t) {
    double v = value(static_cast<int>(t), p);
    double scale = 1.0 + std::fabs(v);
    if (std::fabs(v - split_.terms[t].lo) <= tol * scale) return 2 * static_cast<int>(t);
    if (std::fabs(v - split_.terms[t].hi) <= tol * scale) return 2 * static_cast<int>(t) + 1;
  }
  return -1;
}

bool SplitGeometry::inside(const SparseVec& p, double tol) const {
  for (std::size_t t = 0; t < split_.terms.size(); ++t) {
    double v = value(static_cast<int>(t), p);
    if (v < split_.terms[t].lo - tol || v > split_.terms[t].hi + tol) return false;
  }
  return true;
}

bool SplitGeometry::strictlyInside(const SparseVec& p, double tol) const {
  for (std::size_t t = 0; t < split_.terms.size(); ++t) {
    double v = value(static_cast<int>(t), p);
    if (v <= split_.terms[t].lo + tol || v >= split_.terms[t].hi - tol) return false;
  }
  return true;
}

namespace {

SparseVec canonical(const SparseVec& v) {
  std::vector<std::pair<int, double>> e;
  for (std::size_t k = 0; k < v.idx.size(); ++k)
    if (std::fabs(v.val[k]) > 1e-12) e.emplace_back(v.idx[k], v.val[k]);
  std::sort(e.begin(), e.end());
  SparseVec out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (!out.idx.empty() && out.idx.back() == e[k].first)
      out.val.back() += e[k].second;
    else
      out.push(e[k].first, e[k].second);
  }
  return out;
}

bool closeSame(const SparseVec& a, const SparseVec& b, double tol) {
  if (a.idx != b.idx) return false;
  for (std::size_t k = 0; k < a.val.size(); ++k)
    if (std::fabs(a.val[k] - b.val[k]) > tol) return false;
  return true;
}

}  // namespace

bool PointRayCollection::addPoint(CollectionElem e) {
  e.coords = canonical(e.coords);
  auto& bucket = pointIndex_[e.coords.idx];
  for (int i : bucket)
    if (closeSame(points[i].coords, e.coords, kEps)) return false;
  bucket.push_back(static_cast<int>(points.size()));
  points.push_back(std::move(e));
  return true;
}

bool PointRayCollection::addRay(CollectionElem e) {
  e.coords = canonical(e.coords);
  double m = 0.0;
  for (double v : e.coords.val) m = std::max(m, std::fabs(v));
  if (m <= 1e-12) return false;
  for (double& v : e.coords.val) v /= m;
  auto& bucket = rayIndex_[e.coords.idx];
  for (int i : bucket)
    if (closeSame(rays[i].coords, e.coords, kEps)) return false;
  bucket.push_back(static_cast<int>(rays.size()));
  rays.push_back(std::move(e));
  return true;
}

void PointRayCollection::removeMarked(const std::vector<bool>& pointMask, const std::vector<bool>& rayMask) {
  std::vector<CollectionElem> p, r;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (i >= pointMask.size() || !pointMask[i]) p.push_back(std::move(points[i]));
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (i >= rayMask.size() || !rayMask[i]) r.push_back(std::move(rays[i]));
  points = std::move(p);
  rays = std::move(r);
  reindex();
}

void PointRayCollection::reindex() {
  pointIndex_.clear();
  rayIndex_.clear();
  for (std::size_t i = 0; i < points.size(); ++i) pointIndex_[points[i].coords.idx].push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < rays.size(); ++i) rayIndex_[rays[i].coords.idx].push_back(static_cast<int>(i));
}

int PointRayCollection::numFinalPoints() const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [](const auto& e) { return e.isFinal; }));
}

int PointRayCollection::numFinalRays() const {
  return static_cast<int>(std::count_if(rays.begin(), rays.end(), [](const auto& e) { return e.isFinal; }));
}

bool pointInP(const Cone& cone, const SparseVec& s, double tol) {
  for (int h = 0; h < cone.numHyperplanes(); ++h) {
    double v = cone.hyperplaneValue(h, s);
    if (v < -tol * (1.0 + std::fabs(cone.hyperplanes()[h].b))) return false;
  }
  return true;
}

bool rayInP(const Cone& cone, const SparseVec& d, double tol) {
  double scale = 0.0;
  for (double v : d.val) scale = std::max(scale, std::fabs(v));
  for (int h = 0; h < cone.numHyperplanes(); ++h)
    if (cone.hyperplaneRate(h, d) < -tol * std::max(1.0, scale)) return false;
  return true;
}

PointRayCollection initialCollection(const Cone& cone, const SplitGeometry& geom) {
  PointRayCollection c(&geom);
  const int n = cone.dim();
  c.initialDistance.assign(n, kInf);
  for (int j = 0; j < n; ++j) {
    SparseVec dir;
    dir.push(j, 1.0);
    int facet = -1;
    double d = geom.exitParameter(SparseVec{}, dir, &facet);
    c.initialDistance[j] = d;
    CollectionElem e;
    e.originRay = kApex;
    e.hyperplane = kBoundaryInit;
    e.edgeDir = dir;
    if (isInf(d)) {
      e.coords = dir;
      e.isFinal = rayInP(cone, dir);
      c.parallelRays.push_back(j);
      c.addRay(std::move(e));
    } else {
      e.coords.push(j, d);
      e.facet = facet;
      e.isFinal = pointInP(cone, e.coords);
      c.addPoint(std::move(e));
    }
  }
  return c;
}

double dynamism(const Vec& v) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::fabs(x));
  if (mx == 0.0) return 1.0;
  double mn = kInf;
  for (double x : v)
    if (std::fabs(x) > kEps * mx) mn = std::min(mn, std::fabs(x));
  return mx / mn;
}

double efficacy(const Inequality& q, const Vec& x) {
  double nrm = norm2(q.pi);
  if (nrm <= 0.0) return 0.0;
  return q.violationAt(x) / nrm;
}

Cut sicFromInitial(const Cone& cone, const PointRayCollection& coll) {
  Cut cut;
  cut.splitVar = coll.split().var();
  cut.family = "SIC";
  cut.algorithm = "SIC";
  if (coll.points.empty()) return cut;
  const int n = cone.dim();
  cut.alpha.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    if (!isInf(coll.initialDistance[j]) && coll.initialDistance[j] > 0.0) cut.alpha[j] = 1.0 / coll.initialDistance[j];
  cut.structural = structuralImage(cone, cut.alpha, 1.0);
  cut.efficacy = efficacy(cut.structural, cone.apex());
  cut.dynamism = dynamism(cut.alpha);
  return cut;
}

double pointDepth(const SparseVec& p, const Vec& sicAlpha) {
  double nrm = norm2(sicAlpha);
  if (nrm <= 0.0) return 0.0;
  return std::max(0.0, (p.dot(sicAlpha) - 1.0) / nrm);
}

}  // namespace gic
