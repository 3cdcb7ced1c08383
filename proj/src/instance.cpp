/**
 * @file instance.cpp
 * @brief Standard-form normalization and known-optima table.
 */
#include <fstream>
#include <sstream>

#include "gic/instance.hpp"

namespace gic {

DenseMatrix Instance::denseA() const {
  DenseMatrix a(numRows(), numCols());
  for (int i = 0; i < numRows(); ++i)
    for (const auto& [j, v] : rows[i]) a(i, j) = v.get_d();
  return a;
}

Vec Instance::rhsVec() const { return toDouble(rhs); }

Vec Instance::objVec() const { return toDouble(obj); }

std::vector<int> Instance::integerIndices() const {
  std::vector<int> out;
  for (int j = 0; j < numCols(); ++j)
    if (integer[j]) out.push_back(j);
  return out;
}

Vec Instance::toOriginal(const Vec& x) const {
  Vec out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = shift[j].get_d() + sign[j] * x[j];
  return out;
}

Instance toStandardForm(const Instance& inst) {
  const int n = inst.numCols();
  Instance out;
  out.name = inst.name;
  out.maximize = inst.maximize;
  out.standard = true;
  out.colNames = inst.colNames;
  out.integer = inst.integer;
  out.shift.assign(n, Rational(0));
  out.sign.assign(n, 1);
  out.lower.assign(n, Rational(0));
  out.upper.assign(n, std::nullopt);

  // x_orig = shift + sign * x_std with x_std >= 0.
  std::vector<std::optional<Rational>> newUpper(n);
  for (int j = 0; j < n; ++j) {
    const auto& lo = inst.lower[j];
    const auto& up = inst.upper[j];
    if (lo) {
      out.shift[j] = inst.shift.empty() ? *lo : inst.shift[j] + inst.sign[j] * *lo;
      out.sign[j] = inst.sign.empty() ? 1 : inst.sign[j];
      if (up) newUpper[j] = *up - *lo;
    } else if (up) {
      out.shift[j] = inst.shift.empty() ? *up : inst.shift[j] + inst.sign[j] * *up;
      out.sign[j] = inst.sign.empty() ? -1 : -inst.sign[j];
    } else {
      throw UnsupportedError("free variable '" + inst.colNames[j] + "' has no finite bound");
    }
  }
  // Local substitution used while rewriting rows: x_in = base + s * x_std.
  QVec base(n);
  std::vector<int> s(n);
  for (int j = 0; j < n; ++j) {
    if (inst.lower[j]) {
      base[j] = *inst.lower[j];
      s[j] = 1;
    } else {
      base[j] = *inst.upper[j];
      s[j] = -1;
    }
  }

  out.obj.assign(n, Rational(0));
  out.objConstant = inst.objConstant;
  for (int j = 0; j < n; ++j) {
    out.obj[j] = inst.obj[j] * s[j];
    out.objConstant += inst.obj[j] * base[j];
  }

  auto emit = [&](const QSparseRow& row, const Rational& rhs, bool negate, const std::string& name,
                  int origin) {
    QSparseRow r;
    Rational b = rhs;
    for (const auto& [j, v] : row) {
      b -= v * base[j];
      r.emplace_back(j, v * s[j]);
    }
    if (negate) {
      for (auto& e : r) e.second = -e.second;
      b = -b;
    }
    out.rows.push_back(std::move(r));
    out.rhs.push_back(b);
    out.sense.push_back(RowSense::GE);
    out.range.emplace_back(std::nullopt);
    out.rowNames.push_back(name);
    out.rowOrigin.push_back(origin);
  };

  for (int i = 0; i < inst.numRows(); ++i) {
    const auto& row = inst.rows[i];
    const std::string& nm = inst.rowNames[i];
    Rational lo, hi;
    bool hasLo = false, hasHi = false;
    const Rational& b = inst.rhs[i];
    switch (inst.sense[i]) {
      case RowSense::GE:
        lo = b;
        hasLo = true;
        if (inst.range[i]) {
          hi = b + abs(*inst.range[i]);
          hasHi = true;
        }
        break;
      case RowSense::LE:
        hi = b;
        hasHi = true;
        if (inst.range[i]) {
          lo = b - abs(*inst.range[i]);
          hasLo = true;
        }
        break;
      case RowSense::EQ:
        lo = b;
        hi = b;
        hasLo = hasHi = true;
        if (inst.range[i]) {
          if (sgn(*inst.range[i]) > 0)
            hi = b + *inst.range[i];
          else
            lo = b + *inst.range[i];
        }
        break;
    }
    if (hasLo) emit(row, lo, false, hasHi ? nm + "_lo" : nm, i);
    if (hasHi) emit(row, hi, true, hasLo ? nm + "_hi" : nm, i);
  }
  for (int j = 0; j < n; ++j) {
    if (!newUpper[j]) continue;
    // -x_std >= -(u - l)
    out.rows.push_back({{j, Rational(-1)}});
    out.rhs.push_back(-*newUpper[j]);
    out.sense.push_back(RowSense::GE);
    out.range.emplace_back(std::nullopt);
    out.rowNames.push_back("ub_" + inst.colNames[j]);
    out.rowOrigin.push_back(-(j + 1));
  }
  return out;
}

KnownOptima parseKnownOptima(const std::string& text) {
  KnownOptima out;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (fields.size() == 3 && fields[0] == "name") continue;
    if (fields.size() != 3) throw ParseError("expected 3 fields", lineNo);
    KnownOptima::Entry e;
    try {
      e.optLp = parseDecimal(fields[1]).get_d();
      e.optIp = parseDecimal(fields[2]).get_d();
    } catch (const std::invalid_argument&) {
      throw ParseError("non-numeric optimum for '" + fields[0] + "'", lineNo);
    }
    out.entries[fields[0]] = e;
  }
  return out;
}

KnownOptima loadKnownOptima(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parseKnownOptima(buf.str());
}

}  // namespace gic
