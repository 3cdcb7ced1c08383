/**
 * @file instance.hpp
 * @brief MILP instances, MPS input and the normalized form {x : Ax >= b, x >= 0}.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gic/common.hpp"
#include "gic/rational.hpp"

namespace gic {

enum class RowSense { GE, LE, EQ };

using QSparseRow = std::vector<std::pair<int, Rational>>;

/**
 * MILP data. Objective is always stored in minimization form; `maximize`
 * remembers the original sense so values can be reported in the file's terms.
 *
 * After toStandardForm() every row reads a_i^T x >= b_i, every variable has
 * lower bound 0 and no upper bound, and `shift`/`sign` translate back:
 * x_original = shift + sign * x_standard.
 */
struct Instance {
  std::string name;
  bool maximize = false;
  bool standard = false;

  std::vector<std::string> colNames;
  std::vector<std::string> rowNames;
  std::vector<QSparseRow> rows;
  std::vector<RowSense> sense;
  std::vector<Rational> rhs;
  std::vector<std::optional<Rational>> range;
  QVec obj;
  Rational objConstant = 0;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<bool> integer;

  QVec shift;
  std::vector<int> sign;
  /** For standard-form rows: index of the originating row, or -(j+1) for an upper bound of column j. */
  std::vector<int> rowOrigin;

  int numRows() const { return static_cast<int>(rows.size()); }
  int numCols() const { return static_cast<int>(colNames.size()); }

  /** Dense floating copies (valid for any instance). */
  DenseMatrix denseA() const;
  Vec rhsVec() const;
  Vec objVec() const;
  std::vector<int> integerIndices() const;

  /** Objective value in the original file's sense for a point of this instance. */
  double reportObjective(double minFormValue) const {
    const double v = minFormValue + objConstant.get_d();
    return maximize ? -v : v;
  }
  /** Maps a solution of this (standard-form) instance back to original variables. */
  Vec toOriginal(const Vec& x) const;
};

/** Reads fixed- or free-format MPS. Throws ParseError naming the line. */
Instance parseMps(const std::string& path);
Instance parseMpsText(const std::string& text, const std::string& name = "model");

/** Normalizes to {x : Ax >= b, x >= 0}. Throws UnsupportedError for free variables. */
Instance toStandardForm(const Instance& inst);

/** Known LP/IP optima keyed by instance name. */
struct KnownOptima {
  struct Entry {
    double optLp = 0.0;
    double optIp = 0.0;
  };
  std::map<std::string, Entry> entries;
  const Entry* find(const std::string& name) const {
    auto it = entries.find(name);
    return it == entries.end() ? nullptr : &it->second;
  }
};

/** CSV with header `name,opt_lp,opt_ip`. Throws ParseError on non-numeric values. */
KnownOptima loadKnownOptima(const std::string& path);
KnownOptima parseKnownOptima(const std::string& text);

}  // namespace gic
