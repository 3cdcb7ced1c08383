/**
 * @file common.hpp
 * @brief Shared numeric types, tolerances and error classes.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gic {

using Vec = std::vector<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

/** Zero tolerance used by every floating-point comparison in cut generation. */
constexpr double kEps = 1e-7;
/** Fractionality tolerance for choosing split variables. */
constexpr double kFracTol = 1e-3;
/** Largest accepted ratio between the largest and smallest nonzero cut coefficient. */
constexpr double kMaxDynamism = 1e6;

inline bool isInf(double v) { return std::isinf(v); }

/** Error raised for problems in input files; carries the offending line when known. */
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/** Model features outside what the toolkit handles (free variables, SOS, ...). */
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** The tight system defining the corner cone is numerically singular. */
class DegenerateBasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A tilted activation would cut a ray that was cut earlier without including it in R_A. */
class TiltRuleViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A hyperplane offered for activation is violated at the LP optimum. */
class InvalidHyperplaneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Oracle refuses inputs above its enumeration size guard. */
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Sparse vector with sorted indices. */
struct SparseVec {
  std::vector<int> idx;
  std::vector<double> val;

  std::size_t size() const { return idx.size(); }
  bool empty() const { return idx.empty(); }
  void push(int i, double v) {
    idx.push_back(i);
    val.push_back(v);
  }
  double dot(const Vec& dense) const {
    double s = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) s += val[k] * dense[idx[k]];
    return s;
  }
  Vec toDense(int n) const {
    Vec d(n, 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k) d[idx[k]] += val[k];
    return d;
  }
  double get(int i) const {
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (idx[k] == i) return val[k];
    return 0.0;
  }
  /** Builds a sparse vector from a dense one, dropping entries with |v| <= drop. */
  static SparseVec fromDense(const Vec& d, double drop = 0.0) {
    SparseVec s;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
      if (std::fabs(d[i]) > drop) s.push(i, d[i]);
    return s;
  }
};

/** Row-major dense matrix. */
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
  const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }
  Vec column(int j) const {
    Vec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

/** In-place inverse by Gauss-Jordan elimination with partial pivoting.
 *  @return false if a pivot falls below @p singularTol relative to the largest entry. */
bool invertInPlace(DenseMatrix& m, double singularTol = 1e-12);

}  // namespace gic
