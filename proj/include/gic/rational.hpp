/**
 * @file rational.hpp
 * @brief Exact rational helpers on top of GMP.
 */
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gic {

using Rational = mpq_class;
using QVec = std::vector<Rational>;
using QMatrix = std::vector<QVec>;

/** Parses a decimal literal such as "-12.5e-3" exactly. Throws std::invalid_argument. */
Rational parseDecimal(const std::string& text);

/** Exact rational value of a double (every finite double is a dyadic rational). */
inline Rational fromDouble(double v) { return Rational(v); }

/** Simplest continued-fraction convergent within tol * max(1, |v|) of v (v itself when none). */
Rational snapRational(double v, double tol = 1e-9);

inline double toDouble(const Rational& q) { return q.get_d(); }

std::string toString(const Rational& q);

QVec toRational(const std::vector<double>& v);
std::vector<double> toDouble(const QVec& v);

Rational dot(const QVec& a, const QVec& b);

/** Solves the square system M x = rhs exactly. Returns false when M is singular. */
bool solveExact(QMatrix m, QVec rhs, QVec& x);

/** Rank of a rational matrix (rows are vectors). */
int rankExact(QMatrix m);

/** Inverse of a square rational matrix; returns false when singular. */
bool invertExact(const QMatrix& m, QMatrix& inv);

}  // namespace gic
