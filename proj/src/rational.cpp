/**
 * @file rational.cpp
 */
#include "gic/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace gic {

Rational parseDecimal(const std::string& text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool neg = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;  // number of digits after the decimal point
  bool sawDigit = false;
  bool sawPoint = false;
  for (; i < n; ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      sawDigit = true;
      if (sawPoint) ++scale;
    } else if (ch == '.' && !sawPoint) {
      sawPoint = true;
    } else {
      break;
    }
  }
  if (!sawDigit) throw std::invalid_argument("not a number: '" + text + "'");
  long exponent = 0;
  if (i < n && (text[i] == 'e' || text[i] == 'E' || text[i] == 'd' || text[i] == 'D')) {
    ++i;
    bool eneg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("bad exponent: '" + text + "'");
    for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 4000) throw std::invalid_argument("exponent out of range: '" + text + "'");
    }
    if (eneg) exponent = -exponent;
  }
  while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != n) throw std::invalid_argument("trailing characters in number: '" + text + "'");

  mpz_class num(digits, 10);
  const long shift = exponent - scale;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q;
  if (shift >= 0) {
    q = Rational(num * pow10);
  } else {
    q = Rational(num, pow10);
    q.canonicalize();
  }
  if (neg) q = -q;
  return q;
}

Rational snapRational(double v, double tol) {
  const double target = v;
  const double eps = tol * std::max(1.0, std::fabs(v));
  // Continued-fraction convergents h/k of v until one is within eps.
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(x);
    const mpz_class ai(a);
    const mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    Rational q(h1, k1);
    q.canonicalize();
    if (std::fabs(q.get_d() - target) <= eps) return q;
    const double frac = x - a;
    if (frac == 0.0) break;
    x = 1.0 / frac;
  }
  return fromDouble(v);
}

std::string toString(const Rational& q) { return q.get_str(); }

QVec toRational(const std::vector<double>& v) {
  QVec out;
  out.reserve(v.size());
  for (double d : v) out.emplace_back(d);
  return out;
}

std::vector<double> toDouble(const QVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

bool solveExact(QMatrix m, QVec rhs, QVec& x) {
  const int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(m[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (int j = col; j < n; ++j)
        if (sgn(m[col][j]) != 0) m[r][j] -= f * m[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  x.assign(n, Rational(0));
  for (int r = n - 1; r >= 0; --r) {
    Rational s = rhs[r];
    for (int j = r + 1; j < n; ++j)
      if (sgn(m[r][j]) != 0) s -= m[r][j] * x[j];
    x[r] = s / m[r][r];
  }
  return true;
}

int rankExact(QMatrix m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (sgn(m[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[rank][col];
      for (int j = col; j < cols; ++j)
        if (sgn(m[rank][j]) != 0) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

bool invertExact(const QMatrix& m, QMatrix& inv) {
  const int n = static_cast<int>(m.size());
  inv.assign(n, QVec(n, Rational(0)));
  for (int j = 0; j < n; ++j) {
    QVec e(n, Rational(0));
    e[j] = 1;
    QVec col;
    if (!solveExact(m, e, col)) return false;
    for (int i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return true;
}

}  // namespace gic
