#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "wpp/common.hpp"

namespace wpp {

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
/// coeffs()[k] is the coefficient of x^k; no trailing zeros are stored.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<long> coeffs);
  explicit IntPolynomial(std::vector<Integer> coeffs);

  static IntPolynomial monomial(const Integer& c, std::size_t k);

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  Integer operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Integer(0); }
  const std::vector<Integer>& coeffs() const { return c_; }

  Integer evaluate(const Integer& x) const;

  IntPolynomial operator-() const;
  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const IntPolynomial& o);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Integer> c_;
};

IntPolynomial pow(IntPolynomial base, unsigned exponent);

std::vector<long long> to_int64(const IntPolynomial& p);

}  // namespace wpp
