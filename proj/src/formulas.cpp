#include "wpp/formulas.hpp"

namespace wpp::formula {

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer power(long base, unsigned long exponent) {
  Integer r;
  Integer b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exponent);
  return r;
}

Integer rank_size(int n, int k) { return binomial(n, k) * power(n - k, k); }

IntPolynomial rank_generating_function(int n) {
  std::vector<Integer> c;
  for (int k = 0; k < n; ++k) c.push_back(rank_size(n, k));
  return IntPolynomial(std::move(c));
}

IntPolynomial drake_product(int n) {
  IntPolynomial p{1};
  for (int i = 1; i <= n - 1; ++i) p *= IntPolynomial{n - i, i};
  return p;
}

IntPolynomial mu_product(int n) {
  IntPolynomial p = drake_product(n);
  return (n - 1) % 2 == 0 ? p : -p;
}

Integer mu_augmented(int n) {
  Integer v = power(n - 1, static_cast<unsigned long>(n - 1));
  return n % 2 == 0 ? v : Integer(-v);
}

IntPolynomial characteristic_polynomial(int n) {
  return pow(IntPolynomial{-n, 1}, static_cast<unsigned>(n - 1));
}

std::vector<Integer> whitney_first(int n) {
  std::vector<Integer> w;
  for (int k = 0; k < n; ++k) {
    Integer v = binomial(n - 1, k) * power(n, k);
    w.push_back(k % 2 == 0 ? v : Integer(-v));
  }
  return w;
}

std::vector<Integer> whitney_second(int n) {
  std::vector<Integer> w;
  for (int k = 0; k < n; ++k) w.push_back(rank_size(n, k));
  return w;
}

Matrix whitney_matrix_first(int n) {
  Matrix a(n, std::vector<Integer>(n, Integer(0)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) {
      Integer v = binomial(i - 1, j - 1) * power(i, i - j);
      a[i - 1][j - 1] = (i - j) % 2 == 0 ? v : Integer(-v);
    }
  return a;
}

Matrix whitney_matrix_second(int n) {
  Matrix b(n, std::vector<Integer>(n, Integer(0)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) b[i - 1][j - 1] = binomial(i, j) * power(j, i - j);
  return b;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  Matrix c(rows, std::vector<Integer>(cols, Integer(0)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

bool is_identity(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  }
  return true;
}

Integer forest_count(int n, int k) { return binomial(n - 1, k - 1) * power(n, n - k); }

Integer whitney_cohomology_rank(int n, int r) { return binomial(n - 1, r) * power(n, r); }

namespace {
// Integer power allowing negative bases; 0^0 = 1. Negative exponents only arise as
// x (x-kz)^{-1} at k = 0, which the caller folds into x^0 = 1 (the k=0 term is y^n).
Integer ipow(const Integer& b, long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}
}  // namespace

bool abel_identity_holds(long x, long y, long z, int n) {
  Integer lhs = ipow(Integer(x + y), n);
  Integer rhs = 0;
  for (int k = 0; k <= n; ++k) {
    Integer term = binomial(n, k) * ipow(Integer(y + k * z), n - k);
    if (k == 0) {
      rhs += term;  // x (x)^{-1} = 1 as a polynomial identity
    } else {
      rhs += term * x * ipow(Integer(x - k * z), k - 1);
    }
  }
  return lhs == rhs;
}

}  // namespace wpp::formula
