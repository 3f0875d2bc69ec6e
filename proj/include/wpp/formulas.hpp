#pragma once

#include <vector>

#include "wpp/common.hpp"
#include "wpp/polynomial.hpp"

namespace wpp::formula {

Integer binomial(long n, long k);
Integer power(long base, unsigned long exponent);

/// C(n,k)(n-k)^k: number of rank-k weighted partitions of [n].
Integer rank_size(int n, int k);
IntPolynomial rank_generating_function(int n);

/// prod_{i=1}^{n-1} ((n-i) + i t); rooted trees on [n] counted by descents.
IntPolynomial drake_product(int n);
/// (-1)^{n-1} * drake_product(n).
IntPolynomial mu_product(int n);
/// (-1)^n (n-1)^{n-1}.
Integer mu_augmented(int n);
/// (x-n)^{n-1}.
IntPolynomial characteristic_polynomial(int n);

/// (-1)^k C(n-1,k) n^k, k = 0..n-1.
std::vector<Integer> whitney_first(int n);
/// C(n,k)(n-k)^k, k = 0..n-1.
std::vector<Integer> whitney_second(int n);

using Matrix = std::vector<std::vector<Integer>>;
/// [(-1)^{i-j} C(i-1,j-1) i^{i-j}]_{1<=i,j<=n}
Matrix whitney_matrix_first(int n);
/// [C(i,j) j^{i-j}]_{1<=i,j<=n}
Matrix whitney_matrix_second(int n);
Matrix multiply(const Matrix& a, const Matrix& b);
bool is_identity(const Matrix& m);

/// C(n-1,k-1) n^{n-k}: rooted forests on [n] with k trees.
Integer forest_count(int n, int k);
/// C(n-1,r) n^r.
Integer whitney_cohomology_rank(int n, int r);

/// (x+y)^n == sum_k C(n,k) x (x-kz)^{k-1} (y+kz)^{n-k}, evaluated exactly.
bool abel_identity_holds(long x, long y, long z, int n);

}  // namespace wpp::formula
