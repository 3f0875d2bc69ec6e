#include "wpp/matrix.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wpp {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw ArgumentError("matrix dimensions do not match");
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(r, k);
      if (x == 0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) += x * b(k, c);
    }
  return m;
}

namespace {

// Fraction-free elimination to row-echelon form; returns rank and the sign of the row swaps.
std::size_t bareiss(IntMatrix& m, int& sign) {
  std::size_t rows = m.rows(), cols = m.cols(), r = 0;
  Integer prev = 1;
  sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(i, j) = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

}  // namespace

std::size_t IntMatrix::rank() const {
  IntMatrix m = *this;
  int sign;
  return bareiss(m, sign);
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw ArgumentError("determinant of a non-square matrix");
  if (rows_ == 0) return 1;
  IntMatrix m = *this;
  int sign;
  if (bareiss(m, sign) < rows_) return 0;
  return sign * m(rows_ - 1, cols_ - 1);
}

std::vector<Integer> IntMatrix::smith_invariants() const {
  IntMatrix m = *this;
  std::size_t rows = rows_, cols = cols_;
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the remaining block goes to (t, t).
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (m(r, c) != 0 && (pr == rows || abs(m(r, c)) < abs(m(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr == rows) {
        std::sort(diag.begin(), diag.end());
        return diag;
      }
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(t, c), m(pr, c));
      for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, t), m(r, pc));
      bool clean = true;
      const Integer p = m(t, t);
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m(r, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(r, t).get_mpz_t(), p.get_mpz_t());
        for (std::size_t c = t; c < cols; ++c) m(r, c) -= q * m(t, c);
        if (m(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m(t, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, c).get_mpz_t(), p.get_mpz_t());
        for (std::size_t r = t; r < rows; ++r) m(r, c) -= q * m(r, t);
        if (m(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold a row with an entry not divisible by the pivot into row t.
      std::size_t bad = rows;
      for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (m(r, c) % p != 0) {
            bad = r;
            break;
          }
      if (bad == rows) break;
      for (std::size_t c = t; c < cols; ++c) m(t, c) += m(bad, c);
    }
    diag.push_back(abs(m(t, t)));
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::vector<std::vector<Integer>> IntMatrix::nullspace() const {
  std::vector<std::vector<Rational>> a(rows_, std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) a[r][c] = (*this)(r, c);
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a[p][c] == 0) ++p;
    if (p == rows_) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != r && a[i][c] != 0) {
        Rational f = a[i][c];
        for (std::size_t j = 0; j < cols_; ++j) a[i][j] -= f * a[r][j];
      }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<char> is_pivot(cols_, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Integer>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols_);
    v[f] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a[k][f];
    Integer l = 1;
    for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> w(cols_);
    Integer g = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      Rational s = v[k] * l;
      w[k] = s.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[k].get_mpz_t());
    }
    for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    basis.push_back(std::move(w));
  }
  return basis;
}

bool IntMatrix::is_upper_triangular() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < std::min(r, cols_); ++c)
      if ((*this)(r, c) != 0) return false;
  return true;
}

std::string IntMatrix::to_triplets() const {
  std::ostringstream os;
  std::size_t nnz = 0;
  for (const auto& x : a_) nnz += x != 0;
  os << rows_ << ' ' << cols_ << ' ' << nnz << '\n';
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0) os << r << ' ' << c << ' ' << (*this)(r, c).get_str() << '\n';
  return os.str();
}

SmithResult sparse_smith(std::vector<SparseIntVector> rows) {
  SmithResult res;
  std::map<int, std::set<int>> col_rows;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, v] : rows[r]) col_rows[c].insert(static_cast<int>(r));
  std::vector<char> alive(rows.size(), 1);

  auto eliminate = [&](int r, int c) {
    const Integer p = rows[r].at(c);  // +-1
    std::vector<int> targets(col_rows[c].begin(), col_rows[c].end());
    for (int s : targets) {
      if (s == r) continue;
      Integer f = rows[s].at(c) * p;
      for (auto& [cc, v] : rows[r]) {
        Integer& e = rows[s][cc];
        bool was_zero = e == 0;
        e -= f * v;
        if (e == 0) {
          rows[s].erase(cc);
          col_rows[cc].erase(s);
        } else if (was_zero) {
          col_rows[cc].insert(s);
        }
      }
    }
    for (auto& [cc, v] : rows[r]) col_rows[cc].erase(r);
    col_rows.erase(c);
    rows[r].clear();
    alive[r] = 0;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!alive[r]) continue;
      if (rows[r].empty()) {
        alive[r] = 0;
        continue;
      }
      int best = -1;
      std::size_t best_count = 0;
      for (auto& [c, v] : rows[r])
        if ((v == 1 || v == -1) && (best < 0 || col_rows[c].size() < best_count)) {
          best = c;
          best_count = col_rows[c].size();
        }
      if (best < 0) continue;
      eliminate(static_cast<int>(r), best);
      res.unit_pivots++;
      progress = true;
    }
  }

  std::vector<int> left_rows;
  std::map<int, int> left_cols;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (alive[r] && !rows[r].empty()) {
      left_rows.push_back(static_cast<int>(r));
      for (auto& [c, v] : rows[r]) left_cols.emplace(c, 0);
    }
  int k = 0;
  for (auto& [c, idx] : left_cols) idx = k++;
  res.dense_remainder = left_rows.size();
  res.rank = res.unit_pivots;
  if (!left_rows.empty()) {
    IntMatrix d(left_rows.size(), left_cols.size());
    for (std::size_t i = 0; i < left_rows.size(); ++i)
      for (auto& [c, v] : rows[left_rows[i]]) d(i, left_cols[c]) = v;
    for (auto& x : d.smith_invariants()) {
      res.rank++;
      if (x != 1) res.torsion.push_back(x);
    }
  }
  return res;
}

SparseRatVector to_rational(const SparseIntVector& v) {
  SparseRatVector out;
  for (auto& [c, x] : v) out.emplace(c, Rational(x));
  return out;
}

namespace {

void axpy(SparseRatVector& v, const Rational& f, const SparseRatVector& p) {
  for (auto& [c, x] : p) {
    auto [it, inserted] = v.try_emplace(c, 0);
    it->second -= f * x;
    if (it->second == 0) v.erase(it);
  }
}

}  // namespace

void RationalEchelon::reduce(SparseRatVector& v, SparseRatVector* combo) const {
  while (!v.empty()) {
    auto it = rows_.find(v.begin()->first);
    if (it == rows_.end()) return;
    Rational f = v.begin()->second;
    axpy(v, f, it->second.v);
    if (combo) axpy(*combo, -f, it->second.combo);
  }
}

bool RationalEchelon::insert(const SparseRatVector& v, int generator) {
  SparseRatVector w = v;
  SparseRatVector combo;
  if (track_) {
    if (generator < 0) throw ArgumentError("tracked echelon needs a generator id");
    combo[generator] = 1;
  }
  // reduce() adds +f*combo_k for each subtraction; we want e_g - sum f*combo_k.
  SparseRatVector acc;
  reduce(w, track_ ? &acc : nullptr);
  if (w.empty()) return false;
  Rational lead = w.begin()->second;
  for (auto& [c, x] : w) x /= lead;
  if (track_) {
    axpy(combo, 1, acc);
    for (auto& [c, x] : combo) x /= lead;
  }
  int col = w.begin()->first;
  rows_.emplace(col, Row{std::move(w), std::move(combo)});
  return true;
}

bool RationalEchelon::contains(const SparseRatVector& v) const {
  SparseRatVector w = v;
  reduce(w, nullptr);
  return w.empty();
}

std::optional<SparseRatVector> RationalEchelon::express(const SparseRatVector& v) const {
  if (!track_) throw ArgumentError("echelon form does not track generators");
  SparseRatVector w = v;
  SparseRatVector acc;
  reduce(w, &acc);
  if (!w.empty()) return std::nullopt;
  // v = sum f_k row_k and acc = sum f_k combo_k.
  return acc;
}

}  // namespace wpp
