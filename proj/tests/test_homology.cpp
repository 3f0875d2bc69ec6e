#include <random>

#include "doctest.h"
#include "wpp/formulas.hpp"
#include "wpp/homology.hpp"

using namespace wpp;

namespace {

WeightedPartition P(const char* s) { return WeightedPartition::parse(s); }

IntMatrix M(std::size_t r, std::size_t c, std::initializer_list<long> xs) {
  IntMatrix m(r, c);
  std::size_t k = 0;
  for (long x : xs) {
    m(k / c, k % c) = x;
    ++k;
  }
  return m;
}

ChainVector cochain_of(const BicoloredTree& t, const Poset& host, const LinearExtension& tau = {}) {
  return ChainVector::single(interior_chain(t, host, tau));
}

// Cofactor expansion; fine for the tiny matrices used here.
Integer slow_det(const IntMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    Integer term = m(0, c) * slow_det(minor);
    s += c % 2 == 0 ? term : Integer(-term);
  }
  return s;
}

}  // namespace

TEST_CASE("integer matrices") {
  IntMatrix a = M(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
  CHECK(a.determinant() == slow_det(a));
  CHECK(a.smith_invariants() == std::vector<Integer>{2, 6, 12});
  CHECK(a.rank() == 3);
  IntMatrix b = M(2, 3, {1, 2, 3, 2, 4, 6});
  CHECK(b.rank() == 1);
  auto ker = b.nullspace();
  CHECK(ker.size() == 2);
  for (auto& v : ker) CHECK(v[0] * 1 + v[1] * 2 + v[2] * 3 == 0);
  CHECK((IntMatrix::identity(2) * b) == b);
  CHECK(b.transpose().rows() == 3);
  CHECK(M(2, 2, {1, 5, 0, 1}).is_upper_triangular());
  CHECK_FALSE(M(2, 2, {1, 0, 5, 1}).is_upper_triangular());
  CHECK(b.to_triplets().rfind("2 3 6\n", 0) == 0);

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 5;
    IntMatrix m(n, n);
    std::vector<SparseIntVector> rows(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) = d(rng);
        if (m(r, c) != 0) rows[r][static_cast<int>(c)] = m(r, c);
      }
    Integer det = slow_det(m);
    CHECK(m.determinant() == det);
    auto inv = m.smith_invariants();
    Integer prod = 1;
    for (auto& x : inv) prod *= x;
    if (det != 0) CHECK(prod == abs(det));
    for (std::size_t k = 1; k < inv.size(); ++k) CHECK(inv[k] % inv[k - 1] == 0);
    SmithResult s = sparse_smith(rows);
    CHECK(s.rank == m.rank());
    std::vector<Integer> tors;
    for (auto& x : inv)
      if (x != 1) tors.push_back(x);
    CHECK(s.torsion == tors);
  }
}

TEST_CASE("rational echelon") {
  RationalEchelon e(true);
  CHECK(e.insert({{0, 1}, {1, 1}}, 0));
  CHECK(e.insert({{1, 1}, {2, 1}}, 1));
  CHECK_FALSE(e.insert({{0, 1}, {2, -1}}, 2));
  CHECK(e.rank() == 2);
  SparseRatVector v{{0, 2}, {1, 5}, {2, 3}};
  CHECK(e.contains(v));
  auto c = e.express(v);
  REQUIRE(c);
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 3);
  CHECK_FALSE(e.express({{2, 1}}));
}

TEST_CASE("chain complexes") {
  Poset p = Poset::build(4, Variant::weighted);
  OrderComplex k = OrderComplex::open_interval(p, 0, p.maximal(1));
  CHECK(k.length() == 1);
  for (int r = 0; r <= k.length(); ++r) {
    IntMatrix lower = k.boundary_matrix(r), upper = k.boundary_matrix(r + 1);
    if (upper.cols() > 0) {
      IntMatrix z = lower * upper;
      CHECK(z == IntMatrix(z.rows(), z.cols()));
    }
    for (auto& c : k.chains(r)) {
      ChainVector v = ChainVector::single(c);
      CHECK(k.boundary(k.boundary(v)).is_zero());
      CHECK(k.coboundary(k.coboundary(v)).is_zero());
      for (auto& d : k.chains(r + 1))
        CHECK(pairing(k.coboundary(v), ChainVector::single(d)) == pairing(v, k.boundary(ChainVector::single(d))));
    }
  }
  CHECK(k.coboundary(ChainVector::single({})).terms.size() == k.elements().size());
  CHECK_THROWS_AS(ChainVector(2).add({1}, 1), ArgumentError);
}

TEST_CASE("Betti numbers of small intervals") {
  Poset p3 = Poset::build(3, Variant::weighted);
  CHECK(betti_numbers(OrderComplex::open_interval(p3, 0, p3.maximal(1))).betti == std::vector<long long>{0, 5});
  CHECK(betti_numbers(OrderComplex::open_interval(p3, 0, p3.maximal(0))).betti == std::vector<long long>{0, 2});
  Poset a3 = Poset::build(3, Variant::weighted_augmented);
  auto top = betti_numbers(OrderComplex::without_bottom(a3));
  CHECK(top.length == 1);
  CHECK(top.betti == std::vector<long long>{0, 0, 4});
  // A cover relation has an empty open interval: reduced homology in dimension -1.
  CHECK(betti_numbers(OrderComplex::open_interval(p3, 0, p3.index_of(P("{12^0,3^0}")))).betti ==
        std::vector<long long>{1});
  for (int n = 1; n <= 4; ++n) {
    Poset p = Poset::build(n, Variant::weighted);
    IntPolynomial d = descent_polynomial(n);
    for (int i = 0; i < n; ++i) {
      if (n == 1) continue;
      auto h = betti_numbers(OrderComplex::open_interval(p, 0, p.maximal(i)));
      CHECK(h.length == n - 3);
      for (int r = -1; r < n - 3; ++r) CHECK(h.betti[r + 1] == 0);
      CHECK(Integer(static_cast<long>(h.betti.back())) == d[i]);
      CHECK(h.top_torsion_free);
    }
    Poset a = Poset::build(n, Variant::weighted_augmented);
    auto h = betti_numbers(OrderComplex::without_bottom(a));
    CHECK(Integer(static_cast<long>(h.betti.back())) == formula::power(n - 1, n - 1));
    CHECK(h.top_torsion_free);
    CHECK(to_json(h)["betti"].size() == h.betti.size());
  }
}

TEST_CASE("coboundaries") {
  Poset p = Poset::build(3, Variant::weighted);
  OrderComplex k = OrderComplex::open_interval(p, 0, p.maximal(1));
  CoboundarySpace b(k, 0, true);
  CHECK(b.corank() == 5);
  Chain c = k.chains(0).front();
  CHECK_FALSE(b.contains(ChainVector::single(c)));
  CHECK_FALSE(b.witness(ChainVector::single(c)));

  Poset q = Poset::build(4, Variant::weighted);
  OrderComplex k4 = OrderComplex::open_interval(q, 0, q.maximal(1));
  CoboundarySpace b4(k4, 1, true);
  CHECK(Integer(static_cast<long>(b4.corank())) == descent_polynomial(4)[1]);
  ChainVector target = k4.coboundary(ChainVector::single({k4.elements().front()})) -
                       k4.coboundary(ChainVector::single({k4.elements().back()}));
  auto w = b4.witness(target);
  REQUIRE(w);
  CHECK(k4.coboundary(w->w) == w->denominator * target);
  CHECK(b4.quotient_rank({target}) == 0);
  Chain top = k4.chains(1).front();
  CHECK(b4.quotient_rank({ChainVector::single(top), ChainVector::single(top)}) == 1);
}

TEST_CASE("fundamental cycles") {
  Poset p3 = Poset::build(3, Variant::weighted);
  RootedTree t = RootedTree::parse("2(1,3)");
  ChainVector rho = fundamental_cycle(t, p3);
  CHECK(rho.dim == 0);
  CHECK(rho.terms.size() == 2);
  int plus = 0, minus = 0;
  for (auto& [c, x] : rho.terms) (x == 1 ? plus : minus)++;
  CHECK(plus == 1);
  CHECK(minus == 1);
  CHECK(rho.coefficient(interior_chain(psi(t), p3)) == 1);

  Poset p2 = Poset::build(2, Variant::weighted);
  ChainVector rho2 = fundamental_cycle(RootedTree::parse("1(2)"), p2);
  CHECK(rho2.dim == -1);
  CHECK(rho2.coefficient({}) == 1);

  for (int n = 3; n <= 4; ++n) {
    Poset p = Poset::build(n, Variant::weighted);
    for (int i = 0; i < n; ++i) {
      OrderComplex k = OrderComplex::open_interval(p, 0, p.maximal(i));
      for (auto& tree : enumerate_rooted_trees(n, i)) {
        ChainVector r = fundamental_cycle(tree, p);
        CHECK(k.boundary(r).is_zero());
        CHECK(r.coefficient(interior_chain(psi(tree), p)) == 1);
        // Every maximal chain of the subposet appears with the sign of its edge order.
        PiSubposet pt(tree);
        CHECK(r.terms.size() == static_cast<std::size_t>(n == 3 ? 2 : 6));
        int s0 = 0;
        for (auto& [order, chain] : pt.maximal_chains()) {
          Integer x = r.coefficient(chain.trimmed(1, 1).indices(p));
          int s = permutation_sign(order);
          if (s0 == 0) s0 = x == s ? 1 : -1;
          CHECK(x == s0 * s);
        }
      }
    }
  }
}

TEST_CASE("duality of fundamental cycles and tree cochains") {
  for (int n = 2; n <= 4; ++n) {
    Poset p = Poset::build(n, Variant::weighted);
    LiuOrder liu;
    for (int i = 0; i < n; ++i) {
      auto trees = liu.linear_extension((Mask{1} << n) - 1, i);
      std::vector<ChainVector> rho, psi_cochains, lyndon;
      for (auto& t : trees) {
        rho.push_back(fundamental_cycle(t, p));
        psi_cochains.push_back(cochain_of(psi(t), p));
      }
      DualityReport d = verify_dual_bases(rho, psi_cochains);
      CHECK(d.upper_triangular);
      CHECK(d.unit_diagonal);
      CHECK(d.invertible_integers);
      for (auto& t : enumerate_family(Family::lyndon, n, i)) lyndon.push_back(cochain_of(t, p, valency_decreasing_extension(t)));
      CHECK(verify_dual_bases(rho, lyndon).invertible_rationals);
    }
  }
  CHECK_THROWS_AS(verify_dual_bases({ChainVector::single({1})}, {}), ArgumentError);
  CHECK_THROWS_AS(verify_dual_bases({ChainVector::single({1})}, {ChainVector::single({1, 2})}), ArgumentError);
}

TEST_CASE("Whitney cohomology ranks") {
  CHECK(whitney_cohomology_ranks(3) == std::vector<Integer>{1, 6, 9});
  CHECK(whitney_cohomology_ranks(4) == std::vector<Integer>{1, 12, 48, 64});
  for (int n = 1; n <= 5; ++n) {
    auto w = whitney_cohomology_ranks(n);
    Integer total = 0;
    for (int r = 0; r < n; ++r) {
      CHECK(w[r] == formula::binomial(n - 1, r) * formula::power(n, r));
      total += w[r];
    }
    CHECK(total == formula::power(n + 1, n - 1));
    if (n <= 4) CHECK(whitney_cohomology_ranks_by_homology(n) == w);
  }
}
