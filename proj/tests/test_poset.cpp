#include <set>

#include "doctest.h"
#include "wpp/formulas.hpp"
#include "wpp/poset.hpp"

using namespace wpp;

namespace {

WeightedPartition P(const char* s) { return WeightedPartition::parse(s); }

// Independent enumeration: every set partition of [n] (restricted growth strings) times
// every admissible weight vector.
long long brute_weighted_count(int n, std::vector<long long>& by_rank) {
  by_rank.assign(n, 0);
  std::vector<int> rgs(n, 0);
  long long total = 0;
  while (true) {
    int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<int> sizes(k, 0);
    for (int v : rgs) sizes[v]++;
    long long weights = 1;
    for (int s : sizes) weights *= s;
    by_rank[n - k] += weights;
    total += weights;
    int i = n - 1;
    for (; i >= 1; --i) {
      int mx = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[i] <= mx) {
        rgs[i]++;
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
    }
    if (i < 1) break;
  }
  return total;
}

}  // namespace

TEST_CASE("covering relation") {
  CHECK(covers(P("{1^0,2^0,3^0}"), P("{12^0,3^0}")));
  CHECK_FALSE(covers(P("{12^0,3^0}"), P("{123^2}")));
  CHECK(covers(P("{12^1,3^0}"), P("{123^1}")));
  CHECK(covers(P("{12^1,3^0}"), P("{123^2}")));
  CHECK_FALSE(covers(P("{12^1,3^0}"), P("{123^0}")));
  CHECK_FALSE(covers(P("{1^0,2^0,3^0}"), P("{123^0}")));
  CHECK_THROWS_AS(covers(P("{1^0,2^0}"), P("{123^0}")), ArgumentError);
  CHECK(leq(P("{1^0,2^0,3^0}"), P("{123^2}")));
  CHECK_FALSE(leq(P("{12^1,3^0}"), P("{123^0}")));
}

TEST_CASE("partition validation and printing") {
  CHECK_THROWS_AS(P("{12^2,3^0}"), ArgumentError);
  CHECK_THROWS_AS(WeightedPartition(3, {Block{0b011, 0, 0}}), ArgumentError);
  CHECK(P("{3^0,21^1}").to_string() == "{12^1,3^0}");
  CHECK(P("{12@2,3@3}").pointed());
  CHECK_THROWS_AS(P("{12@3,3@3}"), ArgumentError);
}

TEST_CASE("poset sizes against independent enumeration") {
  for (int n = 1; n <= 6; ++n) {
    Poset p = Poset::build(n, Variant::weighted);
    std::vector<long long> by_rank;
    CHECK(static_cast<long long>(p.size()) == brute_weighted_count(n, by_rank));
    CHECK(p.rank_sizes() == by_rank);
    Poset q = Poset::build(n, Variant::pointed);
    CHECK(q.rank_sizes() == by_rank);
  }
  CHECK(Poset::build(3, Variant::weighted).size() == 10);
  CHECK(Poset::build(1, Variant::weighted).size() == 1);
  Poset five = Poset::build(5, Variant::weighted);
  CHECK(five.size() == 196);
  CHECK(five.rank_sizes() == std::vector<long long>{1, 20, 90, 80, 5});
  CHECK_THROWS_AS(Poset::build(10, Variant::weighted), ResourceError);
}

TEST_CASE("cover lists agree with the covering predicate") {
  for (Variant v : {Variant::weighted, Variant::pointed}) {
    Poset p = Poset::build(4, v);
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t y = 0; y < p.size(); ++y) {
        bool c = covers(p.partition(int(x)), p.partition(int(y)));
        CHECK(c == p.covers(int(x), int(y)));
        if (c) CHECK(p.rank(int(y)) == p.rank(int(x)) + 1);
      }
  }
}

TEST_CASE("order is the transitive closure of covers") {
  Poset p = Poset::build(4, Variant::weighted);
  std::size_t N = p.size();
  std::vector<std::vector<char>> reach(N, std::vector<char>(N, 0));
  for (std::size_t x = N; x-- > 0;) {
    reach[x][x] = 1;
    for (int y : p.upper_covers(int(x)))
      for (std::size_t z = 0; z < N; ++z)
        if (reach[y][z]) reach[x][z] = 1;
  }
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) CHECK(bool(reach[x][y]) == p.leq(int(x), int(y)));
}

TEST_CASE("rank generating function") {
  CHECK(rank_generating_function(Poset::build(3, Variant::weighted)) == IntPolynomial{1, 6, 3});
  CHECK(rank_generating_function(Poset::build(1, Variant::weighted)) == IntPolynomial{1});
  CHECK(formula::rank_generating_function(5) == IntPolynomial{1, 20, 90, 80, 5});
  for (int n = 1; n <= 6; ++n)
    CHECK(rank_generating_function(Poset::build(n, Variant::weighted)) ==
          formula::rank_generating_function(n));
}

TEST_CASE("mobius values") {
  Poset p = Poset::build(3, Variant::weighted);
  MobiusTable mu(p);
  CHECK(mu(0, p.maximal(1)) == 5);
  CHECK(mu(0, 0) == 1);
  // Lower interval of {12^1,3^0} is the 2-chain 0 < {12^1,3^0}.
  CHECK(mu(0, p.index_of(P("{12^1,3^0}"))) == -1);
  CHECK_THROWS_AS(mu(p.maximal(1), 0), ArgumentError);
  CHECK(mu_polynomial(3) == IntPolynomial{2, 5, 2});
  CHECK(mu_polynomial(1) == IntPolynomial{1});
  CHECK(mu_polynomial(4) == IntPolynomial{-6, -26, -26, -6});
  CHECK(mu_augmented(3) == -4);
  CHECK(mu_augmented(1) == -1);
  CHECK(mu_augmented(4) == 27);
}

TEST_CASE("characteristic polynomial") {
  CHECK(characteristic_polynomial(Poset::build(3, Variant::weighted)) == IntPolynomial{9, -6, 1});
  CHECK(characteristic_polynomial(Poset::build(1, Variant::weighted)) == IntPolynomial{1});
  CHECK(characteristic_polynomial(Poset::build(4, Variant::pointed)) == IntPolynomial{-64, 48, -12, 1});
  CHECK_THROWS_AS(characteristic_polynomial(Poset::build(3, Variant::weighted_augmented)), ArgumentError);
}

TEST_CASE("mobius invariants") {
  for (int n = 1; n <= 5; ++n) {
    Poset p = Poset::build(n, Variant::weighted);
    IntPolynomial m = mu_polynomial(n);
    Integer sum = 0;
    for (const auto& c : m.coeffs()) sum += c;
    Integer expect = formula::power(n, n - 1);
    CHECK(sum == ((n - 1) % 2 == 0 ? expect : Integer(-expect)));
    CHECK(characteristic_polynomial(p).evaluate(1) == -mu_augmented(n));
    for (std::size_t a = 0; a < p.size(); ++a) CHECK(p.rank(int(a)) == n - int(p.partition(int(a)).size()));
  }
}

TEST_CASE("whitney numbers") {
  auto w3 = whitney_numbers(3);
  CHECK(w3.first == std::vector<Integer>{1, -6, 9});
  CHECK(w3.second == std::vector<Integer>{1, 6, 3});
  auto w1 = whitney_numbers(1);
  CHECK(w1.first == std::vector<Integer>{1});
  CHECK(w1.second == std::vector<Integer>{1});
  auto w4 = whitney_numbers(4);
  CHECK(w4.product_is_identity);
  CHECK(w4.matrix_first == formula::whitney_matrix_first(4));
  CHECK(w4.matrix_second == formula::whitney_matrix_second(4));
}

TEST_CASE("rooted forests") {
  CHECK(forest_count(4, 2) == 48);
  CHECK(forest_count(1, 1) == 1);
  CHECK(forest_count(5, 1) == 625);
  CHECK_THROWS_AS(forest_count(3, 0), ArgumentError);
  for (int n = 1; n <= 5; ++n) {
    Poset p = Poset::build(n, Variant::weighted);
    MobiusTable mu(p);
    auto tally = enumerate_forests(n);
    CHECK(tally.by_partition.size() == p.size());
    for (const auto& [key, count] : tally.by_partition) {
      int a = -1;
      for (std::size_t x = 0; x < p.size(); ++x)
        if (p.partition(int(x)).key() == key) a = int(x);
      REQUIRE(a >= 0);
      Integer m = mu(0, a);
      CHECK(Integer(abs(m)) == Integer(static_cast<long>(count)));
      CHECK(((n - int(p.partition(a).size())) % 2 == 0) == (m > 0));
    }
  }
}

TEST_CASE("abel identity") {
  for (int n = 0; n <= 8; ++n)
    for (long x = -3; x <= 3; ++x)
      for (long y = -3; y <= 3; ++y)
        for (long z = -3; z <= 3; ++z) CHECK(formula::abel_identity_holds(x, y, z, n));
}

TEST_CASE("upper intervals") {
  Poset p = Poset::build(3, Variant::weighted_augmented);
  CHECK(upper_interval_isomorphic(p, 0));
  CHECK(upper_interval_isomorphic(p, p.index_of(P("{12^0,3^0}"))));
  CHECK(upper_interval_isomorphic(p, p.index_of(P("{12^1,3^0}"))));
  Poset q = Poset::build(4, Variant::weighted_augmented);
  for (int a = 0; a < int(q.size()) - 1; ++a) CHECK(upper_interval_isomorphic(q, a));
}

TEST_CASE("reports") {
  auto j = invariants_report(3, Variant::weighted);
  CHECK(j["rank_sizes"] == nlohmann::json::array({1, 6, 3}));
  CHECK(j["char_poly"] == nlohmann::json::array({"9", "-6", "1"}));
  std::string dot = to_dot(Poset::build(2, Variant::weighted));
  CHECK(dot.find("{1^0,2^0}") != std::string::npos);
  CHECK(dot.find("n0 -> n1") != std::string::npos);
}
