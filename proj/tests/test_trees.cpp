#include <algorithm>
#include <set>

#include "doctest.h"
#include "wpp/formulas.hpp"
#include "wpp/trees.hpp"

using namespace wpp;

namespace {

BicoloredTree B(const char* s) { return BicoloredTree::parse(s); }

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }
long long catalan(int n) {
  long long c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

// Independent enumeration of rooted trees: every parent map on [n] with one root, kept if
// following parents from every node reaches the root.
std::vector<long long> brute_descent_counts(int n) {
  std::vector<long long> counts(n, 0);
  std::vector<int> par(n, 0);  // 0 = root, else parent label
  while (true) {
    int roots = 0;
    for (int v = 0; v < n; ++v) roots += par[v] == 0 || par[v] == v + 1;
    bool ok = roots == 1;
    for (int v = 0; v < n && ok; ++v) {
      if (par[v] == v + 1) ok = false;
      int x = v + 1, steps = 0;
      while (ok && par[x - 1] != 0) {
        x = par[x - 1];
        if (++steps > n) ok = false;
      }
    }
    if (ok) {
      int d = 0;
      for (int v = 0; v < n; ++v) d += par[v] != 0 && v + 1 < par[v];
      counts[d]++;
    }
    int k = 0;
    while (k < n && par[k] == n) par[k++] = 0;
    if (k == n) break;
    par[k]++;
  }
  return counts;
}

std::vector<long long> drake_counts(int n) {
  IntPolynomial p = formula::drake_product(n);
  std::vector<long long> c(n, 0);
  for (int i = 0; i < n; ++i) c[i] = p[i].get_si();
  return c;
}

// Walk every internal node of t, handing (position, node) to f.
template <class F>
void for_each_node(const BicoloredTree& t, F f) {
  for (std::size_t pos : t.internal_postorder()) f(pos, t.subtree(pos));
}

}  // namespace

TEST_CASE("tree parsing and printing") {
  BicoloredTree t = B("[<2,1>,3]");
  CHECK(t.to_string() == "[<2,1>,3]");
  CHECK(t.color() == Color::blue);
  CHECK(t.left().color() == Color::red);
  CHECK(t.leaf_word() == std::vector<int>{2, 1, 3});
  CHECK(t.red_count() == 1);
  CHECK(t.internal_count() == 2);
  CHECK(t.leaf_count() == 3);
  CHECK(t.min_leaf() == 1);
  CHECK(tree_from_json(to_json(t)) == t);
  CHECK(to_json(B("1"))["leaf"] == 1);
  CHECK_THROWS_AS(B("[1,1]"), ArgumentError);
  CHECK_THROWS_AS(B("[1,2>"), ArgumentError);
  CHECK_THROWS_AS(B("[1,2"), ArgumentError);
  CHECK(BicoloredTree::from_code(t.code()) == t);
}

TEST_CASE("rooted tree enumeration") {
  auto two = enumerate_rooted_trees(2);
  REQUIRE(two.size() == 2);
  std::multiset<int> d;
  for (auto& t : two) d.insert(t.descents());
  CHECK(d == std::multiset<int>{0, 1});
  CHECK(descent_polynomial(3) == IntPolynomial{2, 5, 2});
  CHECK(descent_polynomial(1) == IntPolynomial{1});
  CHECK(descent_polynomial(4) == IntPolynomial{6, 26, 26, 6});
  for (int n = 1; n <= 6; ++n) {
    IntPolynomial p = descent_polynomial(n);
    std::vector<long long> brute = brute_descent_counts(n);
    for (int i = 0; i < n; ++i) CHECK(p[i] == Integer(static_cast<long>(brute[i])));
    CHECK(p == formula::drake_product(n));
  }
  auto e = enumerate_rooted_trees(4, 1);
  CHECK(e.size() == 26);
  CHECK(std::is_sorted(e.begin(), e.end()));
  CHECK(std::adjacent_find(e.begin(), e.end()) == e.end());
  CHECK_THROWS_AS(enumerate_rooted_trees(10), ResourceError);
}

TEST_CASE("rooted tree parsing and restriction") {
  RootedTree t = RootedTree::parse("2(1,3(4))");
  CHECK(t.root() == 2);
  CHECK(t.children(2) == std::vector<int>{1, 3});
  CHECK(t.descents() == 1);
  CHECK(t.to_string() == "2(1,3(4))");
  CHECK(t.subtree_labels(3) == (bit(3) | bit(4)));
  CHECK(t.restrict(bit(3) | bit(4)).to_string() == "3(4)");
  CHECK_THROWS_AS(RootedTree({1, 2}, {0, 0}), ArgumentError);
  CHECK_THROWS_AS(RootedTree({1, 2}, {2, 1}), ArgumentError);
  CHECK_THROWS_AS(RootedTree::parse("1(2"), ArgumentError);
}

TEST_CASE("bicolored enumeration") {
  CHECK(enumerate_bicolored(2).size() == 4);
  CHECK(enumerate_bicolored(3).size() == 48);
  // Normalization picks one of the 2^{n-1} child orders at each node.
  CHECK(enumerate_bicolored(3, std::nullopt, true).size() == 12);
  for (int n = 1; n <= 5; ++n) {
    auto all = enumerate_bicolored(n);
    CHECK(static_cast<long long>(all.size()) == catalan(n - 1) * factorial(n) * (1LL << (n - 1)));
    CHECK(static_cast<long long>(enumerate_bicolored(n, std::nullopt, true).size()) == catalan(n - 1) * factorial(n));
    std::set<BicoloredTree> uniq(all.begin(), all.end());
    CHECK(uniq.size() == all.size());
    long long by_i = 0;
    for (int i = 0; i < n; ++i) by_i += static_cast<long long>(enumerate_bicolored(n, i).size());
    CHECK(by_i == static_cast<long long>(all.size()));
  }
  CHECK_THROWS_AS(enumerate_bicolored(7), ResourceError);
}

TEST_CASE("classification") {
  CHECK(is_lyndon(B("[<1,2>,3]")));
  CHECK(classify(B("[[[1,2],3],4]")).comb);
  CHECK_FALSE(classify(B("[[[1,2],3],4]")).lyndon);
  CHECK(classify(B("[[[1,4],3],2]")).comb);
  CHECK(classify(B("[[[1,4],3],2]")).lyndon);
  auto c = classify(B("[<2,1>,3]"));
  CHECK(c.liu_lyndon);
  CHECK_FALSE(c.normalized);
  CHECK(c.liu_valency[0] == 2);
  CHECK(c.min_valency[0] == 1);
  CHECK(is_normalized(B("[1,[2,3]]")));
  CHECK_FALSE(is_normalized(B("[2,[1,3]]")));
  CHECK_FALSE(is_comb(B("[1,[2,3]]")));
  CHECK(is_comb(B("<1,[2,3]>")));
  CHECK_FALSE(is_comb(B("<1,<2,3>>")));
}

TEST_CASE("family counts") {
  CHECK(enumerate_family(Family::comb, 3).size() == 9);
  CHECK(enumerate_family(Family::lyndon, 3).size() == 9);
  CHECK(enumerate_family(Family::liu, 4, 1).size() == 26);
  for (int n = 1; n <= 6; ++n) {
    std::vector<long long> expect = drake_counts(n);
    for (Family f : {Family::comb, Family::lyndon, Family::liu}) {
      auto all = enumerate_family(f, n);
      CHECK(static_cast<long long>(all.size()) == formula::power(n, n - 1).get_si());
      std::vector<long long> by_i(n, 0);
      for (auto& t : all) by_i[t.red_count()]++;
      CHECK(by_i == expect);
      if (f != Family::liu)
        for (int i = 0; i < n; ++i) CHECK(by_i[i] == by_i[n - 1 - i]);
    }
  }
  auto rows = family_counts(4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].comb == 26);
  CHECK(rows[1].rooted == 26);
  CHECK(family_counts_csv(rows).rfind("n,i,comb,lyndon,liu,rooted\n4,0,6,6,6,6\n", 0) == 0);
}

TEST_CASE("family membership agrees with filtering all trees") {
  for (int n = 1; n <= 5; ++n) {
    auto all = enumerate_bicolored(n);
    for (Family f : {Family::normalized, Family::comb, Family::lyndon, Family::liu}) {
      std::vector<BicoloredTree> filtered;
      for (auto& t : all) {
        auto c = classify(t);
        bool in = f == Family::normalized ? c.normalized
                  : f == Family::comb     ? c.comb
                  : f == Family::lyndon   ? c.lyndon
                                          : c.liu_lyndon;
        if (in) filtered.push_back(t);
      }
      CHECK(filtered == enumerate_family(f, n));
    }
  }
}

TEST_CASE("comb and lyndon definitions from the node-wise rules") {
  // Direct transcription over all nodes, independent of the recursive generator.
  auto comb_def = [](const BicoloredTree& t) {
    if (!is_normalized(t)) return false;
    bool ok = true;
    for_each_node(t, [&](std::size_t, const BicoloredTree& x) {
      BicoloredTree y = x.right();
      if (!y.is_leaf() && !(x.color() == Color::red && y.color() == Color::blue)) ok = false;
    });
    return ok;
  };
  auto lyndon_def = [](const BicoloredTree& t) {
    if (!is_normalized(t)) return false;
    bool ok = true;
    for_each_node(t, [&](std::size_t, const BicoloredTree& x) {
      BicoloredTree l = x.left();
      bool lyn = l.is_leaf() || l.right().min_leaf() > x.right().min_leaf();
      if (!lyn && !(x.color() == Color::blue && l.color() == Color::red)) ok = false;
    });
    return ok;
  };
  for (int n = 1; n <= 5; ++n)
    for (auto& t : enumerate_bicolored(n, std::nullopt, true)) {
      CHECK(comb_def(t) == is_comb(t));
      CHECK(lyndon_def(t) == is_lyndon(t));
    }
}

TEST_CASE("normalize") {
  auto a = normalize(B("[1,[2,3]]"));
  CHECK(a.cohomology_sign == 1);
  CHECK(a.swaps == 0);
  CHECK(a.tree == B("[1,[2,3]]"));
  auto b = normalize(B("[2,1]"));
  CHECK(b.cohomology_sign == 1);
  CHECK(b.tree == B("[1,2]"));
  auto c = normalize(B("[2,[1,3]]"));
  CHECK(c.tree == B("[[1,3],2]"));
  CHECK(c.cohomology_sign == 1);
  CHECK(c.swaps == 1);
  auto d = normalize(B("[[3,4],[1,2]]"));
  CHECK(d.tree == B("[[1,2],[3,4]]"));
  CHECK(d.cohomology_sign == -1);
  for (int n = 1; n <= 4; ++n)
    for (auto& t : enumerate_bicolored(n)) {
      auto r = normalize(t);
      CHECK(is_normalized(r.tree));
      CHECK(normalize(r.tree).tree == r.tree);
      CHECK(normalize(r.tree).cohomology_sign == 1);
      CHECK(r.tree.red_count() == t.red_count());
      // Swapping the root's children first multiplies the sign by that swap's sign.
      if (!t.is_leaf()) {
        BicoloredTree s = BicoloredTree::join(t.color(), t.right(), t.left());
        int swap = (t.left().internal_count() * t.right().internal_count()) % 2 ? -1 : 1;
        auto rs = normalize(s);
        CHECK(rs.tree == r.tree);
        CHECK(rs.cohomology_sign == swap * r.cohomology_sign);
      }
    }
}

TEST_CASE("sign weight inversions") {
  CHECK(tree_sign(B("1")) == 1);
  CHECK(weight(B("1")) == 0);
  CHECK(inversions(B("1")) == 0);
  CHECK(tree_sign(B("[[1,2],3]")) == 1);
  CHECK(tree_sign(B("[1,[2,3]]")) == -1);
  CHECK(inversions(B("[1,<2,3>]")) == 1);
  CHECK(inversions(B("<1,[2,3]>")) == 0);
  CHECK(weight(B("[1,[2,3]]")) == 1);
  CHECK(weight(B("[1,[2,[3,4]]]")) == 3);
  CHECK(inversions(B("[1,[2,<3,4>]]")) == 2);
  CHECK(permutation_sign({2, 1, 3}) == -1);
  CHECK(permutation_sign({3, 1, 2}) == 1);
}

TEST_CASE("sign lemma identities") {
  for (int n = 2; n <= 5; ++n)
    for (auto& t : enumerate_bicolored(n)) {
      int s = tree_sign(t);
      for_each_node(t, [&](std::size_t pos, const BicoloredTree& x) {
        BicoloredTree l = x.left(), r = x.right();
        int i1 = l.internal_count(), i2 = r.internal_count();
        BicoloredTree swapped = t.replace(pos, BicoloredTree::join(x.color(), r, l));
        CHECK(s == ((i1 + i2) % 2 ? -1 : 1) * tree_sign(swapped));
        if (!l.is_leaf()) {
          // (T1 T2) T3 against T1 (T2 T3)
          BicoloredTree t1 = l.left(), t2 = l.right(), t3 = r;
          BicoloredTree right_assoc =
              t.replace(pos, BicoloredTree::join(x.color(), t1, BicoloredTree::join(l.color(), t2, t3)));
          CHECK(s == ((t3.internal_count() + 1) % 2 ? -1 : 1) * tree_sign(right_assoc));
        }
        if (!r.is_leaf()) {
          // T2 (T1 T3) against T1 (T2 T3)
          BicoloredTree t1 = l, t2 = r.left(), t3 = r.right();
          BicoloredTree other =
              t.replace(pos, BicoloredTree::join(x.color(), t2, BicoloredTree::join(r.color(), t1, t3)));
          CHECK(s == ((t1.internal_count() + t2.internal_count()) % 2 ? -1 : 1) * tree_sign(other));
        }
      });
    }
}

TEST_CASE("linear extensions") {
  CHECK(linear_extensions(B("[[[1,2],3],4]")).size() == 1);
  CHECK(linear_extensions(B("[[1,2],[3,4]]")).size() == 2);
  CHECK(valency_decreasing_extension(B("[[1,2],[3,4]]")) == LinearExtension{2, 1, 3});
  CHECK(valency_decreasing_extension(B("[[[1,2],3],4]")) == LinearExtension{1, 2, 3});
  CHECK_THROWS_AS(valency_decreasing_extension(B("[2,1]")), ArgumentError);
  for (int n = 1; n <= 5; ++n)
    for (auto& t : enumerate_bicolored(n, 0)) {
      auto exts = linear_extensions(t);
      std::set<LinearExtension> set(exts.begin(), exts.end());
      LinearExtension eps;
      for (int k = 1; k < n; ++k) eps.push_back(k);
      CHECK(set.count(eps) == 1);
      for (auto& tau : exts) {
        CHECK(is_linear_extension(t, tau));
        for (std::size_t k = 0; k + 1 < tau.size(); ++k) {
          LinearExtension sw = tau;
          std::swap(sw[k], sw[k + 1]);
          CHECK(set.count(sw) == std::size_t(is_linear_extension(t, sw)));
        }
      }
      if (is_normalized(t)) CHECK(set.count(valency_decreasing_extension(t)) == 1);
    }
}

TEST_CASE("psi bijection") {
  CHECK(psi(RootedTree::parse("5")) == B("5"));
  CHECK(psi(RootedTree::parse("1(2)")) == B("[1,2]"));
  CHECK(psi(RootedTree::parse("2(1,3)")) == B("[<2,1>,3]"));
  CHECK_THROWS_AS(psi_inverse(B("[2,1]")), ArgumentError);
  for (Mask a = 1; a < (1u << 6); ++a) {
    std::vector<int> labels;
    for (int e = 1; e <= 6; ++e)
      if (a & bit(e)) labels.push_back(e);
    std::set<BicoloredTree> image;
    long long count = 0;
    for_each_rooted_tree(labels, [&](const RootedTree& t) {
      BicoloredTree b = psi(t);
      CHECK(b.red_count() == t.descents());
      CHECK(is_liu_lyndon(b));
      CHECK(psi_inverse(b) == t);
      image.insert(b);
      ++count;
    });
    CHECK(static_cast<long long>(image.size()) == count);
    auto liu = enumerate_family(Family::liu, a);
    CHECK(std::set<BicoloredTree>(liu.begin(), liu.end()) == image);
  }
}

TEST_CASE("liu order") {
  LiuOrder order;
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i < n; ++i)
      for (auto& t : enumerate_rooted_trees(n, i)) CHECK(order.leq(t, t));
  Mask m3 = bit(1) | bit(2) | bit(3);
  auto ext = order.linear_extension(m3, 1);
  CHECK(ext.size() == 5);
  for (std::size_t a = 0; a < ext.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) CHECK_FALSE((order.leq(ext[a], ext[b]) && !(ext[a] == ext[b])));
  Mask m5 = (1u << 5) - 1;
  for (int i = 0; i < 5; ++i) {
    auto lin = order.linear_extension(m5, i);
    CHECK(lin.size() == std::size_t(drake_counts(5)[i]));
    for (std::size_t a = 0; a < lin.size(); ++a)
      for (std::size_t b = a + 1; b < lin.size(); ++b) CHECK_FALSE(order.leq(lin[b], lin[a]));
    CHECK(order.relation_size(m5, i) >= lin.size());
  }
}
