#include "doctest.h"
#include "wpp/formulas.hpp"
#include "wpp/straighten.hpp"

using namespace wpp;

namespace {

BicoloredTree T(const char* s) { return BicoloredTree::parse(s); }

// input - output lies in the coboundary space of the matching complex.
void check_sound(Straightener& s, const std::vector<BicoloredTree>& trees, const Poset& host, const CoboundarySpace& b) {
  for (auto& t : trees) {
    TreeSum out = s.straighten(t);
    for (auto& [u, x] : out.terms) CHECK(s.is_target(u));
    ChainVector diff = generator_cochain(t, s.side(), host) - to_cochain(out, host);
    CHECK(b.contains(diff));
  }
}

}  // namespace

TEST_CASE("straightening examples") {
  CHECK(straighten(T("[[1,2],3]"), Side::cohomology) == TreeSum::single(Side::cohomology, T("[[1,2],3]")));
  TreeSum s = straighten(T("[1,[2,3]]"), Side::cohomology);
  TreeSum expect(Side::cohomology);
  expect.add(T("[[1,2],3]"), -1);
  expect.add(T("[[1,3],2]"), -1);
  CHECK(s == expect);
  CHECK(s.to_string() == "-[[1,2],3] - [[1,3],2]");

  TreeSum jacobi = straighten(T("[1,[2,3]]"), Side::lie2);
  TreeSum je(Side::lie2);
  je.add(T("[[1,2],3]"), 1);
  je.add(T("[[1,3],2]"), -1);
  CHECK(jacobi == je);

  Straightener st(Side::cohomology);
  TreeSum mixed = st.straighten(T("[1,<2,3>]"));
  CHECK(mixed.terms.size() == 5);
  for (auto& [u, x] : mixed.terms) CHECK(is_comb(u));
  REQUIRE(!st.trace().empty());
  CHECK(st.trace().front().kind == RelationKind::mixed);
  for (auto& step : st.trace()) CHECK(step.after < step.before);

  // A swapped input picks up the swap sign first.
  CHECK(straighten(T("[2,1]"), Side::cohomology) == TreeSum::single(Side::cohomology, T("[1,2]")));
  CHECK(straighten(T("[2,1]"), Side::lie2) == TreeSum::single(Side::lie2, T("[1,2]"), -1));
}

TEST_CASE("straightening is sound on the interval sides") {
  for (int n = 3; n <= 4; ++n) {
    Poset host = Poset::build(n, Variant::weighted);
    for (int i = 0; i < n; ++i) {
      OrderComplex k = OrderComplex::open_interval(host, 0, host.maximal(i));
      CoboundarySpace b(k, n - 3);
      auto trees = enumerate_bicolored(n, i);
      for (Side side : {Side::cohomology, Side::lie2}) {
        Straightener s(side);
        check_sound(s, trees, host, b);
        for (auto& step : s.trace()) CHECK(step.after < step.before);
      }
    }
  }
}

TEST_CASE("relation instances straighten to zero") {
  for (int n = 2; n <= 4; ++n)
    for (Side side : {Side::cohomology, Side::lie2}) {
      Straightener s(side);
      for (int i = 0; i < n; ++i)
        for (auto& [inst, sum] : relation_instances(n, i, side)) {
          INFO(inst.to_string());
          CHECK(s.straighten(sum).is_zero());
        }
    }
  Straightener f(Side::full);
  for (auto& [inst, sum] : relation_instances(4, std::nullopt, Side::full)) {
    INFO(inst.to_string());
    CHECK(f.straighten(sum).is_zero());
  }
  auto two = relation_instances(2, 0, Side::cohomology);
  REQUIRE(two.size() == 1);
  CHECK(two[0].first.kind == RelationKind::swap);
  CHECK(Straightener(Side::cohomology).straighten(two[0].second).is_zero());
}

TEST_CASE("full poset straightening") {
  CHECK(straighten_full_poset(T("[[1,2],3]")) == TreeSum::single(Side::full, T("[[1,2],3]")));
  TreeSum flip = straighten_full_poset(T("<1,2>"));
  CHECK(flip == TreeSum::single(Side::full, T("[1,2]"), -1));
  for (int n = 3; n <= 4; ++n) {
    Poset host = Poset::build(n, Variant::weighted);
    OrderComplex k = OrderComplex::without_bottom(host);
    CoboundarySpace b(k, n - 2);
    Straightener s(Side::full);
    check_sound(s, enumerate_bicolored(n), host, b);
  }
}

TEST_CASE("phi") {
  Poset p2 = Poset::build(2, Variant::weighted);
  CHECK(phi(T("[1,2]"), p2).coefficient({}) == 1);
  CHECK(phi(T("[2,1]"), p2).coefficient({}) == -1);
  // Lie relations map to coboundaries.
  for (int n = 3; n <= 4; ++n) {
    Poset host = Poset::build(n, Variant::weighted);
    for (int i = 0; i < n; ++i) {
      OrderComplex k = OrderComplex::open_interval(host, 0, host.maximal(i));
      CoboundarySpace b(k, n - 3);
      for (auto& [inst, sum] : relation_instances(n, i, Side::lie2)) CHECK(b.contains(to_cochain(sum, host)));
      std::vector<ChainVector> combs;
      for (auto& t : enumerate_family(Family::comb, n, i)) combs.push_back(phi(t, host));
      CHECK(b.quotient_rank(combs) == b.corank());
    }
  }
}

TEST_CASE("phi commutes with relabeling up to the sign of the permutation") {
  Poset host = Poset::build(4, Variant::weighted);
  auto relabel = [](const BicoloredTree& t, int a, int c) {
    std::string code = t.code();
    for (auto& ch : code)
      if (static_cast<unsigned char>(ch) == a) ch = static_cast<char>(c);
      else if (static_cast<unsigned char>(ch) == c) ch = static_cast<char>(a);
    return BicoloredTree::from_code(code);
  };
  auto relabel_chain = [&](const ChainVector& v, int a, int c) {
    ChainVector out(v.dim);
    for (auto& [ch, x] : v.terms) {
      Chain moved;
      for (int e : ch) {
        std::vector<Block> blocks;
        for (Block blk : host.partition(e).blocks()) {
          Mask m = blk.members;
          bool ha = m & bit(a), hc = m & bit(c);
          m &= ~(bit(a) | bit(c));
          if (ha) m |= bit(c);
          if (hc) m |= bit(a);
          blk.members = m;
          blocks.push_back(blk);
        }
        moved.push_back(host.index_of(WeightedPartition(4, blocks)));
      }
      out.add(moved, x);
    }
    return out;
  };
  for (int i = 0; i < 4; ++i)
    for (auto& t : enumerate_bicolored(4, i))
      for (auto [a, c] : {std::pair{1, 2}, std::pair{2, 4}}) {
        ChainVector lhs = phi(relabel(t, a, c), host);
        ChainVector rhs = Integer(-1) * relabel_chain(phi(t, host), a, c);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("basis verification") {
  for (auto& c : verify_bases(3, 1)) {
    CHECK(c.passed());
    CHECK(c.count == 5);
  }
  auto full3 = verify_bases(3, std::nullopt);
  REQUIRE(full3.size() == 2);
  for (auto& c : full3) {
    CHECK(c.passed());
    CHECK(c.count == 4);
  }
  for (int i = 0; i < 4; ++i)
    for (auto& c : verify_bases(4, i)) CHECK(c.passed());
  auto liu = verify_bases(4, 2);
  CHECK(liu[2].family == "liu");
  CHECK(liu[2].count == 26);
  for (auto& c : verify_bases(4, std::nullopt)) {
    CHECK(c.passed());
    CHECK(c.count == 27);
  }
}
