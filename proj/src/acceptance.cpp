#include "wpp/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "wpp/chains.hpp"
#include "wpp/formulas.hpp"
#include "wpp/homology.hpp"
#include "wpp/labeling.hpp"
#include "wpp/poset.hpp"
#include "wpp/straighten.hpp"
#include "wpp/trees.hpp"

namespace wpp {

namespace {

struct Check {
  CriterionResult& r;
  void expect(bool cond, const std::string& witness) {
    if (!cond && r.passed) {
      r.passed = false;
      r.detail = witness;
    }
  }
  void note(const std::string& s) {
    if (r.passed) r.detail = s;
  }
};

int bound(const AcceptanceConfig& cfg, int full) { return cfg.n > 0 ? std::min(cfg.n, full) : full; }

std::string str(const Integer& x) { return x.get_str(); }
std::string str(int x) { return std::to_string(x); }

// 1
void rank_sizes(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 7);
  for (int n = 1; n <= top; ++n) {
    IntPolynomial f = rank_generating_function(Poset::build(n, Variant::weighted, cfg.caps));
    for (int k = 0; k < n; ++k)
      c.expect(f[k] == formula::rank_size(n, k), "n=" + str(n) + " k=" + str(k) + ": " + str(f[k]));
  }
  c.note("rank sizes C(n,k)(n-k)^k for n<=" + str(top));
}

// 2
void mobius_product(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 6);
  for (int n = 1; n <= top; ++n) {
    IntPolynomial m = mu_polynomial(n, cfg.caps);
    c.expect(m == formula::mu_product(n), "n=" + str(n) + ": " + m.to_string('t'));
  }
  c.note("sum mu(0,[n]^i) t^i matches the product for n<=" + str(top));
}

// 3
void mobius_augmented(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 6);
  for (int n = 1; n <= top; ++n) {
    Integer m = mu_augmented(n, cfg.caps);
    c.expect(m == formula::mu_augmented(n), "n=" + str(n) + ": " + str(m));
  }
  c.note("mu(0,1) = (-1)^n (n-1)^(n-1) for n<=" + str(top));
}

// 4
void characteristic(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 6);
  for (int n = 1; n <= top; ++n)
    for (Variant v : {Variant::weighted, Variant::pointed}) {
      IntPolynomial chi = characteristic_polynomial(Poset::build(n, v, cfg.caps), cfg.caps);
      c.expect(chi == formula::characteristic_polynomial(n), to_string(v) + " n=" + str(n) + ": " + chi.to_string());
    }
  c.note("chi = (x-n)^(n-1), weighted and pointed, n<=" + str(top));
}

// 5
void whitney_matrices(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 6);
  for (int n = 1; n <= top; ++n) {
    WhitneyNumbers w = whitney_numbers(n, cfg.caps);
    c.expect(w.product_is_identity, "n=" + str(n) + ": product is not the identity");
    c.expect(w.matrix_first == formula::whitney_matrix_first(n) && w.matrix_second == formula::whitney_matrix_second(n),
             "n=" + str(n) + ": matrices differ from the closed forms");
  }
  c.note("Whitney matrices are inverse for n<=" + str(top));
}

// 6
void forests(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 6), per = bound(cfg, 5);
  for (int n = 1; n <= top; ++n) {
    ForestTally tally = enumerate_forests(n, cfg.caps);
    for (int k = 1; k <= n; ++k)
      c.expect(tally.by_trees[k] == formula::forest_count(n, k), "n=" + str(n) + " k=" + str(k) + ": " + str(tally.by_trees[k]));
    if (n > per) continue;
    Poset p = Poset::build(n, Variant::weighted, cfg.caps);
    MobiusTable mu(p, cfg.caps);
    c.expect(tally.by_partition.size() == p.size(), "n=" + str(n) + ": some partition has no forest");
    for (std::size_t x = 0; x < p.size(); ++x) {
      auto it = tally.by_partition.find(p.partition(static_cast<int>(x)).key());
      long long count = it == tally.by_partition.end() ? 0 : it->second;
      c.expect(abs(mu(0, static_cast<int>(x))) == Integer(static_cast<long>(count)),
               "forests onto " + p.label(static_cast<int>(x)) + ": " + std::to_string(count));
    }
  }
  c.note("forest counts for n<=" + str(top) + ", per partition |mu| for n<=" + str(per));
}

// 7
void el_labeling(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 5);
  long long intervals = 0;
  for (int n = 1; n <= top; ++n) {
    ElReport r = verify_el(Poset::build(n, Variant::weighted_augmented, cfg.caps));
    intervals += static_cast<long long>(r.intervals.size());
    for (auto& iv : r.intervals)
      c.expect(iv.ok(), "n=" + str(n) + ": interval (" + str(iv.x) + "," + str(iv.y) + ") has " +
                            std::to_string(iv.increasing) + " increasing chains");
  }
  c.note(std::to_string(intervals) + " closed intervals, n<=" + str(top) + ", lexicographic order by label comparison");
}

// 8
void ascent_free(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 5);
  for (int n = 1; n <= top; ++n) {
    Poset p = Poset::build(n, Variant::weighted_augmented, cfg.caps);
    IntPolynomial d = formula::drake_product(n);
    for (int i = 0; i < n; ++i) {
      auto af = ascent_free_chains(p, 0, p.maximal(i));
      std::set<std::vector<int>> got(af.begin(), af.end()), lyn;
      for (auto& t : enumerate_family(Family::lyndon, n, i))
        lyn.insert(chain_of_tree(t, valency_decreasing_extension(t)).indices(p));
      std::string at = "n=" + str(n) + " i=" + str(i);
      c.expect(Integer(static_cast<long>(af.size())) == d[i], at + ": " + std::to_string(af.size()) + " ascent-free chains");
      c.expect(got == lyn, at + ": ascent-free chains differ from the Lyndon chains");
    }
  }
  c.note("ascent-free chains = Lyndon chains for n<=" + str(top));
}

// 9
void betti(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 5);
  for (int n = 2; n <= top; ++n) {
    Poset p = Poset::build(n, Variant::weighted, cfg.caps);
    IntPolynomial d = formula::drake_product(n);
    for (int i = 0; i < n; ++i) {
      HomologyReport h = betti_numbers(OrderComplex::open_interval(p, 0, p.maximal(i), cfg.caps));
      std::string at = "(0,[" + str(n) + "]^" + str(i) + ")";
      c.expect(Integer(static_cast<long>(h.betti.back())) == d[i], at + ": top Betti " + std::to_string(h.betti.back()));
      c.expect(std::all_of(h.betti.begin(), h.betti.end() - 1, [](long long b) { return b == 0; }), at + ": lower homology");
      c.expect(h.top_torsion_free, at + ": torsion at the top");
    }
    Poset a = Poset::build(n, Variant::weighted_augmented, cfg.caps);
    HomologyReport h = betti_numbers(OrderComplex::without_bottom(a, cfg.caps));
    std::string at = "Pi_" + str(n) + " minus bottom";
    c.expect(Integer(static_cast<long>(h.betti.back())) == formula::power(n - 1, n - 1),
             at + ": top Betti " + std::to_string(h.betti.back()));
    c.expect(std::all_of(h.betti.begin(), h.betti.end() - 1, [](long long b) { return b == 0; }), at + ": lower homology");
    c.expect(h.top_torsion_free, at + ": torsion at the top");
  }
  c.note("Betti numbers and top torsion for n<=" + str(top));
}

// 10
void drake(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 8);
  for (int n = 1; n <= top; ++n) {
    IntPolynomial d = descent_polynomial(n, cfg.caps);
    c.expect(d == formula::drake_product(n), "n=" + str(n) + ": " + d.to_string('t'));
  }
  c.note("rooted trees by descents for n<=" + str(top));
}

// 11
void family_sizes(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 7);
  for (int n = 1; n <= top; ++n) {
    IntPolynomial d = formula::drake_product(n);
    Integer total[3] = {0, 0, 0};
    for (auto& row : family_counts(n, cfg.caps)) {
      std::string at = "n=" + str(n) + " i=" + str(row.i);
      Integer want = d[row.i];
      c.expect(Integer(static_cast<long>(row.comb)) == want && Integer(static_cast<long>(row.lyndon)) == want &&
                   Integer(static_cast<long>(row.liu)) == want,
               at + ": family sizes differ from the tree count");
      total[0] += static_cast<long>(row.comb);
      total[1] += static_cast<long>(row.lyndon);
      total[2] += static_cast<long>(row.liu);
    }
    for (auto& t : total) c.expect(t == formula::power(n, n - 1), "n=" + str(n) + ": total " + str(t));
  }
  c.note("comb, Lyndon and Liu-Lyndon counts for n<=" + str(top));
}

// 12
void psi_bijection(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 6);
  long long trees = 0;
  for (Mask a = 1; a < (Mask{1} << top); ++a) {
    std::vector<int> labels;
    for (int k = 1; k <= top; ++k)
      if (a & bit(k)) labels.push_back(k);
    int m = static_cast<int>(labels.size());
    for (int i = 0; i < m; ++i) {
      auto rooted = enumerate_rooted_trees(labels, i, cfg.caps);
      auto liu = enumerate_family(Family::liu, a, i);
      std::set<BicoloredTree> image;
      for (auto& t : rooted) {
        BicoloredTree b = psi(t);
        image.insert(b);
        c.expect(psi_inverse(b) == t, "psi_inverse(psi(" + t.to_string() + ")) differs");
      }
      c.expect(image == std::set<BicoloredTree>(liu.begin(), liu.end()),
               "A=" + mask_to_string(a) + " i=" + str(i) + ": image is not the Liu-Lyndon set");
      c.expect(image.size() == rooted.size(), "A=" + mask_to_string(a) + ": psi is not injective");
      trees += static_cast<long long>(rooted.size());
    }
  }
  c.note(std::to_string(trees) + " rooted trees over all subsets of [" + str(top) + "]");
}

// 13
void straightening(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 5);
  long long checked = 0, relations = 0;
  bool sampled = false;
  for (int n = 2; n <= top; ++n) {
    Poset host = Poset::build(n, Variant::weighted, cfg.caps);
    for (int i = 0; i < n; ++i) {
      OrderComplex k = OrderComplex::open_interval(host, 0, host.maximal(i), cfg.caps);
      CoboundarySpace b(k, n - 3);
      std::vector<BicoloredTree> trees = enumerate_bicolored(n, i, false, cfg.caps);
      if (n == 5 && cfg.straighten_samples > 0) {
        sampled = true;
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(i));
        std::shuffle(trees.begin(), trees.end(), rng);
        trees.resize(std::min<std::size_t>(trees.size(), static_cast<std::size_t>(cfg.straighten_samples)));
      }
      for (Side side : {Side::cohomology, Side::lie2}) {
        Straightener s(side);
        for (auto& t : trees) {
          TreeSum out = s.straighten(t);
          for (auto& [u, x] : out.terms) c.expect(is_comb(u), u.to_string() + " is not a comb");
          c.expect(b.contains(generator_cochain(t, side, host) - to_cochain(out, host)),
                   to_string(side) + ": " + t.to_string() + " minus its straightening is not a coboundary");
          ++checked;
        }
        for (auto& step : s.trace()) c.expect(step.after < step.before, "measure: " + step.to_string());
        for (auto& [inst, sum] : relation_instances(n, i, side, cfg.caps)) {
          c.expect(s.straighten(sum).is_zero(), to_string(side) + ": " + inst.to_string() + " does not vanish");
          ++relations;
        }
      }
    }
  }
  std::ostringstream os;
  os << checked << " straightenings, " << relations << " relation instances, n<=" << top;
  if (sampled) os << " (n=5 sampled: " << cfg.straighten_samples << " trees per i, seed " << cfg.seed << ")";
  c.note(os.str());
}

// 14
void bases(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 5);
  for (int n = 2; n <= top; ++n) {
    for (int i = 0; i < n; ++i)
      for (auto& b : verify_bases(n, i, cfg.caps))
        c.expect(b.passed(), "n=" + str(n) + " i=" + str(i) + " " + b.family + ": count " + std::to_string(b.count) +
                                 ", rank " + std::to_string(b.rank) + ", Betti " + std::to_string(b.betti));
    for (auto& b : verify_bases(n, std::nullopt, cfg.caps))
      c.expect(b.passed(), "n=" + str(n) + " full " + b.family + ": count " + std::to_string(b.count) + ", rank " +
                               std::to_string(b.rank));
    Poset host = Poset::build(n, Variant::weighted, cfg.caps);
    LiuOrder liu;
    for (int i = 0; i < n; ++i) {
      std::vector<ChainVector> rho, cochains;
      for (auto& t : liu.linear_extension((Mask{1} << n) - 1, i)) {
        rho.push_back(fundamental_cycle(t, host));
        cochains.push_back(ChainVector::single(interior_chain(psi(t), host)));
      }
      DualityReport d = verify_dual_bases(rho, cochains);
      c.expect(d.upper_triangular && d.unit_diagonal, "n=" + str(n) + " i=" + str(i) + ": pairing not unitriangular");
    }
  }
  c.note("comb/Lyndon/Liu-Lyndon, blue-rooted comb/red-rooted Lyndon bases and unitriangular pairings, n<=" + str(top));
}

// 15
void whitney_cohomology(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 5), cross = bound(cfg, 4);
  for (int n = 1; n <= top; ++n) {
    auto w = whitney_cohomology_ranks(n, cfg.caps);
    Integer total = 0;
    for (int r = 0; r < n; ++r) {
      c.expect(w[r] == formula::whitney_cohomology_rank(n, r), "n=" + str(n) + " r=" + str(r) + ": " + str(w[r]));
      total += w[r];
    }
    c.expect(total == formula::power(n + 1, n - 1), "n=" + str(n) + ": total " + str(total));
    if (n <= cross) c.expect(whitney_cohomology_ranks_by_homology(n, cfg.caps) == w, "n=" + str(n) + ": homology disagrees");
  }
  c.note("Whitney cohomology ranks for n<=" + str(top) + ", recomputed from homology for n<=" + str(cross));
}

// 16
void phi_check(const AcceptanceConfig& cfg, Check& c) {
  int top = bound(cfg, 4);
  long long relations = 0;
  for (int n = 2; n <= top; ++n) {
    Poset host = Poset::build(n, Variant::weighted, cfg.caps);
    for (int i = 0; i < n; ++i) {
      OrderComplex k = OrderComplex::open_interval(host, 0, host.maximal(i), cfg.caps);
      CoboundarySpace b(k, n - 3);
      std::vector<ChainVector> combs;
      for (auto& t : enumerate_family(Family::comb, n, i)) combs.push_back(phi(t, host));
      c.expect(b.quotient_rank(combs) == b.corank() && combs.size() == b.corank(),
               "n=" + str(n) + " i=" + str(i) + ": phi of the combs is not a basis");
      for (auto& [inst, sum] : relation_instances(n, i, Side::lie2, cfg.caps)) {
        c.expect(b.contains(to_cochain(sum, host)), inst.to_string() + " maps outside the coboundaries");
        ++relations;
      }
    }
  }
  c.note(std::to_string(relations) + " Lie relation instances, n<=" + str(top));
}

using Fn = void (*)(const AcceptanceConfig&, Check&);
struct Entry {
  const char* name;
  Fn fn;
};
const Entry kCriteria[] = {
    {"rank sizes", rank_sizes},
    {"Mobius product", mobius_product},
    {"Mobius of the augmented poset", mobius_augmented},
    {"characteristic polynomial", characteristic},
    {"Whitney matrices", whitney_matrices},
    {"rooted forests", forests},
    {"EL-labeling", el_labeling},
    {"ascent-free chains", ascent_free},
    {"Betti numbers", betti},
    {"Drake identity", drake},
    {"family counts", family_sizes},
    {"psi bijection", psi_bijection},
    {"straightening soundness", straightening},
    {"basis verification", bases},
    {"Whitney cohomology ranks", whitney_cohomology},
    {"phi verification", phi_check},
};
constexpr int kCount = sizeof(kCriteria) / sizeof(kCriteria[0]);

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCount) throw ArgumentError("no criterion " + std::to_string(id));
  return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  auto start = std::chrono::steady_clock::now();
  Check c{r};
  try {
    kCriteria[id - 1].fn(cfg, c);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, const std::vector<int>& only) {
  std::vector<int> ids = only;
  if (ids.empty())
    for (int k = 1; k <= kCount; ++k) ids.push_back(k);
  std::vector<CriterionResult> out(ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < ids.size();) out[k] = run_criterion(ids[k], cfg);
  };
  int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(ids.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}};
}

}  // namespace wpp
