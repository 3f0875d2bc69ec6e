#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wpp/acceptance.hpp"
#include "wpp/chains.hpp"
#include "wpp/formulas.hpp"
#include "wpp/homology.hpp"
#include "wpp/labeling.hpp"
#include "wpp/poset.hpp"
#include "wpp/straighten.hpp"
#include "wpp/trees.hpp"

using namespace wpp;
using nlohmann::json;

namespace {

struct Options {
  int n = 3;
  std::optional<int> i;
  std::string variant = "weighted";
  std::string family = "comb";
  std::string side = "cohomology";
  std::string format = "text";
  std::string tree;
  std::string matrix;
  std::uint64_t seed = 1;
  int samples = 0;
  long long max_elements = Caps{}.max_elements;
  int jobs = 1;

  Caps caps() const {
    Caps c;
    c.max_elements = max_elements;
    return c;
  }
};

// Prints a report and turns its verdict into an exit code.
int finish(const Options& o, const json& j, bool passed, const std::string& text) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << (passed ? "PASS\n" : "FAIL\n");
  return passed ? 0 : 1;
}

void check_range(const Options& o) {
  if (o.n < 1) throw ArgumentError("--n must be at least 1");
  if (o.i && (*o.i < 0 || *o.i >= o.n)) throw ArgumentError("--i must lie in [0, n)");
}

int invariants(const Options& o) {
  Variant v = parse_variant(o.variant);
  Caps caps = o.caps();
  json j = invariants_report(o.n, v, caps);
  json checks;
  Poset p = Poset::build(o.n, v == Variant::pointed ? Variant::pointed : Variant::weighted, caps);
  checks["rank_sizes"] = rank_generating_function(p) == formula::rank_generating_function(o.n);
  checks["char_poly"] = characteristic_polynomial(p, caps) == formula::characteristic_polynomial(o.n);
  if (v != Variant::pointed) checks["mu_poly"] = mu_polynomial(o.n, caps) == formula::mu_product(o.n);
  if (v == Variant::weighted_augmented) checks["mu_hat"] = mu_augmented(o.n, caps) == formula::mu_augmented(o.n);
  checks["whitney_inverse"] = whitney_numbers(o.n, caps).product_is_identity;
  bool ok = true;
  for (auto& [k, x] : checks.items()) ok = ok && x.get<bool>();
  j["checks"] = checks;
  j["passed"] = ok;
  if (o.format == "dot") {
    std::cout << to_dot(Poset::build(o.n, v, caps));
    return ok ? 0 : 1;
  }
  std::ostringstream os;
  for (auto& [k, x] : j.items())
    if (k != "checks") os << k << ": " << x.dump() << "\n";
  for (auto& [k, x] : checks.items()) os << "check " << k << ": " << (x.get<bool>() ? "ok" : "FAILED") << "\n";
  return finish(o, j, ok, os.str());
}

int el_verify(const Options& o) {
  Poset p = Poset::build(o.n, Variant::weighted_augmented, o.caps());
  ElReport r = verify_el(p);
  if (o.format == "csv") {
    std::cout << el_csv(r, p);
    return r.passed() ? 0 : 1;
  }
  if (o.format == "dot") {
    std::cout << labeled_dot(p);
    return r.passed() ? 0 : 1;
  }
  std::ostringstream os;
  os << r.intervals.size() << " intervals, " << r.violations << " violations\n";
  return finish(o, to_json(r), r.passed(), os.str());
}

int homology(const Options& o) {
  Caps caps = o.caps();
  Poset p = Poset::build(o.n, o.i ? Variant::weighted : Variant::weighted_augmented, caps);
  std::optional<OrderComplex> k;
  Integer expect;
  std::string name;
  if (o.i) {
    k.emplace(OrderComplex::open_interval(p, p.bottom(), p.maximal(*o.i), caps));
    expect = formula::drake_product(o.n)[*o.i];
    name = "(0,[" + std::to_string(o.n) + "]^" + std::to_string(*o.i) + ")";
  } else {
    k.emplace(OrderComplex::without_bottom(p, caps));
    expect = formula::power(o.n - 1, o.n - 1);
    name = "Pi_" + std::to_string(o.n) + " minus bottom";
  }
  HomologyReport h = betti_numbers(*k, name);
  bool ok = h.top_torsion_free && Integer(static_cast<long>(h.betti.back())) == expect;
  for (std::size_t d = 0; d + 1 < h.betti.size(); ++d) ok = ok && h.betti[d] == 0;
  if (!o.matrix.empty()) {
    std::ofstream f(o.matrix);
    f << k->boundary_matrix(k->length()).to_triplets();
  }
  json j = to_json(h);
  j["expected_top"] = expect.get_str();
  j["passed"] = ok;
  std::ostringstream os;
  os << name << "\n";
  for (int d = -1; d <= h.length; ++d)
    os << "dim " << d << ": chains " << h.chain_counts[d + 1] << ", betti " << h.betti[d + 1] << "\n";
  os << "top torsion-free: " << (h.top_torsion_free ? "yes" : "no") << ", expected top rank " << expect.get_str() << "\n";
  return finish(o, j, ok, os.str());
}

int bases(const Options& o) {
  Caps caps = o.caps();
  json j;
  bool ok = true;
  std::ostringstream os;
  if (o.family == "tree") {
    if (!o.i) throw ArgumentError("--family tree needs --i");
    Poset host = Poset::build(o.n, Variant::weighted, caps);
    LiuOrder liu;
    std::vector<ChainVector> rho, cochains;
    for (auto& t : liu.linear_extension((Mask{1} << o.n) - 1, *o.i)) {
      rho.push_back(fundamental_cycle(t, host));
      cochains.push_back(ChainVector::single(interior_chain(psi(t), host)));
    }
    DualityReport d = verify_dual_bases(rho, cochains);
    ok = d.upper_triangular && d.unit_diagonal;
    j = {{"family", "tree"},
         {"count", rho.size()},
         {"upper_triangular", d.upper_triangular},
         {"unit_diagonal", d.unit_diagonal},
         {"determinant", d.determinant.get_str()},
         {"invertible_integers", d.invertible_integers},
         {"full_rank", d.invertible_rationals}};
    os << "pairing of fundamental cycles with psi cochains, " << rho.size() << " trees in Liu order\n"
       << std::boolalpha << "upper triangular: " << d.upper_triangular << ", unit diagonal: " << d.unit_diagonal << "\n";
    return finish(o, j, ok, os.str());
  }
  Family f = parse_family(o.family);
  std::string want = o.i ? to_string(f) : f == Family::comb ? "blue-rooted comb" : "red-rooted lyndon";
  if (!o.i && f != Family::comb && f != Family::lyndon)
    throw ArgumentError("full-poset bases exist for comb and lyndon only");
  for (auto& b : verify_bases(o.n, o.i, caps))
    if (b.family == want) {
      j = to_json(b);
      ok = b.passed();
      os << b.family << ": count " << b.count << ", rank " << b.rank << ", Betti " << b.betti << "\n";
    }
  return finish(o, j, ok, os.str());
}

int straighten_cmd(const Options& o) {
  Side side = parse_side(o.side);
  Caps caps = o.caps();
  std::vector<BicoloredTree> inputs;
  if (!o.tree.empty())
    inputs.push_back(BicoloredTree::parse(o.tree));
  else if (side == Side::full || o.i)
    inputs = enumerate_bicolored(o.n, side == Side::full ? std::nullopt : o.i, false, caps);
  else
    throw ArgumentError("straightening every tree on an interval side needs --i");
  if (inputs.empty()) throw ArgumentError("nothing to straighten");
  int n = inputs.front().leaf_count();
  Straightener s(side);
  Poset host = Poset::build(n, Variant::weighted, caps);
  std::optional<OrderComplex> k;
  std::optional<CoboundarySpace> b;
  if (n >= 2 && n <= 5) {
    if (side == Side::full) {
      k.emplace(OrderComplex::without_bottom(host, caps));
      b.emplace(*k, n - 2);
    } else {
      k.emplace(OrderComplex::open_interval(host, 0, host.maximal(inputs.front().red_count()), caps));
      b.emplace(*k, n - 3);
    }
  }
  json results = json::array();
  bool ok = true;
  std::ostringstream os;
  for (auto& t : inputs) {
    std::size_t first_step = s.trace().size();
    TreeSum out = s.straighten(t);
    bool targets = true;
    for (auto& [u, x] : out.terms) targets = targets && s.is_target(u);
    bool sound = !b || b->contains(generator_cochain(t, side, host) - to_cochain(out, host));
    ok = ok && targets && sound;
    json steps = json::array();
    for (std::size_t q = first_step; q < s.trace().size(); ++q) steps.push_back(s.trace()[q].to_string());
    results.push_back({{"input", t.to_string()}, {"output", to_json(out)["terms"]}, {"trace", steps},
                       {"supported_on_basis", targets}, {"coboundary_check", b ? json(sound) : json(nullptr)}});
    if (inputs.size() == 1) {
      for (std::size_t q = first_step; q < s.trace().size(); ++q) os << "step " << s.trace()[q].to_string() << "\n";
      os << t.to_string() << " = " << out.to_string() << "\n";
    }
  }
  if (inputs.size() > 1) os << inputs.size() << " trees straightened on the " << to_string(side) << " side\n";
  json j = {{"side", to_string(side)}, {"results", results}, {"passed", ok}};
  return finish(o, j, ok, os.str());
}

int psi_cmd(const Options& o) {
  std::vector<RootedTree> trees;
  if (!o.tree.empty())
    trees.push_back(RootedTree::parse(o.tree));
  else
    trees = enumerate_rooted_trees(o.n, o.i, o.caps());
  json rows = json::array();
  bool ok = true;
  std::ostringstream os;
  for (auto& t : trees) {
    BicoloredTree b = psi(t);
    bool inverse = psi_inverse(b) == t, liu = is_liu_lyndon(b) && b.red_count() == t.descents();
    ok = ok && inverse && liu;
    rows.push_back({{"tree", t.to_string()}, {"psi", b.to_string()}, {"inverse_ok", inverse}, {"liu_lyndon", liu}});
    os << t.to_string() << " -> " << b.to_string() << "\n";
  }
  if (o.format == "csv") {
    std::cout << "tree,psi,inverse_ok,liu_lyndon\n";
    for (auto& r : rows)
      std::cout << '"' << r["tree"].get<std::string>() << "\",\"" << r["psi"].get<std::string>() << "\","
                << r["inverse_ok"] << "," << r["liu_lyndon"] << "\n";
    return ok ? 0 : 1;
  }
  return finish(o, {{"trees", rows}, {"passed", ok}}, ok, os.str());
}

int whitney(const Options& o) {
  Caps caps = o.caps();
  auto ranks = whitney_cohomology_ranks(o.n, caps);
  bool ok = true;
  Integer total = 0;
  json rows = json::array();
  std::ostringstream os;
  for (int r = 0; r < o.n; ++r) {
    Integer want = formula::whitney_cohomology_rank(o.n, r);
    ok = ok && ranks[r] == want;
    total += ranks[r];
    rows.push_back({{"r", r}, {"rank", ranks[r].get_str()}, {"formula", want.get_str()}});
    os << "WH^" << r << ": " << ranks[r].get_str() << " (formula " << want.get_str() << ")\n";
  }
  ok = ok && total == formula::power(o.n + 1, o.n - 1);
  os << "total " << total.get_str() << "\n";
  if (o.format == "csv") {
    std::cout << "r,rank,formula\n";
    for (auto& r : rows) std::cout << r["r"] << "," << r["rank"].get<std::string>() << "," << r["formula"].get<std::string>() << "\n";
    return ok ? 0 : 1;
  }
  return finish(o, {{"n", o.n}, {"ranks", rows}, {"total", total.get_str()}, {"passed", ok}}, ok, os.str());
}

int report_all(const Options& o) {
  AcceptanceConfig cfg;
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.straighten_samples = o.samples;
  cfg.jobs = o.jobs;
  cfg.caps = o.caps();
  auto results = run_acceptance(cfg);
  bool ok = true;
  json rows = json::array();
  std::ostringstream os;
  for (auto& r : results) {
    ok = ok && r.passed;
    json row = to_json(r);
    row.erase("seconds");
    rows.push_back(row);
    os << "criterion " << r.id << " " << r.name << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.detail << "\n";
  }
  return finish(o, {{"n", o.n}, {"seed", o.seed}, {"criteria", rows}, {"passed", ok}}, ok, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted partition posets: invariants, homology and tree bases"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--n", o.n, "Size of the ground set")->check(CLI::Range(1, 31));
    c->add_option("--i", o.i, "Weight of the maximal element / number of red nodes");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv", "dot"}));
    c->add_option("--max-elements", o.max_elements, "Cap on poset size");
    c->add_option("--jobs", o.jobs, "Worker threads");
    c->add_option("--seed", o.seed, "Seed for sampled checks");
  };
  std::map<std::string, int (*)(const Options&)> commands = {
      {"invariants", invariants}, {"el-verify", el_verify}, {"homology", homology},  {"bases", bases},
      {"straighten", straighten_cmd}, {"psi", psi_cmd},     {"whitney", whitney},    {"report-all", report_all}};
  std::map<std::string, CLI::App*> subs;
  for (auto& [name, fn] : commands) subs[name] = app.add_subcommand(name);
  for (auto& [name, c] : subs) common(c);
  subs["invariants"]->add_option("--variant", o.variant)->check(CLI::IsMember({"weighted", "pointed", "augmented"}));
  subs["bases"]->add_option("--family", o.family)->check(CLI::IsMember({"comb", "lyndon", "liu", "tree"}));
  subs["straighten"]->add_option("--side", o.side)->check(CLI::IsMember({"cohomology", "lie2", "full"}));
  subs["straighten"]->add_option("--tree", o.tree, "Tree such as [1,<2,3>]");
  subs["psi"]->add_option("--tree", o.tree, "Rooted tree such as 2(1,3)");
  subs["homology"]->add_option("--matrix", o.matrix, "Write the top boundary matrix as sparse triplets");
  subs["report-all"]->add_option("--samples", o.samples, "Random trees per i for straightening at n=5 (0: all)");
  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [name, c] : subs)
      if (c->parsed()) {
        check_range(o);
        return commands[name](o);
      }
  } catch (const ResourceError& e) {
    json j = {{"error", "resource"}, {"cap", e.cap()}, {"limit", e.limit()}, {"requested", e.requested()}};
    std::cout << j.dump() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
