#include "wpp/homology.hpp"

#include <chrono>
#include <functional>

#include "wpp/formulas.hpp"

namespace wpp {

// ---------------------------------------------------------------------------------------
// ChainVector

ChainVector ChainVector::single(const Chain& c, const Integer& coeff) {
  ChainVector v(static_cast<int>(c.size()) - 1);
  v.add(c, coeff);
  return v;
}

void ChainVector::add(const Chain& c, const Integer& coeff) {
  if (static_cast<int>(c.size()) - 1 != dim) throw ArgumentError("chain has the wrong dimension");
  if (coeff == 0) return;
  auto [it, inserted] = terms.try_emplace(c, 0);
  it->second += coeff;
  if (it->second == 0) terms.erase(it);
}

Integer ChainVector::coefficient(const Chain& c) const {
  auto it = terms.find(c);
  return it == terms.end() ? Integer(0) : it->second;
}

ChainVector& ChainVector::operator+=(const ChainVector& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) dim = o.dim;
  if (o.dim != dim) throw ArgumentError("adding chain vectors of different dimensions");
  for (auto& [c, x] : o.terms) add(c, x);
  return *this;
}

ChainVector& ChainVector::operator-=(const ChainVector& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) dim = o.dim;
  if (o.dim != dim) throw ArgumentError("subtracting chain vectors of different dimensions");
  for (auto& [c, x] : o.terms) add(c, -x);
  return *this;
}

ChainVector operator*(const Integer& s, ChainVector v) {
  if (s == 0) return ChainVector(v.dim);
  for (auto& [c, x] : v.terms) x *= s;
  return v;
}

Integer pairing(const ChainVector& a, const ChainVector& b) {
  Integer s = 0;
  if (a.is_zero() || b.is_zero()) return s;
  if (a.dim != b.dim) return s;
  for (auto& [c, x] : a.terms) {
    auto it = b.terms.find(c);
    if (it != b.terms.end()) s += x * it->second;
  }
  return s;
}

nlohmann::json to_json(const ChainVector& v, const Poset& host) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [c, x] : v.terms) {
    nlohmann::json chain = nlohmann::json::array();
    for (int e : c) chain.push_back(host.label(e));
    terms.push_back({{"chain", chain}, {"coeff", x.get_str()}});
  }
  return {{"dim", v.dim}, {"terms", terms}};
}

// ---------------------------------------------------------------------------------------
// OrderComplex

OrderComplex::OrderComplex(const Poset& host, std::vector<int> elements, const Caps& caps)
    : host_(&host), elements_(std::move(elements)), member_(host.size(), 0) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (int e : elements_) member_.at(e) = 1;
  std::vector<std::vector<int>> above(elements_.size());
  for (std::size_t a = 0; a < elements_.size(); ++a)
    for (std::size_t b = a + 1; b < elements_.size(); ++b)
      if (host.leq(elements_[a], elements_[b])) above[a].push_back(static_cast<int>(b));
  chains_.push_back({Chain{}});
  long long total = 1;
  Chain cur;
  std::function<void(int)> rec = [&](int a) {
    cur.push_back(elements_[a]);
    if (chains_.size() < cur.size() + 1) chains_.emplace_back();
    chains_[cur.size()].push_back(cur);
    if (++total > caps.max_chains) throw ResourceError("max_chains", caps.max_chains, total);
    for (int b : above[a]) rec(b);
    cur.pop_back();
  };
  for (std::size_t a = 0; a < elements_.size(); ++a) rec(static_cast<int>(a));
  index_.resize(chains_.size());
  for (std::size_t d = 0; d < chains_.size(); ++d) {
    std::sort(chains_[d].begin(), chains_[d].end());
    for (std::size_t k = 0; k < chains_[d].size(); ++k) index_[d].emplace(chains_[d][k], static_cast<int>(k));
  }
}

OrderComplex OrderComplex::open_interval(const Poset& host, int x, int y, const Caps& caps) {
  return OrderComplex(host, host.open_interval(x, y), caps);
}

OrderComplex OrderComplex::without_bottom(const Poset& host, const Caps& caps) {
  std::vector<int> els;
  for (std::size_t e = 0; e < host.size(); ++e)
    if (static_cast<int>(e) != host.bottom() && !host.is_top(static_cast<int>(e))) els.push_back(static_cast<int>(e));
  return OrderComplex(host, els, caps);
}

const std::vector<Chain>& OrderComplex::chains(int r) const {
  static const std::vector<Chain> none;
  if (r + 1 < 0 || r + 1 >= static_cast<int>(chains_.size())) return none;
  return chains_[r + 1];
}

std::optional<int> OrderComplex::index(const Chain& c) const {
  std::size_t d = c.size();
  if (d >= index_.size()) return std::nullopt;
  auto it = index_[d].find(c);
  if (it == index_[d].end()) return std::nullopt;
  return it->second;
}

std::size_t OrderComplex::chain_count() const {
  std::size_t s = 0;
  for (auto& c : chains_) s += c.size();
  return s;
}

ChainVector OrderComplex::boundary(const ChainVector& v) const {
  ChainVector out(v.dim - 1);
  for (auto& [c, x] : v.terms)
    for (std::size_t i = 0; i < c.size(); ++i) {
      Chain f = c;
      f.erase(f.begin() + static_cast<long>(i));
      out.add(f, i % 2 == 0 ? x : Integer(-x));
    }
  return out;
}

ChainVector OrderComplex::coboundary(const ChainVector& v) const {
  ChainVector out(v.dim + 1);
  for (auto& [c, x] : v.terms) {
    for (int e : c)
      if (!member_.at(e)) throw ArgumentError("chain not in this complex");
    for (std::size_t i = 0; i <= c.size(); ++i) {
      for (int a : elements_) {
        if (i > 0 && !(a != c[i - 1] && host_->leq(c[i - 1], a))) continue;
        if (i < c.size() && !(a != c[i] && host_->leq(a, c[i]))) continue;
        Chain f = c;
        f.insert(f.begin() + static_cast<long>(i), a);
        out.add(f, i % 2 == 0 ? x : Integer(-x));
      }
    }
  }
  return out;
}

std::vector<SparseIntVector> OrderComplex::boundary_columns(int r) const {
  std::vector<SparseIntVector> cols;
  for (const Chain& c : chains(r)) {
    SparseIntVector col;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Chain f = c;
      f.erase(f.begin() + static_cast<long>(i));
      col[*index(f)] += i % 2 == 0 ? 1 : -1;
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

IntMatrix OrderComplex::boundary_matrix(int r) const {
  IntMatrix m(chains(r - 1).size(), chains(r).size());
  auto cols = boundary_columns(r);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (auto& [row, x] : cols[c]) m(row, c) = x;
  return m;
}

// ---------------------------------------------------------------------------------------
// Betti numbers

HomologyReport betti_numbers(const OrderComplex& k, const std::string& name) {
  auto start = std::chrono::steady_clock::now();
  HomologyReport rep;
  rep.poset = name;
  rep.length = k.length();
  for (int r = -1; r <= rep.length; ++r) rep.chain_counts.push_back(static_cast<long long>(k.chains(r).size()));
  // ranks[r + 1] = rank of the boundary map out of dimension r.
  rep.ranks.assign(rep.length + 3, 0);
  for (int r = 0; r <= rep.length; ++r) {
    // Rows of sparse_smith are the transposed columns; rank and invariants are unchanged.
    SmithResult s = sparse_smith(k.boundary_columns(r));
    rep.ranks[r + 1] = static_cast<long long>(s.rank);
    if (r >= rep.length - 1)
      for (auto& t : s.torsion) rep.torsion_top.push_back(t);
  }
  for (int r = -1; r <= rep.length; ++r)
    rep.betti.push_back(rep.chain_counts[r + 1] - rep.ranks[r + 1] - rep.ranks[r + 2]);
  rep.top_torsion_free = rep.torsion_top.empty();
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::json to_json(const HomologyReport& r) {
  nlohmann::json torsion = nlohmann::json::array();
  for (auto& t : r.torsion_top) torsion.push_back(t.get_str());
  std::vector<int> dims;
  for (int d = -1; d <= r.length; ++d) dims.push_back(d);
  return {{"poset_id", r.poset},     {"dims", dims},          {"chains", r.chain_counts},
          {"betti", r.betti},        {"torsion_top", torsion}, {"top_torsion_free", r.top_torsion_free},
          {"coefficients", "rationals; Smith normal form over the integers for the top two boundary maps"},
          {"runtime_ms", r.runtime_ms}};
}

// ---------------------------------------------------------------------------------------
// Coboundary space

CoboundarySpace::CoboundarySpace(const OrderComplex& k, int r, bool track_witness)
    : k_(&k), r_(r), echelon_(track_witness) {
  const auto& lower = k.chains(r - 1);
  for (std::size_t j = 0; j < lower.size(); ++j)
    echelon_.insert(coordinates(k.coboundary(ChainVector::single(lower[j]))), static_cast<int>(j));
}

SparseRatVector CoboundarySpace::coordinates(const ChainVector& v) const {
  SparseRatVector out;
  if (v.is_zero()) return out;
  if (v.dim != r_) throw ArgumentError("cochain has the wrong dimension");
  for (auto& [c, x] : v.terms) {
    auto idx = k_->index(c);
    if (!idx) throw ArgumentError("chain not in this complex");
    out.emplace(*idx, Rational(x));
  }
  return out;
}

bool CoboundarySpace::contains(const ChainVector& v) const { return echelon_.contains(coordinates(v)); }

std::optional<CoboundarySpace::Witness> CoboundarySpace::witness(const ChainVector& v) const {
  auto combo = echelon_.express(coordinates(v));
  if (!combo) return std::nullopt;
  Integer d = 1;
  for (auto& [g, x] : *combo) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  Witness w{ChainVector(r_ - 1), d};
  const auto& lower = k_->chains(r_ - 1);
  for (auto& [g, x] : *combo) {
    Rational s = x * d;
    w.w.add(lower[g], s.get_num());
  }
  return w;
}

std::size_t CoboundarySpace::quotient_rank(const std::vector<ChainVector>& vs) const {
  RationalEchelon e = echelon_;
  std::size_t r = 0;
  int g = static_cast<int>(k_->chains(r_ - 1).size());
  for (auto& v : vs) r += e.insert(coordinates(v), g++);
  return r;
}

// ---------------------------------------------------------------------------------------
// Fundamental cycles and pairings

Chain interior_chain(const BicoloredTree& t, const Poset& host, const LinearExtension& tau) {
  return chain_of_tree(t, tau).trimmed(1, 1).indices(host);
}

ChainVector fundamental_cycle(const RootedTree& t, const Poset& host) {
  int n = t.size();
  if (host.ground() != n || host.variant() != Variant::weighted) throw ArgumentError("host must be the weighted poset on [n]");
  if (n == 1) throw ArgumentError("fundamental cycle needs at least two nodes");
  PiSubposet pt(t);
  std::vector<int> emb = pt.embedding(host);
  std::vector<int> proper(emb.begin() + 1, emb.end() - 1);
  OrderComplex k(host, proper);
  int top = n - 3;
  if (k.length() != top) throw InternalError("subposet of a rooted tree has the wrong length");
  const auto& tops = k.chains(top);
  std::vector<std::vector<Integer>> kernel;
  if (top == -1) {
    kernel.push_back({Integer(1)});
  } else {
    kernel = k.boundary_matrix(top).nullspace();
  }
  if (kernel.size() != 1) throw InternalError("top homology of a sphere is not of rank one");
  Chain norm = interior_chain(psi(t), host);
  auto idx = k.index(norm);
  if (!idx) throw InternalError("c(psi(T)) is not a maximal chain of the subposet of T");
  const Integer& lead = kernel[0][*idx];
  if (lead != 1 && lead != -1) throw InternalError("fundamental cycle coefficient is not a unit");
  ChainVector rho(top);
  for (std::size_t j = 0; j < tops.size(); ++j) rho.add(tops[j], lead * kernel[0][j]);
  return rho;
}

DualityReport verify_dual_bases(const std::vector<ChainVector>& cycles, const std::vector<ChainVector>& cochains) {
  if (cycles.size() != cochains.size()) throw ArgumentError("pairing needs equally many cycles and cochains");
  std::optional<int> dim;
  for (const auto* list : {&cycles, &cochains})
    for (auto& v : *list) {
      if (v.is_zero()) continue;
      if (dim && *dim != v.dim) throw ArgumentError("cycles and cochains differ in dimension");
      dim = v.dim;
    }
  DualityReport r;
  std::size_t m = cycles.size();
  r.pairing = IntMatrix(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) r.pairing(j, k) = pairing(cycles[j], cochains[k]);
  r.upper_triangular = r.pairing.is_upper_triangular();
  r.unit_diagonal = true;
  for (std::size_t j = 0; j < m; ++j) r.unit_diagonal = r.unit_diagonal && r.pairing(j, j) == 1;
  r.determinant = r.upper_triangular ? Integer(1) : r.pairing.determinant();
  if (r.upper_triangular)
    for (std::size_t j = 0; j < m; ++j) r.determinant *= r.pairing(j, j);
  r.invertible_rationals = r.determinant != 0;
  r.invertible_integers = r.determinant == 1 || r.determinant == -1;
  return r;
}

std::vector<Integer> whitney_cohomology_ranks(int n, const Caps& caps) {
  Poset p = Poset::build(n, Variant::weighted, caps);
  MobiusTable mu(p, caps);
  std::vector<Integer> ranks(n, 0);
  const auto& row = mu.row(p.bottom());
  for (std::size_t x = 0; x < p.size(); ++x) ranks[p.rank(static_cast<int>(x))] += abs(row[x]);
  return ranks;
}

std::vector<Integer> whitney_cohomology_ranks_by_homology(int n, const Caps& caps) {
  Poset p = Poset::build(n, Variant::weighted, caps);
  std::vector<Integer> ranks(n, 0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    int r = p.rank(static_cast<int>(x));
    if (r == 0) {
      ranks[0] += 1;
      continue;
    }
    HomologyReport h = betti_numbers(OrderComplex::open_interval(p, p.bottom(), static_cast<int>(x), caps));
    ranks[r] += static_cast<long>(h.betti[r - 1]);  // dimension r - 2 sits at index r - 1
  }
  return ranks;
}

}  // namespace wpp
