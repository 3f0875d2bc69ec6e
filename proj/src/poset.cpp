#include "wpp/poset.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "wpp/formulas.hpp"

namespace wpp {

int Block::min() const { return std::countr_zero(members) + 1; }
int Block::size() const { return std::popcount(members); }

std::string mask_to_string(Mask m) {
  std::string s;
  for (int e = 1; m != 0; ++e, m >>= 1)
    if (m & 1u) s += std::to_string(e);
  return s;
}

WeightedPartition::WeightedPartition(int n, std::vector<Block> blocks, bool pointed)
    : n_(n), pointed_(pointed), blocks_(std::move(blocks)) {
  if (n < 1 || n > 31) throw ArgumentError("ground set size out of range");
  Mask seen = 0;
  for (auto& b : blocks_) {
    if (b.members == 0) throw ArgumentError("empty block");
    if (seen & b.members) throw ArgumentError("blocks overlap");
    seen |= b.members;
    if (pointed) {
      if (b.point < 1 || !(b.members & bit(b.point)))
        throw ArgumentError("distinguished point not in its block");
      b.weight = 0;
    } else {
      if (b.weight < 0 || b.weight > b.size() - 1) throw ArgumentError("block weight out of range");
      b.point = 0;
    }
  }
  Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  if (seen != all) throw ArgumentError("blocks do not cover the ground set");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.min() < b.min(); });
}

WeightedPartition WeightedPartition::bottom(int n, bool pointed) {
  std::vector<Block> bs;
  for (int e = 1; e <= n; ++e) bs.push_back({bit(e), 0, pointed ? e : 0});
  return WeightedPartition(n, std::move(bs), pointed);
}

WeightedPartition WeightedPartition::full(int n, int weight) {
  return WeightedPartition(n, {Block{(Mask{1} << n) - 1, weight, 0}});
}

WeightedPartition WeightedPartition::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '{' && c != '}') s += c;
  std::vector<Block> bs;
  bool pointed = false, weighted = false;
  Mask all = 0;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto pos = tok.find_first_of("^@");
    if (pos == std::string::npos || pos == 0 || pos + 1 >= tok.size())
      throw ArgumentError("bad block '" + tok + "'");
    Block b;
    for (std::size_t k = 0; k < pos; ++k) {
      if (tok[k] < '1' || tok[k] > '9') throw ArgumentError("bad element in '" + tok + "'");
      b.members |= bit(tok[k] - '0');
    }
    int v = std::stoi(tok.substr(pos + 1));
    if (tok[pos] == '^') {
      weighted = true;
      b.weight = v;
    } else {
      pointed = true;
      b.point = v;
    }
    all |= b.members;
    bs.push_back(b);
  }
  if (bs.empty() || (pointed && weighted)) throw ArgumentError("bad partition '" + text + "'");
  return WeightedPartition(std::bit_width(all), std::move(bs), pointed);
}

int WeightedPartition::total_weight() const {
  int w = 0;
  for (const auto& b : blocks_) w += b.weight;
  return w;
}

int WeightedPartition::block_of(int element) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].members & bit(element)) return static_cast<int>(k);
  throw ArgumentError("element not in ground set");
}

int WeightedPartition::find_block(Mask members) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].members == members) return static_cast<int>(k);
  return -1;
}

WeightedPartition::Key WeightedPartition::key() const {
  Key k;
  k.reserve(blocks_.size());
  for (const auto& b : blocks_)
    k.push_back((b.members << 6) | static_cast<std::uint32_t>(pointed_ ? b.point : b.weight));
  return k;
}

std::string WeightedPartition::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k) s += ",";
    s += mask_to_string(blocks_[k].members);
    s += pointed_ ? "@" + std::to_string(blocks_[k].point) : "^" + std::to_string(blocks_[k].weight);
  }
  return s + "}";
}

namespace {

void require_same_kind(const WeightedPartition& a, const WeightedPartition& b) {
  if (a.ground() != b.ground()) throw ArgumentError("partitions over different ground sets");
  if (a.pointed() != b.pointed()) throw ArgumentError("mixing weighted and pointed partitions");
}

}  // namespace

bool covers(const WeightedPartition& a, const WeightedPartition& b) {
  require_same_kind(a, b);
  if (b.size() + 1 != a.size()) return false;
  return leq(a, b);
}

bool leq(const WeightedPartition& a, const WeightedPartition& b) {
  require_same_kind(a, b);
  std::size_t m = b.size();
  std::vector<int> sum(m, 0), count(m, 0);
  std::vector<char> point_ok(m, 0);
  for (const auto& blk : a.blocks()) {
    int j = b.block_of(blk.min());
    const Block& target = b.blocks()[j];
    if ((blk.members & ~target.members) != 0) return false;
    sum[j] += blk.weight;
    count[j] += 1;
    if (a.pointed() && blk.point == target.point) point_ok[j] = 1;
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (a.pointed()) {
      if (!point_ok[j]) return false;
    } else {
      int d = b.blocks()[j].weight - sum[j];
      if (d < 0 || d > count[j] - 1) return false;
    }
  }
  return true;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::weighted: return "weighted";
    case Variant::weighted_augmented: return "augmented";
    case Variant::pointed: return "pointed";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "weighted") return Variant::weighted;
  if (s == "augmented") return Variant::weighted_augmented;
  if (s == "pointed") return Variant::pointed;
  throw ArgumentError("unknown variant '" + s + "'");
}

namespace {

// All partitions obtained from p by merging two blocks.
std::vector<WeightedPartition> merges(const WeightedPartition& p) {
  std::vector<WeightedPartition> out;
  const auto& bs = p.blocks();
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = i + 1; j < bs.size(); ++j) {
      std::vector<Block> rest;
      for (std::size_t k = 0; k < bs.size(); ++k)
        if (k != i && k != j) rest.push_back(bs[k]);
      Mask merged = bs[i].members | bs[j].members;
      if (p.pointed()) {
        for (int pt : {bs[i].point, bs[j].point}) {
          auto next = rest;
          next.push_back({merged, 0, pt});
          out.emplace_back(p.ground(), std::move(next), true);
        }
      } else {
        for (int u : {0, 1}) {
          auto next = rest;
          next.push_back({merged, bs[i].weight + bs[j].weight + u, 0});
          out.emplace_back(p.ground(), std::move(next), false);
        }
      }
    }
  return out;
}

}  // namespace

Poset Poset::build(int n, Variant variant, const Caps& caps) {
  if (n < 1) throw ArgumentError("n must be positive");
  require_cap("max_poset_n", caps.max_poset_n, n);
  long long expected = 0;
  for (int k = 0; k < n; ++k) expected += formula::rank_size(n, k).get_si();
  require_cap("max_elements", caps.max_elements, expected);

  Poset P;
  P.n_ = n;
  P.variant_ = variant;
  bool pointed = variant == Variant::pointed;

  std::vector<WeightedPartition> layer{WeightedPartition::bottom(n, pointed)};
  for (int r = 0; !layer.empty(); ++r) {
    for (auto& w : layer) {
      int idx = static_cast<int>(P.elements_.size());
      P.index_.emplace(w.key(), idx);
      P.elements_.push_back(std::move(w));
      P.rank_.push_back(r);
    }
    if (r == n - 1) break;
    std::map<WeightedPartition::Key, WeightedPartition> next;
    for (std::size_t x = P.elements_.size() - layer.size(); x < P.elements_.size(); ++x)
      for (auto& q : merges(P.elements_[x])) next.emplace(q.key(), std::move(q));
    layer.clear();
    for (auto& [k, q] : next) layer.push_back(std::move(q));
  }
  std::size_t count = P.elements_.size();
  P.up_.assign(count, {});
  P.down_.assign(count, {});
  for (std::size_t x = 0; x < count; ++x) {
    for (const auto& q : merges(P.elements_[x])) {
      int y = P.index_.at(q.key());
      P.up_[x].push_back(y);
      P.down_[y].push_back(static_cast<int>(x));
    }
    std::sort(P.up_[x].begin(), P.up_[x].end());
  }
  for (auto& d : P.down_) std::sort(d.begin(), d.end());
  if (P.augmented()) {
    int t = static_cast<int>(count);
    P.rank_.push_back(n);
    P.up_.emplace_back();
    P.down_.emplace_back();
    for (std::size_t x = 0; x < count; ++x)
      if (P.elements_[x].size() == 1) {
        P.up_[x].push_back(t);
        P.down_[t].push_back(static_cast<int>(x));
      }
  }
  return P;
}

const WeightedPartition& Poset::partition(int x) const {
  if (x < 0 || x >= static_cast<int>(elements_.size())) throw ArgumentError("not a partition element");
  return elements_[x];
}

std::optional<int> Poset::find(const WeightedPartition& p) const {
  if (p.ground() != n_ || p.pointed() != (variant_ == Variant::pointed)) return std::nullopt;
  auto it = index_.find(p.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Poset::index_of(const WeightedPartition& p) const {
  auto i = find(p);
  if (!i) throw ArgumentError("partition " + p.to_string() + " not in poset");
  return *i;
}

int Poset::maximal(int i) const {
  if (variant_ == Variant::pointed) throw ArgumentError("[n]^i is a weighted element");
  return index_of(WeightedPartition::full(n_, i));
}

bool Poset::leq(int x, int y) const {
  if (x == y) return true;
  if (is_top(y)) return true;
  if (is_top(x)) return false;
  if (rank_[x] >= rank_[y]) return false;
  return wpp::leq(elements_[x], elements_[y]);
}

bool Poset::covers(int x, int y) const {
  const auto& u = up_.at(x);
  return std::binary_search(u.begin(), u.end(), y);
}

std::vector<int> Poset::interval(int x, int y) const {
  std::vector<int> out;
  if (!leq(x, y)) return out;
  for (int z = x; z <= y; ++z)
    if (leq(x, z) && leq(z, y)) out.push_back(z);
  return out;
}

std::vector<int> Poset::open_interval(int x, int y) const {
  auto v = interval(x, y);
  std::erase_if(v, [&](int z) { return z == x || z == y; });
  return v;
}

std::vector<long long> Poset::rank_sizes() const {
  std::vector<long long> s(length() + 1, 0);
  for (int r : rank_) s[r] += 1;
  return s;
}

std::string Poset::label(int x) const { return is_top(x) ? "1" : elements_.at(x).to_string(); }

MobiusTable::MobiusTable(const Poset& p, const Caps& caps) : p_(&p) {
  require_cap("max_mobius_n", caps.max_mobius_n, p.ground());
}

const std::vector<Integer>& MobiusTable::row(int x) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = rows_.find(x);
  if (it != rows_.end()) return it->second;
  const Poset& P = *p_;
  int size = static_cast<int>(P.size());
  std::vector<int> above;
  for (int y = x; y < size; ++y)
    if (P.leq(x, y)) above.push_back(y);
  std::vector<Integer> mu(size, Integer(0));
  mu[x] = 1;
  for (std::size_t b = 1; b < above.size(); ++b) {
    int y = above[b];
    Integer s = 0;
    for (std::size_t a = 0; a < b; ++a)
      if (P.leq(above[a], y)) s += mu[above[a]];
    mu[y] = -s;
  }
  return rows_.emplace(x, std::move(mu)).first->second;
}

Integer MobiusTable::operator()(int x, int y) const {
  if (!p_->leq(x, y)) throw ArgumentError("mobius(x, y) requires x <= y");
  return row(x)[y];
}

void for_each_maximal_chain(const Poset& p, int x, int y, const std::function<void(const std::vector<int>&)>& f) {
  if (!p.leq(x, y)) throw ArgumentError("maximal chains of an empty interval");
  std::vector<int> chain{x};
  std::function<void(int)> rec = [&](int z) {
    if (z == y) {
      f(chain);
      return;
    }
    for (int w : p.upper_covers(z))
      if (p.leq(w, y)) {
        chain.push_back(w);
        rec(w);
        chain.pop_back();
      }
  };
  rec(x);
}

std::vector<std::vector<int>> maximal_chains(const Poset& p, int x, int y) {
  std::vector<std::vector<int>> out;
  for_each_maximal_chain(p, x, y, [&](const std::vector<int>& c) { out.push_back(c); });
  return out;
}

IntPolynomial rank_generating_function(const Poset& p) {
  std::vector<Integer> c;
  auto sizes = p.rank_sizes();
  int top = p.augmented() ? p.length() - 1 : p.length();
  for (int k = 0; k <= top; ++k) c.emplace_back(static_cast<long>(sizes[k]));
  return IntPolynomial(std::move(c));
}

IntPolynomial mu_polynomial(int n, const Caps& caps) {
  Poset P = Poset::build(n, Variant::weighted, caps);
  MobiusTable mu(P, caps);
  std::vector<Integer> c;
  for (int i = 0; i < n; ++i) c.push_back(mu(0, P.maximal(i)));
  return IntPolynomial(std::move(c));
}

Integer mu_augmented(int n, const Caps& caps) {
  Poset P = Poset::build(n, Variant::weighted_augmented, caps);
  MobiusTable mu(P, caps);
  return mu(0, P.top());
}

IntPolynomial characteristic_polynomial(const Poset& p, const Caps& caps) {
  if (p.augmented()) throw ArgumentError("characteristic polynomial is defined on the unaugmented poset");
  MobiusTable mu(p, caps);
  const auto& row = mu.row(p.bottom());
  std::vector<Integer> c(p.length() + 1, Integer(0));
  for (std::size_t a = 0; a < p.size(); ++a) c[p.length() - p.rank(static_cast<int>(a))] += row[a];
  return IntPolynomial(std::move(c));
}

WhitneyNumbers whitney_numbers(int n, const Caps& caps) {
  if (n < 1) throw ArgumentError("n must be positive");
  WhitneyNumbers W;
  std::vector<std::vector<Integer>> first(n + 1), second(n + 1);
  for (int m = 1; m <= n; ++m) {
    Poset P = Poset::build(m, Variant::weighted, caps);
    IntPolynomial chi = characteristic_polynomial(P, caps);
    IntPolynomial F = rank_generating_function(P);
    for (int k = 0; k < m; ++k) {
      first[m].push_back(chi[m - 1 - k]);
      second[m].push_back(F[k]);
    }
  }
  W.first = first[n];
  W.second = second[n];
  W.matrix_first.assign(n, std::vector<Integer>(n, Integer(0)));
  W.matrix_second.assign(n, std::vector<Integer>(n, Integer(0)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) {
      W.matrix_first[i - 1][j - 1] = first[i][i - j];
      W.matrix_second[i - 1][j - 1] = second[i][i - j];
    }
  W.product_is_identity = formula::is_identity(formula::multiply(W.matrix_first, W.matrix_second));
  return W;
}

ForestTally enumerate_forests(int n, const Caps& caps) {
  if (n < 1) throw ArgumentError("n must be positive");
  require_cap("max_forest_n", caps.max_forest_n, n);
  ForestTally t;
  t.by_trees.assign(n + 1, Integer(0));
  // parent[v] in 0..n, 0 meaning v is a root; odometer over all (n+1)^n functions.
  std::vector<int> parent(n + 1, 0);
  std::vector<int> comp(n + 1);
  while (true) {
    bool acyclic = true;
    for (int v = 1; v <= n && acyclic; ++v) {
      int x = v;
      for (int steps = 0; x != 0; ++steps) {
        if (steps > n) {
          acyclic = false;
          break;
        }
        x = parent[x];
      }
    }
    if (acyclic) {
      std::vector<Mask> members(n + 1, 0);
      std::vector<int> descents(n + 1, 0);
      int roots = 0;
      for (int v = 1; v <= n; ++v) {
        int r = v;
        while (parent[r] != 0) r = parent[r];
        members[r] |= bit(v);
        if (parent[v] != 0 && v < parent[v]) descents[r] += 1;
        if (parent[v] == 0) ++roots;
      }
      t.by_trees[roots] += 1;
      std::vector<Block> bs;
      for (int r = 1; r <= n; ++r)
        if (parent[r] == 0) bs.push_back({members[r], descents[r], 0});
      t.by_partition[WeightedPartition(n, std::move(bs)).key()] += 1;
    }
    int k = 1;
    while (k <= n && parent[k] == n) parent[k++] = 0;
    if (k > n) break;
    parent[k] += 1;
  }
  return t;
}

Integer forest_count(int n, int k, const Caps& caps) {
  if (k < 1 || k > n) throw ArgumentError("forest_count requires 1 <= k <= n");
  return enumerate_forests(n, caps).by_trees[k];
}

bool upper_interval_isomorphic(const Poset& P, int alpha, const Caps& caps) {
  if (!P.augmented()) throw ArgumentError("upper_interval_isomorphic needs the augmented poset");
  const WeightedPartition& a = P.partition(alpha);
  int k = static_cast<int>(a.size());
  Poset Q = Poset::build(k, Variant::weighted_augmented, caps);
  std::vector<int> dom;
  for (int y = alpha; y < static_cast<int>(P.size()); ++y)
    if (P.leq(alpha, y)) dom.push_back(y);
  if (dom.size() != Q.size()) return false;

  std::vector<int> image;
  std::vector<char> hit(Q.size(), 0);
  for (int y : dom) {
    int z;
    if (P.is_top(y)) {
      z = Q.top();
    } else {
      const WeightedPartition& b = P.partition(y);
      std::vector<Block> bs;
      for (const auto& blk : b.blocks()) {
        Mask m = 0;
        int w = blk.weight;
        for (int j = 0; j < k; ++j)
          if (a.blocks()[j].members & blk.members) {
            m |= bit(j + 1);
            w -= a.blocks()[j].weight;
          }
        bs.push_back({m, w, 0});
      }
      z = Q.index_of(WeightedPartition(k, std::move(bs)));
    }
    if (hit[z]) return false;
    hit[z] = 1;
    image.push_back(z);
  }
  for (std::size_t s = 0; s < dom.size(); ++s)
    for (std::size_t t = 0; t < dom.size(); ++t)
      if (P.leq(dom[s], dom[t]) != Q.leq(image[s], image[t])) return false;
  return true;
}

std::string to_dot(const Poset& p) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int r = 0; r <= p.length(); ++r) {
    os << "  { rank=same;";
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p.rank(static_cast<int>(x)) == r) os << " n" << x << ";";
    os << " }\n";
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    os << "  n" << x << " [label=\"" << p.label(static_cast<int>(x)) << "\"];\n";
  for (std::size_t x = 0; x < p.size(); ++x)
    for (int y : p.upper_covers(static_cast<int>(x))) os << "  n" << x << " -> n" << y << ";\n";
  os << "}\n";
  return os.str();
}

namespace {
nlohmann::json coeffs_json(const IntPolynomial& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}
nlohmann::json seq_json(const std::vector<Integer>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : v) a.push_back(c.get_str());
  return a;
}
}  // namespace

nlohmann::json invariants_report(int n, Variant variant, const Caps& caps) {
  Variant base = variant == Variant::pointed ? Variant::pointed : Variant::weighted;
  Poset P = Poset::build(n, base, caps);
  nlohmann::json j;
  j["n"] = n;
  j["variant"] = to_string(variant);
  j["rank_sizes"] = P.rank_sizes();
  if (base == Variant::weighted) {
    j["mu_poly"] = coeffs_json(mu_polynomial(n, caps));
  } else {
    j["mu_poly"] = nullptr;
  }
  IntPolynomial chi = characteristic_polynomial(P, caps);
  j["char_poly"] = coeffs_json(chi);
  std::vector<Integer> w1, w2;
  IntPolynomial F = rank_generating_function(P);
  for (int k = 0; k < n; ++k) {
    w1.push_back(chi[n - 1 - k]);
    w2.push_back(F[k]);
  }
  j["whitney_first"] = seq_json(w1);
  j["whitney_second"] = seq_json(w2);
  if (variant == Variant::weighted_augmented) j["mu_hat"] = mu_augmented(n, caps).get_str();
  return j;
}

}  // namespace wpp
