#include "wpp/chains.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace wpp {

WeightedPartition u_merge(const WeightedPartition& p, const std::vector<Mask>& blocks, int u) {
  if (blocks.empty()) throw ArgumentError("u-merge of no blocks");
  if (u < 0 || u > static_cast<int>(blocks.size()) - 1) throw ArgumentError("u-merge increment out of range");
  if (p.pointed()) throw ArgumentError("u-merge needs a weighted partition");
  std::vector<char> used(p.size(), 0);
  Block merged{0, u, 0};
  for (Mask m : blocks) {
    int k = p.find_block(m);
    if (k < 0) throw ArgumentError("block " + mask_to_string(m) + " not in " + p.to_string());
    if (used[k]) throw ArgumentError("block named twice in u-merge");
    used[k] = 1;
    merged.members |= m;
    merged.weight += p.blocks()[k].weight;
  }
  std::vector<Block> out;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (!used[k]) out.push_back(p.blocks()[k]);
  out.push_back(merged);
  return WeightedPartition(p.ground(), std::move(out));
}

bool PosetChain::saturated() const {
  for (std::size_t k = 1; k < elements.size(); ++k)
    if (!covers(elements[k - 1], elements[k])) return false;
  return true;
}

std::vector<int> PosetChain::indices(const Poset& host) const {
  std::vector<int> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(host.index_of(e));
  return out;
}

PosetChain PosetChain::trimmed(std::size_t front, std::size_t back) const {
  if (front + back > elements.size()) throw ArgumentError("trimming more elements than the chain has");
  return PosetChain{std::vector<WeightedPartition>(elements.begin() + front, elements.end() - back)};
}

std::string PosetChain::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (k) s += " ⋖ ";
    s += elements[k].to_string();
  }
  return s;
}

nlohmann::json to_json(const PosetChain& c) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : c.elements) j.push_back(e.to_string());
  return j;
}

namespace {

struct MergeNode {
  Mask left, right;
  int u;
};

void collect_nodes(const BicoloredTree& t, std::vector<MergeNode>& out) {
  for (std::size_t pos : t.internal_postorder())
    out.push_back({t.subtree(t.left_at(pos)).leaf_set(), t.subtree(t.right_at(pos)).leaf_set(), u(t.color_at(pos))});
}

}  // namespace

PosetChain chain_of_forest(const std::vector<BicoloredTree>& forest, const std::vector<int>& merge_order) {
  if (forest.empty()) throw ArgumentError("empty forest");
  Mask all = 0;
  std::vector<MergeNode> nodes;
  for (const auto& t : forest) {
    Mask s = t.leaf_set();
    if (all & s) throw ArgumentError("forest trees share leaf labels");
    all |= s;
    collect_nodes(t, nodes);
  }
  int n = std::popcount(all);
  if (all != (Mask{1} << n) - 1) throw ArgumentError("forest leaf sets do not cover [n]");
  std::vector<int> order = merge_order;
  if (order.empty()) {
    order.resize(nodes.size());
    std::iota(order.begin(), order.end(), 1);
  }
  if (order.size() != nodes.size()) throw ArgumentError("merge order has the wrong length");
  std::vector<char> seen(nodes.size(), 0);
  PosetChain c;
  c.elements.push_back(WeightedPartition::bottom(n));
  for (int k : order) {
    if (k < 1 || k > static_cast<int>(nodes.size()) || seen[k - 1]) throw ArgumentError("merge order is not a permutation");
    seen[k - 1] = 1;
    const MergeNode& m = nodes[k - 1];
    const WeightedPartition& cur = c.elements.back();
    if (cur.find_block(m.left) < 0 || cur.find_block(m.right) < 0)
      throw ArgumentError("merge order lists a node before its children");
    c.elements.push_back(u_merge(cur, {m.left, m.right}, m.u));
  }
  return c;
}

PosetChain chain_of_tree(const BicoloredTree& t, const LinearExtension& tau) {
  if (!tau.empty() && !is_linear_extension(t, tau)) throw ArgumentError("not a linear extension of " + t.to_string());
  return chain_of_forest({t}, tau);
}

TreeWithExtension tree_of_chain(const PosetChain& c) {
  if (c.elements.empty()) throw ArgumentError("empty chain");
  int n = c.elements.front().ground();
  if (!(c.elements.front() == WeightedPartition::bottom(n))) throw ArgumentError("chain does not start at the bottom");
  if (c.elements.back().size() != 1) throw ArgumentError("chain does not end at a maximal element");
  if (!c.saturated()) throw ArgumentError("chain is not saturated");
  std::map<Mask, BicoloredTree> trees;
  for (int e = 1; e <= n; ++e) trees.emplace(bit(e), BicoloredTree::leaf(e));
  std::vector<Mask> steps;
  for (std::size_t k = 1; k < c.elements.size(); ++k) {
    const WeightedPartition& a = c.elements[k - 1];
    const WeightedPartition& b = c.elements[k];
    std::vector<const Block*> gone;
    for (const auto& blk : a.blocks())
      if (b.find_block(blk.members) < 0) gone.push_back(&blk);
    if (gone.size() != 2) throw InternalError("cover does not merge two blocks");
    Mask m = gone[0]->members | gone[1]->members;
    const Block& merged = b.blocks()[b.find_block(m)];
    int u = merged.weight - gone[0]->weight - gone[1]->weight;
    // Blocks are sorted by minimum, so gone[0] holds the smaller minimum.
    trees[m] = BicoloredTree::join(u == 1 ? Color::red : Color::blue, trees.at(gone[0]->members),
                                   trees.at(gone[1]->members));
    steps.push_back(m);
  }
  TreeWithExtension out;
  out.tree = trees.at((Mask{1} << n) - 1);
  std::map<Mask, int> post;
  int k = 1;
  for (std::size_t pos : out.tree.internal_postorder()) post[out.tree.subtree(pos).leaf_set()] = k++;
  for (Mask m : steps) out.tau.push_back(post.at(m));
  return out;
}

WeightedPartition forest_partition(const RootedTree& t, Mask edges) {
  int n = t.size();
  if (t.label_set() != (Mask{1} << n) - 1) throw ArgumentError("rooted tree must have node set [n]");
  auto es = t.edges();
  std::vector<int> comp(n + 1);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (std::size_t k = 0; k < es.size(); ++k)
    if (edges & bit(static_cast<int>(k) + 1)) comp[find(es[k].first)] = find(es[k].second);
  std::map<int, Block> blocks;
  for (int v = 1; v <= n; ++v) blocks[find(v)].members |= bit(v);
  for (std::size_t k = 0; k < es.size(); ++k)
    if ((edges & bit(static_cast<int>(k) + 1)) && es[k].first < es[k].second) blocks[find(es[k].first)].weight++;
  std::vector<Block> out;
  for (auto& [root, b] : blocks) out.push_back(b);
  return WeightedPartition(n, std::move(out));
}

PiSubposet::PiSubposet(RootedTree t) : tree_(std::move(t)), edges_(tree_.edges()) {
  Mask subsets = Mask{1} << edges_.size();
  elements_.reserve(subsets);
  for (Mask e = 0; e < subsets; ++e) elements_.push_back(forest_partition(tree_, e));
}

bool PiSubposet::is_boolean() const {
  std::map<WeightedPartition::Key, Mask> seen;
  for (Mask e = 0; e < elements_.size(); ++e)
    if (!seen.emplace(elements_[e].key(), e).second) return false;
  for (Mask e = 0; e < elements_.size(); ++e)
    for (Mask f = 0; f < elements_.size(); ++f)
      if (leq(elements_[e], elements_[f]) != ((e & ~f) == 0)) return false;
  return true;
}

std::vector<int> PiSubposet::embedding(const Poset& host) const {
  std::vector<int> out;
  for (const auto& e : elements_) out.push_back(host.index_of(e));
  return out;
}

std::vector<std::pair<std::vector<int>, PosetChain>> PiSubposet::maximal_chains() const {
  std::vector<int> perm(edges_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, PosetChain>> out;
  do {
    PosetChain c;
    Mask e = 0;
    c.elements.push_back(elements_[0]);
    for (int k : perm) {
      e |= bit(k + 1);
      c.elements.push_back(elements_[e]);
    }
    out.emplace_back(perm, std::move(c));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::optional<std::vector<int>> PiSubposet::edge_order(const PosetChain& c) const {
  if (c.elements.size() != edges_.size() + 1) return std::nullopt;
  std::vector<int> order;
  Mask prev = 0;
  if (!(c.elements[0] == elements_[0])) return std::nullopt;
  for (std::size_t k = 1; k < c.elements.size(); ++k) {
    std::optional<int> added;
    for (std::size_t j = 0; j < edges_.size(); ++j) {
      Mask b = bit(static_cast<int>(j) + 1);
      if (!(prev & b) && elements_[prev | b] == c.elements[k]) added = static_cast<int>(j);
    }
    if (!added) return std::nullopt;
    prev |= bit(*added + 1);
    order.push_back(*added);
  }
  return order;
}

}  // namespace wpp
