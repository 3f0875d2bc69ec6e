#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wpp/poset.hpp"
#include "wpp/trees.hpp"

namespace wpp {

/// Replace the blocks with the given member sets by their union, of weight sum + u.
WeightedPartition u_merge(const WeightedPartition& p, const std::vector<Mask>& blocks, int u);

/// A chain of weighted partitions, bottom first. Chains are values; `indices` locates them
/// in a constructed poset when (co)homology needs element indices.
struct PosetChain {
  std::vector<WeightedPartition> elements;

  std::size_t length() const { return elements.empty() ? 0 : elements.size() - 1; }
  /// True if every consecutive pair is a cover.
  bool saturated() const;
  /// Element indices in `host`; ArgumentError if an element is missing.
  std::vector<int> indices(const Poset& host) const;
  /// Drop the first `front` and last `back` elements.
  PosetChain trimmed(std::size_t front, std::size_t back) const;
  std::string to_string() const;

  friend bool operator==(const PosetChain&, const PosetChain&) = default;
};

nlohmann::json to_json(const PosetChain& c);

/// c(T, sigma, tau): the rank-k element u(col)-merges the two blocks under the node tau(k).
/// An empty tau means postorder. The leaf set of t must be [n].
PosetChain chain_of_tree(const BicoloredTree& t, const LinearExtension& tau = {});

struct TreeWithExtension {
  BicoloredTree tree;  // normalized shape: the child with the smaller minimum goes left
  LinearExtension tau;
};
/// Reads off the merges of a maximal chain of [0, [n]^i]; chain_of_tree inverts it.
TreeWithExtension tree_of_chain(const PosetChain& c);

/// Chain from 0 to alpha(F) merging along the internal nodes of the forest. Nodes are
/// numbered by concatenating the postorders of the trees; merge_order lists them (1-based),
/// empty meaning that concatenated postorder. Leaf sets must partition [n].
PosetChain chain_of_forest(const std::vector<BicoloredTree>& forest, const std::vector<int>& merge_order = {});

/// alpha(T_E): components of the forest keeping the edges in `edges` (bit k = k-th entry of
/// t.edges()), each weighted by its number of descents.
WeightedPartition forest_partition(const RootedTree& t, Mask edges);

/// The subposet of Pi_n^w on {alpha(T_E)}, indexed by edge subsets.
class PiSubposet {
 public:
  explicit PiSubposet(RootedTree t);

  const RootedTree& tree() const { return tree_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::size_t size() const { return elements_.size(); }
  const WeightedPartition& element(Mask edges) const { return elements_.at(edges); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// alpha is injective and alpha(E) <= alpha(F) exactly when E is a subset of F.
  bool is_boolean() const;
  /// Element indices of the subposet in `host`, by edge subset.
  std::vector<int> embedding(const Poset& host) const;
  /// One maximal chain per ordering of the edges, with that ordering.
  std::vector<std::pair<std::vector<int>, PosetChain>> maximal_chains() const;
  /// The edge ordering that produces c, if c is a maximal chain of this subposet.
  std::optional<std::vector<int>> edge_order(const PosetChain& c) const;
  bool contains(const PosetChain& c) const { return edge_order(c).has_value(); }

 private:
  RootedTree tree_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<WeightedPartition> elements_;
};

}  // namespace wpp
