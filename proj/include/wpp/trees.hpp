#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wpp/common.hpp"
#include "wpp/polynomial.hpp"

namespace wpp {

enum class Color : std::uint8_t { blue = 0, red = 1 };

inline int u(Color c) { return c == Color::red ? 1 : 0; }
inline Color other(Color c) { return c == Color::red ? Color::blue : Color::red; }

/// Complete binary tree with blue/red internal nodes and labeled leaves, stored as its
/// preorder token string: a leaf is its label byte, an internal node is kBlue or kRed.
/// Printed as "[L,R]" for a blue node and "<L,R>" for a red node.
class BicoloredTree {
 public:
  static constexpr unsigned char kBlue = 64;
  static constexpr unsigned char kRed = 65;

  BicoloredTree() = default;
  static BicoloredTree leaf(int label);
  static BicoloredTree join(Color c, const BicoloredTree& left, const BicoloredTree& right);
  static BicoloredTree parse(const std::string& text);
  static BicoloredTree from_code(std::string code);

  bool is_leaf() const { return code_.size() == 1; }
  int label() const;
  Color color() const;
  BicoloredTree left() const;
  BicoloredTree right() const;

  int leaf_count() const { return static_cast<int>(code_.size() + 1) / 2; }
  int internal_count() const { return static_cast<int>(code_.size()) / 2; }
  int red_count() const;
  Mask leaf_set() const;
  int min_leaf() const;
  /// Leaf labels left to right (the permutation sigma).
  std::vector<int> leaf_word() const;

  /// Token index one past the subtree starting at `pos`.
  std::size_t subtree_end(std::size_t pos) const;
  BicoloredTree subtree(std::size_t pos) const;
  BicoloredTree replace(std::size_t pos, const BicoloredTree& with) const;
  bool is_internal_at(std::size_t pos) const { return code_[pos] >= kBlue; }
  Color color_at(std::size_t pos) const;
  /// Token positions of the children of the internal node at `pos`.
  std::size_t left_at(std::size_t pos) const { return pos + 1; }
  std::size_t right_at(std::size_t pos) const { return subtree_end(pos + 1); }
  /// Token positions of internal nodes in postorder (v_1, ..., v_{n-1}).
  std::vector<std::size_t> internal_postorder() const;

  const std::string& code() const { return code_; }
  std::string to_string() const;

  friend bool operator==(const BicoloredTree&, const BicoloredTree&) = default;
  friend auto operator<=>(const BicoloredTree& a, const BicoloredTree& b) { return a.code_ <=> b.code_; }

 private:
  explicit BicoloredTree(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

nlohmann::json to_json(const BicoloredTree& t);
BicoloredTree tree_from_json(const nlohmann::json& j);

/// All labeled bicolored trees with leaf set [n] (and i red nodes if given), sorted.
std::vector<BicoloredTree> enumerate_bicolored(int n, std::optional<int> i = std::nullopt,
                                               bool normalized_only = false, const Caps& caps = {});

/// Valency = smallest leaf label below each node, indexed by token position.
std::vector<int> min_leaf_valencies(const BicoloredTree& t);
/// Liu's valency: leaf label; min over children at blue nodes, max at red nodes.
std::vector<int> liu_valencies(const BicoloredTree& t);

struct Classification {
  bool normalized = false;
  bool comb = false;
  bool lyndon = false;
  bool liu_lyndon = false;
  std::vector<int> min_valency;
  std::vector<int> liu_valency;
};
Classification classify(const BicoloredTree& t);
bool is_normalized(const BicoloredTree& t);
bool is_comb(const BicoloredTree& t);
bool is_lyndon(const BicoloredTree& t);
bool is_liu_lyndon(const BicoloredTree& t);

enum class Family { normalized, comb, lyndon, liu };
std::string to_string(Family f);
Family parse_family(const std::string& s);
/// Members of a family with the given leaf set, generated recursively (all four families
/// are closed under taking subtrees). Sorted.
std::vector<BicoloredTree> enumerate_family(Family f, Mask leaves, std::optional<int> i = std::nullopt);
std::vector<BicoloredTree> enumerate_family(Family f, int n, std::optional<int> i = std::nullopt);

struct Normalized {
  int cohomology_sign = 1;  // product of (-1)^{|I(L)||I(R)|} over the swaps
  int swaps = 0;            // number of subtree swaps; Lie-side sign is (-1)^swaps
  BicoloredTree tree;
};
Normalized normalize(const BicoloredTree& t);

/// sgn(T) = 1 for a leaf, (-1)^{|I(T2)|} sgn(T1) sgn(T2) for T = T1 ^ T2.
int tree_sign(const BicoloredTree& t);
/// Sum over internal nodes of the number of internal nodes in their right subtree.
int weight(const BicoloredTree& t);
/// Pairs (x blue, y red) with y reachable from x along right edges.
int inversions(const BicoloredTree& t);
int permutation_sign(const std::vector<int>& word);

/// A linear extension given as tau: tau[k] = 1-based postorder index of the k-th node.
using LinearExtension = std::vector<int>;
std::vector<LinearExtension> linear_extensions(const BicoloredTree& t);
bool is_linear_extension(const BicoloredTree& t, const LinearExtension& tau);
/// The unique extension along which min-leaf valencies weakly decrease.
LinearExtension valency_decreasing_extension(const BicoloredTree& t);

/// Rooted tree on a finite label set; parent[k] is the parent of labels[k], 0 at the root.
class RootedTree {
 public:
  RootedTree() = default;
  RootedTree(std::vector<int> labels, std::vector<int> parent);
  /// Parses "2(1,3(4))": a label followed by its parenthesized children.
  static RootedTree parse(const std::string& text);

  const std::vector<int>& labels() const { return labels_; }
  int size() const { return static_cast<int>(labels_.size()); }
  Mask label_set() const;
  int root() const;
  int parent_of(int label) const;
  std::vector<int> children(int label) const;
  int descents() const;
  /// Edges as (child, parent); red (descent) iff child < parent.
  std::vector<std::pair<int, int>> edges() const;
  Mask subtree_labels(int label) const;
  /// Subtree spanned by `keep` (must be closed under parents within it), rooted at its top.
  RootedTree restrict(Mask keep) const;
  std::string key() const;
  std::string to_string() const;

  friend bool operator==(const RootedTree&, const RootedTree&) = default;
  friend auto operator<=>(const RootedTree& a, const RootedTree& b) {
    return std::tie(a.labels_, a.parent_) <=> std::tie(b.labels_, b.parent_);
  }

 private:
  std::vector<int> labels_;
  std::vector<int> parent_;
};

/// Calls `f` on every rooted tree with node set `labels` (Pruefer sequence x root).
void for_each_rooted_tree(const std::vector<int>& labels, const std::function<void(const RootedTree&)>& f);
std::vector<RootedTree> enumerate_rooted_trees(const std::vector<int>& labels, std::optional<int> descents = std::nullopt,
                                               const Caps& caps = {});
std::vector<RootedTree> enumerate_rooted_trees(int n, std::optional<int> descents = std::nullopt, const Caps& caps = {});
/// sum_i |T_{n,i}| t^i by exhaustive enumeration.
IntPolynomial descent_polynomial(int n, const Caps& caps = {});

BicoloredTree psi(const RootedTree& t);
RootedTree psi_inverse(const BicoloredTree& t);

/// Liu's partial order on rooted trees with a fixed node set and descent count.
/// Memoized over (node set, descents); built by explicit digraph + transitive closure.
class LiuOrder {
 public:
  bool leq(const RootedTree& a, const RootedTree& b);
  /// Direct relation (one step of the generating relation), without closure.
  bool precedes(const RootedTree& a, const RootedTree& b);
  /// Topological order of the trees (all of T_{A,i}), ties broken by canonical key.
  std::vector<RootedTree> linear_extension(Mask labels, int descents);
  std::size_t relation_size(Mask labels, int descents);

 private:
  struct Level {
    std::vector<RootedTree> trees;
    std::map<std::string, int> index;
    std::vector<std::vector<char>> direct;
    std::vector<std::vector<char>> reach;
  };
  Level& level(Mask labels, int descents);
  std::map<std::pair<Mask, int>, Level> levels_;
};

struct FamilyCountRow {
  int n = 0;
  int i = 0;
  long long comb = 0, lyndon = 0, liu = 0, rooted = 0;
};
std::vector<FamilyCountRow> family_counts(int n, const Caps& caps = {});
std::string family_counts_csv(const std::vector<FamilyCountRow>& rows);

}  // namespace wpp
