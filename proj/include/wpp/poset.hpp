#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "wpp/common.hpp"
#include "wpp/polynomial.hpp"

namespace wpp {

/// A block of a weighted (or pointed) partition. `point` is only meaningful for pointed
/// partitions, where it names the distinguished element; `weight` is then always 0.
struct Block {
  Mask members = 0;
  int weight = 0;
  int point = 0;

  int min() const;
  int size() const;
  friend bool operator==(const Block&, const Block&) = default;
};

class WeightedPartition {
 public:
  using Key = std::vector<std::uint32_t>;

  WeightedPartition() = default;
  /// Validates and sorts the blocks by minimum element.
  WeightedPartition(int n, std::vector<Block> blocks, bool pointed = false);

  static WeightedPartition bottom(int n, bool pointed = false);
  /// The single-block partition [n]^i.
  static WeightedPartition full(int n, int weight);
  /// Parses "{12^0,3^0}" (weighted) or "{12@1,3@3}" (pointed); ground set is the union.
  static WeightedPartition parse(const std::string& text);

  int ground() const { return n_; }
  bool pointed() const { return pointed_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  int total_weight() const;
  /// Index of the block containing `element`.
  int block_of(int element) const;
  int find_block(Mask members) const;

  Key key() const;
  std::string to_string() const;

  friend bool operator==(const WeightedPartition& a, const WeightedPartition& b) {
    return a.n_ == b.n_ && a.pointed_ == b.pointed_ && a.blocks_ == b.blocks_;
  }

 private:
  int n_ = 0;
  bool pointed_ = false;
  std::vector<Block> blocks_;
};

std::string mask_to_string(Mask m);

/// b covers a: b is a with two blocks merged (weight increment 0 or 1, or point kept).
bool covers(const WeightedPartition& a, const WeightedPartition& b);
/// a <= b in the weighted (resp. pointed) refinement order.
bool leq(const WeightedPartition& a, const WeightedPartition& b);

enum class Variant { weighted, weighted_augmented, pointed };
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// Finite graded poset of weighted or pointed partitions. Elements are ordered by rank,
/// then by canonical key, so index order is a linear extension. The augmented variant
/// appends a top element after all partitions.
class Poset {
 public:
  static Poset build(int n, Variant variant, const Caps& caps = {});

  int ground() const { return n_; }
  Variant variant() const { return variant_; }
  bool augmented() const { return variant_ == Variant::weighted_augmented; }
  std::size_t size() const { return rank_.size(); }
  int bottom() const { return 0; }
  /// Index of the adjoined top, or -1.
  int top() const { return augmented() ? static_cast<int>(size()) - 1 : -1; }
  bool is_top(int x) const { return x == top(); }
  int length() const { return rank_.empty() ? 0 : rank_.back(); }

  const WeightedPartition& partition(int x) const;
  int rank(int x) const { return rank_.at(x); }
  const std::vector<int>& upper_covers(int x) const { return up_.at(x); }
  const std::vector<int>& lower_covers(int x) const { return down_.at(x); }
  std::optional<int> find(const WeightedPartition& p) const;
  int index_of(const WeightedPartition& p) const;
  /// Index of [n]^i.
  int maximal(int i) const;

  bool leq(int x, int y) const;
  bool covers(int x, int y) const;
  /// Elements z with x <= z <= y, in index order.
  std::vector<int> interval(int x, int y) const;
  std::vector<int> open_interval(int x, int y) const;
  std::vector<long long> rank_sizes() const;
  std::string label(int x) const;

 private:
  int n_ = 0;
  Variant variant_ = Variant::weighted;
  std::vector<WeightedPartition> elements_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> up_, down_;
  std::map<WeightedPartition::Key, int> index_;
};

/// Möbius function of a poset, one lazily computed row mu(x, .) per x. Thread-safe.
class MobiusTable {
 public:
  explicit MobiusTable(const Poset& p, const Caps& caps = {});
  Integer operator()(int x, int y) const;
  /// mu(x, y) for every y >= x, indexed by y (entries for y not above x are 0).
  const std::vector<Integer>& row(int x) const;

 private:
  const Poset* p_;
  mutable std::mutex mu_;
  mutable std::unordered_map<int, std::vector<Integer>> rows_;
};

/// Calls f on every maximal chain of [x, y] (element indices, x first).
void for_each_maximal_chain(const Poset& p, int x, int y, const std::function<void(const std::vector<int>&)>& f);
std::vector<std::vector<int>> maximal_chains(const Poset& p, int x, int y);

IntPolynomial rank_generating_function(const Poset& p);
/// sum_i mu(0, [n]^i) t^i on the constructed poset.
IntPolynomial mu_polynomial(int n, const Caps& caps = {});
/// mu(0, 1) of the augmented poset.
Integer mu_augmented(int n, const Caps& caps = {});
/// sum over elements of mu(0, a) x^{length - rank(a)}.
IntPolynomial characteristic_polynomial(const Poset& p, const Caps& caps = {});

struct WhitneyNumbers {
  std::vector<Integer> first;
  std::vector<Integer> second;
  std::vector<std::vector<Integer>> matrix_first;
  std::vector<std::vector<Integer>> matrix_second;
  bool product_is_identity = false;
};
/// Whitney numbers read off the constructed posets Pi_1..Pi_n; the matrices are assembled
/// from these (uniform sequence) and multiplied.
WhitneyNumbers whitney_numbers(int n, const Caps& caps = {});

struct ForestTally {
  std::vector<Integer> by_trees;  // index k = number of trees, 0 unused
  std::map<WeightedPartition::Key, long long> by_partition;
};
/// Exhaustive enumeration of rooted forests on [n] (all parent functions).
ForestTally enumerate_forests(int n, const Caps& caps = {});
Integer forest_count(int n, int k, const Caps& caps = {});

/// Explicit order-isomorphism check [alpha, 1] -> augmented poset on |alpha| letters.
bool upper_interval_isomorphic(const Poset& augmented, int alpha, const Caps& caps = {});

std::string to_dot(const Poset& p);
nlohmann::json invariants_report(int n, Variant variant, const Caps& caps = {});

}  // namespace wpp
