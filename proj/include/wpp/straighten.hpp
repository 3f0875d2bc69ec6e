#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wpp/homology.hpp"
#include "wpp/trees.hpp"

namespace wpp {

/// cohomology: classes c(T) in the top cohomology of (0, [n]^i); lie2: brackets [T];
/// full: classes of c(T) minus the bottom in the top cohomology of Pi_n^w minus the bottom.
enum class Side { cohomology, lie2, full };
std::string to_string(Side s);
Side parse_side(const std::string& s);

/// Formal integer combination of bicolored trees.
struct TreeSum {
  Side side = Side::cohomology;
  std::map<BicoloredTree, Integer> terms;

  TreeSum() = default;
  explicit TreeSum(Side s) : side(s) {}
  static TreeSum single(Side s, const BicoloredTree& t, const Integer& coeff = 1);

  void add(const BicoloredTree& t, const Integer& coeff);
  void add(const TreeSum& o, const Integer& scale = 1);
  bool is_zero() const { return terms.empty(); }
  Integer coefficient(const BicoloredTree& t) const;
  std::string to_string() const;
  friend bool operator==(const TreeSum&, const TreeSum&) = default;
};
nlohmann::json to_json(const TreeSum& s);

enum class RelationKind { swap, assoc, mixed, type4 };
std::string to_string(RelationKind k);

struct RelationInstance {
  RelationKind kind = RelationKind::swap;
  BicoloredTree tree;        // the instance's first term
  std::size_t position = 0;  // token position of the node the relation acts on
  std::vector<BicoloredTree> parts;  // Upsilon_1, Upsilon_2[, Upsilon_3]
  std::string to_string() const;
};

/// (w, inv) on the interval sides; (size of the root's right subtree, 0) on the full side.
using Measure = std::pair<int, int>;
Measure interval_measure(const BicoloredTree& t);
int right_size(const BicoloredTree& t);

struct TraceStep {
  RelationKind kind;
  BicoloredTree tree;
  std::size_t position;
  Measure before;
  Measure after;  // largest measure among the produced terms
  std::string to_string() const;
};

/// Rewrites generators into the comb basis (blue-rooted combs on the full side). Results are
/// memoized per tree; every rewrite step checks that the measure strictly decreases.
class Straightener {
 public:
  explicit Straightener(Side side) : side_(side) {}
  Side side() const { return side_; }

  TreeSum straighten(const BicoloredTree& t);
  TreeSum straighten(const TreeSum& s);
  /// Steps executed so far (memoized subresults are not repeated).
  const std::vector<TraceStep>& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }
  /// Whether t is in the target basis of this side.
  bool is_target(const BicoloredTree& t) const;

 private:
  const TreeSum& normalized_result(const BicoloredTree& t);
  const TreeSum& full_result(const BicoloredTree& t);
  /// One application of the assoc or mixed relation at the innermost-leftmost offending node.
  TreeSum rewrite(const BicoloredTree& t, Side signs, std::optional<std::size_t> at = std::nullopt);
  TreeSum normalized(const BicoloredTree& t, const Integer& coeff, Side signs) const;

  Side side_;
  std::map<BicoloredTree, TreeSum> memo_;
  std::map<BicoloredTree, TreeSum> full_memo_;
  std::vector<TraceStep> trace_;
};

TreeSum straighten(const BicoloredTree& t, Side side);
TreeSum straighten_full_poset(const BicoloredTree& t);

/// Every instance of each relation on trees over [n] with i red nodes (any i when absent;
/// type4 instances only on the full side). Each sum must straighten to zero.
std::vector<std::pair<RelationInstance, TreeSum>> relation_instances(int n, std::optional<int> i, Side side,
                                                                     const Caps& caps = {});

/// sgn(sigma) sgn(T) c(T, sigma) without its ends, in the weighted poset `host`.
ChainVector phi(const BicoloredTree& t, const Poset& host);
/// The cochain of one generator: c(T) without ends (cohomology), phi (lie2), or c(T) without
/// the bottom (full).
ChainVector generator_cochain(const BicoloredTree& t, Side side, const Poset& host);
ChainVector to_cochain(const TreeSum& s, const Poset& host);

struct BasisCheck {
  std::string family;
  long long count = 0;
  long long betti = 0;
  long long rank = 0;  // rank of the images modulo coboundaries
  bool passed() const { return count == betti && rank == betti; }
};
/// Interval (0, [n]^i): combs, Lyndon, Liu-Lyndon. Full poset (no i): blue-rooted combs and
/// red-rooted Lyndon trees.
std::vector<BasisCheck> verify_bases(int n, std::optional<int> i, const Caps& caps = {});
nlohmann::json to_json(const BasisCheck& b);

}  // namespace wpp
