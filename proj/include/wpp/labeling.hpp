#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wpp/poset.hpp"

namespace wpp {

/// (a,b)^u: the cover merges blocks with minima a < b and raises the weight by u.
struct EdgeLabel {
  int a = 0, b = 0, u = 0;
  std::string to_string() const;
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

enum class LabelOrder { less, greater, equal, incomparable };
std::string to_string(LabelOrder o);

/// Order of the label poset: ordinal sum over a, componentwise on (b, u) within equal a.
LabelOrder compare(const EdgeLabel& p, const EdgeLabel& q);
inline bool label_less(const EdgeLabel& p, const EdgeLabel& q) { return compare(p, q) == LabelOrder::less; }

/// Label of the cover x < y; the top edge [n]^i < 1 gets (1, n+1)^0.
EdgeLabel edge_label(const Poset& p, int x, int y);
std::vector<EdgeLabel> label_word(const Poset& p, const std::vector<int>& chain);
bool is_increasing(const std::vector<EdgeLabel>& word);
/// No consecutive pair with a strict ascent (incomparable pairs are not ascents).
bool is_ascent_free(const std::vector<EdgeLabel>& word);
/// At the first differing position `first` is strictly below `second`.
bool lex_precedes(const std::vector<EdgeLabel>& first, const std::vector<EdgeLabel>& second);

struct IntervalReport {
  int x = 0, y = 0;
  long long maximal_chains = 0;
  long long increasing = 0;
  bool lex_first = false;  // the unique increasing chain strictly precedes every other chain
  long long ascent_free = 0;
  bool ok() const { return increasing == 1 && lex_first; }
};

struct ElReport {
  int n = 0;
  std::vector<IntervalReport> intervals;
  long long violations = 0;
  bool passed() const { return violations == 0; }
};

/// Checks every closed interval [x, y], x < y, of the poset (normally the augmented one).
ElReport verify_el(const Poset& p);
IntervalReport verify_interval(const Poset& p, int x, int y);
std::vector<std::vector<int>> ascent_free_chains(const Poset& p, int x, int y);

std::string el_csv(const ElReport& r, const Poset& p);
nlohmann::json to_json(const ElReport& r);
/// Hasse diagram with edges labeled "(a,b)^u".
std::string labeled_dot(const Poset& p);

}  // namespace wpp
