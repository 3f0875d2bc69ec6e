#include "wpp/labeling.hpp"

#include <sstream>

namespace wpp {

std::string EdgeLabel::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")^" + std::to_string(u);
}

std::string to_string(LabelOrder o) {
  switch (o) {
    case LabelOrder::less: return "less";
    case LabelOrder::greater: return "greater";
    case LabelOrder::equal: return "equal";
    case LabelOrder::incomparable: return "incomparable";
  }
  return "?";
}

LabelOrder compare(const EdgeLabel& p, const EdgeLabel& q) {
  if (p.a != q.a) return p.a < q.a ? LabelOrder::less : LabelOrder::greater;
  if (p == q) return LabelOrder::equal;
  if (p.b <= q.b && p.u <= q.u) return LabelOrder::less;
  if (q.b <= p.b && q.u <= p.u) return LabelOrder::greater;
  return LabelOrder::incomparable;
}

EdgeLabel edge_label(const Poset& p, int x, int y) {
  if (p.variant() == Variant::pointed) throw ArgumentError("edge labels are defined on weighted partitions");
  if (!p.covers(x, y)) throw ArgumentError("edge label of a non-cover");
  if (p.is_top(y)) return {1, p.ground() + 1, 0};
  const WeightedPartition& a = p.partition(x);
  const WeightedPartition& b = p.partition(y);
  std::vector<const Block*> gone;
  for (const auto& blk : a.blocks())
    if (b.find_block(blk.members) < 0) gone.push_back(&blk);
  if (gone.size() != 2) throw InternalError("cover does not merge two blocks");
  const Block& merged = b.blocks()[b.block_of(gone[0]->min())];
  return {gone[0]->min(), gone[1]->min(), merged.weight - gone[0]->weight - gone[1]->weight};
}

std::vector<EdgeLabel> label_word(const Poset& p, const std::vector<int>& chain) {
  std::vector<EdgeLabel> w;
  for (std::size_t k = 1; k < chain.size(); ++k) w.push_back(edge_label(p, chain[k - 1], chain[k]));
  return w;
}

bool is_increasing(const std::vector<EdgeLabel>& word) {
  for (std::size_t k = 1; k < word.size(); ++k)
    if (!label_less(word[k - 1], word[k])) return false;
  return true;
}

bool is_ascent_free(const std::vector<EdgeLabel>& word) {
  for (std::size_t k = 1; k < word.size(); ++k)
    if (label_less(word[k - 1], word[k])) return false;
  return true;
}

bool lex_precedes(const std::vector<EdgeLabel>& first, const std::vector<EdgeLabel>& second) {
  for (std::size_t k = 0; k < first.size() && k < second.size(); ++k)
    if (!(first[k] == second[k])) return label_less(first[k], second[k]);
  return false;
}

IntervalReport verify_interval(const Poset& p, int x, int y) {
  IntervalReport r;
  r.x = x;
  r.y = y;
  std::vector<std::vector<EdgeLabel>> words;
  std::vector<std::size_t> increasing;
  for_each_maximal_chain(p, x, y, [&](const std::vector<int>& c) {
    words.push_back(label_word(p, c));
    if (is_increasing(words.back())) increasing.push_back(words.size() - 1);
    if (is_ascent_free(words.back())) r.ascent_free++;
  });
  r.maximal_chains = static_cast<long long>(words.size());
  r.increasing = static_cast<long long>(increasing.size());
  if (increasing.size() == 1) {
    r.lex_first = true;
    for (std::size_t k = 0; k < words.size() && r.lex_first; ++k)
      if (k != increasing[0] && !lex_precedes(words[increasing[0]], words[k])) r.lex_first = false;
  }
  return r;
}

ElReport verify_el(const Poset& p) {
  ElReport rep;
  rep.n = p.ground();
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = x + 1; y < p.size(); ++y)
      if (p.leq(static_cast<int>(x), static_cast<int>(y))) {
        rep.intervals.push_back(verify_interval(p, static_cast<int>(x), static_cast<int>(y)));
        if (!rep.intervals.back().ok()) rep.violations++;
      }
  return rep;
}

std::vector<std::vector<int>> ascent_free_chains(const Poset& p, int x, int y) {
  std::vector<std::vector<int>> out;
  for_each_maximal_chain(p, x, y, [&](const std::vector<int>& c) {
    if (is_ascent_free(label_word(p, c))) out.push_back(c);
  });
  return out;
}

std::string el_csv(const ElReport& r, const Poset& p) {
  std::ostringstream os;
  os << "interval,max_chains,increasing,lex_first_ok,ascent_free\n";
  for (const auto& i : r.intervals)
    os << '"' << "[" << p.label(i.x) << ";" << p.label(i.y) << "]" << '"' << ',' << i.maximal_chains << ','
       << i.increasing << ',' << (i.lex_first ? "true" : "false") << ',' << i.ascent_free << '\n';
  return os.str();
}

nlohmann::json to_json(const ElReport& r) {
  long long chains = 0;
  for (const auto& i : r.intervals) chains += i.maximal_chains;
  nlohmann::json bad = nlohmann::json::array();
  for (const auto& i : r.intervals)
    if (!i.ok()) bad.push_back({{"x", i.x}, {"y", i.y}, {"increasing", i.increasing}, {"lex_first", i.lex_first}});
  return {{"n", r.n},
          {"intervals", r.intervals.size()},
          {"maximal_chains", chains},
          {"violations", r.violations},
          {"failed_intervals", bad},
          {"lex_convention", "first differing label strictly smaller; incomparable does not precede"},
          {"passed", r.passed()}};
}

std::string labeled_dot(const Poset& p) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (std::size_t x = 0; x < p.size(); ++x)
    os << "  n" << x << " [label=\"" << p.label(static_cast<int>(x)) << "\"];\n";
  for (std::size_t x = 0; x < p.size(); ++x)
    for (int y : p.upper_covers(static_cast<int>(x)))
      os << "  n" << x << " -> n" << y << " [label=\"" << edge_label(p, static_cast<int>(x), y).to_string() << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace wpp
