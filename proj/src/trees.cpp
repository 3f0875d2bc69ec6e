#include "wpp/trees.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

namespace wpp {

// ---------------------------------------------------------------------------------------
// BicoloredTree

BicoloredTree BicoloredTree::leaf(int label) {
  if (label < 1 || label > 31) throw ArgumentError("leaf label out of range");
  return BicoloredTree(std::string(1, static_cast<char>(label)));
}

BicoloredTree BicoloredTree::join(Color c, const BicoloredTree& left, const BicoloredTree& right) {
  if (left.code_.empty() || right.code_.empty()) throw ArgumentError("joining an empty tree");
  if (left.leaf_set() & right.leaf_set()) throw ArgumentError("subtrees share a leaf label");
  std::string code;
  code.reserve(1 + left.code_.size() + right.code_.size());
  code += static_cast<char>(c == Color::red ? kRed : kBlue);
  code += left.code_;
  code += right.code_;
  return BicoloredTree(std::move(code));
}

BicoloredTree BicoloredTree::from_code(std::string code) {
  BicoloredTree t(std::move(code));
  if (t.code_.empty() || t.subtree_end(0) != t.code_.size()) throw ArgumentError("malformed tree code");
  Mask seen = 0;
  for (unsigned char c : t.code_)
    if (c < kBlue) {
      if (c < 1 || c > 31 || (seen & bit(c))) throw ArgumentError("bad leaf labels in tree code");
      seen |= bit(c);
    }
  return t;
}

namespace {

struct TreeParser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  BicoloredTree parse() {
    skip();
    if (pos >= s.size()) throw ArgumentError("unexpected end of tree '" + s + "'");
    char c = s[pos];
    if (c == '[' || c == '<') {
      ++pos;
      BicoloredTree l = parse();
      skip();
      if (pos >= s.size() || s[pos] != ',') throw ArgumentError("expected ',' in tree '" + s + "'");
      ++pos;
      BicoloredTree r = parse();
      skip();
      char close = c == '[' ? ']' : '>';
      if (pos >= s.size() || s[pos] != close) throw ArgumentError("unbalanced brackets in tree '" + s + "'");
      ++pos;
      return BicoloredTree::join(c == '[' ? Color::blue : Color::red, l, r);
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ArgumentError("unexpected character in tree '" + s + "'");
    int v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
    return BicoloredTree::leaf(v);
  }
};

}  // namespace

BicoloredTree BicoloredTree::parse(const std::string& text) {
  TreeParser p{text};
  BicoloredTree t = p.parse();
  p.skip();
  if (p.pos != text.size()) throw ArgumentError("trailing characters in tree '" + text + "'");
  return t;
}

int BicoloredTree::label() const {
  if (!is_leaf()) throw ArgumentError("label() on an internal node");
  return static_cast<unsigned char>(code_[0]);
}

Color BicoloredTree::color() const {
  if (is_leaf()) throw ArgumentError("color() on a leaf");
  return color_at(0);
}

Color BicoloredTree::color_at(std::size_t pos) const {
  return static_cast<unsigned char>(code_[pos]) == kRed ? Color::red : Color::blue;
}

BicoloredTree BicoloredTree::left() const {
  if (is_leaf()) throw ArgumentError("left() on a leaf");
  return subtree(1);
}

BicoloredTree BicoloredTree::right() const {
  if (is_leaf()) throw ArgumentError("right() on a leaf");
  return subtree(subtree_end(1));
}

int BicoloredTree::red_count() const {
  int r = 0;
  for (unsigned char c : code_) r += c == kRed;
  return r;
}

Mask BicoloredTree::leaf_set() const {
  Mask m = 0;
  for (unsigned char c : code_)
    if (c < kBlue) m |= bit(c);
  return m;
}

int BicoloredTree::min_leaf() const { return std::countr_zero(leaf_set()) + 1; }

std::vector<int> BicoloredTree::leaf_word() const {
  std::vector<int> w;
  for (unsigned char c : code_)
    if (c < kBlue) w.push_back(c);
  return w;
}

std::size_t BicoloredTree::subtree_end(std::size_t pos) const {
  int need = 1;
  while (need > 0) {
    if (pos >= code_.size()) throw ArgumentError("malformed tree code");
    need += static_cast<unsigned char>(code_[pos]) >= kBlue ? 1 : -1;
    ++pos;
  }
  return pos;
}

BicoloredTree BicoloredTree::subtree(std::size_t pos) const {
  return BicoloredTree(code_.substr(pos, subtree_end(pos) - pos));
}

BicoloredTree BicoloredTree::replace(std::size_t pos, const BicoloredTree& with) const {
  std::size_t end = subtree_end(pos);
  std::string code = code_.substr(0, pos) + with.code_ + code_.substr(end);
  return BicoloredTree(std::move(code));
}

std::vector<std::size_t> BicoloredTree::internal_postorder() const {
  std::vector<std::size_t> out;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (!is_internal_at(pos)) return;
    rec(left_at(pos));
    rec(right_at(pos));
    out.push_back(pos);
  };
  rec(0);
  return out;
}

std::string BicoloredTree::to_string() const {
  std::string s;
  std::function<std::size_t(std::size_t)> rec = [&](std::size_t pos) -> std::size_t {
    unsigned char c = code_[pos];
    if (c < kBlue) {
      s += std::to_string(c);
      return pos + 1;
    }
    s += c == kRed ? '<' : '[';
    std::size_t next = rec(pos + 1);
    s += ',';
    next = rec(next);
    s += c == kRed ? '>' : ']';
    return next;
  };
  if (!code_.empty()) rec(0);
  return s;
}

nlohmann::json to_json(const BicoloredTree& t) {
  if (t.is_leaf()) return {{"leaf", t.label()}};
  return {{"color", t.color() == Color::red ? "red" : "blue"}, {"left", to_json(t.left())}, {"right", to_json(t.right())}};
}

BicoloredTree tree_from_json(const nlohmann::json& j) {
  if (j.contains("leaf")) return BicoloredTree::leaf(j.at("leaf").get<int>());
  std::string c = j.at("color").get<std::string>();
  if (c != "red" && c != "blue") throw ArgumentError("bad color '" + c + "'");
  return BicoloredTree::join(c == "red" ? Color::red : Color::blue, tree_from_json(j.at("left")),
                             tree_from_json(j.at("right")));
}

// ---------------------------------------------------------------------------------------
// Valencies and classification

namespace {

template <class Combine>
std::vector<int> valencies(const BicoloredTree& t, Combine combine) {
  const std::string& code = t.code();
  std::vector<int> v(code.size(), 0);
  std::function<std::size_t(std::size_t)> rec = [&](std::size_t pos) -> std::size_t {
    if (!t.is_internal_at(pos)) {
      v[pos] = static_cast<unsigned char>(code[pos]);
      return pos + 1;
    }
    std::size_t r = rec(pos + 1);
    std::size_t end = rec(r);
    v[pos] = combine(t.color_at(pos), v[pos + 1], v[r]);
    return end;
  };
  rec(0);
  return v;
}

int liu_root_valency(const BicoloredTree& t) {
  const std::string& code = t.code();
  std::function<std::pair<int, std::size_t>(std::size_t)> rec = [&](std::size_t pos) -> std::pair<int, std::size_t> {
    unsigned char c = code[pos];
    if (c < BicoloredTree::kBlue) return {c, pos + 1};
    auto [l, r] = rec(pos + 1);
    auto [rv, end] = rec(r);
    return {c == BicoloredTree::kRed ? std::max(l, rv) : std::min(l, rv), end};
  };
  return rec(0).first;
}

// Root conditions for each family, assuming both subtrees already belong to the family.
bool normalized_root(const BicoloredTree& l, const BicoloredTree& r) { return l.min_leaf() < r.min_leaf(); }

bool comb_root(Color c, const BicoloredTree& l, const BicoloredTree& r) {
  return normalized_root(l, r) && (r.is_leaf() || (c == Color::red && r.color() == Color::blue));
}

bool lyndon_node(const BicoloredTree& l, const BicoloredTree& r) {
  return l.is_leaf() || l.right().min_leaf() > r.min_leaf();
}

bool lyndon_root(Color c, const BicoloredTree& l, const BicoloredTree& r) {
  if (!normalized_root(l, r)) return false;
  if (lyndon_node(l, r)) return true;
  return c == Color::blue && l.color() == Color::red;
}

bool liu_root(Color c, const BicoloredTree& l, const BicoloredTree& r) {
  int vl = liu_root_valency(l), vr = liu_root_valency(r);
  if (c == Color::blue) {
    if (!(vl < vr)) return false;
    if (!l.is_leaf() && l.color() == Color::blue && !(liu_root_valency(l.right()) > vr)) return false;
  } else {
    if (!(vl > vr)) return false;
    if (!l.is_leaf()) {
      if (l.color() != Color::red) return false;
      if (!(liu_root_valency(l.right()) < vr)) return false;
    }
  }
  return true;
}

bool root_condition(Family f, Color c, const BicoloredTree& l, const BicoloredTree& r) {
  switch (f) {
    case Family::normalized: return normalized_root(l, r);
    case Family::comb: return comb_root(c, l, r);
    case Family::lyndon: return lyndon_root(c, l, r);
    case Family::liu: return liu_root(c, l, r);
  }
  return false;
}

bool in_family(Family f, const BicoloredTree& t) {
  if (t.is_leaf()) return true;
  BicoloredTree l = t.left(), r = t.right();
  return in_family(f, l) && in_family(f, r) && root_condition(f, t.color(), l, r);
}

}  // namespace

std::vector<int> min_leaf_valencies(const BicoloredTree& t) {
  return valencies(t, [](Color, int a, int b) { return std::min(a, b); });
}

std::vector<int> liu_valencies(const BicoloredTree& t) {
  return valencies(t, [](Color c, int a, int b) { return c == Color::red ? std::max(a, b) : std::min(a, b); });
}

bool is_normalized(const BicoloredTree& t) { return in_family(Family::normalized, t); }
bool is_comb(const BicoloredTree& t) { return in_family(Family::comb, t); }
bool is_lyndon(const BicoloredTree& t) { return in_family(Family::lyndon, t); }
bool is_liu_lyndon(const BicoloredTree& t) { return in_family(Family::liu, t); }

Classification classify(const BicoloredTree& t) {
  Classification c;
  c.normalized = is_normalized(t);
  c.comb = is_comb(t);
  c.lyndon = is_lyndon(t);
  c.liu_lyndon = is_liu_lyndon(t);
  c.min_valency = min_leaf_valencies(t);
  c.liu_valency = liu_valencies(t);
  return c;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::normalized: return "normalized";
    case Family::comb: return "comb";
    case Family::lyndon: return "lyndon";
    case Family::liu: return "liu";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "normalized") return Family::normalized;
  if (s == "comb") return Family::comb;
  if (s == "lyndon") return Family::lyndon;
  if (s == "liu") return Family::liu;
  throw ArgumentError("unknown family '" + s + "'");
}

namespace {

const std::vector<BicoloredTree>& family_members(Family f, Mask s, std::map<Mask, std::vector<BicoloredTree>>& memo) {
  auto it = memo.find(s);
  if (it != memo.end()) return it->second;
  std::vector<BicoloredTree> out;
  if (std::popcount(s) == 1) {
    out.push_back(BicoloredTree::leaf(std::countr_zero(s) + 1));
  } else {
    Mask low = s & (~s + 1);
    for (Mask l = (s - 1) & s; l != 0; l = (l - 1) & s) {
      if (f != Family::liu && !(l & low)) continue;
      Mask r = s & ~l;
      const auto& ls = family_members(f, l, memo);
      const auto& rs = family_members(f, r, memo);
      for (Color c : {Color::blue, Color::red})
        for (const auto& a : ls)
          for (const auto& b : rs)
            if (root_condition(f, c, a, b)) out.push_back(BicoloredTree::join(c, a, b));
    }
    std::sort(out.begin(), out.end());
  }
  return memo.emplace(s, std::move(out)).first->second;
}

}  // namespace

std::vector<BicoloredTree> enumerate_family(Family f, Mask leaves, std::optional<int> i) {
  if (leaves == 0) throw ArgumentError("empty leaf set");
  std::map<Mask, std::vector<BicoloredTree>> memo;
  std::vector<BicoloredTree> all = family_members(f, leaves, memo);
  if (i) std::erase_if(all, [&](const BicoloredTree& t) { return t.red_count() != *i; });
  return all;
}

std::vector<BicoloredTree> enumerate_family(Family f, int n, std::optional<int> i) {
  if (n < 1 || n > 31) throw ArgumentError("n out of range");
  return enumerate_family(f, (Mask{1} << n) - 1, i);
}

std::vector<BicoloredTree> enumerate_bicolored(int n, std::optional<int> i, bool normalized_only, const Caps& caps) {
  if (n < 1) throw ArgumentError("n must be positive");
  require_cap("max_bicolored_n", caps.max_bicolored_n, n);
  if (normalized_only) return enumerate_family(Family::normalized, n, i);
  std::map<Mask, std::vector<BicoloredTree>> memo;
  std::function<const std::vector<BicoloredTree>&(Mask)> all = [&](Mask s) -> const std::vector<BicoloredTree>& {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    std::vector<BicoloredTree> out;
    if (std::popcount(s) == 1) {
      out.push_back(BicoloredTree::leaf(std::countr_zero(s) + 1));
    } else {
      for (Mask l = (s - 1) & s; l != 0; l = (l - 1) & s) {
        const auto& ls = all(l);
        const auto& rs = all(s & ~l);
        for (Color c : {Color::blue, Color::red})
          for (const auto& a : ls)
            for (const auto& b : rs) out.push_back(BicoloredTree::join(c, a, b));
      }
    }
    return memo.emplace(s, std::move(out)).first->second;
  };
  std::vector<BicoloredTree> result = all((Mask{1} << n) - 1);
  if (i) std::erase_if(result, [&](const BicoloredTree& t) { return t.red_count() != *i; });
  std::sort(result.begin(), result.end());
  return result;
}

// ---------------------------------------------------------------------------------------
// Signs, weights, inversions

Normalized normalize(const BicoloredTree& t) {
  if (t.is_leaf()) return {1, 0, t};
  Normalized l = normalize(t.left());
  Normalized r = normalize(t.right());
  Normalized out;
  out.cohomology_sign = l.cohomology_sign * r.cohomology_sign;
  out.swaps = l.swaps + r.swaps;
  if (r.tree.min_leaf() < l.tree.min_leaf()) {
    if ((l.tree.internal_count() * r.tree.internal_count()) % 2 != 0) out.cohomology_sign = -out.cohomology_sign;
    out.swaps += 1;
    out.tree = BicoloredTree::join(t.color(), r.tree, l.tree);
  } else {
    out.tree = BicoloredTree::join(t.color(), l.tree, r.tree);
  }
  return out;
}

int tree_sign(const BicoloredTree& t) {
  if (t.is_leaf()) return 1;
  BicoloredTree r = t.right();
  int s = tree_sign(t.left()) * tree_sign(r);
  return r.internal_count() % 2 == 0 ? s : -s;
}

int weight(const BicoloredTree& t) {
  int w = 0;
  for (std::size_t pos : t.internal_postorder()) {
    std::size_t r = t.right_at(pos);
    w += static_cast<int>(t.subtree_end(r) - r) / 2;
  }
  return w;
}

int inversions(const BicoloredTree& t) {
  int inv = 0;
  for (std::size_t pos : t.internal_postorder()) {
    if (t.color_at(pos) != Color::blue) continue;
    for (std::size_t y = t.right_at(pos); t.is_internal_at(y); y = t.right_at(y))
      if (t.color_at(y) == Color::red) ++inv;
  }
  return inv;
}

int permutation_sign(const std::vector<int>& word) {
  int inv = 0;
  for (std::size_t a = 0; a < word.size(); ++a)
    for (std::size_t b = a + 1; b < word.size(); ++b) inv += word[a] > word[b];
  return inv % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------------------
// Linear extensions

namespace {

// parent[k] = postorder index (0-based) of the parent of the k-th internal node, -1 at root.
std::vector<int> internal_parents(const BicoloredTree& t) {
  auto post = t.internal_postorder();
  std::map<std::size_t, int> idx;
  for (std::size_t k = 0; k < post.size(); ++k) idx[post[k]] = static_cast<int>(k);
  std::vector<int> parent(post.size(), -1);
  for (std::size_t k = 0; k < post.size(); ++k) {
    std::size_t pos = post[k];
    for (std::size_t c : {t.left_at(pos), t.right_at(pos)})
      if (t.is_internal_at(c)) parent[idx[c]] = static_cast<int>(k);
  }
  return parent;
}

}  // namespace

std::vector<LinearExtension> linear_extensions(const BicoloredTree& t) {
  std::vector<int> parent = internal_parents(t);
  int m = static_cast<int>(parent.size());
  std::vector<int> pending(m, 0);
  for (int k = 0; k < m; ++k)
    if (parent[k] >= 0) pending[parent[k]]++;
  std::vector<LinearExtension> out;
  LinearExtension cur;
  std::vector<char> used(m, 0);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k < m; ++k) {
      if (used[k] || pending[k] != 0) continue;
      used[k] = 1;
      if (parent[k] >= 0) pending[parent[k]]--;
      cur.push_back(k + 1);
      rec();
      cur.pop_back();
      if (parent[k] >= 0) pending[parent[k]]++;
      used[k] = 0;
    }
  };
  rec();
  return out;
}

bool is_linear_extension(const BicoloredTree& t, const LinearExtension& tau) {
  std::vector<int> parent = internal_parents(t);
  int m = static_cast<int>(parent.size());
  if (static_cast<int>(tau.size()) != m) return false;
  std::vector<int> when(m, -1);
  for (int k = 0; k < m; ++k) {
    int v = tau[k] - 1;
    if (v < 0 || v >= m || when[v] >= 0) return false;
    when[v] = k;
  }
  for (int k = 0; k < m; ++k)
    if (parent[k] >= 0 && when[k] > when[parent[k]]) return false;
  return true;
}

LinearExtension valency_decreasing_extension(const BicoloredTree& t) {
  if (!is_normalized(t)) throw ArgumentError("valency-decreasing extension needs a normalized tree");
  auto post = t.internal_postorder();
  auto val = min_leaf_valencies(t);
  std::optional<LinearExtension> found;
  for (auto& tau : linear_extensions(t)) {
    bool ok = true;
    for (std::size_t k = 1; k < tau.size() && ok; ++k) ok = val[post[tau[k - 1] - 1]] >= val[post[tau[k] - 1]];
    if (!ok) continue;
    if (found) throw InternalError("valency-decreasing extension is not unique for " + t.to_string());
    found = tau;
  }
  if (!found) throw InternalError("no valency-decreasing extension for " + t.to_string());
  return *found;
}

// ---------------------------------------------------------------------------------------
// Rooted trees

RootedTree::RootedTree(std::vector<int> labels, std::vector<int> parent) {
  if (labels.empty() || labels.size() != parent.size()) throw ArgumentError("bad rooted tree arrays");
  std::vector<std::size_t> order(labels.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  for (std::size_t k : order) {
    labels_.push_back(labels[k]);
    parent_.push_back(parent[k]);
  }
  Mask set = 0;
  for (int l : labels_) {
    if (l < 1 || l > 31 || (set & bit(l))) throw ArgumentError("bad rooted tree labels");
    set |= bit(l);
  }
  int roots = 0;
  for (int p : parent_) {
    if (p == 0) ++roots;
    else if (!(set & bit(p))) throw ArgumentError("parent outside the label set");
  }
  if (roots != 1) throw ArgumentError("rooted tree needs exactly one root");
  for (int l : labels_) {
    int x = l;
    for (int steps = 0; x != 0; ++steps) {
      if (steps > size()) throw ArgumentError("rooted tree has a cycle");
      x = parent_of(x);
    }
  }
}

RootedTree RootedTree::parse(const std::string& text) {
  std::vector<int> labels, parent;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<int(int)> node = [&](int par) -> int {
    skip();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ArgumentError("expected a label in rooted tree '" + text + "'");
    int v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) v = v * 10 + (text[pos++] - '0');
    labels.push_back(v);
    parent.push_back(par);
    skip();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      while (true) {
        node(v);
        skip();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        throw ArgumentError("unbalanced parentheses in rooted tree '" + text + "'");
      }
    }
    return v;
  };
  node(0);
  skip();
  if (pos != text.size()) throw ArgumentError("trailing characters in rooted tree '" + text + "'");
  return RootedTree(labels, parent);
}

Mask RootedTree::label_set() const {
  Mask m = 0;
  for (int l : labels_) m |= bit(l);
  return m;
}

int RootedTree::root() const {
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (parent_[k] == 0) return labels_[k];
  throw InternalError("rooted tree without root");
}

int RootedTree::parent_of(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) throw ArgumentError("label not in tree");
  return parent_[it - labels_.begin()];
}

std::vector<int> RootedTree::children(int label) const {
  std::vector<int> c;
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (parent_[k] == label) c.push_back(labels_[k]);
  return c;
}

int RootedTree::descents() const {
  int d = 0;
  for (std::size_t k = 0; k < labels_.size(); ++k) d += parent_[k] != 0 && labels_[k] < parent_[k];
  return d;
}

std::vector<std::pair<int, int>> RootedTree::edges() const {
  std::vector<std::pair<int, int>> e;
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (parent_[k] != 0) e.emplace_back(labels_[k], parent_[k]);
  return e;
}

Mask RootedTree::subtree_labels(int label) const {
  Mask m = bit(label);
  for (int c : children(label)) m |= subtree_labels(c);
  return m;
}

RootedTree RootedTree::restrict(Mask keep) const {
  std::vector<int> labels, parent;
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (keep & bit(labels_[k])) {
      labels.push_back(labels_[k]);
      int p = parent_[k];
      parent.push_back(p != 0 && (keep & bit(p)) ? p : 0);
    }
  return RootedTree(labels, parent);
}

std::string RootedTree::key() const {
  std::string k;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    k += static_cast<char>(labels_[i]);
    k += static_cast<char>(parent_[i]);
  }
  return k;
}

std::string RootedTree::to_string() const {
  std::function<std::string(int)> rec = [&](int v) {
    std::string s = std::to_string(v);
    auto c = children(v);
    if (!c.empty()) {
      s += "(";
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ",";
        s += rec(c[k]);
      }
      s += ")";
    }
    return s;
  };
  return rec(root());
}

void for_each_rooted_tree(const std::vector<int>& labels, const std::function<void(const RootedTree&)>& f) {
  int m = static_cast<int>(labels.size());
  if (m == 0) throw ArgumentError("empty label set");
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (m == 1) {
    f(RootedTree(sorted, {0}));
    return;
  }
  std::vector<int> seq(std::max(0, m - 2), 0);
  std::vector<std::vector<int>> adj(m);
  std::vector<int> parent(m), degree(m), stack;
  while (true) {
    // Decode the Pruefer sequence into an edge list over indices 0..m-1.
    for (auto& a : adj) a.clear();
    std::fill(degree.begin(), degree.end(), 1);
    for (int s : seq) degree[s]++;
    for (int s : seq) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      adj[leaf].push_back(s);
      adj[s].push_back(leaf);
      degree[leaf]--;
      degree[s]--;
    }
    int a = -1, b = -1;
    for (int v = 0; v < m; ++v)
      if (degree[v] == 1) (a < 0 ? a : b) = v;
    adj[a].push_back(b);
    adj[b].push_back(a);
    for (int root = 0; root < m; ++root) {
      std::fill(parent.begin(), parent.end(), -1);
      std::vector<int> par(m, 0);
      stack.assign(1, root);
      parent[root] = root;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
          if (parent[w] < 0) {
            parent[w] = v;
            par[w] = sorted[v];
            stack.push_back(w);
          }
      }
      par[root] = 0;
      f(RootedTree(sorted, par));
    }
    int k = static_cast<int>(seq.size()) - 1;
    while (k >= 0 && seq[k] == m - 1) seq[k--] = 0;
    if (k < 0) break;
    seq[k]++;
  }
}

std::vector<RootedTree> enumerate_rooted_trees(const std::vector<int>& labels, std::optional<int> descents,
                                               const Caps& caps) {
  require_cap("max_tree_n", caps.max_tree_n, static_cast<long long>(labels.size()));
  std::vector<RootedTree> out;
  for_each_rooted_tree(labels, [&](const RootedTree& t) {
    if (!descents || t.descents() == *descents) out.push_back(t);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RootedTree> enumerate_rooted_trees(int n, std::optional<int> descents, const Caps& caps) {
  std::vector<int> labels;
  for (int k = 1; k <= n; ++k) labels.push_back(k);
  return enumerate_rooted_trees(labels, descents, caps);
}

IntPolynomial descent_polynomial(int n, const Caps& caps) {
  if (n < 1) throw ArgumentError("n must be positive");
  require_cap("max_tree_n", caps.max_tree_n, n);
  std::vector<long long> counts(n, 0);
  std::vector<int> labels;
  for (int k = 1; k <= n; ++k) labels.push_back(k);
  for_each_rooted_tree(labels, [&](const RootedTree& t) { counts[t.descents()]++; });
  std::vector<Integer> c;
  for (long long v : counts) c.emplace_back(static_cast<long>(v));
  return IntPolynomial(std::move(c));
}

// ---------------------------------------------------------------------------------------
// Liu's bijection

BicoloredTree psi(const RootedTree& t) {
  if (t.size() == 1) return BicoloredTree::leaf(t.root());
  int r = t.root();
  auto kids = t.children(r);
  int x = -1;
  for (int c : kids)
    if (c > r) {
      x = c;
      break;
    }
  if (x < 0) x = kids.back();
  Mask sub = t.subtree_labels(x);
  return BicoloredTree::join(x > r ? Color::blue : Color::red, psi(t.restrict(t.label_set() & ~sub)), psi(t.restrict(sub)));
}

RootedTree psi_inverse(const BicoloredTree& t) {
  if (!is_liu_lyndon(t)) throw ArgumentError(t.to_string() + " is not a Liu-Lyndon tree");
  std::vector<int> labels, parent;
  std::function<int(const BicoloredTree&)> rec = [&](const BicoloredTree& s) -> int {
    if (s.is_leaf()) {
      labels.push_back(s.label());
      parent.push_back(0);
      return s.label();
    }
    int a = rec(s.left());
    int b = rec(s.right());
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == b) parent[k] = a;
    return a;
  };
  rec(t);
  return RootedTree(labels, parent);
}

// ---------------------------------------------------------------------------------------
// Liu order

namespace {

// Component sets and descent counts after deleting the edge (child, parent).
struct Split {
  Mask upper, lower;  // component keeping the root, component hanging below the edge
  int upper_desc, lower_desc;
  bool red;
};

Split split_at(const RootedTree& t, int child) {
  Split s;
  s.lower = t.subtree_labels(child);
  s.upper = t.label_set() & ~s.lower;
  s.red = child < t.parent_of(child);
  s.lower_desc = t.restrict(s.lower).descents();
  s.upper_desc = t.restrict(s.upper).descents();
  return s;
}

}  // namespace

LiuOrder::Level& LiuOrder::level(Mask labels, int descents) {
  auto key = std::make_pair(labels, descents);
  auto it = levels_.find(key);
  if (it != levels_.end()) return it->second;
  std::vector<int> ls;
  for (int e = 1; e <= 31; ++e)
    if (labels & bit(e)) ls.push_back(e);
  Level L;
  L.trees = enumerate_rooted_trees(ls, descents);
  for (std::size_t k = 0; k < L.trees.size(); ++k) L.index[L.trees[k].key()] = static_cast<int>(k);
  std::size_t m = L.trees.size();
  L.direct.assign(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && precedes(L.trees[a], L.trees[b])) L.direct[a][b] = 1;
  L.reach = L.direct;
  for (std::size_t k = 0; k < m; ++k) L.reach[k][k] = 1;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t a = 0; a < m; ++a)
      if (L.reach[a][k])
        for (std::size_t b = 0; b < m; ++b)
          if (L.reach[k][b]) L.reach[a][b] = 1;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (L.reach[a][b] && L.reach[b][a])
        throw InternalError("Liu relation has a cycle through " + L.trees[a].to_string() + " and " +
                            L.trees[b].to_string());
  return levels_.emplace(key, std::move(L)).first->second;
}

bool LiuOrder::precedes(const RootedTree& a, const RootedTree& b) {
  if (a.label_set() != b.label_set() || a.descents() != b.descents()) return false;
  if (a.size() <= 2) return false;
  int rb = b.root();
  for (int x : b.children(rb)) {
    Split sb = split_at(b, x);
    for (auto [c, p] : a.edges()) {
      Split sa = split_at(a, c);
      if (sa.red != sb.red) continue;
      // Match components by node set; weights must agree as well.
      RootedTree a1 = a.restrict(sa.upper), a2 = a.restrict(sa.lower);
      RootedTree b1 = b.restrict(sb.upper), b2 = b.restrict(sb.lower);
      if (a1.label_set() != b1.label_set()) std::swap(a1, a2);
      if (a1.label_set() != b1.label_set() || a2.label_set() != b2.label_set()) continue;
      if (a1.descents() != b1.descents() || a2.descents() != b2.descents()) continue;
      if (leq(a1, b1) && leq(a2, b2)) return true;
    }
  }
  return false;
}

bool LiuOrder::leq(const RootedTree& a, const RootedTree& b) {
  if (a == b) return true;
  if (a.label_set() != b.label_set() || a.descents() != b.descents()) return false;
  if (a.size() <= 2) return false;
  Level& L = level(a.label_set(), a.descents());
  return L.reach[L.index.at(a.key())][L.index.at(b.key())];
}

std::vector<RootedTree> LiuOrder::linear_extension(Mask labels, int descents) {
  Level& L = level(labels, descents);
  std::size_t m = L.trees.size();
  std::vector<int> indeg(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (L.direct[a][b]) indeg[b]++;
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;  // trees are sorted by key
  for (std::size_t b = 0; b < m; ++b)
    if (indeg[b] == 0) ready.push(static_cast<int>(b));
  std::vector<RootedTree> out;
  while (!ready.empty()) {
    int a = ready.top();
    ready.pop();
    out.push_back(L.trees[a]);
    for (std::size_t b = 0; b < m; ++b)
      if (L.direct[a][b] && --indeg[b] == 0) ready.push(static_cast<int>(b));
  }
  if (out.size() != m) throw InternalError("Liu relation is not acyclic");
  return out;
}

std::size_t LiuOrder::relation_size(Mask labels, int descents) {
  Level& L = level(labels, descents);
  std::size_t c = 0;
  for (const auto& row : L.reach)
    for (char v : row) c += v;
  return c;
}

// ---------------------------------------------------------------------------------------
// Family counts

std::vector<FamilyCountRow> family_counts(int n, const Caps& caps) {
  require_cap("max_tree_n", caps.max_tree_n, n);
  std::vector<FamilyCountRow> rows(n);
  for (int i = 0; i < n; ++i) {
    rows[i].n = n;
    rows[i].i = i;
  }
  for (const auto& t : enumerate_family(Family::comb, n)) rows[t.red_count()].comb++;
  for (const auto& t : enumerate_family(Family::lyndon, n)) rows[t.red_count()].lyndon++;
  for (const auto& t : enumerate_family(Family::liu, n)) rows[t.red_count()].liu++;
  IntPolynomial d = descent_polynomial(n, caps);
  for (int i = 0; i < n; ++i) rows[i].rooted = d[i].get_si();
  return rows;
}

std::string family_counts_csv(const std::vector<FamilyCountRow>& rows) {
  std::ostringstream os;
  os << "n,i,comb,lyndon,liu,rooted\n";
  for (const auto& r : rows) os << r.n << ',' << r.i << ',' << r.comb << ',' << r.lyndon << ',' << r.liu << ',' << r.rooted << '\n';
  return os.str();
}

}  // namespace wpp
