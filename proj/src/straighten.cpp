#include "wpp/straighten.hpp"

#include <algorithm>
#include <sstream>

#include "wpp/chains.hpp"
#include "wpp/formulas.hpp"

namespace wpp {

namespace {

int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

using B = BicoloredTree;

B join(Color c, const B& l, const B& r) { return B::join(c, l, r); }

// Coefficients (k_left, k_mid) of the relations
//   X + k_left Y + k_mid Z = 0   with X = U1(U2 U3), Y = (U1 U2) U3, Z = U2(U1 U3),
// and the same pattern for the six-term relation.
std::pair<int, int> relation_signs(Side side, const B& u1, const B& u2, const B& u3) {
  if (side == Side::lie2) return {-1, -1};
  return {parity_sign(u3.internal_count()), parity_sign(long{u1.internal_count()} * u2.internal_count())};
}

int swap_sign(Side side, const B& l, const B& r) {
  if (side == Side::lie2) return -1;
  return parity_sign(long{l.internal_count()} * r.internal_count());
}

struct Parts {
  B u1, u2, u3;
};

Parts parts_at(const B& t, std::size_t p) {
  std::size_t r = t.right_at(p);
  return {t.subtree(t.left_at(p)), t.subtree(t.left_at(r)), t.subtree(t.right_at(r))};
}

// Raw terms (tree, coefficient) of a relation instance rooted at the node `p` of t, starting
// with the term equal to t itself (coefficient 1).
std::vector<std::pair<B, int>> relation_terms(const B& t, std::size_t p, RelationKind kind, Side side) {
  std::vector<std::pair<B, int>> out;
  if (kind == RelationKind::swap) {
    B sub = t.subtree(p);
    out.emplace_back(t, 1);
    out.emplace_back(t.replace(p, join(sub.color(), sub.right(), sub.left())), -swap_sign(side, sub.left(), sub.right()));
    return out;
  }
  if (kind == RelationKind::type4) {
    B sub = t.subtree(p);
    out.emplace_back(t, 1);
    out.emplace_back(t.replace(p, join(other(sub.color()), sub.left(), sub.right())), 1);
    return out;
  }
  Parts q = parts_at(t, p);
  auto [kl, km] = relation_signs(side, q.u1, q.u2, q.u3);
  if (kind == RelationKind::assoc) {
    Color c = t.color_at(p);
    out.emplace_back(t, 1);
    out.emplace_back(t.replace(p, join(c, join(c, q.u1, q.u2), q.u3)), kl);
    out.emplace_back(t.replace(p, join(c, q.u2, join(c, q.u1, q.u3))), km);
    return out;
  }
  // mixed: t has the shape U1 x (U2 y U3) with {x, y} = {red, blue}.
  Color x = t.color_at(p), y = other(x);
  const Color r = Color::red, b = Color::blue;
  out.emplace_back(t, 1);
  out.emplace_back(t.replace(p, join(y, q.u1, join(x, q.u2, q.u3))), 1);
  out.emplace_back(t.replace(p, join(b, join(r, q.u1, q.u2), q.u3)), kl);
  out.emplace_back(t.replace(p, join(r, join(b, q.u1, q.u2), q.u3)), kl);
  out.emplace_back(t.replace(p, join(r, q.u2, join(b, q.u1, q.u3))), km);
  out.emplace_back(t.replace(p, join(b, q.u2, join(r, q.u1, q.u3))), km);
  return out;
}

std::optional<std::pair<std::size_t, RelationKind>> offending_node(const B& t) {
  for (std::size_t p : t.internal_postorder()) {
    std::size_t r = t.right_at(p);
    if (!t.is_internal_at(r)) continue;
    Color x = t.color_at(p), y = t.color_at(r);
    if (x == y) return std::pair{p, RelationKind::assoc};
    if (x == Color::blue && y == Color::red) return std::pair{p, RelationKind::mixed};
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(Side s) {
  switch (s) {
    case Side::cohomology: return "cohomology";
    case Side::lie2: return "lie2";
    case Side::full: return "full";
  }
  return "?";
}

Side parse_side(const std::string& s) {
  if (s == "cohomology") return Side::cohomology;
  if (s == "lie2") return Side::lie2;
  if (s == "full") return Side::full;
  throw ArgumentError("unknown side: " + s);
}

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::swap: return "swap";
    case RelationKind::assoc: return "assoc";
    case RelationKind::mixed: return "mixed";
    case RelationKind::type4: return "type4";
  }
  return "?";
}

// ---------------------------------------------------------------------------------------
// TreeSum

TreeSum TreeSum::single(Side s, const BicoloredTree& t, const Integer& coeff) {
  TreeSum out(s);
  out.add(t, coeff);
  return out;
}

void TreeSum::add(const BicoloredTree& t, const Integer& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms.try_emplace(t, 0);
  it->second += coeff;
  if (it->second == 0) terms.erase(it);
}

void TreeSum::add(const TreeSum& o, const Integer& scale) {
  for (auto& [t, x] : o.terms) add(t, scale * x);
}

Integer TreeSum::coefficient(const BicoloredTree& t) const {
  auto it = terms.find(t);
  return it == terms.end() ? Integer(0) : it->second;
}

std::string TreeSum::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [t, x] : terms) {
    if (x < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    Integer a = abs(x);
    if (a != 1) os << a.get_str() << "*";
    os << t.to_string();
    first = false;
  }
  return os.str();
}

nlohmann::json to_json(const TreeSum& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [t, x] : s.terms) terms.push_back({{"tree", t.to_string()}, {"coeff", x.get_str()}});
  return {{"side", to_string(s.side)}, {"terms", terms}};
}

std::string RelationInstance::to_string() const {
  std::ostringstream os;
  os << wpp::to_string(kind) << " @" << position << " in " << tree.to_string() << " (";
  for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? ", " : "") << parts[k].to_string();
  os << ")";
  return os.str();
}

Measure interval_measure(const BicoloredTree& t) { return {weight(t), inversions(t)}; }

int right_size(const BicoloredTree& t) { return t.is_leaf() ? 0 : t.right().internal_count(); }

std::string TraceStep::to_string() const {
  std::ostringstream os;
  os << wpp::to_string(kind) << " @" << position << " " << tree.to_string() << " (" << before.first << ","
     << before.second << ") -> (" << after.first << "," << after.second << ")";
  return os.str();
}

// ---------------------------------------------------------------------------------------
// Straightener

bool Straightener::is_target(const BicoloredTree& t) const {
  if (!is_comb(t)) return false;
  return side_ != Side::full || t.is_leaf() || t.color() == Color::blue;
}

TreeSum Straightener::normalized(const BicoloredTree& t, const Integer& coeff, Side signs) const {
  Normalized n = normalize(t);
  int s = signs == Side::lie2 ? parity_sign(n.swaps) : n.cohomology_sign;
  return TreeSum::single(side_, n.tree, s * coeff);
}

TreeSum Straightener::rewrite(const BicoloredTree& t, Side signs, std::optional<std::size_t> at) {
  std::optional<std::pair<std::size_t, RelationKind>> node;
  if (at)
    node = std::pair{*at, RelationKind::assoc};
  else
    node = offending_node(t);
  if (!node) throw InternalError("no rewritable node in " + t.to_string());
  auto [p, kind] = *node;
  auto raw = relation_terms(t, p, kind, signs);
  TreeSum out(side_);
  // raw[0] is t (coefficient 1); t = -(sum of the others).
  for (std::size_t k = 1; k < raw.size(); ++k) out.add(normalized(raw[k].first, -raw[k].second, signs));
  TraceStep step{kind, t, p, {}, {-1, -1}};
  if (at) {
    step.before = {right_size(t), 0};
    for (auto& [u, x] : out.terms) step.after = std::max(step.after, Measure{right_size(u), 0});
  } else {
    step.before = interval_measure(t);
    for (auto& [u, x] : out.terms) step.after = std::max(step.after, interval_measure(u));
  }
  if (!out.is_zero() && !(step.after < step.before))
    throw InternalError("straightening measure did not decrease at " + step.to_string());
  trace_.push_back(step);
  return out;
}

const TreeSum& Straightener::normalized_result(const BicoloredTree& t) {
  if (auto it = memo_.find(t); it != memo_.end()) return it->second;
  Side signs = side_ == Side::lie2 ? Side::lie2 : Side::cohomology;
  TreeSum out(side_);
  if (is_comb(t)) {
    out.add(t, 1);
  } else {
    TreeSum step = rewrite(t, signs);
    for (auto& [u, x] : step.terms) out.add(normalized_result(u), x);
  }
  return memo_.emplace(t, std::move(out)).first->second;
}

const TreeSum& Straightener::full_result(const BicoloredTree& t) {
  if (auto it = full_memo_.find(t); it != full_memo_.end()) return it->second;
  TreeSum out(side_);
  int bound = right_size(t);
  for (auto& [c, x] : TreeSum(normalized_result(t)).terms) {
    if (right_size(c) > bound) throw InternalError("comb straightening enlarged the right subtree of " + t.to_string());
    if (c.is_leaf() || c.color() == Color::blue) {
      out.add(c, x);
      continue;
    }
    BicoloredTree flipped = join(Color::blue, c.left(), c.right());
    trace_.push_back({RelationKind::type4, c, 0, {right_size(c), 0}, {right_size(flipped), 0}});
    if (is_comb(flipped)) {
      out.add(flipped, -x);
      continue;
    }
    TreeSum step = rewrite(flipped, Side::cohomology, std::size_t{0});
    for (auto& [u, y] : step.terms) out.add(full_result(u), -x * y);
  }
  return full_memo_.emplace(t, std::move(out)).first->second;
}

TreeSum Straightener::straighten(const BicoloredTree& t) {
  Side signs = side_ == Side::lie2 ? Side::lie2 : Side::cohomology;
  TreeSum start = normalized(t, 1, signs);
  auto& [u, x] = *start.terms.begin();
  TreeSum out(side_);
  out.add(side_ == Side::full ? full_result(u) : normalized_result(u), x);
  return out;
}

TreeSum Straightener::straighten(const TreeSum& s) {
  TreeSum out(side_);
  for (auto& [t, x] : s.terms) out.add(straighten(t), x);
  return out;
}

TreeSum straighten(const BicoloredTree& t, Side side) { return Straightener(side).straighten(t); }

TreeSum straighten_full_poset(const BicoloredTree& t) { return Straightener(Side::full).straighten(t); }

// ---------------------------------------------------------------------------------------
// Relation instances

std::vector<std::pair<RelationInstance, TreeSum>> relation_instances(int n, std::optional<int> i, Side side,
                                                                     const Caps& caps) {
  std::vector<std::pair<RelationInstance, TreeSum>> out;
  Side signs = side == Side::lie2 ? Side::lie2 : Side::cohomology;
  auto emit = [&](const B& t, std::size_t p, RelationKind kind, std::vector<B> parts) {
    TreeSum s(side);
    for (auto& [u, x] : relation_terms(t, p, kind, signs)) s.add(u, x);
    out.emplace_back(RelationInstance{kind, t, p, std::move(parts)}, std::move(s));
  };
  for (const B& t : enumerate_bicolored(n, side == Side::full ? std::nullopt : i, false, caps)) {
    for (std::size_t p : t.internal_postorder()) {
      B sub = t.subtree(p);
      if (sub.left().min_leaf() < sub.right().min_leaf()) emit(t, p, RelationKind::swap, {sub.left(), sub.right()});
      std::size_t r = t.right_at(p);
      if (!t.is_internal_at(r)) continue;
      Parts q = parts_at(t, p);
      if (t.color_at(p) == t.color_at(r)) emit(t, p, RelationKind::assoc, {q.u1, q.u2, q.u3});
      if (t.color_at(p) == Color::red && t.color_at(r) == Color::blue) emit(t, p, RelationKind::mixed, {q.u1, q.u2, q.u3});
    }
    if (side == Side::full && !t.is_leaf() && t.color() == Color::red)
      emit(t, 0, RelationKind::type4, {t.left(), t.right()});
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Cochains

ChainVector phi(const BicoloredTree& t, const Poset& host) {
  int s = permutation_sign(t.leaf_word()) * tree_sign(t);
  return ChainVector::single(interior_chain(t, host), s);
}

ChainVector generator_cochain(const BicoloredTree& t, Side side, const Poset& host) {
  switch (side) {
    case Side::cohomology: return ChainVector::single(interior_chain(t, host));
    case Side::lie2: return phi(t, host);
    case Side::full: return ChainVector::single(chain_of_tree(t).trimmed(1, 0).indices(host));
  }
  throw InternalError("unknown side");
}

ChainVector to_cochain(const TreeSum& s, const Poset& host) {
  ChainVector out;
  for (auto& [t, x] : s.terms) out += x * generator_cochain(t, s.side, host);
  return out;
}

// ---------------------------------------------------------------------------------------
// Basis verification

std::vector<BasisCheck> verify_bases(int n, std::optional<int> i, const Caps& caps) {
  require_cap("max_bicolored_n", caps.max_bicolored_n, n);
  if (n < 2) throw ArgumentError("basis verification needs n >= 2");
  Poset host = Poset::build(n, Variant::weighted, caps);
  std::vector<BasisCheck> out;
  auto check = [&](const std::string& name, const CoboundarySpace& b, const std::vector<ChainVector>& cochains) {
    BasisCheck c;
    c.family = name;
    c.count = static_cast<long long>(cochains.size());
    c.betti = static_cast<long long>(b.corank());
    c.rank = static_cast<long long>(b.quotient_rank(cochains));
    out.push_back(c);
  };
  if (i) {
    if (*i < 0 || *i >= n) throw ArgumentError("i out of range");
    OrderComplex k = OrderComplex::open_interval(host, host.bottom(), host.maximal(*i), caps);
    CoboundarySpace b(k, n - 3);
    for (Family f : {Family::comb, Family::lyndon, Family::liu}) {
      std::vector<ChainVector> cochains;
      for (auto& t : enumerate_family(f, n, *i)) cochains.push_back(generator_cochain(t, Side::cohomology, host));
      check(to_string(f), b, cochains);
    }
  } else {
    OrderComplex k = OrderComplex::without_bottom(host, caps);
    CoboundarySpace b(k, n - 2);
    std::vector<ChainVector> combs, lyndon;
    for (auto& t : enumerate_family(Family::comb, n))
      if (t.color() == Color::blue) combs.push_back(generator_cochain(t, Side::full, host));
    for (auto& t : enumerate_family(Family::lyndon, n))
      if (t.color() == Color::red) lyndon.push_back(generator_cochain(t, Side::full, host));
    check("blue-rooted comb", b, combs);
    check("red-rooted lyndon", b, lyndon);
  }
  return out;
}

nlohmann::json to_json(const BasisCheck& b) {
  return {{"family", b.family}, {"count", b.count}, {"betti", b.betti}, {"rank", b.rank}, {"full_rank", b.passed()}};
}

}  // namespace wpp
