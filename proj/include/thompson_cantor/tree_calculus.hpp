#pragma once

// Tree-pair symbols for F_{n+1}, T_{n+1}, V_{n+1} and V±_{n+1}.
//
// A symbol (target, source, perm, flips) sends the subtree hanging at source
// leaf i onto the subtree at target leaf perm[i], reversing the letter order
// when flips[i] is set. Composition follows function composition:
// compose(a, b) acts as a after b.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exact_num.hpp"
#include "words.hpp"

namespace thompson_cantor {

/// Finite rooted planar (n+1)-ary tree, stored as its leaf words in
/// left-to-right order. Internal nodes always carry all n+1 children.
class Tree {
 public:
  explicit Tree(std::size_t arity = 2) : arity_(arity), leaves_{Word{}} { check_arity(arity); }

  static Tree caret(std::size_t arity) { return Tree(arity).expanded(0); }

  /// Rebuilds a tree from its leaf words; throws unless they form a complete
  /// prefix code of the arity-ary tree.
  static Tree from_leaves(std::size_t arity, std::vector<Word> leaves) {
    check_arity(arity);
    std::sort(leaves.begin(), leaves.end());
    Tree t(arity);
    t.leaves_.clear();
    std::size_t pos = 0;
    Word prefix;
    if (!t.build(prefix, leaves, pos) || pos != leaves.size())
      throw DomainError("leaf words do not form a complete " + std::to_string(arity) + "-ary tree");
    return t;
  }

  /// Parenthesis notation: '.' is a leaf, '(' t_0 ... t_n ')' an internal node.
  static Tree parse(std::string_view text, std::optional<std::size_t> arity_hint = std::nullopt) {
    std::string s;
    for (const char c : text)
      if (c != ' ') s.push_back(c);
    std::optional<std::size_t> arity = arity_hint;
    if (!arity && s.size() > 1 && s.front() == '(') {
      // Arity is the number of children of the root.
      std::size_t depth = 0, children = 0;
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (depth == 0 && s[i] == ')') break;
        if (depth == 0 && (s[i] == '.' || s[i] == '(')) ++children;
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
      }
      arity = children;
    }
    std::vector<Word> leaves;
    std::size_t pos = 0;
    Word prefix;
    parse_node(s, pos, prefix, arity, leaves);
    if (pos != s.size()) throw DomainError("trailing characters in tree \"" + s + "\" at offset " + std::to_string(pos));
    return from_leaves(arity.value_or(2), std::move(leaves));
  }

  std::string to_string() const {
    std::string out;
    std::size_t pos = 0;
    Word prefix;
    print(prefix, pos, out);
    return out;
  }

  std::size_t arity() const { return arity_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t caret_count() const { return (leaves_.size() - 1) / (arity_ - 1); }
  const std::vector<Word>& leaves() const { return leaves_; }
  const Word& leaf(std::size_t i) const { return leaves_.at(i); }

  std::optional<std::size_t> index_of(const Word& w) const {
    const auto it = std::lower_bound(leaves_.begin(), leaves_.end(), w);
    if (it == leaves_.end() || *it != w) return std::nullopt;
    return static_cast<std::size_t>(it - leaves_.begin());
  }

  /// Attaches a full caret at leaf i.
  Tree expanded(std::size_t i) const {
    if (i >= leaves_.size()) throw DomainError("expand: leaf index out of range");
    Tree t(*this);
    const Word parent = leaves_[i];
    std::vector<Word> children;
    for (std::size_t c = 0; c < arity_; ++c) {
      children.push_back(parent);
      children.back().push_back(static_cast<Letter>(c));
    }
    t.leaves_.erase(t.leaves_.begin() + static_cast<std::ptrdiff_t>(i));
    t.leaves_.insert(t.leaves_.begin() + static_cast<std::ptrdiff_t>(i), children.begin(), children.end());
    return t;
  }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  static void check_arity(std::size_t arity) {
    if (arity < 2 || arity > kMaxAlphabet) throw DomainError("tree arity must be in 2..36");
  }

  bool build(Word& prefix, const std::vector<Word>& sorted, std::size_t& pos) {
    if (pos >= sorted.size() || !is_prefix(prefix, sorted[pos])) return false;
    if (sorted[pos] == prefix) {
      leaves_.push_back(prefix);
      ++pos;
      return true;
    }
    for (std::size_t c = 0; c < arity_; ++c) {
      prefix.push_back(static_cast<Letter>(c));
      const bool ok = build(prefix, sorted, pos);
      prefix.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  static void parse_node(const std::string& s, std::size_t& pos, Word& prefix, std::optional<std::size_t>& arity,
                         std::vector<Word>& leaves) {
    if (pos >= s.size()) throw DomainError("unexpected end of tree \"" + s + "\"");
    if (s[pos] == '.') {
      ++pos;
      leaves.push_back(prefix);
      return;
    }
    if (s[pos] != '(')
      throw DomainError(std::string("unexpected '") + s[pos] + "' at offset " + std::to_string(pos) + " in tree \"" + s + "\"");
    ++pos;
    std::size_t children = 0;
    while (pos < s.size() && s[pos] != ')') {
      if (children >= kMaxAlphabet) throw DomainError("tree node with too many children");
      prefix.push_back(static_cast<Letter>(children));
      parse_node(s, pos, prefix, arity, leaves);
      prefix.pop_back();
      ++children;
    }
    if (pos >= s.size()) throw DomainError("unbalanced parentheses in tree \"" + s + "\"");
    ++pos;
    if (!arity) arity = children;
    if (children != *arity)
      throw DomainError("node with " + std::to_string(children) + " children in a " + std::to_string(*arity) +
                        "-ary tree \"" + s + "\"");
  }

  void print(Word& prefix, std::size_t& pos, std::string& out) const {
    if (leaves_[pos] == prefix) {
      out.push_back('.');
      ++pos;
      return;
    }
    out.push_back('(');
    for (std::size_t c = 0; c < arity_; ++c) {
      prefix.push_back(static_cast<Letter>(c));
      print(prefix, pos, out);
      prefix.pop_back();
    }
    out.push_back(')');
  }

  std::size_t arity_;
  std::vector<Word> leaves_;
};

enum class Variant { F = 0, T = 1, V = 2, Vpm = 3 };

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::F: return "F";
    case Variant::T: return "T";
    case Variant::V: return "V";
    case Variant::Vpm: return "Vpm";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "F") return Variant::F;
  if (s == "T") return Variant::T;
  if (s == "V") return Variant::V;
  if (s == "Vpm" || s == "V+-" || s == "V±") return Variant::Vpm;
  throw DomainError("unknown group variant '" + std::string(s) + "'");
}

inline Variant join(Variant a, Variant b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

struct Symbol {
  Tree target;
  Tree source;
  std::vector<std::size_t> perm;  // source leaf index -> target leaf index
  std::vector<bool> flips;        // per source leaf

  std::size_t arity() const { return source.arity(); }
  std::size_t leaf_count() const { return source.leaf_count(); }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

inline Symbol identity_symbol(std::size_t arity) { return {Tree(arity), Tree(arity), {0}, {false}}; }

inline void validate_symbol(const Symbol& s) {
  const std::size_t m = s.source.leaf_count();
  if (s.target.arity() != s.source.arity()) throw DomainError("symbol trees have different arity");
  if (s.target.leaf_count() != m) throw DomainError("symbol trees have different leaf counts");
  if (s.perm.size() != m || s.flips.size() != m) throw DomainError("symbol permutation/flips length mismatch");
  std::vector<bool> seen(m, false);
  for (const std::size_t p : s.perm) {
    if (p >= m || seen[p]) throw DomainError("symbol permutation is not a bijection");
    seen[p] = true;
  }
}

/// One leaf assignment of a symbol: source word -> target word.
struct LeafPiece {
  Word source;
  Word target;
  bool flip = false;
  friend bool operator==(const LeafPiece&, const LeafPiece&) = default;
};

inline std::vector<LeafPiece> leaf_pieces(const Symbol& s) {
  std::vector<LeafPiece> out;
  out.reserve(s.leaf_count());
  for (std::size_t i = 0; i < s.leaf_count(); ++i) out.push_back({s.source.leaf(i), s.target.leaf(s.perm[i]), s.flips[i]});
  return out;
}

inline Symbol symbol_from_pieces(std::size_t arity, const std::vector<LeafPiece>& pieces) {
  std::vector<Word> src, tgt;
  for (const auto& p : pieces) {
    src.push_back(p.source);
    tgt.push_back(p.target);
  }
  Symbol s{Tree::from_leaves(arity, tgt), Tree::from_leaves(arity, src), {}, {}};
  s.perm.assign(pieces.size(), 0);
  s.flips.assign(pieces.size(), false);
  for (const auto& p : pieces) {
    const std::size_t i = *s.source.index_of(p.source);
    s.perm[i] = *s.target.index_of(p.target);
    s.flips[i] = p.flip;
  }
  return s;
}

/// Refines source leaf i and its image by one caret each.
inline Symbol expand(const Symbol& s, std::size_t i) {
  if (i >= s.leaf_count()) throw DomainError("expand: leaf index " + std::to_string(i + 1) + " out of range");
  const std::size_t n = s.arity() - 1;
  const std::size_t t = s.perm[i];
  const bool f = s.flips[i];
  Symbol out{s.target.expanded(t), s.source.expanded(i), {}, {}};
  for (std::size_t j = 0; j < s.leaf_count(); ++j) {
    if (j == i) {
      for (std::size_t c = 0; c <= n; ++c) {
        out.perm.push_back(t + (f ? n - c : c));
        out.flips.push_back(f);
      }
      continue;
    }
    const std::size_t p = s.perm[j];
    out.perm.push_back(p < t ? p : p + n);
    out.flips.push_back(s.flips[j]);
  }
  return out;
}

/// Source leaf indices i at which a caret pair can be removed: leaves
/// i..i+n are siblings mapped with equal flips onto sibling target leaves,
/// in order (or in reversed order when flipped).
inline std::vector<std::size_t> removable_carets(const Symbol& s) {
  std::vector<std::size_t> out;
  const std::size_t n = s.arity() - 1;
  const auto& src = s.source.leaves();
  const auto& tgt = s.target.leaves();
  for (std::size_t i = 0; i + n < s.leaf_count(); ++i) {
    if (src[i].empty() || src[i].back() != 0) continue;
    const Word parent(src[i].begin(), src[i].end() - 1);
    bool ok = true;
    for (std::size_t c = 0; c <= n && ok; ++c) {
      const Word& w = src[i + c];
      ok = w.size() == src[i].size() && is_prefix(parent, w) && w.back() == c && s.flips[i + c] == s.flips[i];
    }
    if (!ok) continue;
    const bool f = s.flips[i];
    const Word& first_target = tgt[s.perm[i]];
    const Letter first_letter = f ? static_cast<Letter>(n) : 0;
    if (first_target.empty() || first_target.back() != first_letter) continue;
    const Word tparent(first_target.begin(), first_target.end() - 1);
    for (std::size_t c = 0; c <= n && ok; ++c) {
      const Word& w = tgt[s.perm[i + c]];
      ok = w.size() == first_target.size() && is_prefix(tparent, w) && w.back() == (f ? n - c : c);
    }
    if (ok) out.push_back(i);
  }
  return out;
}

/// Removes the caret pair at source leaf i (which must be removable).
inline Symbol remove_caret(const Symbol& s, std::size_t i) {
  const std::size_t n = s.arity() - 1;
  auto pieces = leaf_pieces(s);
  LeafPiece merged = pieces[i];
  merged.source.pop_back();
  merged.target.pop_back();
  pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i), pieces.begin() + static_cast<std::ptrdiff_t>(i + n + 1));
  pieces.push_back(std::move(merged));
  return symbol_from_pieces(s.arity(), pieces);
}

inline Symbol reduce(Symbol s) {
  validate_symbol(s);
  for (auto candidates = removable_carets(s); !candidates.empty(); candidates = removable_carets(s))
    s = remove_caret(s, candidates.front());
  return s;
}

inline Symbol inverse_symbol(const Symbol& s) {
  Symbol out{s.source, s.target, std::vector<std::size_t>(s.leaf_count()), std::vector<bool>(s.leaf_count())};
  for (std::size_t i = 0; i < s.leaf_count(); ++i) {
    out.perm[s.perm[i]] = i;
    out.flips[s.perm[i]] = s.flips[i];
  }
  return out;
}

/// Smallest tree containing both trees as rooted subtrees.
inline Tree common_refinement(const Tree& a, const Tree& b) {
  std::vector<Word> leaves;
  auto add_maximal = [&](const Tree& from, const Tree& other) {
    for (const auto& w : from.leaves()) {
      const bool refined = std::any_of(other.leaves().begin(), other.leaves().end(),
                                       [&](const Word& v) { return v.size() > w.size() && is_prefix(w, v); });
      if (!refined) leaves.push_back(w);
    }
  };
  add_maximal(a, b);
  add_maximal(b, a);
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
  return Tree::from_leaves(a.arity(), std::move(leaves));
}

/// (a ∘ b) as symbols: expands b until its target tree equals the source
/// tree of a, then composes the leaf bijections and flips.
inline Symbol compose_symbols(Symbol a, Symbol b) {
  if (a.arity() != b.arity()) throw DomainError("compose: arity mismatch");
  const Tree common = common_refinement(b.target, a.source);
  while (b.target != common) {
    std::size_t t = 0;
    while (common.index_of(b.target.leaf(t))) ++t;
    const auto it = std::find(b.perm.begin(), b.perm.end(), t);
    b = expand(b, static_cast<std::size_t>(it - b.perm.begin()));
  }
  while (a.source != common) {
    std::size_t i = 0;
    while (common.index_of(a.source.leaf(i))) ++i;
    a = expand(a, i);
  }
  Symbol out{a.target, b.source, std::vector<std::size_t>(b.leaf_count()), std::vector<bool>(b.leaf_count())};
  for (std::size_t i = 0; i < b.leaf_count(); ++i) {
    out.perm[i] = a.perm[b.perm[i]];
    out.flips[i] = b.flips[i] != a.flips[b.perm[i]];
  }
  return reduce(std::move(out));
}

inline Variant classify_symbol(const Symbol& s) {
  if (std::any_of(s.flips.begin(), s.flips.end(), [](bool f) { return f; })) return Variant::Vpm;
  const std::size_t m = s.leaf_count();
  const std::size_t shift = s.perm[0];
  bool rotation = true;
  for (std::size_t i = 0; i < m && rotation; ++i) rotation = s.perm[i] == (i + shift) % m;
  if (!rotation) return Variant::V;
  return shift == 0 ? Variant::F : Variant::T;
}

/// A reduced symbol tagged with the group it is taken in.
class GroupElement {
 public:
  GroupElement(Symbol s, std::optional<Variant> variant = std::nullopt) : symbol_(reduce(std::move(s))) {
    const Variant cls = classify_symbol(symbol_);
    variant_ = variant.value_or(cls);
    if (static_cast<int>(cls) > static_cast<int>(variant_))
      throw DomainError("element of class " + to_string(cls) + " does not lie in " + to_string(variant_));
  }

  static GroupElement identity(std::size_t arity, Variant v = Variant::F) { return {identity_symbol(arity), v}; }

  const Symbol& symbol() const { return symbol_; }
  Variant variant() const { return variant_; }
  std::size_t arity() const { return symbol_.arity(); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  Symbol symbol_;
  Variant variant_;
};

inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.variant() != b.variant())
    throw DomainError("compose: variant mismatch (" + to_string(a.variant()) + " vs " + to_string(b.variant()) + ")");
  if (a.arity() != b.arity()) throw DomainError("compose: arity mismatch");
  return {compose_symbols(a.symbol(), b.symbol()), a.variant()};
}

inline GroupElement inverse(const GroupElement& a) { return {inverse_symbol(a.symbol()), a.variant()}; }

inline Variant classify(const GroupElement& a) { return classify_symbol(a.symbol()); }

/// (log2 slope at 0, log2 slope at 1) of a binary F element; a
/// homomorphism F -> Z^2.
inline std::pair<long long, long long> abelianization_F(const GroupElement& a) {
  if (a.arity() != 2) throw DomainError("abelianization_F needs a binary element");
  if (classify(a) != Variant::F) throw DomainError("abelianization_F needs an element of F");
  const Symbol& s = a.symbol();
  const auto log_slope = [&](std::size_t i) {
    return static_cast<long long>(s.source.leaf(i).size()) - static_cast<long long>(s.target.leaf(i).size());
  };
  return {log_slope(0), log_slope(s.leaf_count() - 1)};
}

// ---------------------------------------------------------------------------
// Named elements

/// x_0: [0,1/2] -> [0,1/4], [1/2,3/4] -> [1/4,1/2], [3/4,1] -> [1/2,1].
inline GroupElement thompson_x0() {
  return {{Tree::parse("((..).)"), Tree::parse("(.(..))"), {0, 1, 2}, {false, false, false}}, Variant::F};
}

/// x_1: identity on [0,1/2], a copy of x_0 on [1/2,1].
inline GroupElement thompson_x1() {
  return {{Tree::parse("(.((..).))"), Tree::parse("(.(.(..)))"), {0, 1, 2, 3}, {false, false, false, false}}, Variant::F};
}

/// x_{k+1} = x_0^{-1} ∘ x_k ∘ x_0.
inline GroupElement thompson_x(std::size_t k) {
  if (k == 0) return thompson_x0();
  GroupElement x = thompson_x1();
  const GroupElement x0 = thompson_x0();
  const GroupElement x0inv = inverse(x0);
  for (std::size_t i = 1; i < k; ++i) x = compose(x0inv, compose(x, x0));
  return x;
}

/// Rotation of the circle swapping the two halves.
inline GroupElement rotation_element(std::size_t arity = 2) {
  const Tree c = Tree::caret(arity);
  std::vector<std::size_t> perm(arity);
  for (std::size_t i = 0; i < arity; ++i) perm[i] = (i + 1) % arity;
  return {{c, c, perm, std::vector<bool>(arity, false)}, Variant::T};
}

/// Exchange of the two leftmost leaves of (.(..)) (or its n-ary analogue).
inline GroupElement transposition_element(std::size_t arity = 2) {
  const Tree t = Tree::caret(arity).expanded(arity - 1);
  std::vector<std::size_t> perm(t.leaf_count());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::swap(perm[0], perm[1]);
  return {{t, t, perm, std::vector<bool>(t.leaf_count(), false)}, Variant::V};
}

/// Global orientation reversal x -> 1 - x.
inline GroupElement reflection_element(std::size_t arity = 2) {
  return {{Tree(arity), Tree(arity), {0}, {true}}, Variant::Vpm};
}

}  // namespace thompson_cantor
