#pragma once

// Piecewise affine maps of a self-similar Cantor set that send standard
// intervals onto standard intervals, standard germs φ_{I/J}, multi-germs,
// and stabilizers of points.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cantor_model.hpp"
#include "exact_num.hpp"
#include "tree_calculus.hpp"
#include "words.hpp"

namespace thompson_cantor {

enum class Model { Line, Circle, Exchange };

inline std::string to_string(Model m) {
  switch (m) {
    case Model::Line: return "line";
    case Model::Circle: return "circle";
    case Model::Exchange: return "exchange";
  }
  return "?";
}

inline Model parse_model(std::string_view s) {
  if (s == "line") return Model::Line;
  if (s == "circle") return Model::Circle;
  if (s == "exchange") return Model::Exchange;
  throw DomainError("unknown model '" + std::string(s) + "'");
}

inline Model model_for(Variant v) {
  switch (v) {
    case Variant::F: return Model::Line;
    case Variant::T: return Model::Circle;
    default: return Model::Exchange;
  }
}

inline Model join(Model a, Model b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

/// Sends the standard interval of `source` affinely onto that of `target`,
/// reversing orientation when `reversed` is set.
struct PLPiece {
  Word source;
  Word target;
  bool reversed = false;

  /// b_j: the left point of the image interval.
  Address target_left() const { return {target, Word{0}}; }
  /// k_j with slope magnitude Λ_{k_j}.
  ScaleElement scale(const AffineIFS& ifs) const { return ifs.letter_counts(target) - ifs.letter_counts(source); }

  friend bool operator==(const PLPiece&, const PLPiece&) = default;
  friend auto operator<=>(const PLPiece& a, const PLPiece& b) { return a.source <=> b.source; }
};

/// Rational affine formula of a piece on its source interval:
/// x -> b + Λ (x - a), or x -> b' - Λ (x - a) when reversed (b' the right end).
inline AffineMap piece_affine(const AffineIFS& ifs, const PLPiece& p) {
  const AffineMap src = ifs.word_map(p.source);
  const AffineMap tgt = ifs.word_map(p.target);
  const Rational slope = tgt.scale / src.scale;
  if (!p.reversed) return {slope, tgt(0) - slope * src(0)};
  return {-slope, tgt(1) + slope * src(0)};
}

class PLMap {
 public:
  PLMap(AffineIFS ifs, Model model, std::vector<PLPiece> pieces)
      : ifs_(std::move(ifs)), model_(model), pieces_(std::move(pieces)) {
    std::sort(pieces_.begin(), pieces_.end());
    validate();
  }

  static PLMap identity(const AffineIFS& ifs, Model model = Model::Line) { return {ifs, model, {{Word{}, Word{}, false}}}; }

  const AffineIFS& ifs() const { return ifs_; }
  Model model() const { return model_; }
  const std::vector<PLPiece>& pieces() const { return pieces_; }

  /// The piece whose source interval contains the point.
  const PLPiece& covering_piece(const Address& a) const {
    for (const auto& p : pieces_)
      if (a.has_prefix(p.source)) return p;
    throw std::logic_error("PLMap invariant violated: address " + a.to_string() + " not covered");
  }

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  void validate() const {
    const std::size_t arity = ifs_.alphabet_size();
    std::vector<Word> src, tgt;
    for (const auto& p : pieces_) {
      check_alphabet(p.source, arity);
      check_alphabet(p.target, arity);
      src.push_back(p.source);
      tgt.push_back(p.target);
    }
    // Both covers must be complete families of disjoint standard intervals.
    Tree::from_leaves(arity, src);
    Tree::from_leaves(arity, tgt);
    const bool any_reversed = std::any_of(pieces_.begin(), pieces_.end(), [](const PLPiece& p) { return p.reversed; });
    if (any_reversed && model_ != Model::Exchange) throw DomainError("orientation-reversing piece in a " + to_string(model_) + " map");
    if (any_reversed && !ifs_.is_palindromic())
      throw DomainError("orientation-reversing pieces need a palindromic IFS (the attractor is not invertible)");
    if (model_ == Model::Exchange) return;
    std::sort(tgt.begin(), tgt.end());
    const std::size_t m = pieces_.size();
    const auto pos = static_cast<std::size_t>(std::find(tgt.begin(), tgt.end(), pieces_[0].target) - tgt.begin());
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t expected = model_ == Model::Line ? i : (i + pos) % m;
      if (pieces_[i].target != tgt[expected])
        throw DomainError(model_ == Model::Line ? "line map must preserve the order of pieces"
                                                : "circle map must preserve the cyclic order of pieces");
    }
  }

  AffineIFS ifs_;
  Model model_;
  std::vector<PLPiece> pieces_;
};

namespace detail {

inline std::vector<LeafPiece> to_leaf_pieces(const std::vector<PLPiece>& pieces) {
  std::vector<LeafPiece> out;
  for (const auto& p : pieces) out.push_back({p.source, p.target, p.reversed});
  return out;
}

// Merges sibling pieces that reassemble into a parent standard interval.
inline std::vector<PLPiece> merge_pieces(std::size_t arity, const std::vector<PLPiece>& pieces) {
  const Symbol s = reduce(symbol_from_pieces(arity, to_leaf_pieces(pieces)));
  std::vector<PLPiece> out;
  for (const auto& lp : leaf_pieces(s)) out.push_back({lp.source, lp.target, lp.flip});
  return out;
}

}  // namespace detail

inline PLMap from_symbol(const GroupElement& element, const AffineIFS& ifs) {
  if (element.arity() != ifs.alphabet_size())
    throw DomainError("arity " + std::to_string(element.arity()) + " does not match IFS with " +
                      std::to_string(ifs.alphabet_size()) + " maps");
  std::vector<PLPiece> pieces;
  for (const auto& lp : leaf_pieces(element.symbol())) pieces.push_back({lp.source, lp.target, lp.flip});
  return {ifs, model_for(element.variant()), std::move(pieces)};
}

inline GroupElement to_symbol(const PLMap& f) {
  const Symbol s = symbol_from_pieces(f.ifs().alphabet_size(), detail::to_leaf_pieces(f.pieces()));
  switch (f.model()) {
    case Model::Line: return {s, Variant::F};
    case Model::Circle: return {s, Variant::T};
    case Model::Exchange: return {s, join(Variant::V, classify_symbol(reduce(s)))};
  }
  return {s};
}

/// Prefix substitution: source word -> target word, complementing the tail
/// letters on reversed pieces.
inline Address apply(const PLMap& f, const Address& a) {
  const PLPiece& p = f.covering_piece(a);
  Address tail = a.drop_prefix(p.source.size());
  if (p.reversed) tail = tail.complemented(f.ifs().top());
  return tail.prepend(p.target);
}

/// f ∘ g.
inline PLMap compose_pl(const PLMap& f, const PLMap& g) {
  if (!(f.ifs() == g.ifs())) throw DomainError("compose_pl: maps act on different Cantor sets");
  const Letter top = f.ifs().top();
  std::map<Word, const PLPiece*> outer;
  for (const auto& p : f.pieces()) outer.emplace(p.source, &p);

  std::vector<PLPiece> result;
  std::vector<PLPiece> work(g.pieces().rbegin(), g.pieces().rend());
  while (!work.empty()) {
    PLPiece p = std::move(work.back());
    work.pop_back();
    const PLPiece* hit = nullptr;
    for (std::size_t len = 0; len <= p.target.size() && hit == nullptr; ++len) {
      const auto it = outer.find(Word(p.target.begin(), p.target.begin() + static_cast<std::ptrdiff_t>(len)));
      if (it != outer.end()) hit = it->second;
    }
    if (hit != nullptr) {
      Word tail(p.target.begin() + static_cast<std::ptrdiff_t>(hit->source.size()), p.target.end());
      if (hit->reversed) tail = complement(std::move(tail), top);
      result.push_back({p.source, concat(hit->target, tail), p.reversed != hit->reversed});
      continue;
    }
    // The image interval is a union of finer outer pieces: split it.
    for (std::size_t c = top + 1; c-- > 0;) {
      const auto letter = static_cast<Letter>(c);
      const auto image = static_cast<Letter>(p.reversed ? top - c : c);
      work.push_back({concat(p.source, Word{letter}), concat(p.target, Word{image}), p.reversed});
    }
  }
  return {f.ifs(), join(f.model(), g.model()), detail::merge_pieces(f.ifs().alphabet_size(), result)};
}

inline PLMap inverse_pl(const PLMap& f) {
  std::vector<PLPiece> pieces;
  for (const auto& p : f.pieces()) pieces.push_back({p.target, p.source, p.reversed});
  return {f.ifs(), f.model(), std::move(pieces)};
}

inline std::set<ScaleElement> slope_spectrum(const PLMap& f) {
  std::set<ScaleElement> out;
  for (const auto& p : f.pieces()) out.insert(p.scale(f.ifs()));
  return out;
}

// ---------------------------------------------------------------------------
// Standard germs

/// φ_{I/J}: φ_I(x) -> φ_J(x).
struct StandardGerm {
  Word source;
  Word target;
  ScaleElement scale(const AffineIFS& ifs) const { return ifs.letter_counts(target) - ifs.letter_counts(source); }
  friend bool operator==(const StandardGerm&, const StandardGerm&) = default;
  friend auto operator<=>(const StandardGerm&, const StandardGerm&) = default;
};

/// g1 then g2: φ_{I/J} followed by φ_{J/K} is φ_{I/K}.
inline StandardGerm germ_compose(const StandardGerm& g1, const StandardGerm& g2) {
  if (g1.target != g2.source)
    throw DomainError("germ_compose: target " + to_string(g1.target) + " does not match source " + to_string(g2.source));
  return {g1.source, g2.target};
}

inline StandardGerm germ_inverse(const StandardGerm& g) { return {g.target, g.source}; }

/// Restriction to the sub-interval φ_{I s}([0,1]).
inline StandardGerm germ_restrict(const StandardGerm& g, const Word& suffix) {
  return {concat(g.source, suffix), concat(g.target, suffix)};
}

inline bool germ_defined_at(const StandardGerm& g, const Address& a) { return a.has_prefix(g.source); }

inline Address germ_apply(const StandardGerm& g, const Address& a) {
  if (!germ_defined_at(g, a)) throw DomainError("germ φ_{" + to_string(g.source) + "/" + to_string(g.target) + "} not defined at " + a.to_string());
  return a.drop_prefix(g.source.size()).prepend(g.target);
}

/// One step of extension: φ_{I'k/J'k} extends to φ_{I'/J'}; no
/// extension exists when the last letters differ.
inline std::optional<StandardGerm> germ_extend(const StandardGerm& g) {
  if (g.source.empty() || g.target.empty()) return std::nullopt;
  if (g.source.back() != g.target.back()) return std::nullopt;
  return StandardGerm{Word(g.source.begin(), g.source.end() - 1), Word(g.target.begin(), g.target.end() - 1)};
}

/// Germs with ordered, disjoint domains and images, consecutive ones
/// separated by single gaps of the attractor on both sides.
struct MultiGerm {
  std::vector<StandardGerm> germs;
  friend bool operator==(const MultiGerm&, const MultiGerm&) = default;
};

namespace detail {

// [φ_a(0),φ_a(1)] and [φ_b(0),φ_b(1)] are consecutive, separated by exactly one gap.
inline bool separated_by_gap(const Word& a, const Word& b, Letter top) {
  Word left = a, right = b;
  while (!left.empty() && left.back() == top) left.pop_back();
  while (!right.empty() && right.back() == 0) right.pop_back();
  if (left.empty() || right.empty() || left.size() != right.size()) return false;
  return std::equal(left.begin(), left.end() - 1, right.begin()) && right.back() == left.back() + 1;
}

}  // namespace detail

inline bool is_valid_multigerm(const AffineIFS& ifs, const MultiGerm& mg) {
  if (mg.germs.empty()) return false;
  for (const auto& g : mg.germs) {
    if (std::any_of(g.source.begin(), g.source.end(), [&](Letter l) { return l > ifs.top(); })) return false;
    if (std::any_of(g.target.begin(), g.target.end(), [&](Letter l) { return l > ifs.top(); })) return false;
  }
  for (std::size_t j = 0; j + 1 < mg.germs.size(); ++j) {
    if (!detail::separated_by_gap(mg.germs[j].source, mg.germs[j + 1].source, ifs.top())) return false;
    if (!detail::separated_by_gap(mg.germs[j].target, mg.germs[j + 1].target, ifs.top())) return false;
  }
  return true;
}

/// Maximal extension: repeatedly replaces a germ by its one-step extension,
/// absorbing the neighbours it restricts to, as long as the result remains a
/// valid multi-germ. Terminates because every step shortens the words.
inline MultiGerm extend_multigerm(const AffineIFS& ifs, MultiGerm mg, std::size_t* steps = nullptr) {
  if (!is_valid_multigerm(ifs, mg)) throw DomainError("extend_multigerm: not a valid multi-germ");
  std::size_t count = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < mg.germs.size() && !changed; ++j) {
      const auto ext = germ_extend(mg.germs[j]);
      if (!ext) continue;
      MultiGerm candidate;
      bool conflict = false;
      for (std::size_t i = 0; i < mg.germs.size(); ++i) {
        const auto& g = mg.germs[i];
        const bool inside = is_prefix(ext->source, g.source);
        if (i == j) {
          candidate.germs.push_back(*ext);
        } else if (inside) {
          // Absorbed only if the extension agrees with it there.
          const Word suffix(g.source.begin() + static_cast<std::ptrdiff_t>(ext->source.size()), g.source.end());
          if (germ_restrict(*ext, suffix) != g) conflict = true;
        } else {
          candidate.germs.push_back(g);
        }
      }
      if (conflict || !is_valid_multigerm(ifs, candidate)) continue;
      mg = std::move(candidate);
      changed = true;
      ++count;
    }
  }
  if (steps != nullptr) *steps = count;
  return mg;
}

// ---------------------------------------------------------------------------
// Stabilizers

struct StabilizerGenerator {
  Address point;
  StandardGerm germ;   // contracting toward the point
  ScaleElement scale;  // Λ of the germ; its value generates the χ-image
};

struct StabilizerDescriptor {
  enum class Kind { Trivial, InfiniteCyclic };
  Kind kind;
  std::optional<StabilizerGenerator> generator;
  /// Set when the verdict is read off the point's type (no periodic data
  /// to compute with) rather than constructed.
  bool from_classification = false;
};

inline std::string to_string(StabilizerDescriptor::Kind k) {
  return k == StabilizerDescriptor::Kind::Trivial ? "Trivial" : "InfiniteCyclic";
}

/// For a = P·Q^∞ the stabilizer germ group is generated by φ_{P/PQ}.
inline StabilizerDescriptor stabilizer(const AffineIFS& ifs, const Point& point) {
  const auto* a = std::get_if<Address>(&point);
  if (a == nullptr) return {StabilizerDescriptor::Kind::Trivial, std::nullopt, true};
  check_alphabet(a->preperiod(), ifs.alphabet_size());
  check_alphabet(a->period(), ifs.alphabet_size());
  StandardGerm germ{a->preperiod(), concat(a->preperiod(), a->period())};
  ScaleElement scale = germ.scale(ifs);
  return {StabilizerDescriptor::Kind::InfiniteCyclic, StabilizerGenerator{*a, std::move(germ), std::move(scale)}, false};
}

// ---------------------------------------------------------------------------
// Germ families D(a, b) between left points

/// Scales of the standard germs φ_{P0^i / Q0^j} (0 <= i, j <= depth) taking
/// the left point a = P0^∞ to the left point b = Q0^∞.
inline std::set<Rational> realized_germ_scales(const AffineIFS& ifs, const Address& a, const Address& b, std::size_t depth) {
  if (a.period() != Word{0} || b.period() != Word{0}) throw DomainError("germ families are defined between left points");
  std::set<Rational> out;
  for (std::size_t i = 0; i <= depth; ++i)
    for (std::size_t j = 0; j <= depth; ++j) {
      const StandardGerm g{concat(a.preperiod(), Word(i, 0)), concat(b.preperiod(), Word(j, 0))};
      if (germ_apply(g, a) != b) throw std::logic_error("standard germ does not carry a to b");
      out.insert(ifs.scale(g.scale(ifs)));
    }
  return out;
}

/// Parity of the geodesic between the canonical preperiods of two left
/// points in the tree with all 0-edges contracted.
inline int reduced_tree_parity(const Address& a, const Address& b) {
  const Word& p = a.preperiod();
  const Word& q = b.preperiod();
  std::size_t common = 0;
  while (common < p.size() && common < q.size() && p[common] == q[common]) ++common;
  std::size_t length = 0;
  for (std::size_t i = common; i < p.size(); ++i) length += p[i] != 0;
  for (std::size_t i = common; i < q.size(); ++i) length += q[i] != 0;
  return static_cast<int>(length % 2);
}

}  // namespace thompson_cantor
