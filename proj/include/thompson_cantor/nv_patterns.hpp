#pragma once

// Brin's nV and its symmetry extension nV^sym acting on the n-fold product
// of a central Cantor set, via pairs of numbered dyadic patterns.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor_model.hpp"
#include "exact_num.hpp"
#include "words.hpp"

namespace thompson_cantor {

/// Per-axis binary words naming a dyadic box (and its clopen piece of C^n).
using Box = std::vector<Word>;

/// Signed permutation matrix: output axis i reads input axis perm[i],
/// negated when signs[i] < 0.
class CubeSymmetry {
 public:
  CubeSymmetry() = default;
  CubeSymmetry(std::vector<std::size_t> perm, std::vector<int> signs) : perm_(std::move(perm)), signs_(std::move(signs)) {
    if (perm_.size() != signs_.size()) throw DomainError("cube symmetry: perm and signs differ in length");
    std::vector<bool> seen(perm_.size(), false);
    for (const std::size_t p : perm_) {
      if (p >= perm_.size() || seen[p]) throw DomainError("cube symmetry: axis permutation is not a bijection");
      seen[p] = true;
    }
    for (const int s : signs_)
      if (s != 1 && s != -1) throw DomainError("cube symmetry: signs must be +1 or -1");
  }

  static CubeSymmetry identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return {p, std::vector<int>(n, 1)};
  }

  std::size_t dimension() const { return perm_.size(); }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<int>& signs() const { return signs_; }
  bool is_identity() const { return *this == identity(dimension()); }

  int determinant() const {
    int sign = 1;
    for (const int s : signs_) sign *= s;
    std::vector<bool> visited(perm_.size(), false);
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      if (visited[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !visited[j]; j = perm_[j]) {
        visited[j] = true;
        ++len;
      }
      if (len % 2 == 0) sign = -sign;
    }
    return sign;
  }

  std::vector<std::vector<int>> matrix() const {
    std::vector<std::vector<int>> m(perm_.size(), std::vector<int>(perm_.size(), 0));
    for (std::size_t i = 0; i < perm_.size(); ++i) m[i][perm_[i]] = signs_[i];
    return m;
  }

  /// (*this) ∘ other
  CubeSymmetry after(const CubeSymmetry& other) const {
    if (other.dimension() != dimension()) throw DomainError("cube symmetry dimension mismatch");
    std::vector<std::size_t> p(dimension());
    std::vector<int> s(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
      p[i] = other.perm_[perm_[i]];
      s[i] = signs_[i] * other.signs_[perm_[i]];
    }
    return {p, s};
  }

  CubeSymmetry inverse() const {
    std::vector<std::size_t> p(dimension());
    std::vector<int> s(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
      p[perm_[i]] = i;
      s[perm_[i]] = signs_[i];
    }
    return {p, s};
  }

  /// Moves per-axis data (words or tails) through the symmetry; `flip`
  /// implements the reflection x -> 1 - x on one coordinate.
  template <class T, class Flip>
  std::vector<T> transport(const std::vector<T>& in, Flip flip) const {
    std::vector<T> out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < dimension(); ++i) out.push_back(signs_[i] < 0 ? flip(in[perm_[i]]) : in[perm_[i]]);
    return out;
  }

  friend bool operator==(const CubeSymmetry&, const CubeSymmetry&) = default;
  friend auto operator<=>(const CubeSymmetry&, const CubeSymmetry&) = default;

 private:
  std::vector<std::size_t> perm_;
  std::vector<int> signs_;
};

inline Box transport_box(const CubeSymmetry& s, const Box& extra) {
  return s.transport(extra, [](const Word& w) { return complement(w, 1); });
}

/// Dyadic partition of the unit n-cube built by successive halvings.
class PatternTree {
 public:
  explicit PatternTree(std::size_t dim = 2) : dim_(dim) {
    if (dim == 0) throw DomainError("pattern dimension must be positive");
  }

  static PatternTree cell(std::size_t dim) { return PatternTree(dim); }
  /// axis is 1-based.
  static PatternTree cut(std::size_t axis, PatternTree low, PatternTree high) {
    if (low.dim_ != high.dim_) throw DomainError("pattern halves differ in dimension");
    if (axis < 1 || axis > low.dim_) throw DomainError("cut axis " + std::to_string(axis) + " out of range");
    PatternTree t(low.dim_);
    t.axis_ = axis;
    t.children_ = {std::move(low), std::move(high)};
    return t;
  }

  std::size_t dimension() const { return dim_; }
  bool is_cell() const { return axis_ == 0; }
  std::size_t axis() const { return axis_; }
  const PatternTree& low() const { return children_.at(0); }
  const PatternTree& high() const { return children_.at(1); }

  std::size_t leaf_count() const { return is_cell() ? 1 : low().leaf_count() + high().leaf_count(); }

  /// Leaf boxes in left-to-right (low before high) order.
  std::vector<Box> leaf_words() const {
    std::vector<Box> out;
    Box current(dim_);
    collect(current, out);
    return out;
  }

  /// Halves leaf i along the 1-based axis.
  PatternTree cut_leaf(std::size_t i, std::size_t axis) const {
    if (axis < 1 || axis > dim_) throw DomainError("cut axis out of range");
    PatternTree t(*this);
    std::size_t index = i;
    if (!t.cut_leaf_impl(index, axis)) throw DomainError("cut_leaf: leaf index out of range");
    return t;
  }

  /// Rebuilds a pattern from its leaf boxes, cutting at each region along
  /// the smallest axis that splits no box. In dimension 2 every partition
  /// into dyadic boxes arises this way; from dimension 3 on pinwheels do not,
  /// and those are rejected along with non-partitions.
  static PatternTree from_boxes(std::size_t dim, const std::vector<Box>& boxes) {
    auto t = try_from_boxes(dim, boxes);
    if (!t) throw DomainError("boxes do not form a dyadic pattern");
    return *t;
  }

  static std::optional<PatternTree> try_from_boxes(std::size_t dim, const std::vector<Box>& boxes) {
    for (const auto& b : boxes) {
      if (b.size() != dim) return std::nullopt;
      for (const auto& w : b)
        if (std::any_of(w.begin(), w.end(), [](Letter l) { return l > 1; })) return std::nullopt;
    }
    std::vector<const Box*> ptrs;
    for (const auto& b : boxes) ptrs.push_back(&b);
    return build(Box(dim), ptrs);
  }

  friend bool operator==(const PatternTree&, const PatternTree&) = default;

 private:
  void collect(Box& current, std::vector<Box>& out) const {
    if (is_cell()) {
      out.push_back(current);
      return;
    }
    for (Letter half = 0; half < 2; ++half) {
      current[axis_ - 1].push_back(half);
      children_[half].collect(current, out);
      current[axis_ - 1].pop_back();
    }
  }

  bool cut_leaf_impl(std::size_t& index, std::size_t axis) {
    if (is_cell()) {
      if (index == 0) {
        *this = cut(axis, cell(dim_), cell(dim_));
        return true;
      }
      --index;
      return false;
    }
    return children_[0].cut_leaf_impl(index, axis) || children_[1].cut_leaf_impl(index, axis);
  }

  static bool contains(const Box& region, const Box& b) {
    for (std::size_t i = 0; i < region.size(); ++i)
      if (!is_prefix(region[i], b[i])) return false;
    return true;
  }

  static std::optional<PatternTree> build(const Box& region, const std::vector<const Box*>& boxes) {
    const std::size_t dim = region.size();
    if (boxes.empty()) return std::nullopt;
    if (boxes.size() == 1) {
      if (*boxes.front() != region) return std::nullopt;
      return cell(dim);
    }
    for (std::size_t a = 0; a < dim; ++a) {
      const bool splits_none = std::all_of(boxes.begin(), boxes.end(),
                                           [&](const Box* b) { return (*b)[a].size() > region[a].size(); });
      if (!splits_none) continue;
      std::vector<const Box*> halves[2];
      for (const Box* b : boxes) halves[(*b)[a][region[a].size()]].push_back(b);
      Box low_region = region, high_region = region;
      low_region[a].push_back(0);
      high_region[a].push_back(1);
      auto low = build(low_region, halves[0]);
      if (!low) return std::nullopt;
      auto high = build(high_region, halves[1]);
      if (!high) return std::nullopt;
      return cut(a + 1, std::move(*low), std::move(*high));
    }
    return std::nullopt;
  }

  std::size_t dim_;
  std::size_t axis_ = 0;
  std::vector<PatternTree> children_;
};

/// Product of per-axis dyadic measures: 2^{-total word length}.
inline Rational box_measure(const Box& b) {
  std::size_t len = 0;
  for (const auto& w : b) len += w.size();
  return pow(Rational(2), -static_cast<long long>(len));
}

/// Common part of two dyadic boxes, if they overlap.
inline std::optional<Box> intersect(const Box& a, const Box& b) {
  Box out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_prefix(a[i], b[i]))
      out[i] = b[i];
    else if (is_prefix(b[i], a[i]))
      out[i] = a[i];
    else
      return std::nullopt;
  }
  return out;
}

inline bool box_contains(const Box& outer, const Box& inner) {
  for (std::size_t i = 0; i < outer.size(); ++i)
    if (!is_prefix(outer[i], inner[i])) return false;
  return true;
}

struct Refinement {
  PatternTree common;
  std::vector<std::vector<std::size_t>> embed_first;   // leaf of p1 -> leaves of common
  std::vector<std::vector<std::size_t>> embed_second;  // leaf of p2 -> leaves of common
};

namespace detail {

inline PatternTree graft(const PatternTree& p, Box& region, const std::vector<Box>& other) {
  if (p.is_cell()) {
    std::vector<Box> pieces;
    for (const auto& b : other)
      if (auto i = intersect(region, b)) {
        for (std::size_t a = 0; a < i->size(); ++a) (*i)[a].erase((*i)[a].begin(), (*i)[a].begin() + static_cast<std::ptrdiff_t>(region[a].size()));
        pieces.push_back(std::move(*i));
      }
    return PatternTree::from_boxes(p.dimension(), pieces);
  }
  const std::size_t a = p.axis() - 1;
  region[a].push_back(0);
  PatternTree low = graft(p.low(), region, other);
  region[a].back() = 1;
  PatternTree high = graft(p.high(), region, other);
  region[a].pop_back();
  return PatternTree::cut(p.axis(), std::move(low), std::move(high));
}

}  // namespace detail

/// Replays the cuts of p1, then the cuts of p2 restricted to each leaf of p1.
inline Refinement refine_to_match(const PatternTree& p1, const PatternTree& p2) {
  if (p1.dimension() != p2.dimension()) throw DomainError("refine_to_match: dimension mismatch");
  Box region(p1.dimension());
  Refinement r{detail::graft(p1, region, p2.leaf_words()), {}, {}};
  const auto leaves = r.common.leaf_words();
  auto embed = [&](const PatternTree& p) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& b : p.leaf_words()) {
      out.emplace_back();
      for (std::size_t j = 0; j < leaves.size(); ++j)
        if (box_contains(b, leaves[j])) out.back().push_back(j);
    }
    return out;
  };
  r.embed_first = embed(p1);
  r.embed_second = embed(p2);
  return r;
}

// ---------------------------------------------------------------------------
// Elements

struct NVPiece {
  Box source;
  Box target;
  CubeSymmetry sym;
  friend bool operator==(const NVPiece&, const NVPiece&) = default;
};

/// Pair of numbered patterns: source leaf i goes to target leaf perm[i],
/// after applying the orientation-preserving cube symmetry syms[i] to the
/// normalized coordinates of the source box.
class NVElement {
 public:
  NVElement(PatternTree source, PatternTree target, std::vector<std::size_t> perm, std::vector<CubeSymmetry> syms = {})
      : source_(std::move(source)), target_(std::move(target)), perm_(std::move(perm)), syms_(std::move(syms)) {
    const std::size_t m = source_.leaf_count();
    if (source_.dimension() != target_.dimension()) throw DomainError("patterns of different dimension");
    if (target_.leaf_count() != m) throw DomainError("patterns with different leaf counts");
    if (syms_.empty()) syms_.assign(m, CubeSymmetry::identity(dimension()));
    if (perm_.size() != m || syms_.size() != m) throw DomainError("perm/symmetry list length mismatch");
    std::vector<bool> seen(m, false);
    for (const std::size_t p : perm_) {
      if (p >= m || seen[p]) throw DomainError("leaf numbering is not a bijection");
      seen[p] = true;
    }
    for (const auto& s : syms_) {
      if (s.dimension() != dimension()) throw DomainError("cube symmetry of wrong dimension");
      if (s.determinant() != 1) throw DomainError("cube symmetry is not orientation preserving");
    }
    *this = from_pieces(dimension(), pieces());
  }

  static NVElement identity(std::size_t dim) { return {PatternTree(dim), PatternTree(dim), {0}}; }

  std::size_t dimension() const { return source_.dimension(); }
  std::size_t leaf_count() const { return perm_.size(); }
  const PatternTree& source() const { return source_; }
  const PatternTree& target() const { return target_; }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<CubeSymmetry>& syms() const { return syms_; }

  std::vector<NVPiece> pieces() const {
    const auto src = source_.leaf_words();
    const auto tgt = target_.leaf_words();
    std::vector<NVPiece> out;
    for (std::size_t i = 0; i < src.size(); ++i) out.push_back({src[i], tgt[perm_[i]], syms_[i]});
    return out;
  }

  /// Canonical trees for the given leaf boxes.
  static NVElement from_pieces(std::size_t dim, const std::vector<NVPiece>& pieces) {
    std::vector<Box> src, tgt;
    for (const auto& p : pieces) {
      src.push_back(p.source);
      tgt.push_back(p.target);
    }
    NVElement e(Raw{}, PatternTree::from_boxes(dim, src), PatternTree::from_boxes(dim, tgt));
    const auto src_order = e.source_.leaf_words();
    const auto tgt_order = e.target_.leaf_words();
    e.perm_.assign(pieces.size(), 0);
    e.syms_.assign(pieces.size(), CubeSymmetry::identity(dim));
    for (const auto& p : pieces) {
      const auto i = static_cast<std::size_t>(std::find(src_order.begin(), src_order.end(), p.source) - src_order.begin());
      e.perm_[i] = static_cast<std::size_t>(std::find(tgt_order.begin(), tgt_order.end(), p.target) - tgt_order.begin());
      e.syms_[i] = p.sym;
    }
    return e;
  }

  friend bool operator==(const NVElement&, const NVElement&) = default;

 private:
  struct Raw {};
  NVElement(Raw, PatternTree s, PatternTree t) : source_(std::move(s)), target_(std::move(t)) {}

  PatternTree source_;
  PatternTree target_;
  std::vector<std::size_t> perm_;
  std::vector<CubeSymmetry> syms_;
};

namespace detail {

// (S0 -> T0) and (S1 -> T1) with the same symmetry reassemble into one
// piece when S0, S1 are the two halves of a box along some axis and T0, T1
// the corresponding halves of the image box.
// Merging two boxes can leave a pinwheel behind once dim >= 3.
inline bool is_pattern(std::size_t dim, const std::vector<NVPiece>& pieces) {
  std::vector<Box> src, tgt;
  for (const auto& p : pieces) {
    src.push_back(p.source);
    tgt.push_back(p.target);
  }
  return PatternTree::try_from_boxes(dim, src) && PatternTree::try_from_boxes(dim, tgt);
}

inline std::optional<NVPiece> merge_nv_pieces(const NVPiece& p, const NVPiece& q) {
  if (p.sym != q.sym) return std::nullopt;
  const std::size_t dim = p.source.size();
  std::optional<std::size_t> axis;
  for (std::size_t a = 0; a < dim; ++a) {
    if (p.source[a] == q.source[a]) continue;
    if (axis) return std::nullopt;
    axis = a;
  }
  if (!axis) return std::nullopt;
  const Word& u = p.source[*axis];
  const Word& v = q.source[*axis];
  if (u.empty() || u.size() != v.size() || !std::equal(u.begin(), u.end() - 1, v.begin()) || u.back() == v.back())
    return std::nullopt;
  // Output axis b reads input axis *axis.
  const auto& perm = p.sym.perm();
  const auto b = static_cast<std::size_t>(std::find(perm.begin(), perm.end(), *axis) - perm.begin());
  for (std::size_t i = 0; i < dim; ++i)
    if (i != b && p.target[i] != q.target[i]) return std::nullopt;
  const Word& x = p.target[b];
  const Word& y = q.target[b];
  if (x.empty() || x.size() != y.size() || !std::equal(x.begin(), x.end() - 1, y.begin())) return std::nullopt;
  const Letter expected = p.sym.signs()[b] > 0 ? u.back() : static_cast<Letter>(1 - u.back());
  if (x.back() != expected || y.back() == x.back()) return std::nullopt;
  NVPiece merged = p;
  merged.source[*axis].pop_back();
  merged.target[b].pop_back();
  return merged;
}

}  // namespace detail

/// Merges matched co-cut pairs until none remain, always taking the first
/// mergeable pair in source order.
inline NVElement reduce_nv(const NVElement& e) {
  const std::size_t dim = e.dimension();
  auto pieces = e.pieces();
  std::sort(pieces.begin(), pieces.end(), [](const NVPiece& a, const NVPiece& b) { return a.source < b.source; });
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pieces.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < pieces.size() && !changed; ++j) {
        auto merged = detail::merge_nv_pieces(pieces[i], pieces[j]);
        if (!merged) continue;
        auto candidate = pieces;
        candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(j));
        candidate[i] = *merged;
        if (!detail::is_pattern(dim, candidate)) continue;
        pieces = std::move(candidate);
        std::sort(pieces.begin(), pieces.end(), [](const NVPiece& a, const NVPiece& b) { return a.source < b.source; });
        changed = true;
      }
  }
  return NVElement::from_pieces(dim, pieces);
}

inline NVElement inverse_nv(const NVElement& e) {
  std::vector<NVPiece> pieces;
  for (const auto& p : e.pieces()) pieces.push_back({p.target, p.source, p.sym.inverse()});
  return reduce_nv(NVElement::from_pieces(e.dimension(), pieces));
}

/// f ∘ g via a common refinement of target(g) and source(f).
inline NVElement compose_nv(const NVElement& f, const NVElement& g) {
  if (f.dimension() != g.dimension()) throw DomainError("compose_nv: dimension mismatch");
  const std::size_t dim = f.dimension();
  const Refinement r = refine_to_match(g.target(), f.source());
  const auto common = r.common.leaf_words();
  const auto g_pieces = g.pieces();
  const auto f_pieces = f.pieces();

  // Index pieces by the leaf of each pattern they use.
  const auto g_targets = g.target().leaf_words();
  const auto f_sources = f.source().leaf_words();
  std::vector<const NVPiece*> g_by_target(g_targets.size()), f_by_source(f_sources.size());
  for (const auto& p : g_pieces)
    g_by_target[static_cast<std::size_t>(std::find(g_targets.begin(), g_targets.end(), p.target) - g_targets.begin())] = &p;
  for (const auto& p : f_pieces)
    f_by_source[static_cast<std::size_t>(std::find(f_sources.begin(), f_sources.end(), p.source) - f_sources.begin())] = &p;

  auto suffix = [](const Box& outer, const Box& inner) {
    Box out(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i)
      out[i] = Word(inner[i].begin() + static_cast<std::ptrdiff_t>(outer[i].size()), inner[i].end());
    return out;
  };
  auto extend = [](Box base, const Box& extra) {
    for (std::size_t i = 0; i < base.size(); ++i) base[i] = concat(std::move(base[i]), extra[i]);
    return base;
  };

  std::vector<NVPiece> out(common.size());
  for (std::size_t t = 0; t < g_targets.size(); ++t)
    for (const std::size_t leaf : r.embed_first[t]) {
      const NVPiece& p = *g_by_target[t];
      // Pull the sub-box back through p: output axis i came from input axis perm[i].
      const Box extra = suffix(p.target, common[leaf]);
      Box pulled(dim);
      for (std::size_t i = 0; i < dim; ++i)
        pulled[p.sym.perm()[i]] = p.sym.signs()[i] < 0 ? complement(extra[i], 1) : extra[i];
      out[leaf].source = extend(p.source, pulled);
      out[leaf].sym = p.sym;
    }
  for (std::size_t s = 0; s < f_sources.size(); ++s)
    for (const std::size_t leaf : r.embed_second[s]) {
      const NVPiece& q = *f_by_source[s];
      out[leaf].target = extend(q.target, transport_box(q.sym, suffix(q.source, common[leaf])));
      out[leaf].sym = q.sym.after(out[leaf].sym);
    }
  return reduce_nv(NVElement::from_pieces(dim, out));
}

/// True iff every piece maps its box onto itself without symmetry.
inline bool is_identity(const NVElement& e) {
  const auto ps = e.pieces();
  return std::all_of(ps.begin(), ps.end(), [](const NVPiece& p) { return p.source == p.target && p.sym.is_identity(); });
}

/// Same homeomorphism of C^n, decided through a common refinement.
inline bool equivalent(const NVElement& f, const NVElement& g) { return is_identity(compose_nv(inverse_nv(g), f)); }

// ---------------------------------------------------------------------------
// Action on the dust

struct DustAddress {
  std::vector<Address> coords;
  friend bool operator==(const DustAddress&, const DustAddress&) = default;
  friend auto operator<=>(const DustAddress&, const DustAddress&) = default;
};

inline DustAddress apply_nv(const NVElement& f, const DustAddress& a) {
  if (a.coords.size() != f.dimension()) throw DomainError("apply_nv: point dimension mismatch");
  for (const auto& p : f.pieces()) {
    bool inside = true;
    for (std::size_t i = 0; i < a.coords.size() && inside; ++i) inside = a.coords[i].has_prefix(p.source[i]);
    if (!inside) continue;
    std::vector<Address> tails;
    for (std::size_t i = 0; i < a.coords.size(); ++i) tails.push_back(a.coords[i].drop_prefix(p.source[i].size()));
    tails = p.sym.transport(tails, [](const Address& t) { return t.complemented(1); });
    DustAddress out;
    for (std::size_t i = 0; i < tails.size(); ++i) out.coords.push_back(tails[i].prepend(p.target[i]));
    return out;
  }
  throw std::logic_error("pattern leaves do not cover the point");
}

/// Number of eventually periodic (λ-rational) coordinates.
inline std::size_t stabilizer_rank(const std::vector<Point>& coords) {
  return static_cast<std::size_t>(std::count_if(coords.begin(), coords.end(), [](const Point& p) { return is_periodic(p); }));
}

/// k of the tangent hull type L_{k,n}: the number of two-sided coordinates.
inline std::size_t tangent_hull_type(const AffineIFS& ifs, const std::vector<Point>& coords) {
  return static_cast<std::size_t>(std::count_if(coords.begin(), coords.end(), [&](const Point& p) {
    return classify_point(ifs, p) == PointKind::TwoSided;
  }));
}

}  // namespace thompson_cantor
