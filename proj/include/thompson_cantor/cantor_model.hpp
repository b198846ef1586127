#pragma once

// Self-similar Cantor subsets of [0,1] given by affine IFSs with rational
// data: symbolic addressing, standard intervals, gaps, sparseness and the
// incommensurability test for standard-interval rigidity.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exact_num.hpp"
#include "words.hpp"

namespace thompson_cantor {

struct AffinePiece {
  Rational ratio;
  Rational offset;
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

class IfsError : public DomainError {
 public:
  enum class Kind { NotCantor, NotNormalized, BadRatio };
  IfsError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// x -> scale * x + shift
struct AffineMap {
  Rational scale = 1;
  Rational shift = 0;
  Rational operator()(const Rational& x) const { return scale * x + shift; }
  /// (*this) ∘ other
  AffineMap after(const AffineMap& other) const { return {scale * other.scale, scale * other.shift + shift}; }
};

/// Validated IFS φ_j(x) = λ_j x + a_j on [0,1] with disjoint images ordered
/// left to right, touching 0 and 1.
class AffineIFS {
 public:
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  std::size_t alphabet_size() const { return pieces_.size(); }
  /// n, the largest letter.
  Letter top() const { return static_cast<Letter>(pieces_.size() - 1); }
  const std::vector<Rational>& ratios() const { return ratios_; }

  /// Initial gap g_alpha, alpha in 1..n.
  Rational gap(std::size_t alpha) const {
    return pieces_[alpha].offset - pieces_[alpha - 1].ratio - pieces_[alpha - 1].offset;
  }
  std::vector<Rational> gaps() const {
    std::vector<Rational> out;
    for (std::size_t a = 1; a < pieces_.size(); ++a) out.push_back(gap(a));
    return out;
  }

  /// φ_w = φ_{w_1} ∘ ... ∘ φ_{w_k}
  AffineMap word_map(const Word& w) const {
    AffineMap m;
    for (const Letter l : w) m = m.after({pieces_.at(l).ratio, pieces_.at(l).offset});
    return m;
  }

  /// Exponent vector k with Λ_k = ratio of φ_w.
  ScaleElement letter_counts(const Word& w) const {
    ScaleElement k(pieces_.size());
    for (const Letter l : w) ++k[l];
    return k;
  }

  Rational scale(const ScaleElement& k) const { return scale_value(ratios_, k); }

  /// λ_i = λ_{n-i} and g_α = g_{n+1-α}: x -> 1 - x preserves the attractor
  /// and acts on addresses by letter complement.
  bool is_palindromic() const {
    const std::size_t m = pieces_.size();
    for (std::size_t i = 0; i < m; ++i)
      if (pieces_[i].ratio != pieces_[m - 1 - i].ratio) return false;
    for (std::size_t a = 1; a < m; ++a)
      if (gap(a) != gap(m - a)) return false;
    return true;
  }

  friend bool operator==(const AffineIFS&, const AffineIFS&) = default;

  friend AffineIFS validate_ifs(std::vector<AffinePiece> pieces);

 private:
  std::vector<AffinePiece> pieces_;
  std::vector<Rational> ratios_;
};

inline AffineIFS validate_ifs(std::vector<AffinePiece> pieces) {
  using K = IfsError::Kind;
  if (pieces.size() < 2) throw IfsError(K::NotCantor, "an IFS needs at least two maps");
  if (pieces.size() > kMaxAlphabet) throw IfsError(K::NotCantor, "alphabet larger than 36 letters");
  for (std::size_t j = 0; j < pieces.size(); ++j)
    if (pieces[j].ratio <= 0 || pieces[j].ratio >= 1)
      throw IfsError(K::BadRatio, "ratio of map " + std::to_string(j) + " is not in (0,1): " + to_string(pieces[j].ratio));
  if (pieces.front().offset != 0)
    throw IfsError(K::NotNormalized, "a_0 = " + to_string(pieces.front().offset) + " but must be 0");
  if (pieces.back().ratio + pieces.back().offset != 1)
    throw IfsError(K::NotNormalized, "λ_n + a_n = " + to_string(pieces.back().ratio + pieces.back().offset) + " but must be 1");
  for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
    const Rational end = pieces[j].ratio + pieces[j].offset;
    if (end >= pieces[j + 1].offset)
      throw IfsError(K::NotCantor, "images of maps " + std::to_string(j) + " and " + std::to_string(j + 1) +
                                       " are not separated by a positive gap (" + to_string(end) +
                                       " >= " + to_string(pieces[j + 1].offset) + ")");
  }
  AffineIFS ifs;
  ifs.ratios_.reserve(pieces.size());
  for (const auto& p : pieces) ifs.ratios_.push_back(p.ratio);
  ifs.pieces_ = std::move(pieces);
  return ifs;
}

/// C_λ: x/λ and x/λ + (λ-1)/λ.
inline AffineIFS central_cantor(const Rational& lambda) {
  return validate_ifs({{1 / lambda, 0}, {1 / lambda, (lambda - 1) / lambda}});
}

/// x/4 and x/2 + 1/2.
inline AffineIFS asymmetric_cantor() { return validate_ifs({{Rational(1, 4), 0}, {Rational(1, 2), Rational(1, 2)}}); }

/// m equal maps of ratio r evenly spread over [0,1].
inline AffineIFS uniform_cantor(std::size_t m, const Rational& r) {
  std::vector<AffinePiece> pieces;
  const Rational step = (1 - r) / Integer(m - 1);
  for (std::size_t j = 0; j < m; ++j) pieces.push_back({r, step * Integer(j)});
  return validate_ifs(std::move(pieces));
}

// ---------------------------------------------------------------------------
// Addresses and standard intervals

inline Rational evaluate_address(const AffineIFS& ifs, const Address& addr) {
  const AffineMap cycle = ifs.word_map(addr.period());
  const Rational fixed = cycle.shift / (1 - cycle.scale);
  return ifs.word_map(addr.preperiod())(fixed);
}

struct StandardInterval {
  Word word;
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  friend bool operator==(const StandardInterval&, const StandardInterval&) = default;
};

inline StandardInterval standard_interval(const AffineIFS& ifs, const Word& w) {
  check_alphabet(w, ifs.alphabet_size());
  const AffineMap m = ifs.word_map(w);
  return {w, m(0), m(1)};
}

/// All words of the given length in lexicographic (= left-to-right) order.
inline std::vector<Word> words_of_length(std::size_t alphabet, std::size_t length) {
  std::vector<Word> out{Word{}};
  for (std::size_t d = 0; d < length; ++d) {
    std::vector<Word> next;
    next.reserve(out.size() * alphabet);
    for (const auto& w : out)
      for (std::size_t l = 0; l < alphabet; ++l) {
        next.push_back(w);
        next.back().push_back(static_cast<Letter>(l));
      }
    out = std::move(next);
  }
  return out;
}

struct Gap {
  std::size_t generation;  // parent word length + 1
  Word parent;
  std::size_t slot;  // alpha in 1..n
  Rational left;
  Rational right;
  Rational length() const { return right - left; }
};

/// Gaps of generations 1..max_generation, by generation then left endpoint.
inline std::vector<Gap> gaps_up_to(const AffineIFS& ifs, std::size_t max_generation) {
  if (max_generation < 1) throw DomainError("gaps_up_to: generation bound must be >= 1");
  std::vector<Gap> out;
  for (std::size_t g = 1; g <= max_generation; ++g) {
    for (const auto& parent : words_of_length(ifs.alphabet_size(), g - 1)) {
      const AffineMap m = ifs.word_map(parent);
      for (std::size_t a = 1; a < ifs.alphabet_size(); ++a) {
        const auto& prev = ifs.pieces()[a - 1];
        out.push_back({g, parent, a, m(prev.ratio + prev.offset), m(ifs.pieces()[a].offset)});
      }
    }
  }
  return out;
}

/// min over endpoint pairs a < b of generation <= G of
/// (largest gap inside (a,b)) / (b - a).
inline Rational sparseness_bound(const AffineIFS& ifs, std::size_t max_generation) {
  if (max_generation < 1) throw DomainError("sparseness_bound: generation bound must be >= 1");
  std::vector<Rational> points{Rational(0), Rational(1)};
  for (std::size_t g = 1; g <= max_generation; ++g)
    for (const auto& w : words_of_length(ifs.alphabet_size(), g)) {
      const auto iv = standard_interval(ifs, w);
      points.push_back(iv.lo);
      points.push_back(iv.hi);
    }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Any gap inside (a,b) of generation > G+1 is dominated by a gap of its
  // generation-(G+1) ancestor interval, which also lies inside (a,b).
  std::vector<Gap> gaps = gaps_up_to(ifs, max_generation + 1);
  std::sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) { return x.right < y.right; });

  std::optional<Rational> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t next_gap = 0;
    Rational largest = 0;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      while (next_gap < gaps.size() && gaps[next_gap].right <= points[j]) {
        if (gaps[next_gap].left >= points[i]) largest = std::max(largest, gaps[next_gap].length());
        ++next_gap;
      }
      const Rational ratio = largest / (points[j] - points[i]);
      if (!best || ratio < *best) best = ratio;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Genericity condition (C)

struct GenericityFailure {
  enum class Condition {
    ScaleRelation,    // Λ_k g_α = g_α with k != 0
    GapRelation,      // Λ_k g_α = g_β with α != β
    GapPermutation,   // common multiplier μ with μ^n in the scale group
  };
  Condition condition;
  ScaleElement witness;                 // k, or m with Λ_m = μ^n
  std::size_t alpha = 0;                // 1-based gap indices where relevant
  std::size_t beta = 0;
  std::vector<std::size_t> permutation;  // σ for GapPermutation, 1-based images
};

struct GenericityVerdict {
  enum class Kind { EqualBranch, IncommensurableBranch, Fails };
  Kind kind;
  std::optional<GenericityFailure> failure;
  /// The permutation condition was decided over all integer exponents,
  /// not only nonnegative ones.
  bool permutation_check_relaxed = false;
};

inline std::string to_string(GenericityVerdict::Kind k) {
  switch (k) {
    case GenericityVerdict::Kind::EqualBranch: return "EqualBranch";
    case GenericityVerdict::Kind::IncommensurableBranch: return "IncommensurableBranch";
    case GenericityVerdict::Kind::Fails: return "Fails";
  }
  return "?";
}

inline std::string to_string(GenericityFailure::Condition c) {
  switch (c) {
    case GenericityFailure::Condition::ScaleRelation: return "scale-relation";
    case GenericityFailure::Condition::GapRelation: return "gap-relation";
    case GenericityFailure::Condition::GapPermutation: return "gap-permutation";
  }
  return "?";
}

namespace detail {

// k with Λ_k = target, if any.
inline std::optional<ScaleElement> solve_in_scale_group(const std::vector<Rational>& ratios, const Rational& target) {
  std::vector<Rational> values = ratios;
  values.push_back(target);
  const auto basis = relation_lattice(values);
  // Λ_m · target^{-1} = 1  <=>  lattice vector with last coordinate -1.
  const auto v = lattice_vector_with_coordinate(basis, ratios.size(), Integer(-1));
  if (!v) return std::nullopt;
  return to_scale_element(*v, 0, ratios.size());
}

}  // namespace detail

inline GenericityVerdict check_genericity(const AffineIFS& ifs) {
  using V = GenericityVerdict;
  using C = GenericityFailure::Condition;
  const auto& ratios = ifs.ratios();
  const auto gaps = ifs.gaps();
  const std::size_t n = gaps.size();

  const bool equal_ratios = std::all_of(ratios.begin(), ratios.end(), [&](const Rational& r) { return r == ratios.front(); });
  const bool equal_gaps = std::all_of(gaps.begin(), gaps.end(), [&](const Rational& g) { return g == gaps.front(); });
  if (equal_ratios && equal_gaps) return {V::Kind::EqualBranch, std::nullopt, false};

  // Λ_k g_α = g_α forces k = 0 exactly when the ratios are multiplicatively independent.
  const auto ratio_lattice = relation_lattice(ratios);
  if (!ratio_lattice.empty()) {
    GenericityFailure f{C::ScaleRelation, to_scale_element(ratio_lattice.front(), 0, ratios.size()), 1, 1, {}};
    return {V::Kind::Fails, f, false};
  }
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = 1; b <= n; ++b) {
      if (a == b) continue;
      if (auto k = detail::solve_in_scale_group(ratios, gaps[b - 1] / gaps[a - 1])) {
        GenericityFailure f{C::GapRelation, *k, a, b, {}};
        return {V::Kind::Fails, f, false};
      }
    }

  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{1});
  const bool relaxed = n >= 2;
  while (std::next_permutation(sigma.begin(), sigma.end())) {
    const Rational mu = gaps[sigma[0] - 1] / gaps[0];
    bool common = true;
    for (std::size_t a = 1; a <= n && common; ++a) common = gaps[sigma[a - 1] - 1] / gaps[a - 1] == mu;
    if (!common) continue;
    if (auto m = detail::solve_in_scale_group(ratios, pow(mu, static_cast<long long>(n)))) {
      GenericityFailure f{C::GapPermutation, *m, 0, 0, sigma};
      return {V::Kind::Fails, f, relaxed};
    }
  }
  return {V::Kind::IncommensurableBranch, std::nullopt, relaxed};
}

// ---------------------------------------------------------------------------
// Point classification and dimension

enum class PointKind { LeftPoint, RightPoint, TwoSided };

inline std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::LeftPoint: return "LeftPoint";
    case PointKind::RightPoint: return "RightPoint";
    case PointKind::TwoSided: return "TwoSided";
  }
  return "?";
}

inline PointKind classify_point(const AffineIFS& ifs, const Point& p) {
  const auto* addr = std::get_if<Address>(&p);
  if (addr == nullptr) return PointKind::TwoSided;
  if (addr->period() == Word{0}) return PointKind::LeftPoint;
  if (addr->period() == Word{ifs.top()}) return PointKind::RightPoint;
  return PointKind::TwoSided;
}

struct Dimension {
  double value;
  std::optional<Rational> exact;
};

/// log 2 / log λ for the central Cantor set C_λ; exact when λ is a power of 2.
inline Dimension hausdorff_dimension_central(const Rational& lambda) {
  if (lambda <= 2) throw DomainError("central Cantor sets need λ > 2, got " + to_string(lambda));
  Dimension d{std::log(2.0) / std::log(to_double(lambda)), std::nullopt};
  if (boost::multiprecision::denominator(lambda) == 1) {
    Integer v = boost::multiprecision::numerator(lambda);
    long long k = 0;
    while (v % 2 == 0) {
      v /= 2;
      ++k;
    }
    if (v == 1) {
      d.exact = Rational(1, k);
      d.value = 1.0 / static_cast<double>(k);
    }
  }
  return d;
}

/// log N(δ) / -log δ with δ = (max ratio)^depth, N(δ) the number of standard
/// intervals in the stopping-time cover by intervals of length <= δ.
inline double box_count_estimate(const AffineIFS& ifs, std::size_t depth) {
  if (depth < 2) throw DomainError("box_count_estimate: depth must be >= 2");
  const Rational largest = *std::max_element(ifs.ratios().begin(), ifs.ratios().end());
  const Rational mesh = pow(largest, static_cast<long long>(depth));
  std::size_t count = 0;
  std::vector<Rational> stack{Rational(1)};
  while (!stack.empty()) {
    const Rational len = stack.back();
    stack.pop_back();
    if (len <= mesh) {
      ++count;
      continue;
    }
    for (const auto& r : ifs.ratios()) stack.push_back(len * r);
  }
  return std::log(static_cast<double>(count)) / -std::log(to_double(mesh));
}

}  // namespace thompson_cantor
