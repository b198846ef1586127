// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every check recomputes its expected values by a route
// that does not go through the function under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"

using namespace thompson_cantor;

namespace {

// Pinned tolerances and limits.
constexpr double kDimensionTolerance = 0.05;
constexpr double kLimitGroupAxioms = 60.0;
constexpr double kLimitSparseness = 30.0;
constexpr double kLimitDimension = 5.0;
constexpr double kLimitNV = 60.0;
constexpr int kElementsPerVariant = 200;
constexpr std::size_t kMaxCarets = 8;
constexpr std::size_t kEndpointGeneration = 6;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::size_t checks = 0;

  void expect(bool condition, const std::string& what) {
    ++checks;
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

Rational q(long long p, long long d = 1) { return make_rational(p, d); }

// Reads a symbol directly as a map of addresses.
Address act(const Symbol& s, const Address& a) {
  const Letter top = static_cast<Letter>(s.arity() - 1);
  for (std::size_t i = 0; i < s.leaf_count(); ++i) {
    const Word& src = s.source.leaf(i);
    if (!a.has_prefix(src)) continue;
    Address tail = a.drop_prefix(src.size());
    if (s.flips[i]) tail = tail.complemented(top);
    return tail.prepend(s.target.leaf(s.perm[i]));
  }
  throw std::logic_error("address not covered by the source tree");
}

// k with v = base^k, if any, by repeated multiplication.
std::optional<long long> exact_log(Rational v, long long base) {
  if (v <= 0) return std::nullopt;
  long long k = 0;
  while (v > 1 && denominator(v) == 1) {
    if (numerator(v) % base != 0) return std::nullopt;
    v /= base;
    ++k;
  }
  while (v < 1 && numerator(v) == 1) {
    if (denominator(v) % base != 0) return std::nullopt;
    v *= base;
    --k;
  }
  return v == 1 ? std::optional<long long>(k) : std::nullopt;
}

std::string str(const Rational& r) { return to_string(r); }

// ---------------------------------------------------------------------------

struct Suite {
  std::size_t arity;
  Variant variant;
  std::vector<GroupElement> elements;
};

const std::vector<Suite>& group_suite() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> out;
    auto g = tc_test::rng(1001);
    for (std::size_t arity : {2u, 3u})
      for (Variant v : {Variant::F, Variant::T, Variant::V, Variant::Vpm}) {
        Suite s{arity, v, {}};
        for (int i = 0; i < kElementsPerVariant; ++i) s.elements.push_back(tc_test::random_element(g, v, arity, kMaxCarets));
        out.push_back(std::move(s));
      }
    return out;
  }();
  return suites;
}

const AffineIFS& model_for_arity(std::size_t arity) {
  static const AffineIFS c3 = central_cantor(3);
  static const AffineIFS u3 = uniform_cantor(3, q(1, 5));
  return arity == 2 ? c3 : u3;
}

Outcome group_axioms() {
  Outcome o;
  for (const auto& s : group_suite()) {
    const AffineIFS& ifs = model_for_arity(s.arity);
    const auto points = tc_test::endpoint_addresses(s.arity, kEndpointGeneration);
    std::vector<Rational> x_values;
    for (const auto& x : points) x_values.push_back(evaluate_address(ifs, x));
    const GroupElement id = GroupElement::identity(s.arity, s.variant);
    std::map<Address, Rational> memo;
    const auto value = [&](const Address& x) {
      auto it = memo.find(x);
      if (it == memo.end()) it = memo.emplace(x, evaluate_address(ifs, x)).first;
      return it->second;
    };
    const std::string tag = to_string(s.variant) + "/" + std::to_string(s.arity);
    const std::size_t n = s.elements.size();
    for (std::size_t i = 0; i < n; ++i) {
      const GroupElement& a = s.elements[i];
      const GroupElement& b = s.elements[(i + 1) % n];
      const GroupElement& c = s.elements[(i + 2) % n];
      const GroupElement left = compose(compose(a, b), c), right = compose(a, compose(b, c));
      const GroupElement a_inv = inverse(a);
      o.expect(left == right, tag + ": associativity (canonical form) at element " + std::to_string(i));
      o.expect(compose(a, id) == a && compose(id, a) == a, tag + ": identity law at element " + std::to_string(i));
      o.expect(compose(a, a_inv).symbol() == identity_symbol(s.arity) && compose(a_inv, a).symbol() == identity_symbol(s.arity),
               tag + ": inverse law at element " + std::to_string(i));
      const Symbol &sa = a.symbol(), &sb = b.symbol(), &sc = c.symbol(), &sl = left.symbol(), &sr = right.symbol();
      const GroupElement a_ainv = compose(a, a_inv);
      const Symbol &si = a_inv.symbol(), &sai = a_ainv.symbol();
      for (std::size_t k = 0; k < points.size(); ++k) {
        const Address& x = points[k];
        // Codings are injective on a Cantor set, so address equality is
        // equality of points; one value comparison guards the coding itself.
        const Address step = act(sa, act(sb, act(sc, x)));
        const Address composite = act(sl, x);
        const bool assoc = composite == step && act(sr, x) == step &&
                           value(composite) == value(step);
        o.expect(assoc, assoc ? "" : tag + ": pointwise associativity at " + x.to_string());
        const Address back = act(sai, x);
        const bool inv = back == x && act(si, act(sa, x)) == x && value(back) == x_values[k];
        o.expect(inv, inv ? "" : tag + ": pointwise inverse at " + x.to_string());
      }
      if (!o.ok) return o;
    }
  }
  o.detail = std::to_string(o.checks) + " checks";
  return o;
}

Outcome slope_quantization() {
  Outcome o;
  const AffineIFS& c3 = model_for_arity(2);
  std::size_t pieces = 0;
  for (const auto& s : group_suite()) {
    if (s.arity != 2) continue;
    const std::size_t n = s.elements.size();
    for (std::size_t i = 0; i < n; ++i) {
      const GroupElement& a = s.elements[i];
      const GroupElement& b = s.elements[(i + 1) % n];
      const PLMap f = compose_pl(from_symbol(a, c3), from_symbol(b, c3));
      o.expect(to_symbol(f).symbol() == compose(a, b).symbol(), "composed PL map disagrees with the tree-pair composite");
      for (const auto& p : f.pieces()) {
        ++pieces;
        const Rational ratio = standard_interval(c3, p.target).length() / standard_interval(c3, p.source).length();
        o.expect(c3.scale(p.scale(c3)) == ratio, "piece scale differs from its interval length ratio");
        o.expect(exact_log(ratio, 3).has_value(), "piece scale " + str(ratio) + " is not a power of 3");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(pieces) + " pieces, all powers of 3";
  return o;
}

// Gaps of C_λ from the ternary-like expansion, independently of gaps_up_to.
Outcome sparseness() {
  Outcome o;
  std::size_t pairs = 0;
  for (long long lambda : {3, 4, 5}) {
    const AffineIFS ifs = central_cantor(lambda);
    const Rational inv = q(1, lambda);
    for (std::size_t G = 1; G <= 4; ++G) {
      std::set<Rational> ends{0, 1};
      std::vector<std::pair<Rational, Rational>> gaps;
      // Interval of a word: left end sum of d_i (λ-1) λ^{-i}, length λ^{-len}.
      std::function<void(Rational, Rational, std::size_t)> walk = [&](Rational lo, Rational len, std::size_t depth) {
        if (depth <= G) {
          ends.insert(lo);
          ends.insert(lo + len);
        }
        if (depth == G + 3) return;
        gaps.emplace_back(lo + len * inv, lo + len - len * inv);
        walk(lo, len * inv, depth + 1);
        walk(lo + len - len * inv, len * inv, depth + 1);
      };
      walk(0, 1, 0);
      const std::vector<Rational> pts(ends.begin(), ends.end());
      std::optional<Rational> best;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          ++pairs;
          Rational largest = 0;
          for (const auto& [l, r] : gaps)
            if (l >= pts[i] && r <= pts[j]) largest = std::max(largest, Rational(r - l));
          const Rational ratio = largest / (pts[j] - pts[i]);
          if (!best || ratio < *best) best = ratio;
        }
      const Rational expected = q(lambda - 2, lambda);
      o.expect(*best == expected, "brute force gives " + str(*best) + " for λ=" + std::to_string(lambda));
      const Rational computed = sparseness_bound(ifs, G);
      o.expect(computed == expected, "sparseness_bound(C_" + std::to_string(lambda) + ", " + std::to_string(G) + ") = " + str(computed));
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " endpoint pairs";
  return o;
}

Outcome genericity() {
  Outcome o;
  o.expect(check_genericity(central_cantor(3)).kind == GenericityVerdict::Kind::EqualBranch, "C_3 is not EqualBranch");
  const auto ac = check_genericity(asymmetric_cantor());
  o.expect(ac.kind == GenericityVerdict::Kind::Fails && ac.failure.has_value(), "AC does not fail genericity");
  if (ac.failure) {
    const auto& k = ac.failure->witness.exponents();
    IntVector m(k.begin(), k.end());
    o.expect(std::any_of(k.begin(), k.end(), [](long long e) { return e != 0; }), "AC witness is zero");
    o.expect(lattice_contains(relation_lattice({q(1, 4), q(1, 2)}), m), "AC witness outside the relation lattice");
    o.expect(pow(q(1, 4), k[0]) * pow(q(1, 2), k[1]) == 1, "AC witness is not a multiplicative relation");
  }
  const AffineIFS mixed = validate_ifs({{q(1, 3), 0}, {q(1, 5), q(4, 5)}});
  o.expect(mixed.gap(1) == q(7, 15), "gap of the (1/3, 1/5) IFS is not 7/15");
  o.expect(check_genericity(mixed).kind == GenericityVerdict::Kind::IncommensurableBranch, "(1/3,1/5) is not IncommensurableBranch");
  for (int rerun = 0; rerun < 3; ++rerun) {
    const auto again = check_genericity(asymmetric_cantor());
    o.expect(again.failure && again.failure->witness == ac.failure->witness, "verdict is not deterministic");
  }
  if (o.ok) o.detail = "C_3 EqualBranch; AC Fails, witness in lattice; (1/3,1/5) IncommensurableBranch";
  return o;
}

Outcome dimension() {
  Outcome o;
  const double est = box_count_estimate(central_cantor(3), 8);
  const double truth = std::log(2.0) / std::log(3.0);
  o.expect(std::abs(est - truth) <= kDimensionTolerance, "estimate " + std::to_string(est));
  const auto d4 = hausdorff_dimension_central(4);
  o.expect(d4.exact && *d4.exact == q(1, 2), "λ=4 closed form is not exactly 1/2");
  if (o.ok) {
    std::ostringstream s;
    s.precision(6);
    s << "estimate " << est << " vs " << truth << "; λ=4 exact 1/2";
    o.detail = s.str();
  }
  return o;
}

// Endpoint slopes read from the PL action on C_3, as powers of 3.
std::pair<long long, long long> endpoint_slopes(const GroupElement& e) {
  const AffineIFS& c3 = model_for_arity(2);
  const PLMap f = from_symbol(e, c3);
  const auto slope = [&](const Address& x) {
    const PLPiece& p = f.covering_piece(x);
    return *exact_log(standard_interval(c3, p.target).length() / standard_interval(c3, p.source).length(), 3);
  };
  return {slope(Address::parse("", "0")), slope(Address::parse("", "1"))};
}

Outcome abelianization() {
  Outcome o;
  auto g = tc_test::rng(1006);
  for (int i = 0; i < 100; ++i) {
    const GroupElement a = tc_test::random_element(g, Variant::F, 2, kMaxCarets);
    const GroupElement b = tc_test::random_element(g, Variant::F, 2, kMaxCarets);
    const auto [a0, a1] = abelianization_F(a);
    const auto [b0, b1] = abelianization_F(b);
    o.expect(abelianization_F(compose(a, b)) == std::make_pair(a0 + b0, a1 + b1), "homomorphism fails at pair " + std::to_string(i));
    o.expect(abelianization_F(a) == endpoint_slopes(a), "endpoint-slope oracle disagrees at pair " + std::to_string(i));
    const GroupElement comm = compose(compose(a, b), compose(inverse(a), inverse(b)));
    o.expect(abelianization_F(comm) == std::make_pair(0LL, 0LL), "commutator not in the kernel at pair " + std::to_string(i));
  }
  const auto x0 = abelianization_F(thompson_x0());
  o.expect(x0 == std::make_pair(-1LL, 1LL), "x_0 maps to (" + std::to_string(x0.first) + ", " + std::to_string(x0.second) + ")");
  o.expect(endpoint_slopes(thompson_x0()) == std::make_pair(-1LL, 1LL), "endpoint slopes of x_0 are not (-1, 1)");
  if (o.ok) o.detail = "100 pairs; x_0 -> (-1, 1)";
  return o;
}

// Exponents e with a standard germ φ_{I/J}, |I|,|J| <= bound, fixing x
// and having scale 3^{-e}: found by scanning prefixes of x.
long long fixing_exponent_gcd(const Address& x, std::size_t bound) {
  long long gcd = 0;
  for (std::size_t i = 0; i <= bound; ++i)
    for (std::size_t j = 0; j <= bound; ++j)
      if (i != j && x.drop_prefix(i) == x.drop_prefix(j)) gcd = std::gcd(gcd, static_cast<long long>(j > i ? j - i : i - j));
  return gcd;
}

Outcome stabilizers() {
  Outcome o;
  const AffineIFS& c3 = model_for_arity(2);
  auto g = tc_test::rng(1007);
  std::vector<Address> points;
  // Left and right points first (period of length 1), then general ones.
  for (int i = 0; i < 6; ++i)
    points.emplace_back(tc_test::random_word(g, 2, tc_test::uniform(g, 0, 5)), Word{static_cast<Letter>(i % 2)});
  while (points.size() < 20) points.push_back(tc_test::random_address(g, 2, 5, 4));
  std::size_t generates_lambda = 0;
  for (const auto& a : points) {
    const auto d = stabilizer(c3, a);
    o.expect(d.kind == StabilizerDescriptor::Kind::InfiniteCyclic && d.generator, "no generator at " + a.to_string());
    if (!d.generator) continue;
    const StandardGerm& germ = d.generator->germ;
    o.expect(germ_apply(germ, a) == a, "generator moves " + a.to_string());
    const Rational x = evaluate_address(c3, a);
    const AffineMap in = c3.word_map(germ.source), out = c3.word_map(germ.target);
    o.expect(out((x - in.shift) / in.scale) == x, "generator does not fix the value of " + a.to_string());
    const long long p = static_cast<long long>(a.period().size());
    const Rational scale = c3.scale(d.generator->scale);
    o.expect(scale == pow(q(1, 3), p), "scale " + str(scale) + " at " + a.to_string());
    // χ-image: generated by 3^{gcd of fixing exponents}, found by brute force.
    const long long e = fixing_exponent_gcd(a, a.preperiod().size() + 3 * a.period().size() + 4);
    o.expect(pow(Rational(3), e) == 1 / scale, "χ-image generator 3^" + std::to_string(e) + " at " + a.to_string());
    if (a.period().size() == 1) {
      o.expect(e == 1, "χ-image at the left/right point " + a.to_string() + " is not <3>");
      ++generates_lambda;
    }
  }
  o.expect(stabilizer(c3, AperiodicWitness{parse_word("0100011011")}).kind == StabilizerDescriptor::Kind::Trivial,
           "aperiodic witness has a nontrivial stabilizer");
  if (o.ok)
    o.detail = "20 addresses fixed with scale 3^-|period|; χ-image <3> at all " + std::to_string(generates_lambda) +
               " left/right points, <3^|period|> elsewhere; aperiodic Trivial";
  return o;
}

Outcome germ_family() {
  Outcome o;
  const AffineIFS ac = asymmetric_cantor();
  std::vector<Address> lefts;
  for (std::size_t len = 0; len <= 4; ++len)
    for (const auto& w : words_of_length(2, len))
      if (w.empty() || w.back() != 0) lefts.emplace_back(w, Word{0});
  const std::size_t depth = 3;
  std::size_t pairs = 0;
  const auto ones = [](const Word& w) { return static_cast<long long>(std::count(w.begin(), w.end(), Letter{1})); };
  const auto zeros = [](const Word& w) { return static_cast<long long>(std::count(w.begin(), w.end(), Letter{0})); };
  for (const auto& a : lefts)
    for (const auto& b : lefts) {
      ++pairs;
      const long long d1 = ones(b.preperiod()) - ones(a.preperiod());
      const int n = static_cast<int>(((d1 % 2) + 2) % 2);
      o.expect(reduced_tree_parity(a, b) == n, "parity n(" + a.to_string() + ", " + b.to_string() + ")");
      // ψ = 2^{-n} 4^{-k}: the 1-letters contribute 2^{-d1} = 2^{-n} 4^{-(d1-n)/2}.
      std::set<Rational> expected;
      for (std::size_t i = 0; i <= depth; ++i)
        for (std::size_t j = 0; j <= depth; ++j) {
          const long long k = (d1 - n) / 2 + zeros(b.preperiod()) + static_cast<long long>(j) - zeros(a.preperiod()) - static_cast<long long>(i);
          expected.insert(pow(q(1, 2), n) * pow(q(1, 4), k));
        }
      o.expect(realized_germ_scales(ac, a, b, depth) == expected, "scales between " + a.to_string() + " and " + b.to_string());
    }
  if (o.ok) o.detail = std::to_string(pairs) + " left-point pairs";
  return o;
}

// Coordinates as exact values and an affine evaluation of nV pieces that
// locates the source box by interval containment.
std::vector<Rational> values(const AffineIFS& ifs, const DustAddress& a) {
  std::vector<Rational> out;
  for (const auto& c : a.coords) out.push_back(evaluate_address(ifs, c));
  return out;
}

std::vector<Rational> rational_apply(const AffineIFS& ifs, const NVElement& e, const std::vector<Rational>& x) {
  for (const auto& p : e.pieces()) {
    bool inside = true;
    std::vector<Rational> local(x.size());
    for (std::size_t i = 0; i < x.size() && inside; ++i) {
      const auto iv = standard_interval(ifs, p.source[i]);
      inside = iv.lo <= x[i] && x[i] <= iv.hi;
      local[i] = (x[i] - iv.lo) / iv.length();
    }
    if (!inside) continue;
    std::vector<Rational> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Rational t = local[p.sym.perm()[i]];
      const auto iv = standard_interval(ifs, p.target[i]);
      out[i] = iv.lo + iv.length() * (p.sym.signs()[i] > 0 ? t : 1 - t);
    }
    return out;
  }
  throw std::logic_error("point outside every source box");
}

Outcome nv_suite() {
  Outcome o;
  const AffineIFS& c3 = model_for_arity(2);
  auto g = tc_test::rng(1009);
  for (std::size_t dim : {2u, 3u})
    for (int i = 0; i < 100; ++i) {
      const NVElement a = tc_test::random_nv(g, dim, 8, false), b = tc_test::random_nv(g, dim, 8, false),
                      c = tc_test::random_nv(g, dim, 8, false);
      const NVElement abc = compose_nv(compose_nv(a, b), c), a_bc = compose_nv(a, compose_nv(b, c));
      o.expect(equivalent(abc, a_bc), std::to_string(dim) + "V associativity at triple " + std::to_string(i));
      for (int j = 0; j < 10; ++j) {
        const DustAddress x = tc_test::random_dust(g, dim);
        const DustAddress y = apply_nv(a, apply_nv(b, apply_nv(c, x)));
        o.expect(apply_nv(abc, x) == y && apply_nv(a_bc, x) == y, std::to_string(dim) + "V pointwise mismatch at triple " + std::to_string(i));
        o.expect(values(c3, y) == rational_apply(c3, a, rational_apply(c3, b, rational_apply(c3, c, values(c3, x)))),
                 std::to_string(dim) + "V affine oracle mismatch at triple " + std::to_string(i));
      }
    }
  o.expect(stabilizer_rank({Address::parse("", "0"), Address::parse("", "0")}) == 2, "rank of (0^∞, 0^∞)");
  o.expect(stabilizer_rank({Address::parse("", "10"), AperiodicWitness{parse_word("0100011011")}}) == 1, "rank of a mixed point");
  o.expect(stabilizer_rank({AperiodicWitness{parse_word("01")}, AperiodicWitness{parse_word("10")}}) == 0, "rank of an aperiodic point");
  for (std::size_t dim : {2u, 3u})
    for (int i = 0; i < 50; ++i) {
      const NVElement f = tc_test::random_nv(g, dim, 8, true), h = tc_test::random_nv(g, dim, 8, true);
      const NVElement fh = compose_nv(f, h);
      for (const auto& s : fh.syms()) o.expect(s.determinant() == 1, "determinant -1 in a product");
      const DustAddress x = tc_test::random_dust(g, dim);
      o.expect(values(c3, apply_nv(fh, x)) == rational_apply(c3, f, rational_apply(c3, h, values(c3, x))),
               "nV^sym product disagrees with the affine oracle");
    }
  if (o.ok) o.detail = "200 triples, ranks 2/1/0, 100 nV^sym products with det +1";
  return o;
}

Outcome germ_extension() {
  Outcome o;
  std::size_t pairs = 0;
  for (const AffineIFS& ifs : {central_cantor(3), asymmetric_cantor(), uniform_cantor(3, q(1, 5))}) {
    std::vector<Word> words;
    for (std::size_t len = 1; len <= 4; ++len)
      for (const auto& w : words_of_length(ifs.alphabet_size(), len)) words.push_back(w);
    for (const auto& i : words)
      for (const auto& j : words) {
        ++pairs;
        const StandardGerm germ{i, j};
        const StandardGerm shorter{Word(i.begin(), i.end() - 1), Word(j.begin(), j.end() - 1)};
        // The shorter germ extends germ iff both agree at the ends of φ_I([0,1]).
        const auto value = [&](const StandardGerm& s, const Rational& x) {
          const AffineMap in = ifs.word_map(s.source), out = ifs.word_map(s.target);
          return out((x - in.shift) / in.scale);
        };
        const auto dom = standard_interval(ifs, i);
        const bool agree = value(shorter, dom.lo) == value(germ, dom.lo) && value(shorter, dom.hi) == value(germ, dom.hi);
        const auto ext = germ_extend(germ);
        o.expect(ext.has_value() == agree && agree == (i.back() == j.back()), "germ_extend on " + to_string(i) + "/" + to_string(j));
        if (ext) o.expect(*ext == shorter, "wrong extension of " + to_string(i) + "/" + to_string(j));
      }
  }
  auto g = tc_test::rng(1010);
  std::size_t multigerms = 0;
  for (std::size_t arity : {2u, 3u})
    for (int n = 0; n < 25; ++n) {
      const AffineIFS& ifs = model_for_arity(arity);
      // A run of consecutive pieces of a refined element of F is a valid multi-germ.
      Symbol s = tc_test::random_element(g, Variant::F, arity, 5).symbol();
      for (int k = 0; k < 3; ++k) s = expand(s, tc_test::uniform(g, 0, s.leaf_count() - 1));
      const auto pieces = leaf_pieces(s);
      const std::size_t len = tc_test::uniform(g, 1, std::min<std::size_t>(4, pieces.size()));
      const std::size_t start = tc_test::uniform(g, 0, pieces.size() - len);
      MultiGerm mg;
      for (std::size_t i = start; i < start + len; ++i) mg.germs.push_back({pieces[i].source, pieces[i].target});
      std::size_t letters = 0;
      for (const auto& x : mg.germs) letters += x.source.size() + x.target.size();
      std::size_t steps = 0;
      const MultiGerm out = extend_multigerm(ifs, mg, &steps);
      ++multigerms;
      o.expect(is_valid_multigerm(ifs, mg) && is_valid_multigerm(ifs, out), "invalid multi-germ");
      o.expect(steps < std::max<std::size_t>(letters, 1), "extension took " + std::to_string(steps) + " steps");
      std::size_t again = 0;
      o.expect(extend_multigerm(ifs, out, &again) == out && again == 0, "extension result is not a fixed point");
    }
  if (o.ok) o.detail = std::to_string(pairs) + " germ pairs, " + std::to_string(multigerms) + " multi-germs";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  tc_test::seed();
  const std::vector<Criterion> criteria{
      {1, "group axioms", kLimitGroupAxioms, group_axioms},
      {2, "slope quantization", 0, slope_quantization},
      {3, "sparseness", kLimitSparseness, sparseness},
      {4, "genericity", 0, genericity},
      {5, "dimension", kLimitDimension, dimension},
      {6, "abelianization", 0, abelianization},
      {7, "stabilizers", 0, stabilizers},
      {8, "AC germ family", 0, germ_family},
      {9, "nV suite", kLimitNV, nv_suite},
      {10, "germ extension", 0, germ_extension},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
    }
    failures += !o.ok;
    std::printf("%s %2d %-20s %7.2f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
