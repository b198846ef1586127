#pragma once

// Exact rational arithmetic, prime-exponent factorizations and the
// multiplicative relation lattice of a family of positive rationals.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

namespace thompson_cantor {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown whenever an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

/// Parses "p/q", "p" or "-p/q". Decimal points and other irrational
/// spellings are rejected.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw DomainError("not an exact rational: '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  return make_rational(Integer(n), Integer(std::string(den)));
}

inline std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// q^e for any integer e; q must be nonzero when e < 0.
inline Rational pow(const Rational& q, long long e) {
  if (e < 0) {
    if (q == 0) throw DomainError("zero to a negative power");
    return pow(Rational(1) / q, -e);
  }
  Rational result = 1;
  Rational base = q;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Prime factorizations

using Prime = Integer;

/// Sparse prime -> nonzero exponent map.
class PrimeExponents {
 public:
  PrimeExponents() = default;

  long long operator[](Prime p) const {
    const auto it = entries_.find(p);
    return it == entries_.end() ? 0 : it->second;
  }
  void add(Prime p, long long e) {
    if (e == 0) return;
    auto& slot = entries_[p];
    slot += e;
    if (slot == 0) entries_.erase(p);
  }
  const std::map<Prime, long long>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  PrimeExponents& operator+=(const PrimeExponents& other) {
    for (const auto& [p, e] : other.entries_) add(p, e);
    return *this;
  }
  friend PrimeExponents operator+(PrimeExponents a, const PrimeExponents& b) { return a += b; }
  PrimeExponents scaled(long long factor) const {
    PrimeExponents out;
    if (factor == 0) return out;
    for (const auto& [p, e] : entries_) out.entries_[p] = e * factor;
    return out;
  }

  Rational value() const {
    Rational v = 1;
    for (const auto& [p, e] : entries_) v *= pow(Rational(Integer(p)), e);
    return v;
  }

  friend bool operator==(const PrimeExponents&, const PrimeExponents&) = default;

 private:
  std::map<Prime, long long> entries_;
};

namespace detail {

inline constexpr std::uint32_t kSieveLimit = 1'000'000;

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline void factor_into(Integer n, long long sign, PrimeExponents& out) {
  for (const std::uint32_t p : small_primes()) {
    if (n == 1) return;
    if (Integer(p) * p > n) break;
    long long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.add(p, sign * e);
  }
  if (n == 1) return;
  // No factor <= 10^6 remains: below 10^12 the cofactor is prime, above it
  // split with Pollard's rho until every part passes Miller-Rabin.
  std::vector<Integer> pending{n};
  while (!pending.empty()) {
    Integer m = pending.back();
    pending.pop_back();
    if (m < Integer(kSieveLimit) * kSieveLimit || boost::multiprecision::miller_rabin_test(m, 40)) {
      out.add(m, sign);
      continue;
    }
    Integer d = m;
    for (Integer c = 1; d == m; ++c) {
      Integer x = 2, y = 2;
      d = 1;
      while (d == 1) {
        x = (x * x + c) % m;
        y = (y * y + c) % m;
        y = (y * y + c) % m;
        d = boost::multiprecision::gcd(x > y ? Integer(x - y) : Integer(y - x), m);
      }
    }
    pending.push_back(d);
    pending.push_back(m / d);
  }
}

}  // namespace detail

inline PrimeExponents factorize(const Rational& q) {
  if (q <= 0) throw DomainError("factorize requires a positive rational, got " + to_string(q));
  PrimeExponents out;
  detail::factor_into(boost::multiprecision::numerator(q), 1, out);
  detail::factor_into(boost::multiprecision::denominator(q), -1, out);
  return out;
}

// ---------------------------------------------------------------------------
// Scale group elements Λ_k = ∏ λ_i^{k_i}

/// Integer exponent vector, one slot per contraction ratio of an IFS.
class ScaleElement {
 public:
  ScaleElement() = default;
  explicit ScaleElement(std::size_t size) : exponents_(size, 0) {}
  explicit ScaleElement(std::vector<long long> exponents) : exponents_(std::move(exponents)) {}

  std::size_t size() const { return exponents_.size(); }
  long long operator[](std::size_t i) const { return exponents_[i]; }
  long long& operator[](std::size_t i) { return exponents_[i]; }
  const std::vector<long long>& exponents() const { return exponents_; }
  bool is_zero() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](long long e) { return e == 0; });
  }
  long long total() const {
    long long s = 0;
    for (const long long e : exponents_) s += e;
    return s;
  }

  ScaleElement& operator+=(const ScaleElement& o) {
    check_size(o);
    for (std::size_t i = 0; i < exponents_.size(); ++i) exponents_[i] += o.exponents_[i];
    return *this;
  }
  ScaleElement& operator-=(const ScaleElement& o) {
    check_size(o);
    for (std::size_t i = 0; i < exponents_.size(); ++i) exponents_[i] -= o.exponents_[i];
    return *this;
  }
  friend ScaleElement operator+(ScaleElement a, const ScaleElement& b) { return a += b; }
  friend ScaleElement operator-(ScaleElement a, const ScaleElement& b) { return a -= b; }
  ScaleElement operator-() const {
    ScaleElement out(*this);
    for (auto& e : out.exponents_) e = -e;
    return out;
  }

  friend bool operator==(const ScaleElement&, const ScaleElement&) = default;
  friend auto operator<=>(const ScaleElement&, const ScaleElement&) = default;

 private:
  void check_size(const ScaleElement& o) const {
    if (o.size() != size()) throw DomainError("scale element length mismatch");
  }
  std::vector<long long> exponents_;
};

inline Rational scale_value(const std::vector<Rational>& ratios, const ScaleElement& k) {
  if (ratios.size() != k.size()) throw DomainError("scale_value: exponent vector length does not match ratio count");
  Rational v = 1;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (ratios[i] <= 0) throw DomainError("scale_value: ratios must be positive");
    v *= pow(ratios[i], k[i]);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Integer lattices

using IntVector = std::vector<Integer>;
using LatticeBasis = std::vector<IntVector>;

namespace detail {

// Extended gcd with g >= 0: a*x + b*y = g.
inline void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& x, Integer& y) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

// Floor division for Integer (truncation toward zero is the library default).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Row-style Hermite normal form of a full-row-rank integer matrix: rows in
/// echelon order, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped.
inline LatticeBasis hermite_normal_form(LatticeBasis rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    // Fold every lower row into pivot_row with unimodular 2x2 steps.
    for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Integer g, x, y;
      detail::ext_gcd(rows[pivot_row][c], rows[r][c], g, x, y);
      const Integer a = rows[pivot_row][c] / g;
      const Integer b = rows[r][c] / g;
      for (std::size_t k = 0; k < cols; ++k) {
        const Integer top = x * rows[pivot_row][k] + y * rows[r][k];
        const Integer bottom = -b * rows[pivot_row][k] + a * rows[r][k];
        rows[pivot_row][k] = top;
        rows[r][k] = bottom;
      }
    }
    if (rows[pivot_row][c] == 0) continue;
    if (rows[pivot_row][c] < 0)
      for (auto& v : rows[pivot_row]) v = -v;
    for (std::size_t r = 0; r < pivot_row; ++r) {
      const Integer q = detail::floor_div(rows[r][c], rows[pivot_row][c]);
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= q * rows[pivot_row][k];
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

/// Basis of { m in Z^len : ∏ values_i^{m_i} = 1 }, in Hermite normal form
/// (so the basis is canonical for the lattice).
inline LatticeBasis relation_lattice(const std::vector<Rational>& values) {
  const std::size_t len = values.size();
  std::vector<PrimeExponents> factored;
  factored.reserve(len);
  std::vector<Prime> primes;
  for (const auto& v : values) {
    factored.push_back(factorize(v));
    for (const auto& [p, e] : factored.back().entries()) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  // Augmented rows [exponents of value i | e_i]; echelonizing the left block
  // leaves left-kernel vectors in the right block of the zero rows.
  const std::size_t width = primes.size() + len;
  LatticeBasis rows(len, IntVector(width, 0));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < primes.size(); ++j) rows[i][j] = factored[i][primes[j]];
    rows[i][primes.size() + i] = 1;
  }
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < primes.size() && pivot_row < len; ++c) {
    for (std::size_t r = pivot_row + 1; r < len; ++r) {
      if (rows[r][c] == 0) continue;
      Integer g, x, y;
      detail::ext_gcd(rows[pivot_row][c], rows[r][c], g, x, y);
      const Integer a = rows[pivot_row][c] / g;
      const Integer b = rows[r][c] / g;
      for (std::size_t k = 0; k < width; ++k) {
        const Integer top = x * rows[pivot_row][k] + y * rows[r][k];
        const Integer bottom = -b * rows[pivot_row][k] + a * rows[r][k];
        rows[pivot_row][k] = top;
        rows[r][k] = bottom;
      }
    }
    if (rows[pivot_row][c] != 0) ++pivot_row;
  }
  LatticeBasis kernel;
  for (std::size_t r = pivot_row; r < len; ++r)
    kernel.emplace_back(rows[r].begin() + static_cast<std::ptrdiff_t>(primes.size()), rows[r].end());
  return hermite_normal_form(std::move(kernel));
}

/// Finds m in the lattice spanned by `basis` whose coordinate `slot` equals
/// `target`, if one exists.
inline std::optional<IntVector> lattice_vector_with_coordinate(const LatticeBasis& basis, std::size_t slot,
                                                               const Integer& target) {
  if (basis.empty()) return std::nullopt;
  const std::size_t len = basis.front().size();
  Integer g = 0;
  IntVector combo(len, 0);
  for (const auto& b : basis) {
    if (b[slot] == 0) continue;
    Integer ng, x, y;
    detail::ext_gcd(g, b[slot], ng, x, y);
    for (std::size_t k = 0; k < len; ++k) combo[k] = x * combo[k] + y * b[k];
    g = ng;
  }
  if (g == 0 || target % g != 0) return std::nullopt;
  const Integer factor = target / g;
  for (auto& v : combo) v *= factor;
  return combo;
}

/// True iff m lies in the integer span of `basis` (basis must be in HNF).
inline bool lattice_contains(const LatticeBasis& basis, IntVector m) {
  for (const auto& b : basis) {
    const auto pivot = static_cast<std::size_t>(
        std::find_if(b.begin(), b.end(), [](const Integer& v) { return v != 0; }) - b.begin());
    if (m[pivot] % b[pivot] != 0) return false;
    const Integer q = m[pivot] / b[pivot];
    for (std::size_t k = 0; k < m.size(); ++k) m[k] -= q * b[k];
  }
  return std::all_of(m.begin(), m.end(), [](const Integer& v) { return v == 0; });
}

inline ScaleElement to_scale_element(const IntVector& v, std::size_t first, std::size_t count) {
  std::vector<long long> out;
  out.reserve(count);
  for (std::size_t i = first; i < first + count; ++i) out.push_back(v[i].convert_to<long long>());
  return ScaleElement(std::move(out));
}

}  // namespace thompson_cantor
