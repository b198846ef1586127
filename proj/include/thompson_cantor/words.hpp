#pragma once

// Finite words over an IFS alphabet {0..n} and eventually periodic infinite
// words (addresses of attractor points).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exact_num.hpp"

namespace thompson_cantor {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

inline constexpr std::size_t kMaxAlphabet = 36;

inline char letter_char(Letter l) {
  return l < 10 ? static_cast<char>('0' + l) : static_cast<char>('a' + (l - 10));
}

/// Parses a word written with one character per letter (0-9 then a-z).
inline Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (const char c : text) {
    if (c >= '0' && c <= '9')
      w.push_back(static_cast<Letter>(c - '0'));
    else if (c >= 'a' && c <= 'z')
      w.push_back(static_cast<Letter>(10 + (c - 'a')));
    else
      throw DomainError(std::string("invalid letter '") + c + "' in word \"" + std::string(text) + "\"");
  }
  return w;
}

inline std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (const Letter l : w) s.push_back(letter_char(l));
  return s;
}

inline bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Letter-wise i -> top - i (orientation reversal of a palindromic IFS).
inline Word complement(Word w, Letter top) {
  for (auto& l : w) l = static_cast<Letter>(top - l);
  return w;
}

inline void check_alphabet(const Word& w, std::size_t alphabet) {
  for (const Letter l : w)
    if (l >= alphabet)
      throw DomainError("letter " + std::to_string(int{l}) + " outside alphabet of size " + std::to_string(alphabet));
}

/// Eventually periodic address preperiod·period^∞ in canonical form:
/// the period is primitive and the preperiod is as short as possible.
class Address {
 public:
  Address() : period_{0} {}
  Address(Word preperiod, Word period) : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw DomainError("address period must be nonempty");
    canonicalize();
  }

  static Address parse(std::string_view pre, std::string_view per) { return {parse_word(pre), parse_word(per)}; }

  const Word& preperiod() const { return preperiod_; }
  const Word& period() const { return period_; }

  /// i-th letter of the infinite expansion (0-based).
  Letter letter(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
  }

  Word expansion(std::size_t len) const {
    Word w(len);
    for (std::size_t i = 0; i < len; ++i) w[i] = letter(i);
    return w;
  }

  bool has_prefix(const Word& prefix) const {
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (letter(i) != prefix[i]) return false;
    return true;
  }

  /// The address with its first k letters removed.
  Address drop_prefix(std::size_t k) const {
    if (k <= preperiod_.size()) return {Word(preperiod_.begin() + static_cast<std::ptrdiff_t>(k), preperiod_.end()), period_};
    const std::size_t shift = (k - preperiod_.size()) % period_.size();
    Word rotated(period_.begin() + static_cast<std::ptrdiff_t>(shift), period_.end());
    rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(shift));
    return {Word{}, std::move(rotated)};
  }

  Address prepend(const Word& w) const { return {concat(w, preperiod_), period_}; }

  Address complemented(Letter top) const { return {complement(preperiod_, top), complement(period_, top)}; }

  std::string to_string() const {
    return thompson_cantor::to_string(preperiod_) + "(" + thompson_cantor::to_string(period_) + ")";
  }

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;

 private:
  void canonicalize() {
    const std::size_t len = period_.size();
    for (std::size_t d = 1; d < len; ++d) {
      if (len % d != 0) continue;
      bool repeats = true;
      for (std::size_t i = d; i < len && repeats; ++i) repeats = period_[i] == period_[i - d];
      if (repeats) {
        period_.resize(d);
        break;
      }
    }
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
      std::rotate(period_.begin(), period_.end() - 1, period_.end());
      preperiod_.pop_back();
    }
  }

  Word preperiod_;
  Word period_;
};

/// A point known only to have a non-eventually-periodic address. Such points
/// cannot be represented exactly, so only a finite prefix is carried.
struct AperiodicWitness {
  Word prefix;
  friend bool operator==(const AperiodicWitness&, const AperiodicWitness&) = default;
};

using Point = std::variant<Address, AperiodicWitness>;

inline bool is_periodic(const Point& p) { return std::holds_alternative<Address>(p); }

}  // namespace thompson_cantor
