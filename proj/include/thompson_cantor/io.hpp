#pragma once

// Structured text (JSON) reading and writing for every value type.
// Rationals travel as "p/q" strings, words as digit strings, and the
// 1-based permutation lists of the text format become 0-based in memory.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantor_model.hpp"
#include "nv_patterns.hpp"
#include "pl_action.hpp"
#include "tree_calculus.hpp"

namespace thompson_cantor::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

class FormatError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline Json parse_text(const std::string& text, const std::string& origin = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    const std::string token = at < text.size() ? text.substr(at, 12) : std::string("<end of input>");
    throw FormatError(origin + ": parse error at byte " + std::to_string(e.byte) + " near '" + token + "'");
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw FormatError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

inline Rational rational_value(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw FormatError("rationals are written as \"p/q\" strings, got " + v.dump());
}

inline std::vector<std::size_t> one_based_list(const Json& v, const char* what) {
  if (!v.is_array()) throw FormatError(std::string(what) + " must be a list");
  std::vector<std::size_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 1)
      throw FormatError(std::string(what) + " entries are 1-based positive integers, got " + x.dump());
    out.push_back(static_cast<std::size_t>(x.get<long long>() - 1));
  }
  return out;
}

inline Json one_based(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (const std::size_t x : v) out.push_back(x + 1);
  return out;
}

}  // namespace detail

// --- IFS -------------------------------------------------------------------

inline Json to_json(const AffineIFS& ifs) {
  Json pieces = Json::array();
  for (const auto& p : ifs.pieces()) pieces.push_back({{"ratio", to_string(p.ratio)}, {"offset", to_string(p.offset)}});
  return {{"pieces", pieces}};
}

inline AffineIFS ifs_from_json(const Json& j) {
  const Json& pieces = detail::field(j, "pieces");
  if (!pieces.is_array()) throw FormatError("\"pieces\" must be a list");
  std::vector<AffinePiece> out;
  for (const auto& p : pieces)
    out.push_back({detail::rational_value(detail::field(p, "ratio")), detail::rational_value(detail::field(p, "offset"))});
  return validate_ifs(std::move(out));
}

// --- Points ----------------------------------------------------------------

inline Json to_json(const Address& a) { return {{"pre", to_string(a.preperiod())}, {"per", to_string(a.period())}}; }

inline Json to_json(const Point& p) {
  if (const auto* a = std::get_if<Address>(&p)) return to_json(*a);
  return {{"aperiodic", to_string(std::get<AperiodicWitness>(p).prefix)}};
}

inline Address address_from_json(const Json& j) {
  return Address::parse(detail::string_field(j, "pre"), detail::string_field(j, "per"));
}

inline Point point_from_json(const Json& j) {
  if (j.is_object() && j.contains("aperiodic")) return AperiodicWitness{parse_word(detail::string_field(j, "aperiodic"))};
  return address_from_json(j);
}

inline Json to_json(const std::vector<Point>& coords) {
  Json c = Json::array();
  for (const auto& p : coords) c.push_back(to_json(p));
  return {{"coords", c}};
}

inline std::vector<Point> point_tuple_from_json(const Json& j) {
  const Json& c = detail::field(j, "coords");
  if (!c.is_array() || c.empty()) throw FormatError("\"coords\" must be a nonempty list");
  std::vector<Point> out;
  for (const auto& p : c) out.push_back(point_from_json(p));
  return out;
}

inline Json to_json(const DustAddress& a) {
  return to_json(std::vector<Point>(a.coords.begin(), a.coords.end()));
}

inline DustAddress dust_from_json(const Json& j) {
  DustAddress out;
  for (const auto& p : point_tuple_from_json(j)) {
    const auto* a = std::get_if<Address>(&p);
    if (a == nullptr) throw FormatError("nV elements act on eventually periodic coordinates only");
    out.coords.push_back(*a);
  }
  return out;
}

// --- Tree-pair symbols -----------------------------------------------------

inline Json to_json(const Symbol& s) {
  std::string flips;
  for (const bool f : s.flips) flips.push_back(f ? '1' : '0');
  return {{"target", s.target.to_string()}, {"source", s.source.to_string()}, {"perm", detail::one_based(s.perm)}, {"flips", flips}, {"arity", s.arity()}};
}

inline Json to_json(const GroupElement& e) {
  Json j = to_json(e.symbol());
  j["variant"] = to_string(e.variant());
  return j;
}

inline Symbol symbol_from_json(const Json& j) {
  std::optional<std::size_t> arity;
  if (j.contains("arity")) arity = j.at("arity").get<std::size_t>();
  Tree target = Tree::parse(detail::string_field(j, "target"), arity);
  Tree source = Tree::parse(detail::string_field(j, "source"), target.arity());
  std::vector<std::size_t> perm = detail::one_based_list(detail::field(j, "perm"), "perm");
  std::vector<bool> flips(perm.size(), false);
  if (j.contains("flips")) {
    const std::string bits = detail::string_field(j, "flips");
    if (bits.size() != perm.size()) throw FormatError("flips has " + std::to_string(bits.size()) + " bits for " + std::to_string(perm.size()) + " leaves");
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw FormatError(std::string("invalid flip bit '") + bits[i] + "'");
      flips[i] = bits[i] == '1';
    }
  }
  Symbol s{std::move(target), std::move(source), std::move(perm), std::move(flips)};
  validate_symbol(s);
  return s;
}

inline GroupElement element_from_json(const Json& j) {
  std::optional<Variant> v;
  if (j.contains("variant")) v = parse_variant(detail::string_field(j, "variant"));
  return {symbol_from_json(j), v};
}

// --- PL maps and germs -----------------------------------------------------

inline Json to_json(const PLMap& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    const ScaleElement k = p.scale(f.ifs());
    Json scale = k.exponents();
    pieces.push_back({{"source", to_string(p.source)},
                      {"target", to_string(p.target)},
                      {"target_left", to_json(p.target_left())},
                      {"scale", scale},
                      {"rev", p.reversed}});
  }
  return {{"model", to_string(f.model())}, {"ifs", to_json(f.ifs())}, {"pieces", pieces}};
}

/// A piece's target word is read from "target" when present; otherwise it
/// is the preperiod of "target_left" padded with the 0s that the scale
/// vector requires.
inline PLMap plmap_from_json(const Json& j) {
  const AffineIFS ifs = ifs_from_json(detail::field(j, "ifs"));
  const Model model = j.contains("model") ? parse_model(detail::string_field(j, "model")) : Model::Line;
  std::vector<PLPiece> pieces;
  for (const auto& p : detail::field(j, "pieces")) {
    PLPiece piece{parse_word(detail::string_field(p, "source")), {}, p.value("rev", false)};
    if (p.contains("target")) {
      piece.target = parse_word(detail::string_field(p, "target"));
    } else {
      const Address left = address_from_json(detail::field(p, "target_left"));
      if (left.period() != Word{0}) throw FormatError("target_left must be a left point (period 0)");
      const auto scale = detail::field(p, "scale").get<std::vector<long long>>();
      if (scale.size() != ifs.alphabet_size()) throw FormatError("scale vector length differs from the alphabet size");
      const long long zeros = scale[0] + ifs.letter_counts(piece.source)[0] - ifs.letter_counts(left.preperiod())[0];
      if (zeros < 0) throw FormatError("scale vector inconsistent with target_left");
      piece.target = concat(left.preperiod(), Word(static_cast<std::size_t>(zeros), 0));
      if (piece.scale(ifs).exponents() != scale) throw FormatError("scale vector inconsistent with source and target_left");
    }
    pieces.push_back(std::move(piece));
  }
  return {ifs, model, std::move(pieces)};
}

inline Json to_json(const StandardGerm& g) { return {{"source", to_string(g.source)}, {"target", to_string(g.target)}}; }

inline StandardGerm germ_from_json(const Json& j) {
  return {parse_word(detail::string_field(j, "source")), parse_word(detail::string_field(j, "target"))};
}

inline Json to_json(const MultiGerm& mg) {
  Json g = Json::array();
  for (const auto& x : mg.germs) g.push_back(to_json(x));
  return {{"germs", g}};
}

inline MultiGerm multigerm_from_json(const Json& j) {
  MultiGerm mg;
  for (const auto& g : detail::field(j, "germs")) mg.germs.push_back(germ_from_json(g));
  return mg;
}

// --- nV --------------------------------------------------------------------

inline Json to_json(const PatternTree& p) {
  if (p.is_cell()) return "cell";
  return {{"cut", p.axis()}, {"low", to_json(p.low())}, {"high", to_json(p.high())}};
}

inline PatternTree pattern_from_json(const Json& j, std::size_t dim) {
  if (j.is_string()) {
    if (j.get<std::string>() != "cell") throw FormatError("pattern leaves are written \"cell\", got " + j.dump());
    return PatternTree::cell(dim);
  }
  const Json& axis = detail::field(j, "cut");
  if (!axis.is_number_integer()) throw FormatError("\"cut\" must be an axis number");
  return PatternTree::cut(axis.get<std::size_t>(), pattern_from_json(detail::field(j, "low"), dim),
                          pattern_from_json(detail::field(j, "high"), dim));
}

inline Json to_json(const CubeSymmetry& s) { return {{"perm", detail::one_based(s.perm())}, {"signs", s.signs()}}; }

inline CubeSymmetry symmetry_from_json(const Json& j) {
  return {detail::one_based_list(detail::field(j, "perm"), "symmetry perm"), detail::field(j, "signs").get<std::vector<int>>()};
}

inline Json to_json(const NVElement& e) {
  Json syms = Json::array();
  for (const auto& s : e.syms()) syms.push_back(to_json(s));
  return {{"dim", e.dimension()},
          {"source", to_json(e.source())},
          {"target", to_json(e.target())},
          {"perm", detail::one_based(e.perm())},
          {"syms", syms}};
}

inline NVElement nv_from_json(const Json& j) {
  const std::size_t dim = detail::field(j, "dim").get<std::size_t>();
  std::vector<CubeSymmetry> syms;
  if (j.contains("syms"))
    for (const auto& s : j.at("syms")) syms.push_back(symmetry_from_json(s));
  return {pattern_from_json(detail::field(j, "source"), dim), pattern_from_json(detail::field(j, "target"), dim),
          detail::one_based_list(detail::field(j, "perm"), "perm"), std::move(syms)};
}

/// Top-level document wrapper carrying the schema version.
inline Json document(const char* kind, Json body) {
  return {{"schema", kSchemaVersion}, {"kind", kind}, {"value", std::move(body)}};
}

}  // namespace thompson_cantor::io
