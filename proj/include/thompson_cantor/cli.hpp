#pragma once

// Command-line front end. One verb per public operation; exit status 0 on
// success, 1 on domain errors (bad input values, malformed files), 2 on
// usage errors.

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "svg.hpp"

namespace thompson_cantor::cli {

using io::Json;

struct Options {
  std::string file, a, b, elem, point, out;
  std::size_t gen = 3;
  std::string format = "text";
};

namespace detail {

inline Json load(const std::string& path, const char* flag) {
  if (path.empty()) throw CLI::RequiredError(std::string("--") + flag);
  Json j = io::read_file(path);
  // Accept the wrapped output of a previous run as input.
  if (j.is_object() && j.contains("schema") && j.contains("value")) return j.at("value");
  return j;
}

inline std::string subscript(std::size_t n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  const std::string s = std::to_string(n);
  std::string out;
  for (const char c : s) out += digits[c - '0'];
  return out;
}

inline std::string exponents(const ScaleElement& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

inline std::string germ_text(const StandardGerm& g) {
  return "φ_{" + to_string(g.source) + "/" + to_string(g.target) + "}";
}

inline std::string symbol_text(const Symbol& s) {
  std::string perm, flips;
  for (std::size_t i = 0; i < s.perm.size(); ++i) {
    perm += (i ? " " : "") + std::to_string(s.perm[i] + 1);
    flips += s.flips[i] ? '1' : '0';
  }
  return "target " + s.target.to_string() + "\nsource " + s.source.to_string() + "\nperm   " + perm + "\nflips  " + flips;
}

inline std::string pattern_text(const PatternTree& p) {
  if (p.is_cell()) return ".";
  return "[" + std::to_string(p.axis()) + " " + pattern_text(p.low()) + " " + pattern_text(p.high()) + "]";
}

inline std::string nv_text(const NVElement& e) {
  std::string s = "source " + pattern_text(e.source()) + "\ntarget " + pattern_text(e.target());
  for (const auto& p : e.pieces()) {
    auto box = [](const Box& b) {
      std::string t = "(";
      for (std::size_t i = 0; i < b.size(); ++i) t += (i ? "," : "") + std::string("\"") + to_string(b[i]) + "\"";
      return t + ")";
    };
    s += "\n  " + box(p.source) + " -> " + box(p.target);
    if (!p.sym.is_identity()) s += " via " + io::to_json(p.sym).dump();
  }
  return s;
}

inline std::string dust_text(const DustAddress& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.coords.size(); ++i) s += (i ? ", " : "") + a.coords[i].to_string();
  return s + ")";
}

inline bool central(const AffineIFS& ifs) {
  return ifs.alphabet_size() == 2 && ifs.ratios()[0] == ifs.ratios()[1];
}

struct Result {
  const char* kind;
  Json value;
  std::string text;
  std::optional<std::string> svg = std::nullopt;
};

}  // namespace detail

inline detail::Result dispatch(const std::string& group, const std::string& verb, const Options& o) {
  using detail::load;
  using detail::Result;

  if (group == "ifs") {
    const AffineIFS ifs = io::ifs_from_json(load(o.file, "file"));
    if (verb == "check") {
      const Rational sigma = sparseness_bound(ifs, o.gen);
      const auto verdict = check_genericity(ifs);
      return {"ifs-check",
              {{"valid", true}, {"sparse", {{"generation", o.gen}, {"bound", to_string(sigma)}}}, {"genericity", to_string(verdict.kind)}},
              "valid; sparse σ" + detail::subscript(o.gen) + " = " + to_string(sigma) + "; genericity: " + to_string(verdict.kind)};
    }
    if (verb == "gaps") {
      Json list = Json::array();
      std::string text;
      for (const auto& g : gaps_up_to(ifs, o.gen)) {
        list.push_back({{"generation", g.generation},
                        {"parent", to_string(g.parent)},
                        {"slot", g.slot},
                        {"left", to_string(g.left)},
                        {"right", to_string(g.right)},
                        {"length", to_string(g.length())}});
        text += "gen " + std::to_string(g.generation) + " parent \"" + to_string(g.parent) + "\" slot " + std::to_string(g.slot) +
                ": (" + to_string(g.left) + ", " + to_string(g.right) + ") length " + to_string(g.length()) + "\n";
      }
      if (!text.empty()) text.pop_back();
      return {"gaps", list, text, svg::render_ifs(ifs, o.gen)};
    }
    if (verb == "sparse") {
      const Rational sigma = sparseness_bound(ifs, o.gen);
      return {"sparseness", {{"generation", o.gen}, {"bound", to_string(sigma)}},
              "sparseness bound through generation " + std::to_string(o.gen) + ": " + to_string(sigma)};
    }
    if (verb == "genericity") {
      const auto v = check_genericity(ifs);
      Json j{{"verdict", to_string(v.kind)}, {"permutation_check_relaxed", v.permutation_check_relaxed}};
      std::string text = to_string(v.kind);
      if (v.failure) {
        const auto& f = *v.failure;
        j["condition"] = to_string(f.condition);
        j["witness"] = f.witness.exponents();
        j["alpha"] = f.alpha;
        j["beta"] = f.beta;
        j["permutation"] = io::detail::one_based(f.permutation);
        text += ": " + to_string(f.condition) + ", witness " + detail::exponents(f.witness);
        if (f.alpha) text += ", gaps " + std::to_string(f.alpha) + "," + std::to_string(f.beta);
      }
      if (v.permutation_check_relaxed) text += " (gap-permutation condition decided over all integer exponents)";
      return {"genericity", j, text};
    }
    if (verb == "dimension") {
      const std::size_t depth = std::max<std::size_t>(o.gen, 2);
      const double estimate = box_count_estimate(ifs, depth);
      Json j{{"approximate", estimate}, {"depth", depth}};
      std::string text = "box-count estimate (approximate, depth " + std::to_string(depth) + "): " + std::to_string(estimate);
      if (detail::central(ifs) && 1 / ifs.ratios()[0] > 2) {
        const auto d = hausdorff_dimension_central(1 / ifs.ratios()[0]);
        j["closed_form"] = d.value;
        text += "\nlog 2 / log λ: " + std::to_string(d.value);
        if (d.exact) {
          j["exact"] = to_string(*d.exact);
          text += " (exactly " + to_string(*d.exact) + ")";
        }
      }
      return {"dimension", j, text};
    }
  }

  if (group == "elem") {
    auto element = [&](const std::string& path, const char* flag) { return io::element_from_json(load(path, flag)); };
    const std::string& main_path = o.elem.empty() ? o.file : o.elem;
    if (verb == "parse") {
      const Symbol raw = io::symbol_from_json(load(main_path, "elem"));
      const GroupElement e(raw, std::nullopt);
      return {"element", io::to_json(e),
              detail::symbol_text(e.symbol()) + "\nclass  " + to_string(e.variant()) + "\nreduced input: " + (raw == e.symbol() ? "yes" : "no")};
    }
    if (verb == "compose") {
      const GroupElement a = element(o.a, "a"), b = element(o.b, "b");
      const GroupElement c(compose_symbols(a.symbol(), b.symbol()), join(a.variant(), b.variant()));
      return {"element", io::to_json(c), detail::symbol_text(c.symbol())};
    }
    if (verb == "inverse") {
      const GroupElement e = inverse(element(main_path, "elem"));
      return {"element", io::to_json(e), detail::symbol_text(e.symbol())};
    }
    if (verb == "reduce") {
      const Symbol s = reduce(io::symbol_from_json(load(main_path, "elem")));
      return {"symbol", io::to_json(s), detail::symbol_text(s)};
    }
    if (verb == "classify") {
      const GroupElement e = element(main_path, "elem");
      return {"class", to_string(classify(e)), to_string(classify(e))};
    }
    if (verb == "abelianize") {
      const GroupElement e = element(main_path, "elem");
      const auto [u, v] = abelianization_F(e);
      return {"abelianization", {u, v}, "(" + std::to_string(u) + ", " + std::to_string(v) + ")"};
    }
    if (verb == "eval") {
      const GroupElement e = element(o.elem, "elem");
      const AffineIFS ifs = io::ifs_from_json(load(o.file, "file"));
      const Address a = io::address_from_json(load(o.point, "point"));
      const PLMap f = from_symbol(e, ifs);
      const Address image = apply(f, a);
      const Rational x = evaluate_address(ifs, a), y = evaluate_address(ifs, image);
      return {"evaluation", {{"point", io::to_json(a)}, {"image", io::to_json(image)}, {"x", to_string(x)}, {"y", to_string(y)}},
              a.to_string() + " -> " + image.to_string() + "\n" + to_string(x) + " -> " + to_string(y)};
    }
    if (verb == "render") {
      const Symbol s = io::symbol_from_json(load(main_path, "elem"));
      return {"symbol", io::to_json(s), detail::symbol_text(s), svg::render_symbol(s)};
    }
  }

  if (group == "germ") {
    if (verb == "compose") {
      const StandardGerm g = germ_compose(io::germ_from_json(load(o.a, "a")), io::germ_from_json(load(o.b, "b")));
      return {"germ", io::to_json(g), detail::germ_text(g)};
    }
    if (verb == "extend") {
      StandardGerm g = io::germ_from_json(load(o.elem.empty() ? o.file : o.elem, "elem"));
      Json chain = Json::array({io::to_json(g)});
      std::string text = detail::germ_text(g);
      while (auto next = germ_extend(g)) {
        g = *next;
        chain.push_back(io::to_json(g));
        text += " -> " + detail::germ_text(g);
      }
      return {"germ-extension", {{"chain", chain}, {"maximal", io::to_json(g)}}, text + " (maximal)"};
    }
    if (verb == "extend-multi") {
      const AffineIFS ifs = io::ifs_from_json(load(o.file, "file"));
      const MultiGerm mg = io::multigerm_from_json(load(o.elem, "elem"));
      if (!is_valid_multigerm(ifs, mg)) throw DomainError("input is not a valid multi-germ");
      std::size_t steps = 0;
      const MultiGerm out = extend_multigerm(ifs, mg, &steps);
      std::string text;
      for (const auto& g : out.germs) text += detail::germ_text(g) + " ";
      return {"multigerm", {{"result", io::to_json(out)}, {"steps", steps}}, text + "(" + std::to_string(steps) + " steps)"};
    }
  }

  if (group == "stab" && verb == "point") {
    const AffineIFS ifs = io::ifs_from_json(load(o.file, "file"));
    const Point p = io::point_from_json(load(o.point, "point"));
    const auto d = stabilizer(ifs, p);
    const auto kind = classify_point(ifs, p);
    Json j{{"kind", to_string(d.kind)}, {"point_type", to_string(kind)}, {"from_classification", d.from_classification}};
    std::string text = to_string(d.kind) + " (point type " + to_string(kind) + ")";
    if (d.generator) {
      const Rational value = ifs.scale(d.generator->scale);
      j["generator"] = io::to_json(d.generator->germ);
      j["scale"] = d.generator->scale.exponents();
      j["scale_value"] = to_string(value);
      text += "\ngenerator " + detail::germ_text(d.generator->germ) + ", scale " + to_string(value) + " = Λ" + detail::exponents(d.generator->scale);
    }
    return {"stabilizer", j, text};
  }

  if (group == "nv") {
    auto element = [&](const std::string& path, const char* flag) { return io::nv_from_json(load(path, flag)); };
    if (verb == "compose") {
      const NVElement c = compose_nv(element(o.a, "a"), element(o.b, "b"));
      return {"nv-element", io::to_json(c), detail::nv_text(c)};
    }
    if (verb == "inverse") {
      const NVElement e = inverse_nv(element(o.elem, "elem"));
      return {"nv-element", io::to_json(e), detail::nv_text(e)};
    }
    if (verb == "apply") {
      const DustAddress image = apply_nv(element(o.elem, "elem"), io::dust_from_json(load(o.point, "point")));
      return {"dust-address", io::to_json(image), detail::dust_text(image)};
    }
    if (verb == "rank") {
      const auto coords = io::point_tuple_from_json(load(o.point, "point"));
      Json j{{"rank", stabilizer_rank(coords)}};
      std::string text = "stabilizer rank " + std::to_string(stabilizer_rank(coords));
      if (!o.file.empty()) {
        const std::size_t k = tangent_hull_type(io::ifs_from_json(load(o.file, "file")), coords);
        j["hull_type"] = {{"k", k}, {"n", coords.size()}};
        text += "\ntangent hull type L_{" + std::to_string(k) + "," + std::to_string(coords.size()) + "}";
      }
      return {"nv-rank", j, text};
    }
    if (verb == "render") {
      const NVElement e = element(o.elem.empty() ? o.file : o.elem, "elem");
      return {"nv-element", io::to_json(e), detail::nv_text(e), svg::render_nv(e)};
    }
  }
  throw CLI::ValidationError("unknown command " + group + " " + verb);
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Thompson-like groups acting on affine Cantor sets"};
  app.require_subcommand(1);
  Options opts;
  std::vector<std::pair<std::string, CLI::App*>> leaves;

  const std::map<std::string, std::vector<std::string>> verbs{
      {"ifs", {"check", "gaps", "sparse", "genericity", "dimension"}},
      {"elem", {"parse", "compose", "inverse", "reduce", "classify", "abelianize", "eval", "render"}},
      {"germ", {"compose", "extend", "extend-multi"}},
      {"stab", {"point"}},
      {"nv", {"compose", "inverse", "apply", "rank", "render"}},
  };
  const std::map<std::string, std::string> blurbs{
      {"ifs", "affine IFS: validity, gaps, sparseness, genericity, dimension"},
      {"elem", "tree-pair elements of F, T, V and V±"},
      {"germ", "standard germs and multi-germs"},
      {"stab", "stabilizers of points"},
      {"nv", "higher-dimensional elements of nV"},
  };
  for (const auto& [group, names] : verbs) {
    CLI::App* g = app.add_subcommand(group, blurbs.at(group));
    g->require_subcommand(1);
    for (const auto& name : names) {
      CLI::App* v = g->add_subcommand(name);
      v->add_option("--file", opts.file, "IFS (or object) file");
      v->add_option("--a", opts.a, "first operand");
      v->add_option("--b", opts.b, "second operand");
      v->add_option("--elem", opts.elem, "element file");
      v->add_option("--point", opts.point, "point file");
      v->add_option("--gen", opts.gen, "generation / depth")->check(CLI::NonNegativeNumber);
      v->add_option("--out", opts.out, "output path");
      v->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"text", "json", "svg"}));
      leaves.emplace_back(group, v);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string group, verb;
  for (const auto& [g, v] : leaves)
    if (v->parsed()) {
      group = g;
      verb = v->get_name();
    }

  try {
    const auto r = dispatch(group, verb, opts);
    std::string body;
    if (opts.format == "svg") {
      if (!r.svg) {
        err << "error: " << group << " " << verb << " has no SVG rendering\n";
        return 2;
      }
      body = *r.svg;
    } else if (opts.format == "json") {
      body = io::document(r.kind, r.value).dump(2) + "\n";
    } else {
      body = r.text + "\n";
    }
    // render verbs write SVG whenever an output path is given.
    if (!opts.out.empty() && r.svg && opts.format != "json") body = *r.svg;
    if (opts.out.empty())
      out << body;
    else
      svg::write_file(opts.out, body);
    return 0;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace thompson_cantor::cli
