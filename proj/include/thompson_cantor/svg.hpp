#pragma once

// Deterministic standalone SVG renderings: IFS generations as bars, tree
// pairs as diagrams, 2-dimensional patterns as rectangle tilings.

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "cantor_model.hpp"
#include "nv_patterns.hpp"
#include "tree_calculus.hpp"

namespace thompson_cantor::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" viewBox=\"0 0 " +
         num(w) + " " + num(h) + "\">\n";
}

inline std::string rect(double x, double y, double w, double h, const char* style) {
  return "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" " + style +
         "/>\n";
}

inline std::string line(double x1, double y1, double x2, double y2) {
  return "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
         "\" stroke=\"black\"/>\n";
}

inline std::string text(double x, double y, const std::string& s) {
  return "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"12\" text-anchor=\"middle\">" + s + "</text>\n";
}

// Dyadic interval named by a binary word, as [lo, lo + width].
inline std::pair<double, double> dyadic(const Word& w) {
  double lo = 0, width = 1;
  for (const Letter l : w) {
    width /= 2;
    lo += l * width;
  }
  return {lo, width};
}

inline std::string tree_body(const Tree& t, double x0, double width, double y0, const std::vector<std::string>& labels) {
  std::map<Word, std::pair<double, std::size_t>> nodes;  // prefix -> (sum of leaf x, leaf count)
  const double step = width / static_cast<double>(t.leaf_count());
  for (std::size_t i = 0; i < t.leaf_count(); ++i) {
    const Word& w = t.leaf(i);
    const double x = x0 + step * (static_cast<double>(i) + 0.5);
    for (std::size_t k = 0; k <= w.size(); ++k) {
      auto& n = nodes[Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k))];
      n.first += x;
      ++n.second;
    }
  }
  auto pos = [&](const Word& w) {
    const auto& n = nodes.at(w);
    return std::pair{n.first / static_cast<double>(n.second), y0 + 30.0 * static_cast<double>(w.size())};
  };
  std::string out;
  for (const auto& [w, n] : nodes) {
    if (w.empty()) continue;
    const auto [x1, y1] = pos(Word(w.begin(), w.end() - 1));
    const auto [x2, y2] = pos(w);
    out += line(x1, y1, x2, y2);
  }
  for (std::size_t i = 0; i < t.leaf_count(); ++i) {
    const auto [x, y] = pos(t.leaf(i));
    out += "  <circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3\" class=\"leaf\"/>\n";
    out += text(x, y + 16, labels[i]);
  }
  return out;
}

}  // namespace detail

/// Generations 0..g of the attractor as rows of bars.
inline std::string render_ifs(const AffineIFS& ifs, std::size_t generations) {
  const double width = 800, row = 24;
  std::string out = detail::header(width + 20, row * static_cast<double>(generations + 1) + 10);
  for (std::size_t g = 0; g <= generations; ++g) {
    for (const auto& w : words_of_length(ifs.alphabet_size(), g)) {
      const auto iv = standard_interval(ifs, w);
      out += detail::rect(10 + width * to_double(iv.lo), 10 + row * static_cast<double>(g), width * to_double(iv.length()),
                          row * 0.6, "class=\"interval\" fill=\"black\"");
    }
  }
  return out + "</svg>\n";
}

/// Source tree on the left, target tree on the right, leaves numbered so
/// that source leaf i carries the label of its image.
inline std::string render_symbol(const Symbol& s) {
  const double half = 300;
  std::size_t depth = 0;
  for (const auto* t : {&s.source, &s.target})
    for (std::size_t i = 0; i < t->leaf_count(); ++i) depth = std::max(depth, t->leaf(i).size());
  std::string out = detail::header(2 * half + 40, 30.0 * static_cast<double>(depth) + 60);
  std::vector<std::string> src_labels(s.leaf_count()), tgt_labels(s.leaf_count());
  for (std::size_t i = 0; i < s.leaf_count(); ++i) {
    src_labels[i] = std::to_string(i + 1) + (s.flips[i] ? "*" : "");
    tgt_labels[s.perm[i]] = std::to_string(i + 1);
  }
  out += detail::tree_body(s.source, 10, half, 15, src_labels);
  out += detail::tree_body(s.target, half + 30, half, 15, tgt_labels);
  return out + "</svg>\n";
}

namespace detail {

inline std::string pattern_body(const PatternTree& p, double x0, double size, const std::vector<std::string>& labels) {
  if (p.dimension() != 2) throw DomainError("rectangle rendering needs a 2-dimensional pattern");
  std::string out;
  const auto boxes = p.leaf_words();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto [x, w] = dyadic(boxes[i][0]);
    const auto [y, h] = dyadic(boxes[i][1]);
    // Axis 2 grows upward.
    const double top = 10 + size * (1 - y - h);
    out += rect(x0 + size * x, top, size * w, size * h, "class=\"cell\" fill=\"none\" stroke=\"black\"");
    if (!labels.empty()) out += text(x0 + size * (x + w / 2), top + size * h / 2 + 4, labels[i]);
  }
  return out;
}

}  // namespace detail

inline std::string render_pattern(const PatternTree& p) {
  const double size = 400;
  return detail::header(size + 20, size + 20) + detail::pattern_body(p, 10, size, {}) + "</svg>\n";
}

inline std::string render_nv(const NVElement& e) {
  const double size = 300;
  std::vector<std::string> src(e.leaf_count()), tgt(e.leaf_count());
  for (std::size_t i = 0; i < e.leaf_count(); ++i) {
    src[i] = std::to_string(i + 1);
    tgt[e.perm()[i]] = std::to_string(i + 1) + (e.syms()[i].is_identity() ? "" : "*");
  }
  return detail::header(2 * size + 40, size + 20) + detail::pattern_body(e.source(), 10, size, src) +
         detail::pattern_body(e.target(), size + 30, size, tgt) + "</svg>\n";
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << content;
  if (!out) throw DomainError("write failed for " + path);
}

}  // namespace thompson_cantor::svg
