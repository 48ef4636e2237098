// Text renderings of Loewy diagrams: plain rows and LaTeX/TikZ matrices in
// the stacked-row style, optionally with dashed outlines around each placed
// Weyl-module block.
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tiltchar/balance.hpp"
#include "tiltchar/diagram.hpp"

namespace tiltchar {

/// One row per offset from the most negative to the most positive, labels
/// space-separated in ascending label order:
///   -1 | 0
///    0 | e 01
///    1 | 0
template <class Label, class Order>
std::string render_ascii(const LoewyDiagram<Label, Order>& d,
                         const std::function<std::string(const Label&)>& name) {
  std::ostringstream os;
  if (d.empty()) return "(empty)\n";
  const int lo = d.layers().begin()->first;
  const int hi = d.layers().rbegin()->first;
  std::size_t width = 1;
  for (int off = lo; off <= hi; ++off) width = std::max(width, std::to_string(off).size());
  for (int off = lo; off <= hi; ++off) {
    std::string num = std::to_string(off);
    os << std::string(width - num.size(), ' ') << num << " |";
    for (const auto& [label, m] : d.layer(off))
      for (Integer r = 0; r < m; ++r) os << " " << name(label);
    os << "\n";
  }
  return os.str();
}

namespace detail {

inline std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#') out += '\\';
    out += c;
  }
  return out;
}

struct LatexCell {
  int row;
  int col;
  std::string text;
};

inline std::string latex_matrix(int rows, int cols, const std::vector<LatexCell>& cells,
                                const std::vector<std::string>& extra) {
  std::vector<std::vector<std::string>> grid(rows, std::vector<std::string>(cols));
  for (const auto& c : cells) grid[c.row][c.col] = c.text;
  std::ostringstream os;
  os << "\\begin{tikzpicture}[baseline]\n"
     << "\\tikzstyle{weylcircles}=[gray, thin, dashed]\n"
     << "\\matrix(m)[matrix of math nodes, nodes in empty cells,\n"
     << "  row sep=1em, column sep=0.75em,\n"
     << "  text height=0.75ex, text depth=0.125ex, ampersand replacement=\\&, font=\\scriptsize]\n"
     << "{\n";
  for (const auto& row : grid) {
    os << "   ";
    for (int c = 0; c < cols; ++c) os << (c ? " \\& " : " ") << row[c];
    os << " \\\\\n";
  }
  os << "};\n";
  for (const auto& e : extra) os << e << "\n";
  os << "\\end{tikzpicture}\n";
  return os.str();
}

}  // namespace detail

/// Stacked rows, one per layer, labels left-aligned in ascending order.
template <class Label, class Order>
std::string render_latex(const LoewyDiagram<Label, Order>& d,
                         const std::function<std::string(const Label&)>& name) {
  if (d.empty()) return detail::latex_matrix(1, 1, {}, {});
  const int lo = d.layers().begin()->first;
  const int hi = d.layers().rbegin()->first;
  std::vector<detail::LatexCell> cells;
  int cols = 1;
  for (int off = lo; off <= hi; ++off) {
    int c = 0;
    for (const auto& [label, m] : d.layer(off))
      for (Integer r = 0; r < m; ++r) cells.push_back({off - lo, c++, detail::latex_escape(name(label))});
    cols = std::max(cols, c);
  }
  return detail::latex_matrix(hi - lo + 1, cols, cells, {});
}

/// Block layout: each traced block gets its own group of columns (first
/// block rightmost). With `outline`, a dashed box is drawn around each block.
template <class Label, class Order>
std::string render_latex_blocks(const BalanceState<Label, Order>& state,
                                const BlockMap<Label, Order>& blocks,
                                const std::function<std::string(const Label&)>& name,
                                bool outline) {
  if (state.layers.empty()) return detail::latex_matrix(1, 1, {}, {});
  const int lo = state.layers.layers().begin()->first;
  const int hi = state.layers.layers().rbegin()->first;
  struct Group {
    int head;
    int first_col;
    int width;
    int depth;
    const ParityBlock<Label>* block;
  };
  std::vector<Group> groups;
  int cols = 0;
  for (auto it = state.trace.rbegin(); it != state.trace.rend(); ++it) {
    const auto& block = blocks.at(it->label);
    int width = 1;
    for (const auto& layer : block.layers) width = std::max(width, static_cast<int>(layer.size()));
    groups.push_back({it->head_offset, cols, width, static_cast<int>(block.layers.size()), &block});
    cols += width;
  }
  std::vector<detail::LatexCell> cells;
  std::vector<std::string> extra;
  for (const auto& g : groups) {
    for (int dpt = 0; dpt < g.depth; ++dpt) {
      auto layer = g.block->layers[dpt];
      std::sort(layer.begin(), layer.end(), blocks.key_comp());
      for (std::size_t i = 0; i < layer.size(); ++i)
        cells.push_back({g.head + dpt - lo, g.first_col + static_cast<int>(i),
                         detail::latex_escape(name(layer[i]))});
    }
    if (outline) {
      std::ostringstream os;
      os << "\\draw[weylcircles, rounded corners] (m-" << (g.head - lo + 1) << "-"
         << (g.first_col + 1) << ".north west) rectangle (m-" << (g.head + g.depth - lo) << "-"
         << (g.first_col + g.width) << ".south east);";
      extra.push_back(os.str());
    }
  }
  return detail::latex_matrix(hi - lo + 1, cols, cells, extra);
}

}  // namespace tiltchar
