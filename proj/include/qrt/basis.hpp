#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qrt/rep.hpp"

namespace qrt {

/// A choice of basis for every vertex space: labels plus the change-of-basis
/// matrix whose columns are the new basis vectors in standard coordinates.
template <Field F>
struct IndexedBasis {
  std::map<std::string, std::vector<std::string>> labels;  // per vertex
  std::map<std::string, Matrix<F>> change;                 // per vertex, invertible

  void validate(const Representation<F>& m) const {
    std::set<std::string> all;
    for (const std::string& v : m.quiver.vertices) {
      const auto& lv = labels.at(v);
      if (lv.size() != m.dim(v))
        throw std::invalid_argument("basis: label count at " + v);
      change.at(v).require_shape(m.dim(v), m.dim(v));
      if (!inverse(change.at(v)))
        throw std::invalid_argument("basis: singular change matrix at " + v);
      for (const std::string& l : lv)
        if (!all.insert(l).second)
          throw std::invalid_argument("basis: duplicate label " + l);
    }
  }
};

template <Field F>
IndexedBasis<F> standard_basis(const Representation<F>& m) {
  IndexedBasis<F> b;
  for (const std::string& v : m.quiver.vertices) {
    b.labels[v];  // present even when the vertex space is zero
    for (std::size_t i = 0; i < m.dim(v); ++i)
      b.labels[v].push_back(v + "#" + std::to_string(i));
    b.change[v] = Matrix<F>::identity(m.dim(v), m.proto);
  }
  return b;
}

/// The arrow's matrix rewritten in the given bases: B_t^{-1} M_a B_s.
template <Field F>
Matrix<F> matrix_in_basis(const Representation<F>& m, const IndexedBasis<F>& b,
                          const std::string& arrow_id) {
  const Arrow& a = m.quiver.arrow(arrow_id);
  auto inv_t = inverse(b.change.at(a.tgt));
  if (!inv_t) throw std::invalid_argument("matrix_in_basis: singular basis");
  return *inv_t * m.mat(arrow_id) * b.change.at(a.src);
}

struct CoefficientNode {
  std::string label, vertex;
  friend bool operator==(const CoefficientNode&, const CoefficientNode&) =
      default;
};

struct CoefficientEdge {
  std::string from, to, arrow;
  std::string coeff;  // printed exactly; "1" for the common case
  friend bool operator==(const CoefficientEdge&, const CoefficientEdge&) =
      default;
};

/// Nonzero pattern of all arrow matrices in a basis: one node per basis
/// element, an edge b -> b' for each nonzero coefficient.
struct CoefficientQuiver {
  std::vector<CoefficientNode> nodes;  // sorted by label
  std::vector<CoefficientEdge> edges;  // sorted by (arrow, from, to)
};

template <Field F>
CoefficientQuiver coefficient_quiver(const Representation<F>& m,
                                     const IndexedBasis<F>& b) {
  b.validate(m);
  CoefficientQuiver g;
  for (const std::string& v : m.quiver.vertices)
    for (const std::string& l : b.labels.at(v)) g.nodes.push_back({l, v});
  std::sort(g.nodes.begin(), g.nodes.end(),
            [](auto& x, auto& y) { return x.label < y.label; });
  for (const Arrow& a : m.quiver.arrows) {
    Matrix<F> c = matrix_in_basis(m, b, a.id);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j)
        if (!c(i, j).is_zero())
          g.edges.push_back({b.labels.at(a.src)[j], b.labels.at(a.tgt)[i],
                             a.id, entry_str(c(i, j))});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](auto& x, auto& y) {
    return std::tie(x.arrow, x.from, x.to) < std::tie(y.arrow, y.from, y.to);
  });
  return g;
}

inline bool coefficient_quiver_connected(const CoefficientQuiver& g) {
  if (g.nodes.empty()) return true;
  std::map<std::string, std::vector<std::string>> adj;
  for (auto& e : g.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::set<std::string> seen{g.nodes[0].label};
  std::vector<std::string> stack{g.nodes[0].label};
  while (!stack.empty()) {
    std::string v = stack.back();
    stack.pop_back();
    for (auto& w : adj[v])
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen.size() == g.nodes.size();
}

/// True iff the coefficient quiver is a tree: connected with exactly
/// (total dim - 1) edges.
template <Field F>
bool is_tree_basis(const Representation<F>& m, const IndexedBasis<F>& b) {
  CoefficientQuiver g = coefficient_quiver(m, b);
  if (g.nodes.empty()) return false;
  return g.edges.size() + 1 == g.nodes.size() &&
         coefficient_quiver_connected(g);
}

/// Deterministic DOT export: nodes sorted by label (labelled with their
/// quiver vertex), edges labelled by arrow id, coefficient appended when
/// it differs from 1.
inline std::string to_dot(const CoefficientQuiver& g) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (auto& n : g.nodes)
    out << "  \"" << n.label << "\" [label=\"" << n.vertex << "\"];\n";
  for (auto& e : g.edges) {
    out << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.arrow;
    if (e.coeff != "1") out << " (" << e.coeff << ")";
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

inline nlohmann::json to_json(const CoefficientQuiver& g) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (auto& n : g.nodes)
    j["nodes"].push_back({{"label", n.label}, {"vertex", n.vertex}});
  j["edges"] = nlohmann::json::array();
  for (auto& e : g.edges)
    j["edges"].push_back({{"from", e.from},
                          {"to", e.to},
                          {"arrow", e.arrow},
                          {"coeff", e.coeff}});
  return j;
}

}  // namespace qrt
