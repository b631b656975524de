#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qrt/basis.hpp"
#include "qrt/rep.hpp"

namespace qrt {

/// Rooted tree mapping onto the quiver: nodes carry quiver vertices, edges
/// carry quiver arrows with matching direction (from = arrow source side).
struct RadiationTree {
  std::string root;                    // root node label
  std::vector<CoefficientNode> nodes;  // label -> quiver vertex
  std::vector<CoefficientEdge> edges;  // coeff always "1"
};

inline nlohmann::json to_json(const RadiationTree& t) {
  nlohmann::json j;
  j["root"] = t.root;
  j["nodes"] = nlohmann::json::array();
  for (auto& n : t.nodes)
    j["nodes"].push_back({{"label", n.label}, {"vertex", n.vertex}});
  j["edges"] = nlohmann::json::array();
  for (auto& e : t.edges)
    j["edges"].push_back(
        {{"from", e.from}, {"to", e.to}, {"arrow", e.arrow}});
  return j;
}

inline CoefficientQuiver as_coefficient_quiver(const RadiationTree& t) {
  CoefficientQuiver g;
  g.nodes = t.nodes;
  g.edges = t.edges;
  std::sort(g.nodes.begin(), g.nodes.end(),
            [](auto& x, auto& y) { return x.label < y.label; });
  std::sort(g.edges.begin(), g.edges.end(), [](auto& x, auto& y) {
    return std::tie(x.arrow, x.from, x.to) < std::tie(y.arrow, y.from, y.to);
  });
  return g;
}

struct ThinSummand {
  RepFp rep;             // over Q^x
  std::size_t mult;
  std::string neighbor;  // unique neighbor of x in the support ("" if none)
  DimVector dims_full;   // over the full quiver, zero at x
};

struct ThinAnalysis {
  std::string origin;
  std::vector<ThinSummand> summands;
  bool orthogonal = false;          // pairwise Hom = 0 between classes
  bool exceptional_family = false;  // Ext^1(N(i),N(j)) = 0 for all i,j
  bool thin_connectors = false;     // all dim N(i)_{y(i)} = 1
};

namespace detail {

inline std::vector<std::string> support(const RepFp& m) {
  std::vector<std::string> s;
  for (auto& [v, d] : m.dims)
    if (d > 0) s.push_back(v);
  return s;
}

/// The unique neighbor of x (in q) lying in the summand's support, going
/// through the tree structure: all support vertices of one summand lie in a
/// single component of q minus x, and that component meets N(x) once.
inline std::string connector(const Quiver& q, const std::string& x,
                             const RepFp& n) {
  std::string found;
  for (const std::string& y : q.neighbors(x))
    for (auto& [v, d] : n.dims)
      if (v == y && d > 0) {
        if (!found.empty() && found != y) return "";  // not unique
        found = y;
      }
  return found;
}

}  // namespace detail

/// Decomposes the restriction of m to Q^x and reports the family structure
/// at the thin vertex x.
inline ThinAnalysis analyze_thin_vertex(const RepFp& m, const std::string& x,
                                        std::uint64_t seed = 0) {
  if (!underlying_is_tree(m.quiver))
    throw std::invalid_argument("analyze_thin_vertex: not a tree quiver");
  if (m.dim(x) != 1)
    throw std::invalid_argument("analyze_thin_vertex: " + x + " is not thin");
  ThinAnalysis out;
  out.origin = x;
  auto del = delete_vertex(m.quiver, x);
  RepFp rest = restrict_rep(m, del.rest);
  auto classes = group_by_iso(decompose(rest, seed), seed);
  for (auto& [rep, mult] : classes) {
    ThinSummand s;
    s.rep = rep;
    s.mult = mult;
    s.neighbor = detail::connector(m.quiver, x, rep);
    for (const std::string& v : m.quiver.vertices)
      s.dims_full[v] = v == x ? 0 : rep.dim(v);
    out.summands.push_back(std::move(s));
  }
  std::sort(out.summands.begin(), out.summands.end(), [](auto& a, auto& b) {
    return std::tie(a.dims_full, a.neighbor) <
           std::tie(b.dims_full, b.neighbor);
  });
  out.orthogonal = true;
  out.exceptional_family = true;
  out.thin_connectors = true;
  for (std::size_t i = 0; i < out.summands.size(); ++i) {
    const RepFp& ni = out.summands[i].rep;
    if (out.summands[i].mult > 1) out.orthogonal = false;
    if (out.summands[i].neighbor.empty() ||
        ni.dim(out.summands[i].neighbor) != 1)
      out.thin_connectors = false;
    for (std::size_t j = 0; j < out.summands.size(); ++j) {
      const RepFp& nj = out.summands[j].rep;
      if (i != j && hom_dim(ni, nj) != 0) out.orthogonal = false;
      if (ext1_dim(ni, nj) != 0) out.exceptional_family = false;
    }
  }
  return out;
}

struct RadiationResult {
  RadiationTree tree;
  IndexedBasis<Fp> basis;
};

namespace detail {

/// Recursive worker: checks the radiation conditions at (m, x) and, on
/// success, produces the radiation tree together with basis columns (in the
/// coordinates of m) whose coefficient quiver is exactly that tree. The
/// basis vector at x is the given seed.
inline std::optional<RadiationResult> radiation_worker(
    const RepFp& m, const std::string& x, const std::vector<Fp>& seed,
    std::size_t& counter, std::uint64_t rng_seed) {
  if (m.dim(x) != 1 || seed.size() != 1 || seed[0].is_zero()) return {};
  RadiationResult res;
  std::string root = x + "~" + std::to_string(counter++);
  res.tree.root = root;
  res.tree.nodes.push_back({root, x});
  for (const std::string& v : m.quiver.vertices) {
    res.basis.labels[v];
    res.basis.change[v] = Matrix<Fp>(m.dim(v), 0, m.proto);
  }
  auto push_column = [&](const std::string& v, const std::string& label,
                         const std::vector<Fp>& col) {
    Matrix<Fp>& c = res.basis.change[v];
    Matrix<Fp> wider(m.dim(v), c.cols() + 1, m.proto);
    for (std::size_t i = 0; i < m.dim(v); ++i) {
      for (std::size_t j = 0; j < c.cols(); ++j) wider(i, j) = c(i, j);
      wider(i, c.cols()) = col[i];
    }
    c = std::move(wider);
    res.basis.labels[v].push_back(label);
  };
  push_column(x, root, seed);

  auto del = delete_vertex(m.quiver, x);
  RepFp rest = restrict_rep(m, del.rest);
  if (rest.is_zero()) {
    for (auto& [v, d] : m.dims)
      if (v != x && d != 0) return {};  // disconnected junk
    return res;
  }
  auto parts = decompose(rest, rng_seed);
  // pairwise orthogonality of the summands
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (i != j && hom_dim(parts[i].rep, parts[j].rep) != 0) return {};

  DimVector covered;
  for (const std::string& v : m.quiver.vertices) covered[v] = v == x ? 1 : 0;

  for (auto& part : parts) {
    std::string y = connector(m.quiver, x, part.rep);
    if (y.empty() || part.rep.dim(y) != 1) return {};
    // the unique arrow joining x and y
    const Arrow* alpha = nullptr;
    for (const Arrow& a : m.quiver.arrows)
      if ((a.src == x && a.tgt == y) || (a.src == y && a.tgt == x))
        alpha = &a;
    if (!alpha) return {};
    bool x_is_source = alpha->src == x;

    // seed for the child at y, in the child's own coordinates
    std::vector<Fp> w(1, m.proto);
    if (x_is_source) {
      // component of M_alpha(seed) inside this summand
      auto img = m.mat(alpha->id).apply(
          std::vector<Fp>{seed[0]});
      w = part.proj.at(y).apply(img);
      if (w[0].is_zero()) return {};
    } else {
      // normalize so that the connecting coefficient is exactly 1
      w[0] = Fp(1, m.proto.p);
      auto img = m.mat(alpha->id).apply(part.emb.at(y).apply(w));
      // img = c * seed in the one-dimensional space at x
      Fp c = img[0] / seed[0];
      if (c.is_zero()) return {};
      w[0] = c.inv();
    }

    // recurse on the summand over its component subquiver
    const std::vector<std::string>* comp = nullptr;
    for (auto& cvs : del.components)
      if (std::binary_search(cvs.begin(), cvs.end(), y)) comp = &cvs;
    if (!comp) return {};
    for (auto& [v, d] : part.rep.dims)
      if (d > 0 && !std::binary_search(comp->begin(), comp->end(), v))
        return {};  // summand crosses components: impossible for a subrep
    Quiver cq = full_subquiver(del.rest,
                               std::set<std::string>(comp->begin(), comp->end()));
    RepFp child = restrict_rep(part.rep, cq);
    auto sub = radiation_worker(child, y, w, counter, rng_seed);
    if (!sub) return {};

    // splice the child's tree under the root
    res.tree.nodes.insert(res.tree.nodes.end(), sub->tree.nodes.begin(),
                          sub->tree.nodes.end());
    res.tree.edges.insert(res.tree.edges.end(), sub->tree.edges.begin(),
                          sub->tree.edges.end());
    if (x_is_source)
      res.tree.edges.push_back({root, sub->tree.root, alpha->id, "1"});
    else
      res.tree.edges.push_back({sub->tree.root, root, alpha->id, "1"});

    // map the child's basis columns through the summand embedding
    for (const std::string& v : cq.vertices) {
      const Matrix<Fp>& cols = sub->basis.change.at(v);
      for (std::size_t j = 0; j < cols.cols(); ++j) {
        std::vector<Fp> col(child.dim(v), m.proto);
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = cols(i, j);
        push_column(v, sub->basis.labels.at(v)[j],
                    part.emb.at(v).apply(col));
      }
      covered[v] += cols.cols();
    }
  }
  for (const std::string& v : m.quiver.vertices)
    if (covered[v] != m.dim(v)) return {};  // basis incomplete
  return res;
}

}  // namespace detail

/// Radiation-module recognition at a thin vertex; returns the radiation tree
/// R(M,x) on success.
inline std::pair<bool, std::optional<RadiationTree>> is_radiation(
    const RepFp& m, const std::string& x, std::uint64_t seed = 0) {
  if (!underlying_is_tree(m.quiver))
    throw std::invalid_argument("is_radiation: not a tree quiver");
  if (!m.quiver.has_vertex(x)) throw std::out_of_range("is_radiation: " + x);
  if (m.dim(x) != 1)
    throw std::invalid_argument("is_radiation: " + x + " is not thin");
  std::size_t counter = 0;
  std::vector<Fp> unit{Fp(1, m.proto.p)};
  auto r = detail::radiation_worker(m, x, unit, counter, seed);
  if (!r) return {false, std::nullopt};
  return {true, r->tree};
}

/// A basis containing the given seed vector at x whose coefficient quiver is
/// exactly R(M,x).
inline IndexedBasis<Fp> radiation_basis(const RepFp& m, const std::string& x,
                                        const std::vector<Fp>& seed,
                                        std::uint64_t rng_seed = 0) {
  std::size_t counter = 0;
  auto r = detail::radiation_worker(m, x, seed, counter, rng_seed);
  if (!r)
    throw std::invalid_argument("radiation_basis: not a radiation module");
  r->basis.validate(m);
  return r->basis;
}

/// Child handed to radiation_build: a radiation module over the ambient
/// quiver (zero at x and away from its component), with its origin.
struct RadiationChild {
  RepFp rep;
  std::string origin;
};

/// Builds the radiation module with thin top at x from pairwise orthogonal
/// children: M_x = k, restriction = direct sum of the children, and each
/// connecting arrow hits the child origin coordinate with coefficient 1.
inline RepFp radiation_build(const Quiver& q, const std::string& x,
                             const std::vector<RadiationChild>& children,
                             Fp proto) {
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].rep.dim(x) != 0)
      throw std::invalid_argument("radiation_build: child supported at x");
    if (children[i].rep.dim(children[i].origin) != 1)
      throw std::invalid_argument("radiation_build: origin not thin");
    for (std::size_t j = 0; j < children.size(); ++j)
      if (i != j && hom_dim(children[i].rep, children[j].rep) != 0)
        throw std::invalid_argument("radiation_build: children not orthogonal");
  }
  DimVector d;
  for (const std::string& v : q.vertices) {
    d[v] = v == x ? 1 : 0;
    for (auto& c : children) d[v] += v == x ? 0 : c.rep.dim(v);
  }
  // block offsets of each child inside the direct sum, per vertex
  std::vector<DimVector> offset(children.size());
  for (const std::string& v : q.vertices) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < children.size(); ++i) {
      offset[i][v] = o;
      o += children[i].rep.dim(v);
    }
  }
  std::map<std::string, Matrix<Fp>> mats;
  for (const Arrow& a : q.arrows) {
    Matrix<Fp> blk(d[a.tgt], d[a.src], proto);
    if (a.src != x && a.tgt != x) {
      for (std::size_t i = 0; i < children.size(); ++i) {
        const Matrix<Fp>& cm = children[i].rep.mat(a.id);
        for (std::size_t r = 0; r < cm.rows(); ++r)
          for (std::size_t c = 0; c < cm.cols(); ++c)
            blk(offset[i][a.tgt] + r, offset[i][a.src] + c) = cm(r, c);
      }
    } else {
      const std::string& y = a.src == x ? a.tgt : a.src;
      for (std::size_t i = 0; i < children.size(); ++i)
        if (children[i].origin == y && children[i].rep.dim(y) > 0) {
          if (a.src == x)
            blk(offset[i][y], 0) = Fp(1, proto.p);
          else
            blk(0, offset[i][y]) = Fp(1, proto.p);
        }
    }
    mats[a.id] = std::move(blk);
  }
  return RepFp(q, std::move(d), std::move(mats), proto);
}

/// Prop-3 structure report on the radiation basis at x.
struct Prop3Report {
  bool ok = true;
  std::vector<std::string> violations;
};

inline Prop3Report verify_prop3(const RepFp& m, const std::string& x,
                                std::uint64_t seed = 0) {
  Prop3Report rep;
  auto complain = [&](const std::string& s) {
    rep.ok = false;
    rep.violations.push_back(s);
  };
  IndexedBasis<Fp> b;
  try {
    b = radiation_basis(m, x, {Fp(1, m.proto.p)}, seed);
  } catch (const std::exception& e) {
    complain(std::string("no radiation basis: ") + e.what());
    return rep;
  }
  CoefficientQuiver g = coefficient_quiver(m, b);
  auto dist = distances_from(m.quiver, x);
  for (const Arrow& a : m.quiver.arrows) {
    std::string y = a.src, z = a.tgt;
    if (dist[y] > dist[z]) std::swap(y, z);  // z is farther from x
    const auto& by = b.labels.at(y);
    const auto& bz = b.labels.at(z);
    // neighbor counts across this quiver edge
    std::map<std::string, std::size_t> deg;
    std::size_t edge_count = 0;
    for (auto& e : g.edges)
      if (e.arrow == a.id) {
        ++deg[e.from];
        ++deg[e.to];
        ++edge_count;
      }
    for (auto& l : bz)
      if (deg[l] != 1)
        complain("element " + l + " has " + std::to_string(deg[l]) +
                 " neighbors across " + a.id);
    if (by.size() <= bz.size())
      for (auto& l : by)
        if (deg[l] < 1) complain("element " + l + " unmatched across " + a.id);
    if (by.size() >= bz.size())
      for (auto& l : by)
        if (deg[l] > 1)
          complain("element " + l + " doubly matched across " + a.id);
    if (edge_count != bz.size())
      complain("arrow " + a.id + ": " + std::to_string(edge_count) +
               " edges, expected " + std::to_string(bz.size()));
    if (by.size() == bz.size()) {
      // identity after reordering: permutation pattern with coefficient 1
      Matrix<Fp> c = matrix_in_basis(m, b, a.id);
      std::size_t nonzero = 0;
      bool units = true;
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j)
          if (!c(i, j).is_zero()) {
            ++nonzero;
            if (!(c(i, j) == Fp(1, m.proto.p))) units = false;
          }
      if (nonzero != by.size() || !units)
        complain("arrow " + a.id + " not a permutation in the basis");
    }
  }
  return rep;
}

}  // namespace qrt
