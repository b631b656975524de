#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qrt/dynkin.hpp"
#include "qrt/radiation.hpp"

namespace qrt {

inline Quiver opposite_quiver(const Quiver& q) {
  std::vector<Arrow> as;
  for (const Arrow& a : q.arrows) as.push_back({a.id, a.tgt, a.src});
  return Quiver(q.vertices, as);
}

namespace detail {

/// Guards the (x,t) pair on a finite truncation of a leafless bipartite
/// tree: parity (x sink for even t, source for odd t) and enough room so
/// that every vertex the construction reflects at keeps its full
/// neighborhood inside the host.
inline void check_preprojective_spec(const Quiver& host, const std::string& x,
                                     std::size_t t) {
  if (!underlying_is_tree(host))
    throw std::invalid_argument("preprojective: host is not a tree");
  bipartite_classes(host);  // throws when not bipartite
  if (!host.has_vertex(x)) throw std::out_of_range("preprojective: " + x);
  if (t % 2 == 0 && !host.is_sink(x))
    throw std::invalid_argument("preprojective: even t needs a sink center");
  if (t % 2 == 1 && !host.is_source(x))
    throw std::invalid_argument("preprojective: odd t needs a source center");
  auto dist = distances_from(host, x);
  for (const std::string& v : host.vertices)
    if (dist.count(v) && dist.at(v) + 1 <= t && host.neighbors(v).size() < 2)
      throw std::invalid_argument(
          "preprojective: host truncation too small (leaf at distance " +
          std::to_string(dist.at(v)) + ")");
}

}  // namespace detail

/// P(x,t) by t applications of the source-reflection composite: the walk
/// starts with the simple at x (over the opposite quiver when t is odd, so
/// that x starts out as a sink) and lands back on the host orientation.
inline RepFp preprojective_rep(const Quiver& host, const std::string& x,
                               std::size_t t, Fp proto = Fp(kDefaultPrime)) {
  detail::check_preprojective_spec(host, x, t);
  RepFp r = simple_rep(t % 2 == 0 ? host : opposite_quiver(host), x, proto);
  for (std::size_t i = 0; i < t; ++i) r = rho_minus(r);
  return r;
}

struct Preprojective {
  RepFp rep;
  std::string origin;  // y with d(x,y) = t-1 (x itself when t = 0)
  RadiationTree tree;
  IndexedBasis<Fp> basis;
};

/// P(x,t) together with a radiation basis rooted at a vertex y on the
/// next-to-last shell.
inline Preprojective preprojective(const Quiver& host, const std::string& x,
                                   std::size_t t, std::uint64_t seed = 0,
                                   Fp proto = Fp(kDefaultPrime)) {
  Preprojective out;
  out.rep = preprojective_rep(host, x, t, proto);
  auto dist = distances_from(host, x);
  out.origin = x;
  if (t >= 1) {
    out.origin.clear();
    for (const std::string& v : host.vertices)
      if (dist.count(v) && dist.at(v) + 1 == t) {
        out.origin = v;
        break;
      }
  }
  auto rad = is_radiation(out.rep, out.origin, seed);
  if (!rad.first)
    throw std::logic_error("preprojective: radiation test failed at origin");
  out.tree = std::move(*rad.second);
  out.basis = radiation_basis(out.rep, out.origin, {Fp(1, proto.p)}, seed);
  return out;
}

/// Independent construction of P(x,t) without reflection functors: glue the
/// kernel summands P(z, t - d(x,z)), z running over the path neighborhood
/// N([x,y]) with d(x,y) = t-1, below a thin top at y.
inline RepFp preprojective_recursive(const Quiver& host, const std::string& x,
                                     std::size_t t,
                                     Fp proto = Fp(kDefaultPrime)) {
  detail::check_preprojective_spec(host, x, t);
  if (t == 0) return simple_rep(host, x, proto);
  auto dist = distances_from(host, x);
  std::string y;
  for (const std::string& v : host.vertices)
    if (dist.count(v) && dist.at(v) + 1 == t) {
      y = v;
      break;
    }
  if (y.empty())
    throw std::invalid_argument("preprojective_recursive: shell t-1 empty");
  std::vector<RadiationChild> children;
  for (const std::string& z : centipede(host, x, y)) {
    RadiationChild c;
    c.rep = preprojective_recursive(host, z, t - dist.at(z), proto);
    c.origin = detail::connector(host, y, c.rep);
    children.push_back(std::move(c));
  }
  return radiation_build(host, y, children, proto);
}

/// Vertexwise dimension additivity of the sequences
///   0 -> P(x,t) -> (+)_{y in N(x)} P(y,t+1) -> P(x,t+2) -> 0.
inline bool ar_dimension_check(const Quiver& host, const std::string& x,
                               std::size_t t, Fp proto = Fp(kDefaultPrime)) {
  DimVector lhs = preprojective_rep(host, x, t, proto).dims;
  for (auto& [v, d] : preprojective_rep(host, x, t + 2, proto).dims)
    lhs[v] += d;
  DimVector rhs;
  for (const std::string& v : host.vertices) rhs[v] = 0;
  for (const std::string& y : host.neighbors(x))
    for (auto& [v, d] : preprojective_rep(host, y, t + 1, proto).dims)
      rhs[v] += d;
  return lhs == rhs;
}

/// Orthogonality and extension dimensions of the pair S(y), P(z,d(y,z)-1)
/// for a source y: Hom vanishes both ways, Ext^1 into the simple vanishes,
/// and Ext^1(S(y), P) is one-dimensional.
inline bool lemma5_check(const Quiver& host, const std::string& y,
                         const std::string& z,
                         Fp proto = Fp(kDefaultPrime)) {
  if (!host.is_source(y)) throw std::invalid_argument("lemma5: y not a source");
  if (y == z) throw std::invalid_argument("lemma5: need z != y");
  std::size_t d = distance(host, y, z);
  RepFp p = preprojective_rep(host, z, d - 1, proto);
  RepFp sy = simple_rep(host, y, proto);
  return hom_dim(sy, p) == 0 && hom_dim(p, sy) == 0 &&
         ext1_dim_cocycle(p, sy) == 0 && ext1_dim_cocycle(sy, p) == 1 &&
         ext1_dim(sy, p) == 1;
}

struct Prop7Report {
  bool ok = true;
  RepFp total;   // P(x,t), t = d(x,y)+1
  RepFp kernel;  // restriction to the complement of y
  std::vector<std::pair<std::string, std::size_t>> expected;  // (z, t-d(x,z))
  bool summands_match = false;     // kernel decomposes as the expected sum
  bool orthogonal_bricks = false;  // pairwise orthogonal, End = k
  bool exceptional_family = false; // all Ext^1 between summands vanish
};

/// The kernel of the coordinate projection P(x,t) -> S(y) (y a source on
/// the shell t-1), decomposed and compared against the predicted direct sum
/// over the path neighborhood N([x,y]).
inline Prop7Report prop7_sequence(const Quiver& host, const std::string& x,
                                  const std::string& y,
                                  std::uint64_t seed = 0,
                                  Fp proto = Fp(kDefaultPrime)) {
  if (!host.is_source(y))
    throw std::invalid_argument("prop7: y is not a source");
  const std::size_t t = distance(host, x, y) + 1;
  Prop7Report rep;
  rep.total = preprojective_rep(host, x, t, proto);
  if (rep.total.dim(y) != 1)
    throw std::logic_error("prop7: P(x,t) is not thin at y");

  // y is a source, so killing the y-coordinate leaves a submodule
  rep.kernel = rep.total;
  rep.kernel.dims[y] = 0;
  for (const Arrow* a : host.arrows_out(y))
    rep.kernel.mats[a->id] = Matrix<Fp>(rep.kernel.dim(a->tgt), 0, proto);
  rep.kernel.validate();

  auto dist = distances_from(host, x);
  for (const std::string& z : centipede(host, x, y))
    rep.expected.emplace_back(z, t - dist.at(z));

  auto classes = group_by_iso(decompose(rep.kernel, seed), seed);
  std::size_t total_summands = 0;
  for (auto& [r, mult] : classes) total_summands += mult;
  rep.summands_match = total_summands == rep.expected.size();
  std::vector<RepFp> predicted;
  for (auto& [z, s] : rep.expected)
    predicted.push_back(preprojective_rep(host, z, s, proto));
  for (auto& [r, mult] : classes) {
    std::size_t hits = 0;
    for (const RepFp& p : predicted)
      if (is_isomorphic(r, p, seed)) ++hits;
    if (hits != mult) rep.summands_match = false;
  }

  rep.orthogonal_bricks = true;
  rep.exceptional_family = true;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (end_radical_dims(predicted[i]) != std::pair<std::size_t, std::size_t>{1, 0})
      rep.orthogonal_bricks = false;
    if (ext1_dim(predicted[i], predicted[i]) != 0) rep.exceptional_family = false;
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      if (i == j) continue;
      if (hom_dim(predicted[i], predicted[j]) != 0)
        rep.orthogonal_bricks = false;
      if (ext1_dim(predicted[i], predicted[j]) != 0)
        rep.exceptional_family = false;
    }
  }
  rep.ok = rep.summands_match && rep.orthogonal_bricks && rep.exceptional_family;
  return rep;
}

}  // namespace qrt
