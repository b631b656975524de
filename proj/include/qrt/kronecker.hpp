#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qrt/preprojective.hpp"

namespace qrt {

/// K(n): one source "a", one sink "b", arrows k1..kn.
inline Quiver kronecker_quiver(std::size_t n) {
  if (n < 1) throw std::invalid_argument("kronecker_quiver: need n >= 1");
  std::vector<Arrow> as;
  for (std::size_t i = 1; i <= n; ++i)
    as.push_back({"k" + std::to_string(i), "a", "b"});
  return Quiver({"a", "b"}, as);
}

namespace detail {

/// Block layout of a colored tree ball under the push-down: vertices are
/// enumerated breadth-first (depth, then id) within each bipartite class.
struct PushLayout {
  std::vector<std::string> order;            // all vertices, bfs order
  std::map<std::string, bool> is_source_cls; // vertex -> source class
  std::map<std::string, std::size_t> offset; // vertex -> offset in its class
};

inline PushLayout push_layout(const ColoredTreeBall& ball, CenterKind kind,
                              const DimVector& dims) {
  PushLayout l;
  l.order = ball.quiver.vertices;
  std::stable_sort(l.order.begin(), l.order.end(),
                   [&](const std::string& u, const std::string& v) {
                     return ball.depth.at(u) < ball.depth.at(v);
                   });
  std::size_t off_src = 0, off_snk = 0;
  for (const std::string& v : l.order) {
    bool src = (ball.depth.at(v) % 2 == 0) == (kind == CenterKind::Source);
    l.is_source_cls[v] = src;
    std::size_t& off = src ? off_src : off_snk;
    l.offset[v] = off;
    off += dims.at(v);
  }
  return l;
}

}  // namespace detail

/// Push-down along the covering of K(n) by the n-regular tree: the two K(n)
/// spaces are the direct sums over the bipartite classes, and the i-th
/// Kronecker matrix collects the blocks of all color-i cover arrows.
inline RepFp push_down(const ColoredTreeBall& ball, CenterKind kind,
                       const RepFp& m, std::size_t n) {
  if (m.quiver.vertices != ball.quiver.vertices ||
      m.quiver.arrows != ball.quiver.arrows)
    throw std::invalid_argument("push_down: representation not on the ball");
  for (const Arrow& a : ball.quiver.arrows) {
    auto it = ball.color.find(a.id);
    if (it == ball.color.end() || it->second < 1 || it->second > n)
      throw std::invalid_argument("push_down: invalid coloring at " + a.id);
  }
  auto layout = detail::push_layout(ball, kind, m.dims);
  DimVector dims{{"a", 0}, {"b", 0}};
  for (const std::string& v : ball.quiver.vertices)
    dims[layout.is_source_cls.at(v) ? "a" : "b"] += m.dim(v);
  std::vector<Matrix<Fp>> mats(n, Matrix<Fp>(dims["b"], dims["a"], m.proto));
  for (const Arrow& a : ball.quiver.arrows) {
    const Matrix<Fp>& blk = m.mat(a.id);
    Matrix<Fp>& big = mats[ball.color.at(a.id) - 1];
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c)
        big(layout.offset.at(a.tgt) + r, layout.offset.at(a.src) + c) =
            blk(r, c);
  }
  VertexMap<Fp> out;
  for (std::size_t i = 1; i <= n; ++i)
    out["k" + std::to_string(i)] = std::move(mats[i - 1]);
  return RepFp(kronecker_quiver(n), std::move(dims), std::move(out), m.proto);
}

/// The companion basis push-down: per-class block diagonal of the cover
/// basis, labels carried over unchanged.
inline IndexedBasis<Fp> push_down_basis(const ColoredTreeBall& ball,
                                        CenterKind kind, const RepFp& m,
                                        const IndexedBasis<Fp>& b) {
  auto layout = detail::push_layout(ball, kind, m.dims);
  DimVector dims{{"a", 0}, {"b", 0}};
  for (const std::string& v : ball.quiver.vertices)
    dims[layout.is_source_cls.at(v) ? "a" : "b"] += m.dim(v);
  IndexedBasis<Fp> out;
  for (const std::string& kv : {"a", "b"}) {
    out.labels[kv];
    out.change[kv] = Matrix<Fp>(dims[kv], dims[kv], m.proto);
  }
  for (const std::string& v : layout.order) {
    std::string kv = layout.is_source_cls.at(v) ? "a" : "b";
    const Matrix<Fp>& blk = b.change.at(v);
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c)
        out.change[kv](layout.offset.at(v) + r, layout.offset.at(v) + c) =
            blk(r, c);
    for (const std::string& l : b.labels.at(v)) out.labels[kv].push_back(l);
  }
  return out;
}

/// Independent oracle: component dimensions (d_source, d_sink) of the t-th
/// preprojective K(n)-module by the linear recursion d_t = n d_{t-1} -
/// d_{t-2} seeded with (0,1) and (1,n).
inline std::pair<std::size_t, std::size_t> dim_recursion_oracle(
    std::size_t n, std::size_t t) {
  if (n < 2) throw std::invalid_argument("dim_recursion_oracle: need n >= 2");
  std::pair<long long, long long> prev{0, 1}, cur{1, (long long)n};
  if (t == 0) return {0, 1};
  for (std::size_t i = 1; i < t; ++i) {
    std::pair<long long, long long> next{n * cur.first - prev.first,
                                         n * cur.second - prev.second};
    prev = cur;
    cur = next;
  }
  return {(std::size_t)cur.first, (std::size_t)cur.second};
}

/// Dimensions-only path: runs the source-reflection walk on per-shell
/// dimension counts of the n-regular tree (shell s holds n(n-1)^{s-1}
/// vertices), then sums the two bipartite classes.
inline std::pair<std::size_t, std::size_t> kron_preprojective_dims(
    std::size_t n, std::size_t t) {
  if (n < 2) throw std::invalid_argument("kron_preprojective_dims: n >= 2");
  std::vector<long long> d(t + 2, 0);
  d[0] = 1;  // S(x), x the center, a sink of the walk's starting orientation
  for (std::size_t k = 1; k <= t; ++k) {
    // sources alternate between the odd and even shells
    std::vector<long long> nd = d;
    for (std::size_t s = (k % 2 == 1) ? 1 : 0; s <= t; s += 2)
      nd[s] = (s > 0 ? d[s - 1] : 0) +
              (long long)(s > 0 ? n - 1 : n) * d[s + 1] - d[s];
    d = std::move(nd);
  }
  // shell populations; center class is determined by the parity of t
  long long src = 0, snk = 0;
  long long shell = 1;
  for (std::size_t s = 0; s <= t; ++s) {
    bool source_shell = (s % 2 == 0) == (t % 2 == 1);
    (source_shell ? src : snk) += shell * d[s];
    shell = s == 0 ? (long long)n : shell * (long long)(n - 1);
  }
  return {(std::size_t)src, (std::size_t)snk};
}

struct KronPreprojective {
  RepFp rep;              // over K(n)
  IndexedBasis<Fp> basis; // pushed-down radiation basis (a tree basis)
};

/// The t-th preprojective K(n)-module with its distinguished tree basis:
/// P(x,t) on the radius-t ball of the n-regular tree, radiation basis taken
/// there, both pushed down.
inline KronPreprojective kron_preprojective(std::size_t n, std::size_t t,
                                            std::uint64_t seed = 0,
                                            Fp proto = Fp(kDefaultPrime)) {
  CenterKind kind = t % 2 == 1 ? CenterKind::Source : CenterKind::Sink;
  auto ball = regular_tree_ball(n, kind, t);
  KronPreprojective out;
  if (t == 0) {
    RepFp s = simple_rep(ball.quiver, ball.center, proto);
    out.rep = push_down(ball, kind, s, n);
    out.basis = push_down_basis(ball, kind, s, standard_basis(s));
    return out;
  }
  auto pre = preprojective(ball.quiver, ball.center, t, seed, proto);
  out.rep = push_down(ball, kind, pre.rep, n);
  out.basis = push_down_basis(ball, kind, pre.rep, pre.basis);
  out.basis.validate(out.rep);
  return out;
}

/// Preinjective companion: dualize the preprojective of the opposite
/// orientation (swap the two K(n) spaces and transpose every matrix).
inline RepFp kron_preinjective(std::size_t n, std::size_t t,
                               std::uint64_t seed = 0,
                               Fp proto = Fp(kDefaultPrime)) {
  RepFp p = kron_preprojective(n, t, seed, proto).rep;
  DimVector dims{{"a", p.dim("b")}, {"b", p.dim("a")}};
  VertexMap<Fp> mats;
  for (const Arrow& a : p.quiver.arrows) mats[a.id] = p.mat(a.id).transpose();
  return RepFp(p.quiver, std::move(dims), std::move(mats), proto);
}

}  // namespace qrt
