#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qrt/radiation.hpp"

namespace qrt {

// ---------- standard diagrams ----------

/// Linear quiver a1 - a2 - ... - an; forward[i] orients edge i as
/// a_{i+1} -> a_{i+2}, otherwise the arrow points backwards.
inline Quiver dynkin_a(std::size_t n, const std::vector<bool>& forward) {
  if (n == 0) throw std::invalid_argument("dynkin_a: empty");
  if (forward.size() + 1 != n)
    throw std::invalid_argument("dynkin_a: need n-1 edge orientations");
  std::vector<std::string> vs;
  for (std::size_t i = 1; i <= n; ++i) vs.push_back("a" + std::to_string(i));
  std::vector<Arrow> as;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::string s = vs[i], t = vs[i + 1];
    if (!forward[i]) std::swap(s, t);
    as.push_back({s + t, s, t});
  }
  return Quiver(vs, as);
}

inline Quiver dynkin_a(std::size_t n) {
  return dynkin_a(n, std::vector<bool>(n ? n - 1 : 0, true));
}

/// D_n with subspace orientation: every arrow points toward the branch
/// vertex a_{n-2}, which carries the two extra leaves b1, b2.
inline Quiver dynkin_d(std::size_t n) {
  if (n < 4) throw std::invalid_argument("dynkin_d: rank below 4");
  std::vector<std::string> vs;
  for (std::size_t i = 1; i + 2 <= n; ++i) vs.push_back("a" + std::to_string(i));
  vs.push_back("b1");
  vs.push_back("b2");
  std::string c = "a" + std::to_string(n - 2);
  std::vector<Arrow> as;
  for (std::size_t i = 1; i + 3 <= n; ++i) {
    std::string s = "a" + std::to_string(i), t = "a" + std::to_string(i + 1);
    as.push_back({s + t, s, t});
  }
  as.push_back({"b1" + c, "b1", c});
  as.push_back({"b2" + c, "b2", c});
  return Quiver(vs, as);
}

/// E_n (n in {6,7,8}) with subspace orientation: long arm a1..a_{n-1} with
/// every arrow pointing toward the branch-adjacent vertex a_{n-3}; the extra
/// vertex b also points into a_{n-3}.
inline Quiver dynkin_e(std::size_t n) {
  if (n < 6 || n > 8) throw std::invalid_argument("dynkin_e: rank not 6..8");
  std::string c = "a" + std::to_string(n - 3);
  std::vector<std::string> vs;
  for (std::size_t i = 1; i <= n - 1; ++i) vs.push_back("a" + std::to_string(i));
  vs.push_back("b");
  std::vector<Arrow> as;
  for (std::size_t i = 1; i + 1 <= n - 1; ++i) {
    std::string lo = "a" + std::to_string(i), hi = "a" + std::to_string(i + 1);
    // both half-arms run toward the junction a_{n-3}
    std::string s = (i + 1 <= n - 3) ? lo : hi, t = (i + 1 <= n - 3) ? hi : lo;
    as.push_back({s + t, s, t});
  }
  as.push_back({"b" + c, "b", c});
  return Quiver(vs, as);
}

/// Dynkin test: tree quiver whose symmetrized Tits form is positive
/// definite (checked by exact rational elimination pivots).
inline bool is_dynkin(const Quiver& q) {
  if (q.vertices.empty() || !underlying_is_tree(q)) return false;
  const std::size_t n = q.vertices.size();
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[q.vertices[i]] = i;
  Matrix<Rat> c(n, n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) c(i, i) = Rat(2);
  for (const Arrow& a : q.arrows) {
    std::size_t i = idx.at(a.src), j = idx.at(a.tgt);
    c(i, j) = c(i, j) - Rat(1);
    c(j, i) = c(j, i) - Rat(1);
  }
  // symmetric elimination without pivoting: positive definite iff all pivots > 0
  for (std::size_t k = 0; k < n; ++k) {
    if (!(c(k, k).q > 0)) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat f = c(i, k) / c(k, k);
      for (std::size_t j = k; j < n; ++j) c(i, j) = c(i, j) - f * c(k, j);
    }
  }
  return true;
}

/// Sequence v1..vn with v1 a sink of q, v2 a sink of q reflected at v1, and
/// so on; exists for any acyclic quiver (lexicographically least at each
/// step, so the sequence is deterministic).
inline std::vector<std::string> admissible_sink_order(const Quiver& q) {
  Quiver cur = q;
  std::vector<std::string> order;
  std::set<std::string> done;
  while (order.size() < q.vertices.size()) {
    std::string pick;
    for (const std::string& v : cur.vertices)
      if (!done.count(v) && cur.is_sink(v)) { pick = v; break; }
    if (pick.empty())
      throw std::invalid_argument("admissible_sink_order: cyclic quiver");
    order.push_back(pick);
    done.insert(pick);
    std::vector<Arrow> as;
    for (const Arrow& a : cur.arrows)
      as.push_back(a.tgt == pick ? Arrow{a.id, a.tgt, a.src} : a);
    cur = Quiver(cur.vertices, as);
  }
  return order;
}

// ---------- indecomposables via reflection-functor walks ----------

/// One representative per positive root: the k-th candidate is the simple at
/// w_k (over the quiver reflected along w_0..w_{k-1}) pushed back through
/// the inverse reflections, where w cycles through an admissible sink order.
/// A candidate that dies under the functors marks its vertex exhausted; the
/// walk stops when every vertex is exhausted.
inline std::vector<RepFp> enumerate_indecomposables(
    const Quiver& q, Fp proto = Fp(kDefaultPrime)) {
  if (!is_dynkin(q))
    throw std::invalid_argument("enumerate_indecomposables: not Dynkin");
  const std::vector<std::string> order = admissible_sink_order(q);
  const std::size_t n = order.size();

  // quivers along the walk: qs[k] = q reflected at w_0..w_{k-1}
  std::vector<Quiver> qs{q};
  std::set<std::string> alive(order.begin(), order.end());
  std::vector<RepFp> out;
  std::set<std::vector<std::size_t>> seen_dims;

  for (std::size_t k = 0; !alive.empty(); ++k) {
    if (k > 64 * n)
      throw std::logic_error("enumerate_indecomposables: walk did not stop");
    const std::string& w = order[k % n];
    while (qs.size() <= k + 1) {
      const Quiver& prev = qs.back();
      std::vector<Arrow> as;
      const std::string& r = order[(qs.size() - 1) % n];
      for (const Arrow& a : prev.arrows)
        as.push_back((a.src == r || a.tgt == r) ? Arrow{a.id, a.tgt, a.src}
                                                : a);
      qs.emplace_back(prev.vertices, as);
    }
    if (!alive.count(w)) continue;

    RepFp m = simple_rep(qs[k], w, proto);
    for (std::size_t j = k; j-- > 0;)
      m = reflect(m, order[j % n], ReflectDir::Minus);
    if (m.is_zero()) {
      alive.erase(w);
      continue;
    }
    std::vector<std::size_t> key;
    for (const std::string& v : q.vertices) key.push_back(m.dim(v));
    if (!seen_dims.insert(key).second)
      throw std::logic_error("enumerate_indecomposables: repeated root");
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const RepFp& a, const RepFp& b) {
    return a.dims < b.dims;
  });
  return out;
}

// ---------- radiation property of thin-vertex indecomposables ----------

struct Prop4Report {
  bool ok = true;
  std::size_t modules = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::pair<DimVector, std::string>> violations;  // (dims, vertex)
  std::vector<DimVector> no_thin_vertex;
};

/// Checks every indecomposable of a Dynkin quiver at every thin vertex and
/// reports the pairs that fail the radiation test, plus the modules that
/// have no thin vertex at all.
inline Prop4Report verify_prop4(const Quiver& q, std::uint64_t seed = 0) {
  Prop4Report rep;
  for (const RepFp& m : enumerate_indecomposables(q)) {
    ++rep.modules;
    bool has_thin = false;
    for (const std::string& x : q.vertices) {
      if (m.dim(x) != 1) continue;
      has_thin = true;
      ++rep.pairs_checked;
      if (!is_radiation(m, x, seed).first) {
        rep.ok = false;
        rep.violations.emplace_back(m.dims, x);
      }
    }
    if (!has_thin) rep.no_thin_vertex.push_back(m.dims);
  }
  return rep;
}

// ---------- hammocks ----------

/// Indecomposable projective at y for a tree quiver: thin on the set of
/// vertices reachable from y along arrows, identity on the arrows inside.
inline RepFp projective_rep(const Quiver& q, const std::string& y, Fp proto) {
  if (!underlying_is_tree(q))
    throw std::invalid_argument("projective_rep: not a tree quiver");
  if (!q.has_vertex(y)) throw std::out_of_range("projective_rep: " + y);
  std::set<std::string> reach{y};
  std::vector<std::string> stack{y};
  while (!stack.empty()) {
    std::string v = stack.back();
    stack.pop_back();
    for (const Arrow* a : q.arrows_out(v))
      if (reach.insert(a->tgt).second) stack.push_back(a->tgt);
  }
  RepFp r = zero_rep(q, proto);
  for (const std::string& v : reach) r.dims[v] = 1;
  for (const Arrow& a : q.arrows) {
    r.mats[a.id] = Matrix<Fp>(r.dims[a.tgt], r.dims[a.src], proto);
    if (reach.count(a.src) && reach.count(a.tgt))
      r.mats[a.id](0, 0) = Fp(1, proto.p);
  }
  return r;
}

struct HammockMember {
  RepFp rep;
  std::size_t value;  // dim Hom(P(y), rep)
};

struct Hammock {
  std::vector<HammockMember> members;
  /// The relation "Hom(N, N') != 0" on the members; flagged false when it
  /// fails antisymmetry, in which case the antichain list is not meaningful
  /// as a poset notion.
  bool order_antisymmetric = true;
  std::vector<std::array<std::size_t, 3>> antichains3;  // member indices
};

/// Support of Hom(P(y), -) over the indecomposables of a Dynkin quiver,
/// together with the 3-element antichains of the Hom-nonvanishing order.
inline Hammock hammock_support(const Quiver& q, const std::string& y,
                               Fp proto = Fp(kDefaultPrime)) {
  Hammock h;
  RepFp p = projective_rep(q, y, proto);
  for (RepFp& m : enumerate_indecomposables(q, proto)) {
    std::size_t d = hom_dim(p, m);
    if (d > 0) h.members.push_back({std::move(m), d});
  }
  const std::size_t t = h.members.size();
  std::vector<std::vector<bool>> le(t, std::vector<bool>(t, false));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      le[i][j] = i == j || hom_dim(h.members[i].rep, h.members[j].rep) > 0;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      if (le[i][j] && le[j][i]) h.order_antisymmetric = false;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      for (std::size_t k = j + 1; k < t; ++k)
        if (!le[i][j] && !le[j][i] && !le[i][k] && !le[k][i] && !le[j][k] &&
            !le[k][j])
          h.antichains3.push_back({i, j, k});
  return h;
}

// ---------- tree basis for the E8 maximal module ----------

struct TreeBasisResult {
  RepFp rep;
  IndexedBasis<Fp> basis;
};

namespace detail {

/// Locates the degree-3 vertex and returns the arm offsets from it,
/// longest first; throws when the shape is not E8.
inline std::pair<std::string, std::vector<std::vector<std::string>>> e8_arms(
    const Quiver& q) {
  std::string branch;
  for (const std::string& v : q.vertices)
    if (q.neighbors(v).size() == 3) {
      if (!branch.empty()) throw std::invalid_argument("e8: two branch points");
      branch = v;
    }
  if (branch.empty() || q.vertices.size() != 8 || !is_dynkin(q))
    throw std::invalid_argument("e8: quiver is not of type E8");
  std::vector<std::vector<std::string>> arms;
  for (const std::string& nb : q.neighbors(branch)) {
    std::vector<std::string> arm{nb};
    std::string prev = branch;
    while (true) {
      auto nbs = q.neighbors(arm.back());
      if (nbs.size() > 2) throw std::invalid_argument("e8: nested branch");
      std::string next;
      for (const std::string& u : nbs)
        if (u != prev) next = u;
      if (next.empty()) break;
      prev = arm.back();
      arm.push_back(next);
    }
    arms.push_back(std::move(arm));
  }
  std::sort(arms.begin(), arms.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::size_t> lens;
  for (auto& a : arms) lens.push_back(a.size());
  if (lens != std::vector<std::size_t>{4, 2, 1})
    throw std::invalid_argument("e8: arm lengths are not (4,2,1)");
  return {branch, arms};
}

}  // namespace detail

/// Tree basis of the maximal indecomposable on an E8 quiver: the restriction
/// to the deleted long-arm leaf x splits into three orthogonal summands that
/// are radiation modules at the neighbor y; their radiation bases are glued
/// by two basis vectors at x, each linked to two consecutive origins.
inline TreeBasisResult e8_maximal_tree_basis(const Quiver& q,
                                             std::uint64_t seed = 0,
                                             Fp proto = Fp(kDefaultPrime)) {
  auto [branch, arms] = detail::e8_arms(q);
  const std::string x = arms[0].back();            // far end of the long arm
  const std::string y = arms[0][arms[0].size() - 2];
  const Arrow* alpha = nullptr;
  for (const Arrow& a : q.arrows)
    if ((a.src == x && a.tgt == y) || (a.src == y && a.tgt == x)) alpha = &a;

  auto del = delete_vertex(q, x);
  const Quiver& qx = del.rest;  // type E7
  Hammock h = hammock_support(qx, y, proto);
  if (h.antichains3.size() != 1)
    throw std::logic_error("e8_maximal_tree_basis: hammock antichain count");

  // order the triple so that the Hom-richest summand sits in the middle
  std::vector<const RepFp*> triple;
  for (std::size_t i : h.antichains3[0]) triple.push_back(&h.members[i].rep);
  std::sort(triple.begin(), triple.end(), [](const RepFp* a, const RepFp* b) {
    return a->dim_total() > b->dim_total();
  });
  std::swap(triple[0], triple[1]);  // N(2) = largest, flanked by N(1), N(3)

  // radiation bases of the summands, seeded by the unit at the thin y
  std::vector<IndexedBasis<Fp>> bases;
  for (std::size_t i = 0; i < 3; ++i) {
    if (triple[i]->dim(y) != 1)
      throw std::logic_error("e8_maximal_tree_basis: summand not thin at y");
    bases.push_back(
        radiation_basis(*triple[i], y, {Fp(1, proto.p)}, seed));
  }

  // assemble M: direct sum over Q^x, two extra dimensions at x, and the
  // connecting arrow sending x-vector i to origin(N(i)) + origin(N(i+1))
  TreeBasisResult res;
  DimVector dims;
  for (const std::string& v : q.vertices) {
    dims[v] = 0;
    if (v == x) {
      dims[v] = 2;
      continue;
    }
    for (auto* t : triple) dims[v] += t->dim(v);
  }
  VertexMap<Fp> mats;
  std::map<std::string, std::array<std::size_t, 3>> offset;
  for (const std::string& v : qx.vertices) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      offset[v][i] = o;
      o += triple[i]->dim(v);
    }
  }
  for (const Arrow& a : q.arrows) {
    Matrix<Fp> m(dims.at(a.tgt), dims.at(a.src), proto);
    if (a.id == alpha->id) {
      // origins occupy coordinate offset[y][i] of the stacked y-space
      for (std::size_t col = 0; col < 2; ++col)
        for (std::size_t i = col; i <= col + 1; ++i) {
          if (a.src == x)
            m(offset[y][i], col) = Fp(1, proto.p);
          else
            m(col, offset[y][i]) = Fp(1, proto.p);
        }
    } else {
      for (std::size_t i = 0; i < 3; ++i) {
        const Matrix<Fp>& blk = triple[i]->mat(a.id);
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c)
            m(offset[a.tgt][i] + r, offset[a.src][i] + c) = blk(r, c);
      }
    }
    mats[a.id] = std::move(m);
  }
  res.rep = RepFp(q, std::move(dims), std::move(mats), proto);
  if (!is_indecomposable(res.rep))
    throw std::logic_error("e8_maximal_tree_basis: glued module decomposes");

  // combined basis: block-diagonal radiation bases, standard units at x
  for (const std::string& v : q.vertices) {
    res.basis.labels[v];
    if (v == x) {
      res.basis.labels[v] = {x + "~b1", x + "~b2"};
      res.basis.change[v] = Matrix<Fp>::identity(2, proto);
      continue;
    }
    Matrix<Fp> ch(res.rep.dim(v), res.rep.dim(v), proto);
    for (std::size_t i = 0; i < 3; ++i) {
      const Matrix<Fp>& blk = bases[i].change.at(v);
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c)
          ch(offset[v][i] + r, offset[v][i] + c) = blk(r, c);
      for (const std::string& l : bases[i].labels.at(v))
        res.basis.labels[v].push_back("N" + std::to_string(i + 1) + ":" + l);
    }
    res.basis.change[v] = std::move(ch);
  }
  res.basis.validate(res.rep);
  return res;
}

}  // namespace qrt
