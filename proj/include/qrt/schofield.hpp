#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrt/basis.hpp"
#include "qrt/kronecker.hpp"
#include "qrt/rep.hpp"

namespace qrt {

/// A 1-cocycle on the quiver with values in the arrow-wise Hom spaces
/// Hom(X_src, Y_tgt): one matrix per arrow, shape dim Y(tgt) x dim X(src).
/// Its class in the cokernel of the intertwiner map is an Ext^1(X, Y) class.
template <Field F>
struct ExtCocycle {
  std::map<std::string, Matrix<F>> mats;  // arrow id -> Y_tgt x X_src
};

namespace detail {

/// Row layout of the intertwiner matrix, mirrored: row r belongs to arrow a
/// (in quiver arrow order), entry (i, j) of the arrow-wise block, with
/// r = r0 + i * dim X(src) + j.
template <Field F>
ExtCocycle<F> one_hot_cocycle(const Representation<F>& x,
                              const Representation<F>& y, std::size_t r) {
  ExtCocycle<F> z;
  for (const Arrow& a : x.quiver.arrows)
    z.mats[a.id] = Matrix<F>(y.dim(a.tgt), x.dim(a.src), x.proto);
  std::size_t r0 = 0;
  for (const Arrow& a : x.quiver.arrows) {
    std::size_t blk = y.dim(a.tgt) * x.dim(a.src);
    if (r < r0 + blk) {
      std::size_t i = (r - r0) / x.dim(a.src);
      std::size_t j = (r - r0) % x.dim(a.src);
      z.mats[a.id](i, j) = x.proto.one();
      return z;
    }
    r0 += blk;
  }
  throw std::logic_error("one_hot_cocycle: row index out of range");
}

}  // namespace detail

/// Cocycles whose classes form a basis of Ext^1(X, Y). Representatives are
/// chosen maximally sparse: the coboundary image (column space of the
/// intertwiner matrix) is completed to the full cocycle space by standard
/// basis vectors, scanned in deterministic row order, so each representative
/// has a single entry 1 in a single arrow matrix.
template <Field F>
std::vector<ExtCocycle<F>> ext_cocycle_basis(const Representation<F>& x,
                                             const Representation<F>& y) {
  if (!(to_json(x.quiver) == to_json(y.quiver)))
    throw std::invalid_argument("ext_cocycle_basis: different quivers");
  detail::HomLayout<F> lay(x, y);
  Matrix<F> sys = detail::intertwiner_matrix(x, y, lay);
  // Non-pivot coordinates of the row space of sys^T (= column space of sys)
  // are exactly the standard vectors completing it to the full space.
  Matrix<F> w = sys.transpose();
  std::vector<std::size_t> pivots = rref(w);
  std::vector<bool> is_pivot(sys.rows(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<ExtCocycle<F>> out;
  for (std::size_t r = 0; r < sys.rows(); ++r)
    if (!is_pivot[r]) out.push_back(detail::one_hot_cocycle(x, y, r));
  return out;
}

/// Builds the middle term of an induction step: a module M with a submodule
/// Y^y and quotient X^x, whose connecting data is prescribed by a sincere
/// exceptional module E over the e-arrow Kronecker quiver (e = dim Ext^1(X,Y),
/// x = dim E at the source, y = dim E at the sink) together with cocycle
/// representatives zeta_1..zeta_e of an Ext^1(X, Y) basis.
///
/// Layout of M_v = X_v^x (+) Y_v^y: the x copies of X_v first, copy-major,
/// then the y copies of Y_v. M_alpha is lower block triangular: diagonal
/// blocks X_alpha (x) 1 and Y_alpha (x) 1, bottom-left block
/// sum_i E_i (x) zeta_i(alpha).
template <Field F>
Representation<F> synthesize(const Representation<F>& x,
                             const Representation<F>& y,
                             const Representation<F>& e_rep,
                             const std::vector<ExtCocycle<F>>& zeta) {
  if (!(to_json(x.quiver) == to_json(y.quiver)))
    throw std::invalid_argument("synthesize: X, Y on different quivers");
  const std::size_t e = zeta.size();
  if (e_rep.quiver.arrows.size() != e || e_rep.quiver.vertices.size() != 2)
    throw std::invalid_argument(
        "synthesize: E must live on the Kronecker quiver with one arrow per "
        "cocycle");
  const std::string esrc = e_rep.quiver.arrows.front().src;
  const std::string etgt = e_rep.quiver.arrows.front().tgt;
  const std::size_t nx = e_rep.dim(esrc);  // multiplicity of the quotient X
  const std::size_t ny = e_rep.dim(etgt);  // multiplicity of the submodule Y
  if (nx == 0 || ny == 0)
    throw std::invalid_argument("synthesize: E must be sincere");
  if (hom_dim(x, y) != 0 || hom_dim(y, x) != 0 || ext1_dim(y, x) != 0)
    throw std::invalid_argument("synthesize: (X, Y) is not an orthogonal "
                                "exceptional pair in the required order");
  if (ext1_dim(x, x) != 0 || ext1_dim(y, y) != 0)
    throw std::invalid_argument("synthesize: X and Y must be rigid");
  if (ext1_dim(x, y) != e)
    throw std::invalid_argument(
        "synthesize: cocycle count differs from dim Ext^1(X, Y)");

  const Quiver& q = x.quiver;
  Representation<F> m = zero_rep(q, x.proto);
  for (const std::string& v : q.vertices)
    m.dims[v] = nx * x.dim(v) + ny * y.dim(v);
  for (const Arrow& a : q.arrows) {
    Matrix<F> blk(m.dims[a.tgt], m.dims[a.src], x.proto);
    const Matrix<F>& xa = x.mat(a.id);
    const Matrix<F>& ya = y.mat(a.id);
    const std::size_t xs = x.dim(a.src), xt = x.dim(a.tgt);
    const std::size_t ys = y.dim(a.src), yt = y.dim(a.tgt);
    for (std::size_t c = 0; c < nx; ++c)  // X (x) 1 diagonal
      for (std::size_t i = 0; i < xt; ++i)
        for (std::size_t j = 0; j < xs; ++j)
          blk(c * xt + i, c * xs + j) = xa(i, j);
    for (std::size_t d = 0; d < ny; ++d)  // Y (x) 1 diagonal
      for (std::size_t i = 0; i < yt; ++i)
        for (std::size_t j = 0; j < ys; ++j)
          blk(nx * xt + d * yt + i, nx * xs + d * ys + j) = ya(i, j);
    for (std::size_t k = 0; k < e; ++k) {  // sum_i E_i (x) zeta_i(alpha)
      const Matrix<F>& ek = e_rep.mat(e_rep.quiver.arrows[k].id);
      const Matrix<F>& zk = zeta[k].mats.at(a.id);  // yt x xs
      for (std::size_t d = 0; d < ny; ++d)
        for (std::size_t c = 0; c < nx; ++c) {
          if (ek(d, c).is_zero()) continue;
          for (std::size_t i = 0; i < yt; ++i)
            for (std::size_t j = 0; j < xs; ++j)
              blk(nx * xt + d * yt + i, c * xs + j) += ek(d, c) * zk(i, j);
        }
    }
    m.mats[a.id] = std::move(blk);
  }
  m.validate();
  return m;
}

/// Synthesized module together with the basis exhibiting its tree structure.
struct GlueResult {
  RepFp rep;
  IndexedBasis<Fp> basis;
};

namespace detail {

/// Rewrites a representation in the coordinates of the given basis (so the
/// basis becomes the standard one).
template <Field F>
Representation<F> rewrite_in_basis(const Representation<F>& m,
                                   const IndexedBasis<F>& b) {
  Representation<F> r = m;
  for (const Arrow& a : m.quiver.arrows)
    r.mats[a.id] = matrix_in_basis(m, b, a.id);
  return r;
}

}  // namespace detail

/// Glues tree bases: given tree bases Bx of X, By of Y and Be of the
/// connecting module E, builds the synthesized module in the rewritten
/// coordinates (where all three bases are standard and the cocycle
/// representatives are one-hot) and returns it with the combined basis,
/// labelled "<E-label>*<X-or-Y-label>" per copy. The result is verified to
/// be a tree basis of an exceptional module; violations are reported by
/// throwing, not silently repaired.
inline GlueResult glue_tree_basis(const RepFp& x, const RepFp& y,
                                  const RepFp& e_rep,
                                  const IndexedBasis<Fp>& bx,
                                  const IndexedBasis<Fp>& by,
                                  const IndexedBasis<Fp>& be) {
  RepFp xr = detail::rewrite_in_basis(x, bx);
  RepFp yr = detail::rewrite_in_basis(y, by);
  RepFp er = detail::rewrite_in_basis(e_rep, be);
  std::vector<ExtCocycle<Fp>> zeta = ext_cocycle_basis(xr, yr);
  if (zeta.size() != e_rep.quiver.arrows.size())
    throw std::invalid_argument(
        "glue_tree_basis: dim Ext^1(X, Y) does not match the arrow count of "
        "E's quiver");
  GlueResult g;
  g.rep = synthesize(xr, yr, er, zeta);
  if (!is_exceptional(g.rep))
    throw std::runtime_error("glue_tree_basis: synthesized module is not "
                             "exceptional");

  const std::string esrc = e_rep.quiver.arrows.front().src;
  const std::string etgt = e_rep.quiver.arrows.front().tgt;
  const auto& xlabels = be.labels.at(esrc);  // one label per X copy
  const auto& ylabels = be.labels.at(etgt);  // one label per Y copy
  for (const std::string& v : g.rep.quiver.vertices) {
    auto& lv = g.basis.labels[v];
    for (const std::string& cl : xlabels)
      for (const std::string& xl : bx.labels.at(v)) lv.push_back(cl + "*" + xl);
    for (const std::string& dl : ylabels)
      for (const std::string& yl : by.labels.at(v)) lv.push_back(dl + "*" + yl);
    g.basis.change[v] =
        Matrix<Fp>::identity(g.rep.dim(v), g.rep.proto);
  }
  g.basis.validate(g.rep);
  if (!is_tree_basis(g.rep, g.basis)) {
    CoefficientQuiver cq = coefficient_quiver(g.rep, g.basis);
    throw std::runtime_error(
        "glue_tree_basis: coefficient quiver is not a tree (" +
        std::to_string(cq.nodes.size()) + " nodes, " +
        std::to_string(cq.edges.size()) + " edges)");
  }
  return g;
}

}  // namespace qrt
