#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qrt/field.hpp"
#include "qrt/fppoly.hpp"
#include "qrt/matrix.hpp"
#include "qrt/quiver.hpp"

namespace qrt {

using DimVector = std::map<std::string, std::size_t>;

template <Field F>
struct Representation {
  Quiver quiver;
  DimVector dims;
  std::map<std::string, Matrix<F>> mats;  // arrow id -> dims(tgt) x dims(src)
  F proto;

  Representation() = default;
  Representation(Quiver q, DimVector d, std::map<std::string, Matrix<F>> m,
                 F pr)
      : quiver(std::move(q)), dims(std::move(d)), mats(std::move(m)),
        proto(pr) {
    validate();
  }

  void validate() const {
    for (const std::string& v : quiver.vertices)
      if (!dims.count(v))
        throw std::invalid_argument("rep: missing dim at " + v);
    for (const Arrow& a : quiver.arrows) {
      auto it = mats.find(a.id);
      if (it == mats.end())
        throw std::invalid_argument("rep: missing matrix for " + a.id);
      it->second.require_shape(dims.at(a.tgt), dims.at(a.src));
    }
  }

  std::size_t dim(const std::string& v) const { return dims.at(v); }
  const Matrix<F>& mat(const std::string& arrow_id) const {
    return mats.at(arrow_id);
  }
  std::size_t dim_total() const {
    std::size_t t = 0;
    for (auto& [v, d] : dims) t += d;
    return t;
  }
  bool is_zero() const { return dim_total() == 0; }
};

/// Vertex-indexed family of matrices (an element of a Hom space, a graded
/// map between two representations on the same quiver).
template <Field F>
using VertexMap = std::map<std::string, Matrix<F>>;

template <Field F>
Representation<F> zero_rep(const Quiver& q, F proto) {
  DimVector d;
  for (const std::string& v : q.vertices) d[v] = 0;
  std::map<std::string, Matrix<F>> mats;
  for (const Arrow& a : q.arrows) mats[a.id] = Matrix<F>(0, 0, proto);
  return Representation<F>(q, std::move(d), std::move(mats), proto);
}

template <Field F>
Representation<F> simple_rep(const Quiver& q, const std::string& x, F proto) {
  Representation<F> r = zero_rep(q, proto);
  r.dims[x] = 1;
  for (const Arrow& a : q.arrows)
    r.mats[a.id] = Matrix<F>(r.dims[a.tgt], r.dims[a.src], proto);
  return r;
}

inline long long euler_form(const Quiver& q, const DimVector& d,
                            const DimVector& e) {
  long long s = 0;
  for (const std::string& v : q.vertices)
    s += static_cast<long long>(d.at(v)) * static_cast<long long>(e.at(v));
  for (const Arrow& a : q.arrows)
    s -= static_cast<long long>(d.at(a.src)) *
         static_cast<long long>(e.at(a.tgt));
  return s;
}

namespace detail {

/// Flat coordinate layout for the spaces Hom(M_v, N_v), one block per vertex.
template <Field F>
struct HomLayout {
  std::vector<std::string> verts;
  std::vector<std::size_t> offset;  // per vertex block start
  std::size_t total = 0;

  HomLayout(const Representation<F>& m, const Representation<F>& n) {
    for (const std::string& v : m.quiver.vertices) {
      verts.push_back(v);
      offset.push_back(total);
      total += n.dim(v) * m.dim(v);
    }
  }

  // index of entry (i,j) of the block at verts[k], block shape n.dim x m.dim
  std::size_t at(std::size_t k, std::size_t i, std::size_t j,
                 std::size_t mcols) const {
    return offset[k] + i * mcols + j;
  }
};

template <Field F>
VertexMap<F> unflatten(const Representation<F>& m, const Representation<F>& n,
                       const HomLayout<F>& lay, const std::vector<F>& flat) {
  VertexMap<F> phi;
  for (std::size_t k = 0; k < lay.verts.size(); ++k) {
    const std::string& v = lay.verts[k];
    Matrix<F> mk(n.dim(v), m.dim(v), m.proto);
    for (std::size_t i = 0; i < n.dim(v); ++i)
      for (std::size_t j = 0; j < m.dim(v); ++j)
        mk(i, j) = flat[lay.at(k, i, j, m.dim(v))];
    phi[v] = std::move(mk);
  }
  return phi;
}

template <Field F>
std::vector<F> flatten(const Representation<F>& m, const Representation<F>& n,
                       const HomLayout<F>& lay, const VertexMap<F>& phi) {
  std::vector<F> flat(lay.total, m.proto);
  for (std::size_t k = 0; k < lay.verts.size(); ++k) {
    const std::string& v = lay.verts[k];
    const Matrix<F>& mk = phi.at(v);
    for (std::size_t i = 0; i < mk.rows(); ++i)
      for (std::size_t j = 0; j < mk.cols(); ++j)
        flat[lay.at(k, i, j, m.dim(v))] = mk(i, j);
  }
  return flat;
}

/// Matrix of the map delta: (phi_v)_v -> (phi_t M_a - N_a phi_s)_a, whose
/// kernel is Hom(M,N) and whose cokernel is Ext^1(M,N) for path algebras.
template <Field F>
Matrix<F> intertwiner_matrix(const Representation<F>& m,
                             const Representation<F>& n,
                             const HomLayout<F>& lay) {
  std::size_t rows = 0;
  for (const Arrow& a : m.quiver.arrows)
    rows += n.dim(a.tgt) * m.dim(a.src);
  Matrix<F> sys(rows, lay.total, m.proto);
  std::map<std::string, std::size_t> vk;
  for (std::size_t k = 0; k < lay.verts.size(); ++k) vk[lay.verts[k]] = k;
  std::size_t r0 = 0;
  for (const Arrow& a : m.quiver.arrows) {
    const Matrix<F>& ma = m.mat(a.id);
    const Matrix<F>& na = n.mat(a.id);
    std::size_t ks = vk[a.src], kt = vk[a.tgt];
    for (std::size_t i = 0; i < n.dim(a.tgt); ++i)
      for (std::size_t j = 0; j < m.dim(a.src); ++j) {
        std::size_t row = r0 + i * m.dim(a.src) + j;
        // + phi_t(i,k) * M_a(k,j)
        for (std::size_t k = 0; k < m.dim(a.tgt); ++k)
          sys(row, lay.at(kt, i, k, m.dim(a.tgt))) += ma(k, j);
        // - N_a(i,k) * phi_s(k,j)
        for (std::size_t k = 0; k < n.dim(a.src); ++k)
          sys(row, lay.at(ks, k, j, m.dim(a.src))) -= na(i, k);
      }
    r0 += n.dim(a.tgt) * m.dim(a.src);
  }
  return sys;
}

}  // namespace detail

template <Field F>
struct HomSpace {
  std::vector<VertexMap<F>> basis;
  std::size_t dim() const { return basis.size(); }
};

template <Field F>
HomSpace<F> hom_basis(const Representation<F>& m, const Representation<F>& n) {
  if (!(to_json(m.quiver) == to_json(n.quiver)))
    throw std::invalid_argument("hom_basis: different quivers");
  detail::HomLayout<F> lay(m, n);
  auto sys = detail::intertwiner_matrix(m, n, lay);
  HomSpace<F> h;
  for (auto& flat : kernel_basis(sys))
    h.basis.push_back(detail::unflatten(m, n, lay, flat));
  return h;
}

template <Field F>
std::size_t hom_dim(const Representation<F>& m, const Representation<F>& n) {
  detail::HomLayout<F> lay(m, n);
  auto sys = detail::intertwiner_matrix(m, n, lay);
  return lay.total - rank(sys);
}

/// dim Ext^1 computed as dim Hom - <dim m, dim n> (hereditary path algebra).
template <Field F>
std::size_t ext1_dim(const Representation<F>& m, const Representation<F>& n) {
  long long e = static_cast<long long>(hom_dim(m, n)) -
                euler_form(m.quiver, m.dims, n.dims);
  if (e < 0) throw std::logic_error("ext1_dim: negative (inconsistent input)");
  return static_cast<std::size_t>(e);
}

/// dim Ext^1 computed directly as the cokernel of the intertwiner map,
/// independent of the Euler-form shortcut.
template <Field F>
std::size_t ext1_dim_cocycle(const Representation<F>& m,
                             const Representation<F>& n) {
  detail::HomLayout<F> lay(m, n);
  auto sys = detail::intertwiner_matrix(m, n, lay);
  return sys.rows() - rank(sys);
}

template <Field F>
Representation<F> direct_sum(const std::vector<Representation<F>>& parts,
                             const Quiver& q, F proto) {
  Representation<F> r = zero_rep(q, proto);
  for (const std::string& v : q.vertices)
    for (const auto& p : parts) r.dims[v] += p.dim(v);
  for (const Arrow& a : q.arrows) {
    Matrix<F> blk(r.dims[a.tgt], r.dims[a.src], proto);
    std::size_t ro = 0, co = 0;
    for (const auto& p : parts) {
      const Matrix<F>& pm = p.mat(a.id);
      for (std::size_t i = 0; i < pm.rows(); ++i)
        for (std::size_t j = 0; j < pm.cols(); ++j)
          blk(ro + i, co + j) = pm(i, j);
      ro += pm.rows();
      co += pm.cols();
    }
    r.mats[a.id] = std::move(blk);
  }
  return r;
}

/// Restriction to a full subquiver.
template <Field F>
Representation<F> restrict_rep(const Representation<F>& m, const Quiver& sub) {
  DimVector d;
  std::map<std::string, Matrix<F>> mats;
  for (const std::string& v : sub.vertices) {
    if (!m.quiver.has_vertex(v))
      throw std::invalid_argument("restrict: " + v + " not in quiver");
    d[v] = m.dim(v);
  }
  for (const Arrow& a : sub.arrows) mats[a.id] = m.mat(a.id);
  return Representation<F>(sub, std::move(d), std::move(mats), m.proto);
}

// ---------- endomorphism structure and decomposition (prime fields) ----------

using RepFp = Representation<Fp>;

namespace detail {

inline Fp random_fp(std::mt19937_64& rng, std::uint64_t p) {
  return Fp::raw(rng() % p, p);
}

struct EndData {
  HomSpace<Fp> end;                 // basis of End(M)
  std::vector<std::vector<Fp>> rad; // radical elements, coords in end.basis
};

/// Compose vertexwise: (g after f).
inline VertexMap<Fp> compose(const VertexMap<Fp>& g, const VertexMap<Fp>& f) {
  VertexMap<Fp> r;
  for (auto& [v, fv] : f) r[v] = g.at(v) * fv;
  return r;
}

inline EndData end_data(const RepFp& m) {
  EndData ed;
  ed.end = hom_basis(m, m);
  std::size_t n = ed.end.dim();
  if (n == 0) return ed;
  std::uint64_t p = m.proto.p;
  if (p <= n)
    throw std::domain_error("end_data: modulus too small for trace form");
  HomLayout<Fp> lay(m, m);
  // coordinates of products e_i e_k in the basis, via one shared solver
  Matrix<Fp> basis_cols =
      from_columns(lay.total,
                   [&] {
                     std::vector<std::vector<Fp>> cols;
                     for (auto& e : ed.end.basis)
                       cols.push_back(flatten(m, m, lay, e));
                     return cols;
                   }(),
                   m.proto);
  auto coords = [&](const VertexMap<Fp>& x) {
    auto sol = solve(basis_cols, flatten(m, m, lay, x));
    if (!sol) throw std::logic_error("end_data: product outside End");
    return *sol;
  };
  // left-multiplication matrices L_i on End
  std::vector<Matrix<Fp>> L(n, Matrix<Fp>(n, n, m.proto));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      auto c = coords(compose(ed.end.basis[i], ed.end.basis[k]));
      for (std::size_t r = 0; r < n; ++r) L[i](r, k) = c[r];
    }
  // trace form T(i,j) = tr(L_i L_j); its kernel is rad End when p > dim End
  Matrix<Fp> gram(n, n, m.proto);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix<Fp> prod = L[i] * L[j];
      Fp t(m.proto.p);
      for (std::size_t k = 0; k < n; ++k) t += prod(k, k);
      gram(i, j) = t;
      gram(j, i) = t;
    }
  ed.rad = kernel_basis(gram);
  return ed;
}

}  // namespace detail

/// (dim End, dim rad End).
inline std::pair<std::size_t, std::size_t> end_radical_dims(const RepFp& m) {
  auto ed = detail::end_data(m);
  return {ed.end.dim(), ed.rad.size()};
}

inline bool is_indecomposable(const RepFp& m) {
  if (m.is_zero())
    throw std::invalid_argument("is_indecomposable: zero representation");
  auto [e, r] = end_radical_dims(m);
  return e - r == 1;
}

inline bool is_exceptional(const RepFp& m) {
  return is_indecomposable(m) && ext1_dim(m, m) == 0;
}

/// Summand of a decomposition, with the section/retraction exhibiting it.
struct Summand {
  RepFp rep;
  VertexMap<Fp> emb;   // rep -> ambient
  VertexMap<Fp> proj;  // ambient -> rep, proj . emb = id
};

namespace detail {

/// Extracts the subrepresentation spanned per vertex by the given columns,
/// together with its embedding and a compatible projection. `others` are the
/// complementary subspace's columns (the two must span everything).
inline std::pair<Summand, Summand> split_by_subspaces(
    const RepFp& m, const std::map<std::string, std::vector<std::vector<Fp>>>& u1,
    const std::map<std::string, std::vector<std::vector<Fp>>>& u2) {
  Summand s1, s2;
  std::map<std::string, Matrix<Fp>> inv_basis;
  for (const std::string& v : m.quiver.vertices) {
    std::size_t d = m.dim(v), d1 = u1.at(v).size(), d2 = u2.at(v).size();
    if (d1 + d2 != d) throw std::logic_error("split: subspaces don't span");
    std::vector<std::vector<Fp>> all = u1.at(v);
    all.insert(all.end(), u2.at(v).begin(), u2.at(v).end());
    Matrix<Fp> P = from_columns(d, all, m.proto);
    auto Pinv = inverse(P);
    if (!Pinv) throw std::logic_error("split: subspaces not independent");
    s1.emb[v] = from_columns(d, u1.at(v), m.proto);
    s2.emb[v] = from_columns(d, u2.at(v), m.proto);
    Matrix<Fp> p1(d1, d, m.proto), p2(d2, d, m.proto);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d1; ++i) p1(i, j) = (*Pinv)(i, j);
      for (std::size_t i = 0; i < d2; ++i) p2(i, j) = (*Pinv)(d1 + i, j);
    }
    s1.proj[v] = std::move(p1);
    s2.proj[v] = std::move(p2);
  }
  auto build = [&](Summand& s) {
    DimVector d;
    std::map<std::string, Matrix<Fp>> mats;
    for (const std::string& v : m.quiver.vertices)
      d[v] = s.emb[v].cols();
    for (const Arrow& a : m.quiver.arrows) {
      Matrix<Fp> sub = s.proj[a.tgt] * m.mat(a.id) * s.emb[a.src];
      // the subspace must be arrow-invariant
      if (!(s.emb[a.tgt] * sub == m.mat(a.id) * s.emb[a.src]))
        throw std::logic_error("split: subspace not a subrepresentation");
      mats[a.id] = std::move(sub);
    }
    s.rep = RepFp(m.quiver, std::move(d), std::move(mats), m.proto);
  };
  build(s1);
  build(s2);
  return {std::move(s1), std::move(s2)};
}

/// Generalized kernel per vertex of f(theta), exponent = vertex dimension.
inline std::map<std::string, std::vector<std::vector<Fp>>> gen_kernel(
    const RepFp& m, const VertexMap<Fp>& theta, const fppoly::Poly& f) {
  std::map<std::string, std::vector<std::vector<Fp>>> ker;
  for (const std::string& v : m.quiver.vertices) {
    Matrix<Fp> fv = poly_at(std::vector<Fp>(f.begin(), f.end()), theta.at(v));
    ker[v] = kernel_basis(mat_pow(fv, std::max<std::size_t>(m.dim(v), 1)));
  }
  return ker;
}

/// One splitting attempt via the Fitting decomposition of a random
/// endomorphism. Returns nullopt when theta's spectrum gives no split.
inline std::optional<std::pair<Summand, Summand>> fitting_split(
    const RepFp& m, const HomSpace<Fp>& end, std::mt19937_64& rng) {
  std::uint64_t p = m.proto.p;
  VertexMap<Fp> theta;
  for (const std::string& v : m.quiver.vertices)
    theta[v] = Matrix<Fp>(m.dim(v), m.dim(v), m.proto);
  for (const auto& e : end.basis) {
    Fp c = random_fp(rng, p);
    for (const std::string& v : m.quiver.vertices)
      theta[v] = theta[v] + c * e.at(v);
  }
  // characteristic polynomial of theta on the total space
  fppoly::Poly cp = {Fp(1, p)};
  for (const std::string& v : m.quiver.vertices) {
    if (m.dim(v) == 0) continue;
    auto cpv = charpoly(theta.at(v));
    cp = fppoly::mul(cp, fppoly::Poly(cpv.begin(), cpv.end()), p);
  }
  auto rep = fppoly::factor_squarefree_roots(cp, p, rng());
  std::vector<fppoly::Poly> factors;
  for (auto& [root, mult] : rep.roots)
    factors.push_back(
        {-Fp(static_cast<long long>(root), p), Fp(1, p)});
  if (fppoly::degree(rep.remainder) > 0) factors.push_back(rep.remainder);
  if (factors.size() < 2) return std::nullopt;
  // split off the first factor's generalized kernel vs the rest
  fppoly::Poly restf = {Fp(1, p)};
  for (std::size_t i = 1; i < factors.size(); ++i)
    restf = fppoly::mul(restf, factors[i], p);
  auto u1 = gen_kernel(m, theta, factors[0]);
  auto u2 = gen_kernel(m, theta, restf);
  return split_by_subspaces(m, u1, u2);
}

/// Fallback: find an idempotent in End/rad via the minimal polynomial of a
/// random element (CRT along a coprime factor pair), lift it through the
/// radical with e <- 3e^2 - 2e^3, and split by image/kernel.
inline std::optional<std::pair<Summand, Summand>> idempotent_split(
    const RepFp& m, const EndData& ed, std::mt19937_64& rng) {
  std::uint64_t p = m.proto.p;
  std::size_t n = ed.end.dim(), r = ed.rad.size(), s = n - r;
  if (s < 2) return std::nullopt;
  HomLayout<Fp> lay(m, m);

  auto as_map = [&](const std::vector<Fp>& coords) {
    VertexMap<Fp> x;
    for (const std::string& v : m.quiver.vertices)
      x[v] = Matrix<Fp>(m.dim(v), m.dim(v), m.proto);
    for (std::size_t i = 0; i < n; ++i)
      for (const std::string& v : m.quiver.vertices)
        x[v] = x[v] + coords[i] * ed.end.basis[i].at(v);
    return x;
  };

  // complement of the radical inside End, in End-basis coordinates
  std::vector<std::vector<Fp>> cols = ed.rad;
  std::vector<std::size_t> comp_idx;
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    std::vector<Fp> unit(n, m.proto);
    unit[i] = Fp(1, p);
    cols.push_back(unit);
    if (rank(from_columns(n, cols, m.proto)) != cols.size())
      cols.pop_back();
    else
      comp_idx.push_back(i);
  }
  Matrix<Fp> basis_cols = from_columns(n, cols, m.proto);
  // quotient coordinates: coefficients on the complement part
  auto qcoords = [&](const VertexMap<Fp>& x) {
    // express x in the End basis first
    std::vector<std::vector<Fp>> bc;
    for (auto& e : ed.end.basis) bc.push_back(flatten(m, m, lay, e));
    auto c = solve(from_columns(lay.total, bc, m.proto),
                   flatten(m, m, lay, x));
    if (!c) throw std::logic_error("idempotent_split: not in End");
    auto full = solve(basis_cols, *c);
    if (!full) throw std::logic_error("idempotent_split: bad basis");
    return std::vector<Fp>(full->begin() + r, full->end());
  };
  auto lift = [&](const std::vector<Fp>& qc) {
    std::vector<Fp> coords(n, m.proto);
    for (std::size_t i = 0; i < s; ++i) coords[comp_idx[i]] = qc[i];
    return as_map(coords);
  };
  auto qmul = [&](const std::vector<Fp>& a, const std::vector<Fp>& b) {
    return qcoords(compose(lift(a), lift(b)));
  };

  std::vector<Fp> qone = qcoords(as_map([&] {
    // identity endomorphism in End coordinates: solve for it
    VertexMap<Fp> idm;
    for (const std::string& v : m.quiver.vertices)
      idm[v] = Matrix<Fp>::identity(m.dim(v), m.proto);
    std::vector<std::vector<Fp>> bc;
    for (auto& e : ed.end.basis) bc.push_back(flatten(m, m, lay, e));
    auto c = solve(from_columns(lay.total, bc, m.proto),
                   flatten(m, m, lay, idm));
    return *c;
  }()));

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Fp> a(s, m.proto);
    for (Fp& c : a) c = random_fp(rng, p);
    // minimal polynomial of a in End/rad: first linear dependence of powers
    std::vector<std::vector<Fp>> powers{qone};
    std::vector<Fp> cur = qone;
    fppoly::Poly minpoly;
    for (std::size_t k = 1; k <= s; ++k) {
      cur = qmul(cur, a);
      auto stacked = powers;
      stacked.push_back(cur);
      if (rank(from_columns(s, stacked, m.proto)) < stacked.size()) {
        // cur = sum c_i a^i  ->  minpoly = t^k - sum c_i t^i
        auto dep = solve(from_columns(s, powers, m.proto), cur);
        minpoly.assign(k + 1, Fp(p));
        for (std::size_t i = 0; i < k; ++i) minpoly[i] = -(*dep)[i];
        minpoly[k] = Fp(1, p);
        break;
      }
      powers.push_back(cur);
    }
    if (minpoly.empty()) continue;
    auto fac = fppoly::factor_squarefree_roots(minpoly, p, rng());
    if (fac.roots.empty()) continue;
    // f1 = (t - root)^mult, f2 = minpoly / f1; need both nontrivial
    fppoly::Poly f1 = {Fp(1, p)};
    fppoly::Poly lin = {-Fp(static_cast<long long>(fac.roots[0].first), p),
                        Fp(1, p)};
    for (std::size_t i = 0; i < fac.roots[0].second; ++i)
      f1 = fppoly::mul(f1, lin, p);
    if (fppoly::degree(f1) == fppoly::degree(minpoly)) continue;
    fppoly::Poly f2 = fppoly::divrem(minpoly, f1, p).first;
    auto [g, u, v] = fppoly::exgcd(f1, f2, p);
    if (fppoly::degree(g) != 0) continue;
    // ebar = (v * f2)(a): 1 on the f1-block, 0 on the rest
    fppoly::Poly proj_poly = fppoly::mod(fppoly::mul(v, f2, p), minpoly, p);
    std::vector<Fp> ebar(s, m.proto);
    for (std::size_t i = fppoly::degree(proj_poly) + 1; i-- > 0;) {
      ebar = qmul(ebar, a);
      for (std::size_t j = 0; j < s; ++j)
        ebar[j] += proj_poly[i] * qone[j];
    }
    // lift through the radical: e <- 3e^2 - 2e^3 until idempotent
    VertexMap<Fp> e = lift(ebar);
    bool stable = false;
    for (int it = 0; it < 64 && !stable; ++it) {
      VertexMap<Fp> e2 = compose(e, e);
      stable = true;
      for (const std::string& v2 : m.quiver.vertices)
        if (!(e2.at(v2) == e.at(v2))) stable = false;
      if (stable) break;
      for (const std::string& v2 : m.quiver.vertices)
        e[v2] = Fp(3, p) * e2.at(v2) - Fp(2, p) * (e2.at(v2) * e.at(v2));
    }
    if (!stable) continue;
    bool all_zero = true, all_id = true;
    for (const std::string& v2 : m.quiver.vertices) {
      if (!e.at(v2).is_zero()) all_zero = false;
      if (!(e.at(v2) == Matrix<Fp>::identity(m.dim(v2), m.proto)))
        all_id = false;
    }
    if (all_zero || all_id) continue;
    std::map<std::string, std::vector<std::vector<Fp>>> u1, u2;
    for (const std::string& v2 : m.quiver.vertices) {
      u1[v2] = colspace_basis(e.at(v2));
      u2[v2] = kernel_basis(e.at(v2));
    }
    return split_by_subspaces(m, u1, u2);
  }
  return std::nullopt;
}

inline void decompose_into(const RepFp& m, const VertexMap<Fp>& emb,
                           const VertexMap<Fp>& proj, std::mt19937_64& rng,
                           std::vector<Summand>& out) {
  if (m.is_zero()) return;
  EndData ed = end_data(m);
  if (ed.end.dim() - ed.rad.size() == 1) {
    out.push_back({m, emb, proj});
    return;
  }
  std::optional<std::pair<Summand, Summand>> split;
  for (int attempt = 0; attempt < 8 && !split; ++attempt)
    split = fitting_split(m, ed.end, rng);
  if (!split) split = idempotent_split(m, ed, rng);
  if (!split)
    throw std::runtime_error(
        "decompose: no splitting found; retry with another prime");
  for (Summand* s : {&split->first, &split->second}) {
    VertexMap<Fp> emb2, proj2;
    for (const std::string& v : m.quiver.vertices) {
      emb2[v] = emb.at(v) * s->emb.at(v);
      proj2[v] = s->proj.at(v) * proj.at(v);
    }
    decompose_into(s->rep, emb2, proj2, rng, out);
  }
}

}  // namespace detail

/// Full decomposition into indecomposables, with embeddings/projections into
/// the input. Deterministic for a fixed seed.
inline std::vector<Summand> decompose(const RepFp& m, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  VertexMap<Fp> id, same;
  for (const std::string& v : m.quiver.vertices) {
    id[v] = Matrix<Fp>::identity(m.dim(v), m.proto);
    same[v] = id[v];
  }
  std::vector<Summand> out;
  detail::decompose_into(m, id, same, rng, out);
  return out;
}

/// Isomorphism test: equal dimension vectors plus a random homomorphism that
/// is invertible at every vertex (8 attempts).
inline bool is_isomorphic(const RepFp& x, const RepFp& y,
                          std::uint64_t seed = 0) {
  if (x.dims != y.dims) return false;
  if (x.is_zero()) return true;
  auto h = hom_basis(x, y);
  if (h.dim() == 0) return false;
  std::mt19937_64 rng(seed + 0x51ed2701);
  for (int attempt = 0; attempt < 8; ++attempt) {
    VertexMap<Fp> phi;
    for (const std::string& v : x.quiver.vertices)
      phi[v] = Matrix<Fp>(x.dim(v), x.dim(v), x.proto);
    for (const auto& e : h.basis) {
      Fp c = detail::random_fp(rng, x.proto.p);
      for (const std::string& v : x.quiver.vertices)
        phi[v] = phi[v] + c * e.at(v);
    }
    bool ok = true;
    for (const std::string& v : x.quiver.vertices)
      if (rank(phi[v]) != x.dim(v)) ok = false;
    if (ok) return true;
  }
  return false;
}

/// Groups summands into isomorphism classes with multiplicities.
inline std::vector<std::pair<RepFp, std::size_t>> group_by_iso(
    const std::vector<Summand>& parts, std::uint64_t seed = 0) {
  std::vector<std::pair<RepFp, std::size_t>> classes;
  for (const Summand& s : parts) {
    bool found = false;
    for (auto& [rep, mult] : classes)
      if (is_isomorphic(rep, s.rep, seed)) {
        ++mult;
        found = true;
        break;
      }
    if (!found) classes.emplace_back(s.rep, 1);
  }
  return classes;
}

// ---------- BGP reflection functors ----------

enum class ReflectDir { Plus, Minus };

/// BGP reflection at a source (Minus) or sink (Plus). Arrows at v are
/// reversed and keep their ids; everything away from v is untouched.
template <Field F>
Representation<F> reflect(const Representation<F>& m, const std::string& v,
                          ReflectDir dir) {
  const Quiver& q = m.quiver;
  if (!q.has_vertex(v)) throw std::out_of_range("reflect: no vertex " + v);
  std::vector<const Arrow*> touched =
      dir == ReflectDir::Minus ? q.arrows_out(v) : q.arrows_in(v);
  if (dir == ReflectDir::Minus && !q.is_source(v))
    throw std::invalid_argument("reflect minus: " + v + " is not a source");
  if (dir == ReflectDir::Plus && !q.is_sink(v))
    throw std::invalid_argument("reflect plus: " + v + " is not a sink");

  std::vector<Arrow> new_arrows;
  for (const Arrow& a : q.arrows) {
    if (a.src == v || a.tgt == v)
      new_arrows.push_back({a.id, a.tgt, a.src});
    else
      new_arrows.push_back(a);
  }
  Quiver q2(q.vertices, new_arrows);

  DimVector d = m.dims;
  std::map<std::string, Matrix<F>> mats = m.mats;
  if (dir == ReflectDir::Minus) {
    // combined map M_v -> (+) M_{t(a)}, stacked vertically in arrow order
    std::size_t D = 0;
    for (auto* a : touched) D += m.dim(a->tgt);
    Matrix<F> f(D, m.dim(v), m.proto);
    std::size_t ro = 0;
    for (auto* a : touched) {
      const Matrix<F>& ma = m.mat(a->id);
      for (std::size_t i = 0; i < ma.rows(); ++i)
        for (std::size_t j = 0; j < ma.cols(); ++j) f(ro + i, j) = ma(i, j);
      ro += ma.rows();
    }
    // cokernel: extend a column basis of im f by standard vectors, invert,
    // and keep the rows beyond im f
    auto im = colspace_basis(f);
    std::size_t r = im.size(), c = D - r;
    std::vector<std::vector<F>> ext = im;
    Matrix<F> probe = from_columns(D, ext, m.proto);
    for (std::size_t j = 0; j < D && ext.size() < D; ++j) {
      std::vector<F> unit(D, m.proto);
      unit[j] = m.proto.one();
      ext.push_back(unit);
      if (rank(from_columns(D, ext, m.proto)) != ext.size()) ext.pop_back();
    }
    auto Pinv = inverse(from_columns(D, ext, m.proto));
    if (!Pinv) throw std::logic_error("reflect: basis extension failed");
    Matrix<F> pi(c, D, m.proto);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < D; ++j) pi(i, j) = (*Pinv)(r + i, j);
    d[v] = c;
    std::size_t co = 0;
    for (auto* a : touched) {
      std::size_t w = m.dim(a->tgt);
      Matrix<F> block(c, w, m.proto);
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < w; ++j) block(i, j) = pi(i, co + j);
      mats[a->id] = std::move(block);
      co += w;
    }
  } else {
    // combined map (+) M_{s(a)} -> M_v, blocks side by side in arrow order
    std::size_t D = 0;
    for (auto* a : touched) D += m.dim(a->src);
    Matrix<F> g(m.dim(v), D, m.proto);
    std::size_t co = 0;
    for (auto* a : touched) {
      const Matrix<F>& ma = m.mat(a->id);
      for (std::size_t i = 0; i < ma.rows(); ++i)
        for (std::size_t j = 0; j < ma.cols(); ++j) g(i, co + j) = ma(i, j);
      co += ma.cols();
    }
    auto ker = kernel_basis(g);
    Matrix<F> kappa = from_columns(D, ker, m.proto);
    d[v] = ker.size();
    std::size_t ro = 0;
    for (auto* a : touched) {
      std::size_t w = m.dim(a->src);
      Matrix<F> block(w, ker.size(), m.proto);
      for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < ker.size(); ++j)
          block(i, j) = kappa(ro + i, j);
      mats[a->id] = std::move(block);
      ro += w;
    }
  }
  return Representation<F>(q2, std::move(d), std::move(mats), m.proto);
}

/// Composite of reflections at all sources of a bipartite quiver; lands on
/// the opposite quiver. Sources are pairwise non-adjacent, so order is moot.
template <Field F>
Representation<F> rho_minus(const Representation<F>& m) {
  auto [sources, sinks] = bipartite_classes(m.quiver);
  Representation<F> r = m;
  for (const std::string& v : sources) r = reflect(r, v, ReflectDir::Minus);
  return r;
}

template <Field F>
Representation<F> rho_plus(const Representation<F>& m) {
  auto [sources, sinks] = bipartite_classes(m.quiver);
  Representation<F> r = m;
  for (const std::string& v : sinks) r = reflect(r, v, ReflectDir::Plus);
  return r;
}

// ---------- JSON ----------

inline std::string field_tag(const Fp& proto) {
  return "fp:" + std::to_string(proto.p);
}
inline std::string field_tag(const Rat&) { return "q"; }

inline std::string entry_str(const Fp& x) { return std::to_string(x.v); }
inline std::string entry_str(const Rat& x) { return x.str(); }

inline Fp entry_parse(const std::string& s, const Fp& proto) {
  auto slash = s.find('/');
  if (slash == std::string::npos)
    return Fp(std::stoll(s), proto.p);
  return Fp(std::stoll(s.substr(0, slash)), proto.p) /
         Fp(std::stoll(s.substr(slash + 1)), proto.p);
}
inline Rat entry_parse(const std::string& s, const Rat&) {
  return Rat(mpq_class(s));
}

template <Field F>
nlohmann::json to_json(const Representation<F>& m) {
  nlohmann::json j;
  j["quiver"] = to_json(m.quiver);
  j["field"] = field_tag(m.proto);
  j["dims"] = nlohmann::json::object();
  for (auto& [v, d] : m.dims) j["dims"][v] = d;
  j["mats"] = nlohmann::json::object();
  for (auto& [a, mat] : m.mats) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t jj = 0; jj < mat.cols(); ++jj)
        row.push_back(entry_str(mat(i, jj)));
      rows.push_back(row);
    }
    j["mats"][a] = rows;
  }
  return j;
}

template <Field F>
Representation<F> rep_from_json(const nlohmann::json& j, F proto) {
  Quiver q = quiver_from_json(j.at("quiver"));
  if (j.at("field").get<std::string>() != field_tag(proto))
    throw std::invalid_argument("rep_from_json: field mismatch");
  DimVector d;
  for (auto& [v, dv] : j.at("dims").items()) d[v] = dv.template get<std::size_t>();
  std::map<std::string, Matrix<F>> mats;
  for (const Arrow& a : q.arrows) {
    const auto& rows = j.at("mats").at(a.id);
    Matrix<F> m(d.at(a.tgt), d.at(a.src), proto);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t jj = 0; jj < m.cols(); ++jj) {
        const auto& cell = rows.at(i).at(jj);
        m(i, jj) = cell.is_string()
                       ? entry_parse(cell.template get<std::string>(), proto)
                       : entry_parse(std::to_string(cell.template get<long long>()),
                                     proto);
      }
    mats[a.id] = std::move(m);
  }
  return Representation<F>(q, std::move(d), std::move(mats), proto);
}

}  // namespace qrt
