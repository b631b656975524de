#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "qrt/field.hpp"

namespace qrt {

/// Univariate polynomial arithmetic over GF(p). Coefficients are stored
/// low-degree first and kept trimmed of leading zeros.
namespace fppoly {

using Poly = std::vector<Fp>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline Poly make(std::initializer_list<long long> coeffs, std::uint64_t p) {
  Poly f;
  for (long long c : coeffs) f.push_back(Fp(c, p));
  trim(f);
  return f;
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Fp(p));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), Fp(p));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Division with remainder; returns {quotient, remainder}.
inline std::pair<Poly, Poly> divrem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  if (b.empty()) throw std::domain_error("fppoly: division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, Fp(p));
  Fp lead_inv = b.back().inv();
  while (a.size() >= b.size()) {
    std::size_t d = a.size() - b.size();
    Fp c = a.back() * lead_inv;
    q[d] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[d + j] -= c * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly mod(const Poly& a, const Poly& b, std::uint64_t p) {
  return divrem(a, b, p).second;
}

inline Poly monic(Poly f) {
  trim(f);
  if (f.empty()) return f;
  Fp inv = f.back().inv();
  for (Fp& c : f) c = inv * c;
  return f;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g = gcd(a,b), g monic.
inline std::tuple<Poly, Poly, Poly> exgcd(Poly a, Poly b, std::uint64_t p) {
  Poly u0 = {Fp(1, p)}, v0 = {}, u1 = {}, v1 = {Fp(1, p)};
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divrem(a, b, p);
    Poly u2 = sub(u0, mul(q, u1, p), p);
    Poly v2 = sub(v0, mul(q, v1, p), p);
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (!a.empty()) {
    Fp inv = a.back().inv();
    for (Fp& c : a) c = inv * c;
    for (Fp& c : u0) c = inv * c;
    for (Fp& c : v0) c = inv * c;
  }
  return {a, u0, v0};
}

/// base^e mod f, with base already reduced mod f.
inline Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r = {Fp(1, p)};
  while (e) {
    if (e & 1) r = mod(mul(r, base, p), f, p);
    base = mod(mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

inline Fp eval(const Poly& f, Fp x) {
  Fp r(x.p);
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

struct RootReport {
  std::vector<std::pair<std::uint64_t, std::size_t>> roots;  // (root, mult)
  Poly remainder;  // monic factor with no roots in GF(p); 1 if none
};

namespace detail {

/// Splits a monic squarefree product of distinct linear factors into roots,
/// by the usual random gcd with (t+a)^((p-1)/2) - 1.
inline void split_linear(const Poly& f, std::uint64_t p, std::mt19937_64& rng,
                         std::vector<std::uint64_t>& out) {
  if (degree(f) <= 0) return;
  if (degree(f) == 1) {
    // f = t + c  ->  root -c
    out.push_back((-f[0]).v);
    return;
  }
  for (;;) {
    std::uint64_t a = rng() % p;
    Poly shifted = {Fp(static_cast<long long>(a), p), Fp(1, p)};
    Poly pw = powmod(shifted, (p - 1) / 2, f, p);
    if (!pw.empty()) pw[0] -= Fp(1, p);
    trim(pw);
    Poly g = gcd(pw, f, p);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      split_linear(g, p, rng, out);
      split_linear(divrem(f, g, p).first, p, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// All roots of f lying in GF(p), with multiplicities. The part of f without
/// linear factors is returned as an opaque monic remainder. Linear factors
/// are isolated via gcd(f, t^p - t) computed by repeated squaring mod f, not
/// by brute-force evaluation.
inline RootReport factor_squarefree_roots(Poly f, std::uint64_t p,
                                          std::uint64_t seed = 0) {
  RootReport rep;
  trim(f);
  if (degree(f) <= 0) {
    rep.remainder = {Fp(1, p)};
    return rep;
  }
  f = monic(f);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  // t^p mod f, then gcd with t^p - t.
  Poly t = {Fp(p), Fp(1, p)};
  Poly tp = powmod(t, p, f, p);
  Poly lin = gcd(sub(tp, t, p), f, p);
  std::vector<std::uint64_t> roots;
  detail::split_linear(lin, p, rng, roots);
  std::sort(roots.begin(), roots.end());
  Poly rest = f;
  for (std::uint64_t r : roots) {
    Poly factor = {-Fp(static_cast<long long>(r), p), Fp(1, p)};
    std::size_t mult = 0;
    for (;;) {
      auto [q, rem] = divrem(rest, factor, p);
      if (!rem.empty()) break;
      rest = q;
      ++mult;
    }
    rep.roots.emplace_back(r, mult);
  }
  rep.remainder = rest.empty() ? Poly{Fp(1, p)} : monic(rest);
  return rep;
}

}  // namespace fppoly
}  // namespace qrt
