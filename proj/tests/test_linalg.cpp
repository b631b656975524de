#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qrt/field.hpp"
#include "qrt/fppoly.hpp"
#include "qrt/matrix.hpp"

using namespace qrt;

namespace {

Matrix<Rat> qmat(std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  Matrix<Rat> m(r, c, Rat());
  std::size_t i = 0;
  for (auto& row : rows) {
    std::size_t j = 0;
    for (long long v : row) m(i, j++) = Rat(v);
    ++i;
  }
  return m;
}

Matrix<Fp> pmat(std::initializer_list<std::initializer_list<long long>> rows,
                std::uint64_t p) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  Matrix<Fp> m(r, c, Fp(p));
  std::size_t i = 0;
  for (auto& row : rows) {
    std::size_t j = 0;
    for (long long v : row) m(i, j++) = Fp(v, p);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("field axioms spot checks") {
  const std::uint64_t p = kDefaultPrime;
  Fp a(7, p), b(-3, p);
  CHECK((a * a.inv()) == Fp(1, p));
  CHECK((a + b) == Fp(4, p));
  CHECK((a * b) == Fp(-21, p));
  CHECK((a / b * b) == a);
  CHECK(Fp(p, p).is_zero());

  Rat x(1, 2), y(1, 3);
  CHECK((x + y) == Rat(5, 6));
  CHECK((x * y.inv()) == Rat(3, 2));
  CHECK((x - x).is_zero());
  CHECK(Rat(7, -14) == Rat(-1, 2));
}

TEST_CASE("rank examples") {
  CHECK(rank(qmat({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(qmat({{1, 0}, {0, 1}})) == 2);
  CHECK(rank(qmat({{0, 0}, {0, 0}})) == 0);
  CHECK(rank(pmat({{1, 2}, {2, 4}}, 5)) == 1);
  // entries that collapse only mod p
  CHECK(rank(pmat({{1, 1}, {1, 6}}, 5)) == 1);
  CHECK(rank(qmat({{1, 1}, {1, 6}})) == 2);
}

TEST_CASE("kernel of [[1,1]]") {
  auto ker = kernel_basis(qmat({{1, 1}}));
  REQUIRE(ker.size() == 1);
  // spanned by (1,-1)
  Rat ratio = ker[0][0] / ker[0][1];
  CHECK(ratio == Rat(-1));
}

TEST_CASE("solve 2x = 1 over Q") {
  auto sol = solve(qmat({{2}}), std::vector<Rat>{Rat(1)});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == Rat(1, 2));
}

TEST_CASE("solve inconsistent system") {
  auto sol = solve(qmat({{1, 1}, {1, 1}}), std::vector<Rat>{Rat(1), Rat(2)});
  CHECK(!sol.has_value());
}

TEST_CASE("inverse round trip") {
  auto m = qmat({{2, 1}, {1, 1}});
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK((m * *inv) == Matrix<Rat>::identity(2, Rat()));
  CHECK(!inverse(qmat({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("charpoly basics") {
  // diag(1,2): t^2 - 3t + 2
  auto cp = charpoly(qmat({{1, 0}, {0, 2}}));
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == Rat(2));
  CHECK(cp[1] == Rat(-3));
  CHECK(cp[2] == Rat(1));
  // nilpotent Jordan block: t^2
  auto cp2 = charpoly(qmat({{0, 1}, {0, 0}}));
  CHECK(cp2[0] == Rat(0));
  CHECK(cp2[1] == Rat(0));
  CHECK(cp2[2] == Rat(1));
}

TEST_CASE("rank-nullity property, random matrices") {
  std::mt19937_64 rng(12345);
  const std::uint64_t p = kDefaultPrime;
  for (int iter = 0; iter < 50; ++iter) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix<Fp> m(r, c, Fp(p));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = Fp(static_cast<long long>(rng() % 7) - 3, p);
    auto ker = kernel_basis(m);
    CHECK(rank(m) + ker.size() == c);
    for (auto& v : ker) {
      auto img = m.apply(v);
      for (auto& e : img) CHECK(e.is_zero());
    }
  }
}

TEST_CASE("Cayley-Hamilton on random small matrices") {
  std::mt19937_64 rng(777);
  const std::uint64_t p = kDefaultPrime;
  for (int iter = 0; iter < 30; ++iter) {
    std::size_t n = 1 + rng() % 4;
    Matrix<Fp> m(n, n, Fp(p));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = Fp(static_cast<long long>(rng() % 11) - 5, p);
    auto cp = charpoly(m);
    auto z = poly_at(cp, m);
    CHECK(z == Matrix<Fp>(n, n, Fp(p)));
  }
}

TEST_CASE("solve returns exact rationals") {
  // Hilbert-ish system where floating point would drift
  auto m = qmat({{1, 2, 3}, {2, 3, 4}, {3, 4, 6}});
  std::vector<Rat> b = {Rat(1), Rat(1), Rat(1)};
  auto sol = solve(m, b);
  REQUIRE(sol.has_value());
  auto back = m.apply(*sol);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == b[i]);
}

TEST_CASE("polynomial division and gcd over GF(p)") {
  const std::uint64_t p = 7;
  auto f = fppoly::make({-1, 0, 1}, p);        // t^2 - 1
  auto g = fppoly::make({1, 1}, p);            // t + 1
  auto [q, r] = fppoly::divrem(f, g, p);
  CHECK(r.empty());
  CHECK(q == fppoly::make({-1, 1}, p));        // t - 1
  auto d = fppoly::gcd(f, fppoly::make({-1, 1}, p), p);
  CHECK(d == fppoly::make({-1, 1}, p));
}

TEST_CASE("root isolation over GF(7)") {
  const std::uint64_t p = 7;
  // t^2 + 1 has no roots mod 7
  auto rep = fppoly::factor_squarefree_roots(fppoly::make({1, 0, 1}, p), p);
  CHECK(rep.roots.empty());
  CHECK(fppoly::degree(rep.remainder) == 2);

  // (t-2)^2 (t-3) = t^3 - 7t^2 + 16t - 12
  auto rep2 =
      fppoly::factor_squarefree_roots(fppoly::make({-12, 16, -7, 1}, p), p);
  REQUIRE(rep2.roots.size() == 2);
  CHECK(rep2.roots[0] == std::pair<std::uint64_t, std::size_t>{2, 2});
  CHECK(rep2.roots[1] == std::pair<std::uint64_t, std::size_t>{3, 1});
  CHECK(fppoly::degree(rep2.remainder) == 0);
}

TEST_CASE("root isolation at the working prime") {
  const std::uint64_t p = kDefaultPrime;
  // (t - 12345)(t - 999999)(t^2 + t + 1); the quadratic part has roots iff
  // p = 1 mod 3, and 1000003 = 1 mod 3, so it splits too.
  auto f = fppoly::mul(fppoly::make({-12345, 1}, p),
                       fppoly::make({-999999, 1}, p), p);
  auto rep = fppoly::factor_squarefree_roots(f, p, 42);
  REQUIRE(rep.roots.size() == 2);
  CHECK(rep.roots[0].first == 12345);
  CHECK(rep.roots[1].first == 999999);
  CHECK(fppoly::degree(rep.remainder) == 0);
}

TEST_CASE("charpoly agrees between Q and GF(p) for integer matrices") {
  std::mt19937_64 rng(31337);
  const std::uint64_t p = kDefaultPrime;
  for (int iter = 0; iter < 10; ++iter) {
    std::size_t n = 2 + rng() % 3;
    Matrix<Rat> mq(n, n, Rat());
    Matrix<Fp> mp(n, n, Fp(p));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long long v = static_cast<long long>(rng() % 9) - 4;
        mq(i, j) = Rat(v);
        mp(i, j) = Fp(v, p);
      }
    auto cq = charpoly(mq);
    auto cpp = charpoly(mp);
    REQUIRE(cq.size() == cpp.size());
    for (std::size_t i = 0; i < cq.size(); ++i) {
      long long num = cq[i].q.get_num().get_si();
      CHECK(Fp(num, p) == cpp[i]);
    }
  }
}
