#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "qrt/basis.hpp"
#include "qrt/kronecker.hpp"

using namespace qrt;

namespace {
const Fp kP(kDefaultPrime);
}

TEST_CASE("push-down of simple and thin cover modules") {
  auto ball = regular_tree_ball(3, CenterKind::Source, 1);

  // a simple at a sink goes to dims (0,1) with zero matrices
  std::string sink = *ball.quiver.neighbors(ball.center).begin();
  RepFp s = simple_rep(ball.quiver, sink, kP);
  RepFp ks = push_down(ball, CenterKind::Source, s, 3);
  CHECK(ks.dim("a") == 0);
  CHECK(ks.dim("b") == 1);
  for (const Arrow& a : ks.quiver.arrows) CHECK(ks.mat(a.id).is_zero());

  // P(x,1) at the source center: dims (1,3), one unit per color, each in
  // its own row
  RepFp p1 = preprojective_rep(ball.quiver, ball.center, 1);
  RepFp kp = push_down(ball, CenterKind::Source, p1, 3);
  CHECK(kp.dim("a") == 1);
  CHECK(kp.dim("b") == 3);
  std::set<std::size_t> rows;
  for (const Arrow& a : kp.quiver.arrows) {
    const Matrix<Fp>& m = kp.mat(a.id);
    std::size_t nz = 0, row = 0;
    for (std::size_t r = 0; r < 3; ++r)
      if (!m(r, 0).is_zero()) {
        ++nz;
        row = r;
        CHECK(m(r, 0) == Fp(1, kP.p));
      }
    CHECK(nz == 1);
    rows.insert(row);
  }
  CHECK(rows.size() == 3);
  CHECK(is_indecomposable(kp));
}

TEST_CASE("dimension oracle basics") {
  CHECK(dim_recursion_oracle(3, 0) == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(dim_recursion_oracle(3, 1) == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(dim_recursion_oracle(3, 2) == std::pair<std::size_t, std::size_t>{3, 8});
  // n = 2 gives the staircase (t-1, t) pattern
  for (std::size_t t = 1; t <= 8; ++t)
    CHECK(dim_recursion_oracle(2, t) == std::pair<std::size_t, std::size_t>{t, t + 1});
  // n = 3 sink-component sequence
  std::vector<std::size_t> seq;
  for (std::size_t t = 0; t <= 4; ++t)
    seq.push_back(dim_recursion_oracle(3, t).second);
  CHECK(seq == std::vector<std::size_t>{1, 3, 8, 21, 55});
}

TEST_CASE("shell-walk dimensions equal the recursion for n <= 5, t <= 8") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t t = 0; t <= 8; ++t)
      CHECK(kron_preprojective_dims(n, t) == dim_recursion_oracle(n, t));
}

TEST_CASE("materialized preprojectives: dims, exceptionality, tree bases") {
  auto run = [](std::size_t n, std::size_t t) {
    CAPTURE(n);
    CAPTURE(t);
    auto kp = kron_preprojective(n, t);
    auto expect = dim_recursion_oracle(n, t);
    CHECK(kp.rep.dim("a") == expect.first);
    CHECK(kp.rep.dim("b") == expect.second);
    CHECK(is_exceptional(kp.rep));
    CHECK(is_tree_basis(kp.rep, kp.basis));
    auto cq = coefficient_quiver(kp.rep, kp.basis);
    CHECK(cq.edges.size() + 1 == kp.rep.dim_total());
    for (const auto& e : cq.edges) CHECK(e.coeff == "1");
  };
  for (std::size_t t = 0; t <= 8; ++t) run(2, t);
  for (std::size_t t = 0; t <= 4; ++t) run(3, t);
  for (std::size_t t = 0; t <= 3; ++t) run(4, t);
  for (std::size_t t = 0; t <= 2; ++t) run(5, t);
}

TEST_CASE("preinjective duals") {
  for (std::size_t t : {0u, 1u, 2u, 3u}) {
    RepFp q = kron_preinjective(3, t);
    auto expect = dim_recursion_oracle(3, t);
    CHECK(q.dim("a") == expect.second);
    CHECK(q.dim("b") == expect.first);
    CHECK(is_exceptional(q));
  }
}

TEST_CASE("push-down rejects mismatched hosts") {
  auto ball = regular_tree_ball(3, CenterKind::Source, 1);
  RepFp wrong = simple_rep(kronecker_quiver(2), "a", kP);
  CHECK_THROWS_AS(push_down(ball, CenterKind::Source, wrong, 3),
                  std::invalid_argument);
}
