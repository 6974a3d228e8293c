#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lawkit/projlat.hpp"

using namespace lawkit;
using namespace lawkit::testing;

TEST_CASE("partial order on projections") {
  Projection e(diag({1, 0, 0}));
  Projection f(diag({1, 1, 0}));
  CHECK(leq(e, f));
  CHECK_FALSE(leq(f, e));
  CHECK(leq(e, e));

  Projection p(diag({1, 0}));
  Projection q(elem(2, {0.5, 0.5, 0.5, 0.5}));
  CHECK_FALSE(leq(p, q));
  CHECK_FALSE(leq(q, p));
}

TEST_CASE("orthogonality") {
  Projection e(diag({1, 0}));
  Projection f(diag({0, 1}));
  CHECK(orthogonal(e, f));
  CHECK_FALSE(orthogonal(e, e));
  Projection g(elem(2, {0.5, 0.5, 0.5, 0.5}));
  Projection h(elem(2, {0.5, -0.5, -0.5, 0.5}));
  CHECK(orthogonal(g, h));
}

TEST_CASE("supremum of families") {
  FinStarAlgebra m2 = m_n(2);
  Projection e(diag({1, 0}));
  Projection f(diag({0, 1}));
  CHECK(op_norm(sup_family({e, f}).element() - AlgebraElement::identity(m2)) < 1e-10);
  CHECK(op_norm(sup_family({e}).element() - e.element()) < 1e-12);

  // two rank-1 projections spanning all of C^2: stacked ranges have rank 2
  Projection slanted(elem(2, {0.5, 0.5, 0.5, 0.5}));
  Projection joined = sup_family({e, slanted});
  CHECK(joined.rank_per_block()[0] == 2);
  CHECK(op_norm(joined.element() - AlgebraElement::identity(m2)) < 1e-10);
}

TEST_CASE("infimum of families") {
  Projection a(diag({1, 1, 0}));
  Projection b(diag({0, 1, 1}));
  CHECK(op_norm(inf_family({a, b}).element() - diag({0, 1, 0})) < 1e-10);

  Projection e(diag({1, 0}));
  Projection one = Projection::identity(m_n(2));
  CHECK(op_norm(inf_family({e, one}).element() - e.element()) < 1e-10);

  // transversal rank-1 ranges intersect trivially
  Projection slanted(elem(2, {0.5, 0.5, 0.5, 0.5}));
  CHECK(op_norm(inf_family({e, slanted}).element()) < 1e-10);
}

TEST_CASE("empty families are rejected") {
  CHECK_THROWS_AS(sup_family({}), precondition_error);
  CHECK_THROWS_AS(inf_family({}), precondition_error);
}

TEST_CASE("non-projection input is rejected") {
  CHECK_THROWS_AS(Projection(diag({0.5, 0})), precondition_error);
}

TEST_CASE("rank cache counts eigenvalues at one") {
  Projection p(diag({1, 0, 1}));
  CHECK(p.rank_per_block() == std::vector<int>{2});
  Projection q(AlgebraElement::zero(FinStarAlgebra({2, 3})));
  CHECK(q.rank_per_block() == std::vector<int>{0, 0});
}

TEST_CASE("lattice suite finds no violations") {
  CHECK(verify_lattice(m_n(1), 20, 3).ok());
  CHECK(verify_lattice(m_n(2), 100, 7).ok());
  CHECK(verify_lattice(FinStarAlgebra({2, 3}), 100, 13).ok());
}

TEST_CASE("orthogonal sups equal plain sums") {
  Rng rng(31);
  FinStarAlgebra alg({3, 2});
  for (int i = 0; i < 40; ++i) {
    std::vector<AlgebraElement> fam = random_orthogonal_family(alg, 3, rng);
    std::vector<Projection> projs;
    AlgebraElement sum = AlgebraElement::zero(alg);
    for (const auto& p : fam) {
      projs.emplace_back(p);
      sum = sum + p;
    }
    CHECK(op_norm(sup_family(projs).element() - sum) <= 1e-8);
  }
}

TEST_CASE("least upper bound property by sampling") {
  Rng rng(57);
  FinStarAlgebra alg({3});
  for (int i = 0; i < 30; ++i) {
    Projection e(random_projection_element(alg, rng));
    Projection f(random_projection_element(alg, rng));
    Projection join = sup_family({e, f});
    Projection u(random_projection_element(alg, rng));
    if (leq(e, u, 1e-8) && leq(f, u, 1e-8)) CHECK(leq(join, u, 1e-7));
  }
}

TEST_CASE("De Morgan against a kernel-intersection oracle") {
  Rng rng(91);
  FinStarAlgebra alg({2, 2});
  for (int i = 0; i < 30; ++i) {
    Projection e(random_projection_element(alg, rng));
    Projection f(random_projection_element(alg, rng));
    Projection meet = inf_family({e, f});
    // oracle: range of the meet is ker(1-e) intersected with ker(1-f),
    // computed blockwise from stacked complements
    for (int b = 0; b < alg.num_blocks(); ++b) {
      const int n = alg.block_sizes[b];
      Mat stacked(2 * n, n);
      stacked.topRows(n) = Mat::Identity(n, n) - e.element().block(b);
      stacked.bottomRows(n) = Mat::Identity(n, n) - f.element().block(b);
      Mat null = nullspace_via_elimination(stacked, 1e-10);
      CHECK(meet.rank_per_block()[b] == null.cols());
      for (int c = 0; c < null.cols(); ++c) {
        Vec v = null.col(c);
        CHECK((meet.element().block(b) * v - v).norm() < 1e-8 * v.norm());
      }
    }
  }
}
