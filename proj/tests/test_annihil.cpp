#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lawkit/annihil.hpp"

using namespace lawkit;
using namespace lawkit::testing;

TEST_CASE("right annihilator of a diagonal projection") {
  AnnihilatorResult r = right_annihilator({diag({1, 0})});
  CHECK(op_norm(r.generator.element() - diag({0, 1})) < 1e-10);
  CHECK(r.subspace_dim == 2);
  CHECK(r.oracle_dim == 2);
}

TEST_CASE("annihilator of zero is the identity") {
  FinStarAlgebra alg({2, 3});
  AnnihilatorResult r = right_annihilator({AlgebraElement::zero(alg)});
  CHECK(op_norm(r.generator.element() - AlgebraElement::identity(alg)) < 1e-12);
  CHECK(r.subspace_dim == alg.dim());
  CHECK(r.dims_agree());
  CHECK(op_norm(left_annihilator({AlgebraElement::zero(alg)}).generator.element() -
                AlgebraElement::identity(alg)) < 1e-12);
}

TEST_CASE("stacked kernels across several generators") {
  // ker([[0,1],[0,0]]) = span(e1), ker(diag(1,0)) = span(e2): intersection 0
  AnnihilatorResult r = right_annihilator({elem(2, {0, 1, 0, 0}), diag({1, 0})});
  CHECK(op_norm(r.generator.element()) < 1e-10);
  CHECK(r.subspace_dim == 0);
  CHECK(r.oracle_dim == 0);
}

TEST_CASE("left annihilator through the adjoint identity") {
  AnnihilatorResult l = left_annihilator({diag({1, 0})});
  CHECK(op_norm(l.generator.element() - diag({0, 1})) < 1e-10);
  CHECK(l.dims_agree());

  l = left_annihilator({elem(2, {0, 1, 0, 0})});
  CHECK(op_norm(l.generator.element() - diag({0, 1})) < 1e-10);
}

TEST_CASE("supports") {
  Supports s = supports(diag({0, 5}));
  CHECK(op_norm(s.right.element() - diag({0, 1})) < 1e-10);
  CHECK(op_norm(s.left.element() - diag({0, 1})) < 1e-10);

  FinStarAlgebra alg({2, 2});
  s = supports(AlgebraElement::identity(alg));
  CHECK(op_norm(s.right.element() - AlgebraElement::identity(alg)) < 1e-12);
  CHECK(op_norm(s.left.element() - AlgebraElement::identity(alg)) < 1e-12);

  AlgebraElement nil = elem(2, {0, 1, 0, 0});
  s = supports(nil);
  CHECK(op_norm(s.right.element() - diag({0, 1})) < 1e-10);
  CHECK(op_norm(s.left.element() - diag({1, 0})) < 1e-10);
  CHECK(op_norm(nil * s.right.element() - nil) < 1e-10);
  CHECK(op_norm(s.left.element() * nil - nil) < 1e-10);
}

TEST_CASE("x r(x) = x and r(x) is least among sampled projections") {
  Rng rng(17);
  FinStarAlgebra alg({3});
  for (int i = 0; i < 30; ++i) {
    AlgebraElement x = random_element(alg, rng);
    Projection r = supports(x).right;
    CHECK(op_norm(x * r.element() - x) < 1e-8 * std::max(1.0, op_norm(x)));
    Projection candidate(random_projection_element(alg, rng));
    const bool fixes = op_norm(x * candidate.element() - x) <
                       1e-8 * std::max(1.0, op_norm(x));
    if (fixes) CHECK(leq(r, candidate, 1e-7));
  }
}

TEST_CASE("oracle equivalence on random subsets") {
  Rng rng(42);
  for (const FinStarAlgebra& alg :
       {FinStarAlgebra({2}), FinStarAlgebra({2, 2}), FinStarAlgebra({3, 1})}) {
    for (int i = 0; i < 40; ++i) {
      std::vector<AlgebraElement> set;
      for (int k = rng.uniform_int(1, 3); k > 0; --k)
        set.push_back(random_element(alg, rng));
      AnnihilatorResult r = right_annihilator(set);
      CHECK(r.dims_agree());
      for (const AlgebraElement& s : set)
        CHECK(op_norm(s * r.generator.element()) < 1e-8);
    }
  }
}

TEST_CASE("baer certification passes") {
  CHECK(certify_baer(FinStarAlgebra({1}), 20, 1).ok());
  CHECK(certify_baer(FinStarAlgebra({2}), 200, 2).ok());
  CHECK(certify_baer(FinStarAlgebra({2, 2}), 100, 3).ok());
}
