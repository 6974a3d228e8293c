#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lawkit/projlat.hpp"

namespace lawkit {

/// Generator projection of an annihilator ideal plus the two independently
/// computed subspace dimensions (projection route vs. stacked-nullspace
/// oracle).
struct AnnihilatorResult {
  Projection generator;
  int subspace_dim;
  int oracle_dim;

  bool dims_agree() const { return subspace_dim == oracle_dim; }
};

namespace detail {

/// Left-multiplication operator of one block, acting on column-major
/// vectorized matrices: vec(s x) = (I (x) s) vec(x).
inline Mat left_mult_operator(const Mat& s) {
  const int n = static_cast<int>(s.rows());
  Mat op = Mat::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j) op.block(j * n, j * n, n, n) = s;
  return op;
}

/// Right-multiplication operator: vec(x s) = (s^T (x) I) vec(x).
inline Mat right_mult_operator(const Mat& s) {
  const int n = static_cast<int>(s.rows());
  Mat op = Mat::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      op.block(j * n, k * n, n, n) = s(k, j) * Mat::Identity(n, n);
  return op;
}

/// Nullspace of the stacked per-element operators, one block at a time.
/// Independent of the eigensolver path: plain elimination at threshold 1e-10.
inline std::vector<AlgebraElement> stacked_nullspace_basis(
    const std::vector<AlgebraElement>& set, bool right_side, double tol = 1e-10) {
  const FinStarAlgebra& alg = set.front().algebra();
  std::vector<AlgebraElement> basis;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_sizes[b];
    Mat stacked(static_cast<int>(set.size()) * n * n, n * n);
    for (std::size_t s = 0; s < set.size(); ++s) {
      const Mat& blk = set[s].block(b);
      stacked.middleRows(static_cast<int>(s) * n * n, n * n) =
          right_side ? left_mult_operator(blk) : right_mult_operator(blk);
    }
    Mat null = nullspace_via_elimination(stacked, tol);
    for (int c = 0; c < null.cols(); ++c) {
      Vec full = Vec::Zero(alg.dim());
      int at = 0;
      for (int j = 0; j < b; ++j) at += alg.block_sizes[j] * alg.block_sizes[j];
      full.segment(at, n * n) = null.col(c);
      basis.push_back(from_vector(alg, full));
    }
  }
  return basis;
}

}  // namespace detail

/// R(S) = gA with g the orthogonal projection onto the joint kernel of S,
/// built from the eigendecomposition of sum s*s. S = {0} yields g = 1.
inline AnnihilatorResult right_annihilator(const std::vector<AlgebraElement>& set) {
  if (set.empty()) throw precondition_error("right_annihilator: empty set");
  const FinStarAlgebra& alg = set.front().algebra();
  AlgebraElement gram = AlgebraElement::zero(alg);
  for (const AlgebraElement& s : set) gram = gram + s.adjoint() * s;
  Projection g = range_projection(gram).complement();
  int subspace_dim = 0;
  for (int b = 0; b < alg.num_blocks(); ++b)
    subspace_dim += g.rank_per_block()[b] * alg.block_sizes[b];
  int oracle_dim =
      static_cast<int>(detail::stacked_nullspace_basis(set, true).size());
  return AnnihilatorResult{std::move(g), subspace_dim, oracle_dim};
}

/// L(S) = (R(S*))* = Ae; computed through the adjoint identity.
inline AnnihilatorResult left_annihilator(const std::vector<AlgebraElement>& set) {
  if (set.empty()) throw precondition_error("left_annihilator: empty set");
  std::vector<AlgebraElement> adjoints;
  adjoints.reserve(set.size());
  for (const AlgebraElement& s : set) adjoints.push_back(s.adjoint());
  AnnihilatorResult r = right_annihilator(adjoints);
  int oracle_dim =
      static_cast<int>(detail::stacked_nullspace_basis(set, false).size());
  return AnnihilatorResult{r.generator, r.subspace_dim, oracle_dim};
}

struct Supports {
  Projection right;
  Projection left;
};

/// r(x) = 1 - g and l(x) = 1 - e: the least projections with x r(x) = x and
/// l(x) x = x.
inline Supports supports(const AlgebraElement& x) {
  Projection g = right_annihilator({x}).generator;
  Projection e = left_annihilator({x}).generator;
  return Supports{g.complement(), e.complement()};
}

struct BaerReport {
  int subsets = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

/// Sample subsets and certify: dimension agreement with the stacked-nullspace
/// oracle, membership of oracle basis vectors in gA, s g = 0, the
/// sup-of-supports identity, and the adjoint identity for left annihilators.
inline BaerReport certify_baer(const FinStarAlgebra& alg, int subsets,
                               std::uint64_t seed, double tol = 1e-8) {
  Rng rng(seed);
  BaerReport report;
  report.subsets = subsets;
  auto note = [&](int i, const std::string& what) {
    report.counterexamples.push_back("subset " + std::to_string(i) + ": " + what);
  };
  for (int i = 0; i < subsets; ++i) {
    std::vector<AlgebraElement> set;
    const int size = rng.uniform_int(1, 3);
    for (int k = 0; k < size; ++k) {
      switch (rng.uniform_int(0, 3)) {
        case 0: set.push_back(random_element(alg, rng)); break;
        case 1: set.push_back(random_hermitian(alg, rng)); break;
        case 2: set.push_back(random_projection_element(alg, rng)); break;
        default: set.push_back(AlgebraElement::zero(alg)); break;
      }
    }
    AnnihilatorResult right = right_annihilator(set);
    if (!right.dims_agree())
      note(i, "dimension mismatch: projection " + std::to_string(right.subspace_dim) +
                  " vs oracle " + std::to_string(right.oracle_dim));
    const AlgebraElement& g = right.generator.element();
    for (const AlgebraElement& s : set)
      if (op_norm(s * g) > tol) note(i, "s g != 0");
    for (const AlgebraElement& x : detail::stacked_nullspace_basis(set, true))
      if (frobenius(g * x - x) > tol * std::max(1.0, frobenius(x)))
        note(i, "oracle nullspace vector not fixed by g");

    // g = (sup of right supports)^perp
    std::vector<Projection> right_supports;
    for (const AlgebraElement& s : set) right_supports.push_back(supports(s).right);
    Projection via_sup = sup_family(right_supports).complement();
    if (op_norm(via_sup.element() - g) > tol)
      note(i, "sup-of-supports identity violated");

    // left annihilator through the adjoint identity, checked against the
    // right-multiplication oracle
    AnnihilatorResult left = left_annihilator(set);
    if (!left.dims_agree()) note(i, "left annihilator dimension mismatch");
    const AlgebraElement& e = left.generator.element();
    for (const AlgebraElement& x : detail::stacked_nullspace_basis(set, false))
      if (frobenius(x * e - x) > tol * std::max(1.0, frobenius(x)))
        note(i, "left oracle vector not fixed by e");
  }
  return report;
}

}  // namespace lawkit
