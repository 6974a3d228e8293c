#pragma once

#include <vector>

#include "lawkit/matstar.hpp"
#include "lawkit/rng.hpp"

namespace lawkit {

inline Mat random_complex_matrix(int n, Rng& rng) {
  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Complex(rng.normal(), rng.normal());
  return m;
}

/// Unitary from orthonormalizing a random complex matrix.
inline Mat random_unitary(int n, Rng& rng) {
  for (;;) {
    Mat q = orthonormal_columns(random_complex_matrix(n, rng), 1e-8);
    if (q.cols() == n) return q;
  }
}

inline AlgebraElement random_element(const FinStarAlgebra& alg, Rng& rng) {
  std::vector<Mat> blocks;
  for (int n : alg.block_sizes) blocks.push_back(random_complex_matrix(n, rng));
  return AlgebraElement(alg, std::move(blocks));
}

inline AlgebraElement random_hermitian(const FinStarAlgebra& alg, Rng& rng) {
  AlgebraElement x = random_element(alg, rng);
  return 0.5 * (x + x.adjoint());
}

/// Random projection: random unitary per block, then a random 0/1 indicator
/// on the diagonal.
inline AlgebraElement random_projection_element(const FinStarAlgebra& alg, Rng& rng) {
  std::vector<Mat> blocks;
  for (int n : alg.block_sizes) {
    Mat u = random_unitary(n, rng);
    Eigen::VectorXcd d(n);
    for (int i = 0; i < n; ++i) d(i) = Complex(rng.coin() ? 1.0 : 0.0, 0.0);
    blocks.push_back(u * d.asDiagonal() * u.adjoint());
  }
  return AlgebraElement(alg, std::move(blocks));
}

/// A family of pairwise orthogonal projections: a shared eigenbasis per block
/// with the diagonal slots dealt out among the family members (some slots may
/// stay unused).
inline std::vector<AlgebraElement> random_orthogonal_family(
    const FinStarAlgebra& alg, int count, Rng& rng) {
  std::vector<Mat> bases;
  for (int n : alg.block_sizes) bases.push_back(random_unitary(n, rng));
  std::vector<AlgebraElement> family;
  std::vector<std::vector<int>> owner;  // per block, slot -> member or -1
  for (int n : alg.block_sizes) {
    std::vector<int> slots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) slots[static_cast<std::size_t>(i)] = rng.uniform_int(-1, count - 1);
    owner.push_back(std::move(slots));
  }
  for (int member = 0; member < count; ++member) {
    std::vector<Mat> blocks;
    for (int b = 0; b < alg.num_blocks(); ++b) {
      const int n = alg.block_sizes[b];
      Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n);
      for (int i = 0; i < n; ++i)
        if (owner[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)] == member)
          d(i) = Complex(1.0, 0.0);
      blocks.push_back(bases[static_cast<std::size_t>(b)] * d.asDiagonal() *
                       bases[static_cast<std::size_t>(b)].adjoint());
    }
    family.emplace_back(alg, std::move(blocks));
  }
  return family;
}

}  // namespace lawkit
