#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lawkit/errors.hpp"
#include "lawkit/linalg.hpp"

namespace lawkit {

/// Absolute tolerance after scaling by max(1, norm); predicate operations take
/// it as an explicit parameter.
inline constexpr double kDefaultTol = 1e-9;
/// Eigenvalues closer than this are merged into one eigenspace before any
/// rank or support decision.
inline constexpr double kClusterTol = 1e-10;

/// Signature of a finite-dimensional C*-algebra: a direct sum of full matrix
/// blocks M_{n_1} + ... + M_{n_k}.
struct FinStarAlgebra {
  std::vector<int> block_sizes;
  std::string label;

  explicit FinStarAlgebra(std::vector<int> sizes, std::string lbl = "")
      : block_sizes(std::move(sizes)), label(std::move(lbl)) {
    if (block_sizes.empty())
      throw structural_error("algebra needs at least one block");
    for (std::size_t i = 0; i < block_sizes.size(); ++i)
      if (block_sizes[i] < 1)
        throw structural_error("nonpositive size at block " + std::to_string(i));
  }

  int num_blocks() const { return static_cast<int>(block_sizes.size()); }

  /// Vector-space dimension, sum of n_i^2.
  int dim() const {
    int d = 0;
    for (int n : block_sizes) d += n * n;
    return d;
  }

  bool same_shape(const FinStarAlgebra& other) const {
    return block_sizes == other.block_sizes;
  }
};

/// An element of a finite-dimensional C*-algebra, stored as dense complex
/// blocks conforming to the algebra signature. Immutable after construction.
class AlgebraElement {
public:
  AlgebraElement(FinStarAlgebra algebra, std::vector<Mat> blocks)
      : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != algebra_.num_blocks())
      throw structural_error("expected " + std::to_string(algebra_.num_blocks()) +
                             " blocks, got " + std::to_string(blocks_.size()));
    for (int i = 0; i < algebra_.num_blocks(); ++i) {
      const int n = algebra_.block_sizes[i];
      if (blocks_[i].rows() != n || blocks_[i].cols() != n)
        throw structural_error("shape mismatch at block " + std::to_string(i));
    }
  }

  static AlgebraElement zero(const FinStarAlgebra& alg) {
    std::vector<Mat> blocks;
    for (int n : alg.block_sizes) blocks.push_back(Mat::Zero(n, n));
    return AlgebraElement(alg, std::move(blocks));
  }

  static AlgebraElement identity(const FinStarAlgebra& alg) {
    std::vector<Mat> blocks;
    for (int n : alg.block_sizes) blocks.push_back(Mat::Identity(n, n));
    return AlgebraElement(alg, std::move(blocks));
  }

  const FinStarAlgebra& algebra() const { return algebra_; }
  int num_blocks() const { return algebra_.num_blocks(); }
  const Mat& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }

  bool same_algebra(const AlgebraElement& other) const {
    return algebra_.same_shape(other.algebra_);
  }

  AlgebraElement adjoint() const {
    std::vector<Mat> blocks;
    blocks.reserve(blocks_.size());
    for (const Mat& b : blocks_) blocks.push_back(b.adjoint());
    return AlgebraElement(algebra_, std::move(blocks));
  }

  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    x.require_same(y);
    std::vector<Mat> blocks;
    for (int i = 0; i < x.num_blocks(); ++i) blocks.push_back(x.block(i) + y.block(i));
    return AlgebraElement(x.algebra_, std::move(blocks));
  }

  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    x.require_same(y);
    std::vector<Mat> blocks;
    for (int i = 0; i < x.num_blocks(); ++i) blocks.push_back(x.block(i) - y.block(i));
    return AlgebraElement(x.algebra_, std::move(blocks));
  }

  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    x.require_same(y);
    std::vector<Mat> blocks;
    for (int i = 0; i < x.num_blocks(); ++i) blocks.push_back(x.block(i) * y.block(i));
    return AlgebraElement(x.algebra_, std::move(blocks));
  }

  friend AlgebraElement operator*(Complex c, const AlgebraElement& x) {
    std::vector<Mat> blocks;
    for (int i = 0; i < x.num_blocks(); ++i) blocks.push_back(c * x.block(i));
    return AlgebraElement(x.algebra_, std::move(blocks));
  }

  friend AlgebraElement operator*(double c, const AlgebraElement& x) {
    return Complex(c, 0.0) * x;
  }

  friend AlgebraElement operator-(const AlgebraElement& x) { return -1.0 * x; }

private:
  void require_same(const AlgebraElement& other) const {
    if (same_algebra(other)) return;
    const int k = std::min(num_blocks(), other.num_blocks());
    for (int i = 0; i < k; ++i)
      if (algebra_.block_sizes[i] != other.algebra_.block_sizes[i])
        throw structural_error("shape mismatch at block " + std::to_string(i));
    throw structural_error("shape mismatch at block " + std::to_string(k));
  }

  FinStarAlgebra algebra_;
  std::vector<Mat> blocks_;
};

/// Hilbert-Schmidt inner product sum_i tr(a_i^* b_i).
inline Complex hs_inner(const AlgebraElement& a, const AlgebraElement& b) {
  Complex acc(0.0, 0.0);
  for (int i = 0; i < a.num_blocks(); ++i)
    acc += (a.block(i).adjoint() * b.block(i)).trace();
  return acc;
}

inline double frobenius(const AlgebraElement& x) {
  double acc = 0.0;
  for (int i = 0; i < x.num_blocks(); ++i) acc += x.block(i).squaredNorm();
  return std::sqrt(acc);
}

/// Flatten to a vector in C^dim (blocks in order, column-major within blocks).
inline Vec to_vector(const AlgebraElement& x) {
  Vec v(x.algebra().dim());
  int at = 0;
  for (int i = 0; i < x.num_blocks(); ++i) {
    const int n = x.algebra().block_sizes[i];
    v.segment(at, n * n) = Eigen::Map<const Vec>(x.block(i).data(), n * n);
    at += n * n;
  }
  return v;
}

inline AlgebraElement from_vector(const FinStarAlgebra& alg, const Vec& v) {
  std::vector<Mat> blocks;
  int at = 0;
  for (int n : alg.block_sizes) {
    blocks.push_back(Eigen::Map<const Mat>(v.data() + at, n, n));
    at += n * n;
  }
  return AlgebraElement(alg, std::move(blocks));
}

/// Per-block eigendecomposition of a self-adjoint element. Eigenvalues are
/// ascending per block; the unitary's columns are the eigenvectors.
struct EigenDecomposition {
  std::vector<Eigen::VectorXd> eigenvalues;
  AlgebraElement unitary;

  AlgebraElement reconstruct() const {
    std::vector<Mat> blocks;
    for (int i = 0; i < unitary.num_blocks(); ++i) {
      const Mat& u = unitary.block(i);
      blocks.push_back(u * eigenvalues[static_cast<std::size_t>(i)]
                               .cast<Complex>()
                               .asDiagonal() *
                       u.adjoint());
    }
    return AlgebraElement(unitary.algebra(), std::move(blocks));
  }

  /// Element with the same eigenvectors and mapped eigenvalues.
  template <typename F>
  AlgebraElement apply(F&& f) const {
    std::vector<Mat> blocks;
    for (int i = 0; i < unitary.num_blocks(); ++i) {
      const Mat& u = unitary.block(i);
      Eigen::VectorXd mapped = eigenvalues[static_cast<std::size_t>(i)];
      for (int j = 0; j < mapped.size(); ++j) mapped(j) = f(mapped(j));
      blocks.push_back(u * mapped.cast<Complex>().asDiagonal() * u.adjoint());
    }
    return AlgebraElement(unitary.algebra(), std::move(blocks));
  }
};

/// Operator norm: sqrt of the largest eigenvalue of x*x, maximized over blocks.
inline double op_norm(const AlgebraElement& x) {
  double best = 0.0;
  for (int i = 0; i < x.num_blocks(); ++i) {
    Mat gram = x.block(i).adjoint() * x.block(i);
    Eigen::VectorXd evals;
    Mat evecs;
    jacobi_hermitian(gram, evals, evecs);
    const double top = evals(evals.size() - 1);
    best = std::max(best, std::sqrt(std::max(0.0, top)));
  }
  return best;
}

inline double distance(const AlgebraElement& a, const AlgebraElement& b) {
  return op_norm(a - b);
}

inline bool is_hermitian(const AlgebraElement& x, double tol = kDefaultTol) {
  return op_norm(x - x.adjoint()) <= tol * std::max(1.0, op_norm(x));
}

/// Self-adjoint idempotent within tol.
inline bool is_projection(const AlgebraElement& x, double tol = kDefaultTol) {
  return op_norm(x - x.adjoint()) <= tol && op_norm(x * x - x) <= tol;
}

inline EigenDecomposition hermitian_eigen(const AlgebraElement& x,
                                          double tol = kDefaultTol) {
  if (!is_hermitian(x, tol))
    throw precondition_error("hermitian_eigen: input is not self-adjoint");
  std::vector<Eigen::VectorXd> evals(static_cast<std::size_t>(x.num_blocks()));
  std::vector<Mat> unit;
  for (int i = 0; i < x.num_blocks(); ++i) {
    Mat sym = 0.5 * (x.block(i) + x.block(i).adjoint());
    Mat evecs;
    jacobi_hermitian(sym, evals[static_cast<std::size_t>(i)], evecs);
    unit.push_back(std::move(evecs));
  }
  return EigenDecomposition{std::move(evals),
                            AlgebraElement(x.algebra(), std::move(unit))};
}

struct SelfAdjointParts {
  AlgebraElement positive;
  AlgebraElement negative;
  AlgebraElement absolute;
};

/// a = a_+ - a_-, a_+ a_- = 0, |a| = a_+ + a_-.
inline SelfAdjointParts decompose_selfadjoint(const AlgebraElement& a,
                                              double tol = kDefaultTol) {
  EigenDecomposition eig = hermitian_eigen(a, tol);
  return SelfAdjointParts{
      eig.apply([](double t) { return std::max(t, 0.0); }),
      eig.apply([](double t) { return std::max(-t, 0.0); }),
      eig.apply([](double t) { return std::abs(t); })};
}

/// True if the eigenvalue counts as zero for rank purposes (clustered with 0
/// at the 1e-10 scale).
inline bool eigenvalue_is_zero(double t, double scale) {
  return std::abs(t) <= kClusterTol * std::max(1.0, scale);
}

/// Matrix-unit basis of the algebra: for each block, all E_{rc}. A spanning
/// set for generator-level checks.
inline std::vector<AlgebraElement> matrix_units(const FinStarAlgebra& alg) {
  std::vector<AlgebraElement> units;
  units.reserve(static_cast<std::size_t>(alg.dim()));
  for (int i = 0; i < alg.num_blocks(); ++i) {
    const int n = alg.block_sizes[i];
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        AlgebraElement e = AlgebraElement::zero(alg);
        std::vector<Mat> blocks;
        for (int j = 0; j < alg.num_blocks(); ++j) blocks.push_back(e.block(j));
        blocks[static_cast<std::size_t>(i)](r, c) = Complex(1.0, 0.0);
        units.emplace_back(alg, std::move(blocks));
      }
    }
  }
  return units;
}

/// Orthonormal basis (Hilbert-Schmidt) of the span of the given elements.
inline std::vector<AlgebraElement> orthonormal_span(
    const std::vector<AlgebraElement>& gens, double drop_tol = 1e-10) {
  if (gens.empty()) return {};
  const FinStarAlgebra& alg = gens.front().algebra();
  Mat cols(alg.dim(), static_cast<int>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j)
    cols.col(static_cast<int>(j)) = to_vector(gens[j]);
  Mat onb = orthonormal_columns(cols, drop_tol);
  std::vector<AlgebraElement> out;
  for (int j = 0; j < onb.cols(); ++j) out.push_back(from_vector(alg, onb.col(j)));
  return out;
}

/// Frobenius distance from x to the span of an orthonormal family.
inline double span_residual(const std::vector<AlgebraElement>& onb,
                            const AlgebraElement& x) {
  AlgebraElement residual = x;
  for (const AlgebraElement& b : onb) residual = residual - hs_inner(b, x) * b;
  return frobenius(residual);
}

}  // namespace lawkit
