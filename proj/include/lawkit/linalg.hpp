#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace lawkit {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Fixed sweep order (p ascending, q ascending), stopping when the
/// off-diagonal Frobenius norm drops below 1e-12 * max(1, scale) or after 100
/// sweeps. Eigenvalues are returned ascending; ties keep the order produced by
/// the sweeps, so identical inputs yield bit-identical outputs.
inline void jacobi_hermitian(Mat a, Eigen::VectorXd& evals, Mat& evecs) {
  const int n = static_cast<int>(a.rows());
  evecs = Mat::Identity(n, n);
  evals.resize(n);
  if (n == 1) {
    evals(0) = a(0, 0).real();
    return;
  }
  const double scale = a.norm();
  const double stop = 1e-12 * std::max(1.0, scale);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) < stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        const Complex u = a(p, q) / g;       // phase of the coupling entry
        const Complex ubar = std::conj(u);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Subspace unitary V = diag(1, conj(u)) * [[c, s], [-s, c]],
        // i.e. V(p,p)=c, V(p,q)=s, V(q,p)=-ubar*s, V(q,q)=ubar*c.
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c - akq * ubar * s;
          a(k, q) = akp * s + akq * ubar * c;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = apk * c - aqk * u * s;
          a(q, k) = apk * s + aqk * u * c;
        }
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
          const Complex vkp = evecs(k, p);
          const Complex vkq = evecs(k, q);
          evecs(k, p) = vkp * c - vkq * ubar * s;
          evecs(k, q) = vkp * s + vkq * ubar * c;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) evals(i) = a(i, i).real();
  // Ascending sort; stable so degenerate spectra keep sweep order.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int i, int j) { return evals(i) < evals(j); });
  Eigen::VectorXd sorted(n);
  Mat vsorted(n, n);
  for (int i = 0; i < n; ++i) {
    sorted(i) = evals(perm[i]);
    vsorted.col(i) = evecs.col(perm[i]);
  }
  evals = sorted;
  evecs = vsorted;
}

/// Row-echelon elimination with partial pivoting; threshold is relative to
/// the largest entry. Returns the pivot columns (their count is the rank).
/// Kept free of any eigensolver so it can serve as an independent oracle.
inline std::vector<int> eliminate(Mat& m, double tol) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const double thresh = tol * std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<int> pivot_cols;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int best = row;
    for (int r = row + 1; r < rows; ++r)
      if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
    if (std::abs(m(best, col)) <= thresh) continue;
    if (best != row) m.row(best).swap(m.row(row));
    m.row(row) /= m(row, col);
    for (int r = 0; r < rows; ++r) {
      if (r == row) continue;
      if (std::abs(m(r, col)) > 0.0) m.row(r) -= m(r, col) * m.row(row);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

inline int rank_via_elimination(Mat m, double tol) {
  return static_cast<int>(eliminate(m, tol).size());
}

/// Nullspace basis (columns) from the reduced echelon form; one basis vector
/// per free column, deterministic for identical input.
inline Mat nullspace_via_elimination(Mat m, double tol) {
  const int cols = static_cast<int>(m.cols());
  std::vector<int> pivots = eliminate(m, tol);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  const int nullity = cols - static_cast<int>(pivots.size());
  Mat basis = Mat::Zero(cols, nullity);
  int k = 0;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    basis(f, k) = Complex(1.0, 0.0);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], k) = -m(static_cast<int>(r), f);
    ++k;
  }
  return basis;
}

/// Modified Gram-Schmidt on the columns; near-dependent columns are dropped.
inline Mat orthonormal_columns(const Mat& cols_in, double drop_tol = 1e-10) {
  Mat out(cols_in.rows(), cols_in.cols());
  int kept = 0;
  for (int j = 0; j < cols_in.cols(); ++j) {
    Vec v = cols_in.col(j);
    const double original = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < kept; ++i) v -= out.col(i).dot(v) * out.col(i);
    if (v.norm() <= drop_tol * std::max(1.0, original)) continue;
    out.col(kept++) = v / v.norm();
  }
  return out.leftCols(kept);
}

}  // namespace lawkit
