#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "lawkit/matstar.hpp"

namespace lawkit::testing {

inline FinStarAlgebra m_n(int n) { return FinStarAlgebra({n}); }

/// Single-block element from row-major entries.
inline AlgebraElement elem(int n, std::initializer_list<Complex> rowmajor) {
  Mat m(n, n);
  int k = 0;
  for (const Complex& c : rowmajor) {
    m(k / n, k % n) = c;
    ++k;
  }
  return AlgebraElement(m_n(n), {m});
}

inline AlgebraElement diag(std::initializer_list<double> entries) {
  const int n = static_cast<int>(entries.size());
  Mat m = Mat::Zero(n, n);
  int k = 0;
  for (double d : entries) m(k, k) = Complex(d, 0.0), ++k;
  return AlgebraElement(m_n(n), {m});
}

inline bool bit_identical(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.same_algebra(b)) return false;
  for (int i = 0; i < a.num_blocks(); ++i)
    if (!(a.block(i).array() == b.block(i).array()).all()) return false;
  return true;
}

inline bool bit_identical(const std::string& a, const std::string& b) {
  return a == b;
}

}  // namespace lawkit::testing
