// Small dense complex matrices and the elimination-based inverse used by
// the estimator. Sizes here are a few dozen rows, so everything is direct.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparse_matrix.hpp"

namespace szcz {

struct ComplexMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<cdouble> a;  // row-major

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {
    if (r == 0 || c == 0) throw std::invalid_argument("matrix dimensions must be positive");
  }

  cdouble& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const cdouble& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

inline ComplexMatrix identity(std::size_t n) {
  ComplexMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = {1.0, 0.0};
  return I;
}

inline double max_abs(const ComplexMatrix& A) {
  double m = 0.0;
  for (const auto& v : A.a) m = std::max(m, std::abs(v));
  return m;
}

inline double inf_norm(const ComplexMatrix& A) {
  double m = 0.0;
  for (std::size_t r = 0; r < A.rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < A.cols; ++c) s += std::abs(A.at(r, c));
    m = std::max(m, s);
  }
  return m;
}

inline ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matmul dimension mismatch");
  ComplexMatrix C(A.rows, B.cols);
  for (std::size_t r = 0; r < A.rows; ++r)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const cdouble arc = A.at(r, k);
      if (arc == cdouble{0.0, 0.0}) continue;
      const cdouble* brow = &B.at(k, 0);
      cdouble* crow = &C.at(r, 0);
      for (std::size_t c = 0; c < B.cols; ++c) crow[c] += arc * brow[c];
    }
  return C;
}

inline ComplexMatrix conj_transpose(const ComplexMatrix& A) {
  ComplexMatrix T(A.cols, A.rows);
  for (std::size_t r = 0; r < A.rows; ++r)
    for (std::size_t c = 0; c < A.cols; ++c) T.at(c, r) = std::conj(A.at(r, c));
  return T;
}

// X * X^H. The product is Hermitian up to rounding; asymmetry beyond 1e-9
// indicates a broken input and throws.
inline ComplexMatrix gram(const ComplexMatrix& X) {
  ComplexMatrix G = matmul(X, conj_transpose(X));
  double asym = 0.0;
  for (std::size_t r = 0; r < G.rows; ++r)
    for (std::size_t c = 0; c < G.cols; ++c)
      asym = std::max(asym, std::abs(G.at(r, c) - std::conj(G.at(c, r))));
  if (asym > 1e-9) throw std::runtime_error("gram asymmetry exceeds tolerance");
  return G;
}

struct SingularMatrixError : std::runtime_error {
  std::size_t pivot_index;
  explicit SingularMatrixError(std::size_t k)
      : std::runtime_error("singular matrix: no usable pivot at elimination step " +
                           std::to_string(k)),
        pivot_index(k) {}
};

// Gauss-Jordan inverse with partial pivoting. A pivot below
// 1e-12 * max|A| raises SingularMatrixError with the failing step; the
// multiply-back residual is checked before returning.
inline ComplexMatrix invert_hermitian(const ComplexMatrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("inverse needs a square matrix");
  const std::size_t n = A.rows;
  const double scale = max_abs(A);
  const double pivot_floor = 1e-12 * scale;

  ComplexMatrix W = A;
  ComplexMatrix Inv = identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    double best_mag = std::abs(W.at(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double mag = std::abs(W.at(r, k));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best_mag <= pivot_floor) throw SingularMatrixError(k);
    if (best != k) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(W.at(k, c), W.at(best, c));
        std::swap(Inv.at(k, c), Inv.at(best, c));
      }
    }
    const cdouble piv = W.at(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      W.at(k, c) /= piv;
      Inv.at(k, c) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      const cdouble f = W.at(r, k);
      if (f == cdouble{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        W.at(r, c) -= f * W.at(k, c);
        Inv.at(r, c) -= f * Inv.at(k, c);
      }
    }
  }

  ComplexMatrix R = matmul(A, Inv);
  for (std::size_t i = 0; i < n; ++i) R.at(i, i) -= cdouble{1.0, 0.0};
  if (max_abs(R) > 1e-8 * scale)
    throw std::runtime_error("inverse residual exceeds tolerance");
  return Inv;
}

}  // namespace szcz
