// Training matrices over {0} union the q-th roots of unity.
// Entries are stored as integer exponents so that correlation sums over
// exponent differences stay exact for as long as possible; the complex
// value of exponent e is exp(2*pi*i*e/q) and -1 marks a zero entry.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace szcz {

using cdouble = std::complex<double>;

inline constexpr std::int32_t kZeroEntry = -1;

// mod with a result in [0,q) for any sign of v
inline int mod_q(long long v, int q) {
  long long r = v % q;
  return int(r < 0 ? r + q : r);
}

struct SparseMatrix {
  int q = 2;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int32_t> entries;  // row-major, exponent in [0,q) or kZeroEntry

  SparseMatrix() = default;
  SparseMatrix(int q_, std::size_t rows_, std::size_t cols_)
      : q(q_), rows(rows_), cols(cols_), entries(rows_ * cols_, kZeroEntry) {
    if (q_ < 2) throw std::invalid_argument("modulus must be at least 2");
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("matrix dimensions must be positive");
  }

  std::int32_t& at(std::size_t g, std::size_t i) { return entries[g * cols + i]; }
  std::int32_t at(std::size_t g, std::size_t i) const { return entries[g * cols + i]; }
  bool present(std::size_t g, std::size_t i) const { return at(g, i) != kZeroEntry; }

  const std::int32_t* row(std::size_t g) const { return entries.data() + g * cols; }

  std::size_t row_nonzeros(std::size_t g) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < cols; ++i)
      if (present(g, i)) ++c;
    return c;
  }

  std::size_t total_nonzeros() const {
    std::size_t c = 0;
    for (auto e : entries)
      if (e != kZeroEntry) ++c;
    return c;
  }

  // zero fraction over the whole grid
  double sparsity() const {
    return double(rows * cols - total_nonzeros()) / double(rows * cols);
  }

  // per-row nonzero count when all rows agree, empty otherwise
  std::optional<std::size_t> uniform_row_weight() const {
    std::size_t w = row_nonzeros(0);
    for (std::size_t g = 1; g < rows; ++g)
      if (row_nonzeros(g) != w) return std::nullopt;
    return w;
  }

  bool dense() const { return total_nonzeros() == rows * cols; }
};

// exp(2*pi*i*k/q) for k = 0..q-1
inline std::vector<cdouble> unit_root_table(int q) {
  std::vector<cdouble> t(q);
  const double step = 2.0 * 3.141592653589793238462643383279502884 / q;
  for (int k = 0; k < q; ++k) t[k] = std::polar(1.0, step * k);
  t[0] = {1.0, 0.0};
  if (q % 2 == 0) t[q / 2] = {-1.0, 0.0};
  if (q % 4 == 0) {
    t[q / 4] = {0.0, 1.0};
    t[3 * q / 4] = {0.0, -1.0};
  }
  return t;
}

inline cdouble entry_value(const SparseMatrix& C, std::size_t g, std::size_t i) {
  auto e = C.at(g, i);
  if (e == kZeroEntry) return {0.0, 0.0};
  return unit_root_table(C.q)[e];
}

// throws when an exponent is outside [0,q) and not the zero sentinel
inline void validate_entries(const SparseMatrix& C) {
  for (auto e : C.entries)
    if (e != kZeroEntry && (e < 0 || e >= C.q))
      throw std::invalid_argument("entry exponent outside [0,q)");
}

inline bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.q == b.q && a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
}

}  // namespace szcz
