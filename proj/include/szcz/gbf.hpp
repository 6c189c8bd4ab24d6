// Quadratic-plus-linear functions from binary variable vectors to Z_q and
// the complex arrays they generate.
//
// A function uses n row variables and m column variables. Row index g and
// column index i are expanded LSB first: bit h of g is row variable h+1,
// bit j of i is column variable j+1. Internally a variable is a single id:
// ids 0..n-1 are the row variables, ids n..n+m-1 are the column variables.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparse_matrix.hpp"

namespace szcz {

struct Gbf {
  struct Term {
    int a = 0, b = 0;  // variable ids
    int coeff = 0;     // in Z_q
  };

  int q = 2;
  int n = 1;  // row variables, 2^n rows
  int m = 1;  // column variables, 2^m cols
  std::vector<Term> quadratic;
  std::vector<int> linear_y;  // size n
  std::vector<int> linear_x;  // size m
  int constant = 0;

  int y_var(int s) const {  // 1-indexed row variable -> id
    if (s < 1 || s > n) throw std::out_of_range("row variable index out of range");
    return s - 1;
  }
  int x_var(int j) const {  // 1-indexed column variable -> id
    if (j < 1 || j > m) throw std::out_of_range("column variable index out of range");
    return n + j - 1;
  }
};

inline void validate_gbf(const Gbf& f) {
  if (f.q < 2 || f.q % 2 != 0) throw std::invalid_argument("modulus must be even and at least 2");
  if (f.n < 1) throw std::invalid_argument("at least one row variable is required");
  if (f.m < 1) throw std::invalid_argument("at least one column variable is required");
  if (f.m + f.n > 26) throw std::invalid_argument("m + n exceeds the supported limit of 26");
  if ((int)f.linear_y.size() != f.n) throw std::invalid_argument("row-linear coefficient count must equal n");
  if ((int)f.linear_x.size() != f.m) throw std::invalid_argument("column-linear coefficient count must equal m");
  for (const auto& t : f.quadratic) {
    if (t.a < 0 || t.a >= f.n + f.m || t.b < 0 || t.b >= f.n + f.m)
      throw std::invalid_argument("quadratic term variable id out of range");
  }
}

inline int eval_gbf(const Gbf& f, std::uint32_t g, std::uint32_t i) {
  if (g >> f.n) throw std::out_of_range("row index out of range");
  if (i >> f.m) throw std::out_of_range("column index out of range");
  // bit of the combined (y,x) assignment for a variable id
  auto bit = [&](int id) -> std::uint32_t {
    return id < f.n ? (g >> id) & 1u : (i >> (id - f.n)) & 1u;
  };
  long long acc = f.constant;
  for (const auto& t : f.quadratic)
    if (bit(t.a) && bit(t.b)) acc += t.coeff;
  for (int s = 0; s < f.n; ++s)
    if ((g >> s) & 1u) acc += f.linear_y[s];
  for (int j = 0; j < f.m; ++j)
    if ((i >> j) & 1u) acc += f.linear_x[j];
  return mod_q(acc, f.q);
}

// all 2^n x 2^m entries present
inline SparseMatrix dense_array(const Gbf& f) {
  validate_gbf(f);
  SparseMatrix C(f.q, std::size_t(1) << f.n, std::size_t(1) << f.m);
  for (std::size_t g = 0; g < C.rows; ++g)
    for (std::size_t i = 0; i < C.cols; ++i)
      C.at(g, i) = eval_gbf(f, std::uint32_t(g), std::uint32_t(i));
  return C;
}

// Restriction: entry (g,i) survives only when the column bits at the listed
// positions match the leading row bits, i.e. bit w_alpha of i equals bit
// alpha of g for alpha = 1..p. Positions are 1-indexed column variables.
struct Restriction {
  std::vector<int> indices;
};

inline void validate_restriction(const Gbf& f, const Restriction& w) {
  const int p = int(w.indices.size());
  if (p > f.n || p > f.m) throw std::invalid_argument("restriction is longer than the variable supply");
  std::vector<int> sorted = w.indices;
  std::sort(sorted.begin(), sorted.end());
  for (int a = 0; a < p; ++a) {
    if (w.indices[a] < 1 || w.indices[a] > f.m)
      throw std::invalid_argument("restriction index out of range");
    if (a > 0 && sorted[a] == sorted[a - 1])
      throw std::invalid_argument("restriction indices must be distinct");
  }
}

inline SparseMatrix sparse_array(const Gbf& f, const Restriction& w) {
  validate_gbf(f);
  validate_restriction(f, w);
  SparseMatrix C(f.q, std::size_t(1) << f.n, std::size_t(1) << f.m);
  for (std::size_t g = 0; g < C.rows; ++g) {
    for (std::size_t i = 0; i < C.cols; ++i) {
      bool keep = true;
      for (std::size_t a = 0; a < w.indices.size(); ++a) {
        std::uint32_t ibit = (std::uint32_t(i) >> (w.indices[a] - 1)) & 1u;
        std::uint32_t gbit = (std::uint32_t(g) >> a) & 1u;
        if (ibit != gbit) { keep = false; break; }
      }
      if (keep) C.at(g, i) = eval_gbf(f, std::uint32_t(g), std::uint32_t(i));
    }
  }
  return C;
}

}  // namespace szcz
