// Text format for training matrices. Header line "q N L", then N rows of
// L whitespace-separated tokens: "." is a zero entry and an integer k in
// [0,q) is the entry with exponent k. For q = 2 the tokens "+" and "-"
// alias 0 and 1; binary matrices are also written that way.
#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sparse_matrix.hpp"

namespace szcz {

inline std::string format_matrix(const SparseMatrix& C) {
  std::ostringstream out;
  out << C.q << ' ' << C.rows << ' ' << C.cols << '\n';
  for (std::size_t g = 0; g < C.rows; ++g) {
    for (std::size_t i = 0; i < C.cols; ++i) {
      if (i) out << ' ';
      const auto e = C.at(g, i);
      if (e == kZeroEntry)
        out << '.';
      else if (C.q == 2)
        out << (e == 0 ? '+' : '-');
      else
        out << e;
    }
    out << '\n';
  }
  return out.str();
}

inline SparseMatrix parse_matrix(std::istream& in) {
  auto fail = [](std::size_t line, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
  };

  std::string text;
  std::size_t lineno = 0;

  if (!std::getline(in, text)) fail(1, "missing header");
  ++lineno;
  std::istringstream head(text);
  long q = 0, N = 0, L = 0;
  if (!(head >> q >> N >> L)) fail(lineno, "malformed header, expected \"q N L\"");
  std::string extra;
  if (head >> extra) fail(lineno, "trailing tokens after header");
  if (q < 2) fail(lineno, "modulus must be at least 2");
  if (N < 1 || L < 1) fail(lineno, "dimensions must be positive");

  SparseMatrix C{int(q), std::size_t(N), std::size_t(L)};
  for (long g = 0; g < N; ++g) {
    if (!std::getline(in, text)) fail(lineno + 1, "unexpected end of file");
    ++lineno;
    std::istringstream row(text);
    std::string tok;
    long i = 0;
    while (row >> tok) {
      if (i >= L) fail(lineno, "expected " + std::to_string(L) + " tokens, found more");
      std::int32_t e = kZeroEntry;
      if (tok == ".") {
        e = kZeroEntry;
      } else if (q == 2 && tok == "+") {
        e = 0;
      } else if (q == 2 && tok == "-") {
        e = 1;
      } else {
        std::size_t used = 0;
        long v = 0;
        try {
          v = std::stol(tok, &used);
        } catch (const std::exception&) {
          fail(lineno, "bad token \"" + tok + "\"");
        }
        if (used != tok.size()) fail(lineno, "bad token \"" + tok + "\"");
        if (v < 0 || v >= q) fail(lineno, "exponent " + std::to_string(v) + " outside [0,q)");
        e = std::int32_t(v);
      }
      C.at(std::size_t(g), std::size_t(i)) = e;
      ++i;
    }
    if (i != L)
      fail(lineno, "expected " + std::to_string(L) + " tokens, found " + std::to_string(i));
  }
  return C;
}

inline SparseMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

inline void write_matrix_file(const std::string& path, const SparseMatrix& C) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << format_matrix(C);
  if (!out) throw std::runtime_error("failed writing " + path);
}

inline SparseMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return parse_matrix(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace szcz
