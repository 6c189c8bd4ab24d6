// Periodic and aperiodic cross-correlations of sparse q-ary rows, plus the
// zone checks built on them.
#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sparse_matrix.hpp"

namespace szcz {

inline double default_zero_tolerance(std::size_t L) { return 1e-9 * double(L); }

namespace detail {
// correlation loops hit the same modulus millions of times in a sweep
inline const std::vector<cdouble>& cached_roots(int q) {
  thread_local int cached_q = 0;
  thread_local std::vector<cdouble> table;
  if (cached_q != q) {
    table = unit_root_table(q);
    cached_q = q;
  }
  return table;
}
}  // namespace detail

// theta(a,b;u) = sum_i a[(i+u) mod L] * conj(b[i]). Products of unit-root
// entries reduce to a single root lookup on the exponent difference.
inline cdouble pccf(const std::int32_t* a, const std::int32_t* b, std::size_t L, int q, long u) {
  if (u < 0 || std::size_t(u) >= L) u = long(((u % long(L)) + long(L)) % long(L));
  const auto& roots = detail::cached_roots(q);
  cdouble acc{0.0, 0.0};
  for (std::size_t i = 0; i < L; ++i) {
    const auto be = b[i];
    if (be == kZeroEntry) continue;
    const auto ae = a[(i + std::size_t(u)) % L];
    if (ae == kZeroEntry) continue;
    acc += roots[mod_q(ae - be, q)];
  }
  return acc;
}

inline cdouble pccf(const SparseMatrix& C, std::size_t g, std::size_t k, long u) {
  if (g >= C.rows || k >= C.rows) throw std::out_of_range("row index out of range");
  return pccf(C.row(g), C.row(k), C.cols, C.q, u);
}

// Non-wrapping correlation. For u >= 0 sums a[i+u]*conj(b[i]) over the
// overlap; negative u mirrors onto the other branch. |u| >= L gives 0.
inline cdouble aperiodic_ccf(const std::int32_t* a, const std::int32_t* b, std::size_t L, int q, long u) {
  const auto& roots = detail::cached_roots(q);
  cdouble acc{0.0, 0.0};
  if (std::size_t(std::labs(u)) >= L) return acc;
  if (u >= 0) {
    for (std::size_t i = 0; i + std::size_t(u) < L; ++i) {
      const auto be = b[i];
      const auto ae = a[i + std::size_t(u)];
      if (be == kZeroEntry || ae == kZeroEntry) continue;
      acc += roots[mod_q(ae - be, q)];
    }
  } else {
    const std::size_t v = std::size_t(-u);
    for (std::size_t i = 0; i + v < L; ++i) {
      const auto ae = a[i];
      const auto be = b[i + v];
      if (be == kZeroEntry || ae == kZeroEntry) continue;
      acc += roots[mod_q(ae - be, q)];
    }
  }
  return acc;
}

inline cdouble aperiodic_ccf(const SparseMatrix& C, std::size_t g, std::size_t k, long u) {
  if (g >= C.rows || k >= C.rows) throw std::out_of_range("row index out of range");
  return aperiodic_ccf(C.row(g), C.row(k), C.cols, C.q, u);
}

struct ZoneViolation {
  std::size_t g = 0, k = 0;
  long u = 0;
  double magnitude = 0.0;
};

struct ZoneCheck {
  bool pass = false;
  double max_offpeak = 0.0;  // largest |theta| seen on a branch required to vanish
  std::optional<ZoneViolation> first_violation;
};

// Zone property for a width Z: at shift 0 every row correlates to the common
// nonzero count M with itself and to 0 with every other row; for shifts
// 1..Z all row pairs correlate to 0. Negative shifts follow from the
// conjugate symmetry theta(g,k;u) = conj(theta(k,g;-u)) and are not checked
// separately. Rows with unequal nonzero counts fail at shift 0.
inline ZoneCheck verify_szcz(const SparseMatrix& C, std::size_t Z, double tol = -1.0) {
  if (Z > C.cols - 1) throw std::invalid_argument("zone width must be at most L-1");
  if (tol < 0) tol = default_zero_tolerance(C.cols);
  ZoneCheck r;
  r.pass = true;
  const double M = double(C.row_nonzeros(0));
  auto flag = [&](std::size_t g, std::size_t k, long u, double mag) {
    if (!r.first_violation) r.first_violation = ZoneViolation{g, k, u, mag};
    r.pass = false;
  };
  for (std::size_t g = 0; g < C.rows; ++g) {
    for (std::size_t k = 0; k < C.rows; ++k) {
      for (std::size_t u = 0; u <= Z; ++u) {
        const cdouble t = pccf(C, g, k, long(u));
        if (u == 0 && g == k) {
          const double dev = std::abs(t - cdouble{M, 0.0});
          if (dev > tol) flag(g, k, 0, std::abs(t));
          continue;
        }
        const double mag = std::abs(t);
        if (mag > r.max_offpeak) r.max_offpeak = mag;
        if (mag > tol) flag(g, k, long(u), mag);
      }
    }
  }
  return r;
}

// Largest Z for which verify_szcz passes, capped at L-1. Returns -1 when
// the shift-0 conditions themselves fail (so no zone exists at all).
inline long measure_zcz_width(const SparseMatrix& C, double tol = -1.0) {
  if (tol < 0) tol = default_zero_tolerance(C.cols);
  if (!verify_szcz(C, 0, tol).pass) return -1;
  long Z = 0;
  while (std::size_t(Z) + 1 <= C.cols - 1 && verify_szcz(C, std::size_t(Z) + 1, tol).pass) ++Z;
  return Z;
}

// every column carries exactly one nonzero entry
inline bool check_c1(const SparseMatrix& C) {
  for (std::size_t i = 0; i < C.cols; ++i) {
    std::size_t cnt = 0;
    for (std::size_t g = 0; g < C.rows; ++g)
      if (C.present(g, i)) ++cnt;
    if (cnt != 1) return false;
  }
  return true;
}

struct SetZoneCheck {
  bool pass = false;
  double max_abs_auto_sum = 0.0;
  double max_abs_cross_sum = 0.0;
  std::optional<long> violating_shift;
};

// Complementary-set zone check over N dense rows. With R1 = {1..Z} and
// R2 = {L-Z..L-1}, the aperiodic autocorrelations must sum to zero for
// |u| in R1 or R2, and the adjacent-pair cross-correlations (row i against
// row (i+1) mod N) must sum to zero for |u| in R2. Autocorrelation sums are
// conjugate-symmetric in u; the cross sums are not, so both signs are
// checked. N = 2 is the complementary-pair case.
inline SetZoneCheck verify_czcs(const SparseMatrix& S, std::size_t Z, double tol = -1.0) {
  const std::size_t N = S.rows, L = S.cols;
  if (N < 2) throw std::invalid_argument("a complementary set needs at least two sequences");
  if (Z > L - 1) throw std::invalid_argument("zone width must be at most L-1");
  if (!S.dense()) throw std::invalid_argument("complementary-set sequences must have no zero entries");
  if (tol < 0) tol = default_zero_tolerance(L);

  SetZoneCheck r;
  r.pass = true;
  std::vector<char> in_zone(L, 0);   // R1 union R2
  std::vector<char> in_tail(L, 0);   // R2
  for (std::size_t u = 1; u <= Z && u < L; ++u) in_zone[u] = 1;
  for (std::size_t u = (Z >= L ? 1 : L - Z); u <= L - 1; ++u) {
    in_zone[u] = 1;
    in_tail[u] = 1;
  }

  for (std::size_t u = 1; u <= L - 1; ++u) {
    if (in_zone[u]) {
      for (long su : {long(u), -long(u)}) {
        cdouble acc{0.0, 0.0};
        for (std::size_t i = 0; i < N; ++i) acc += aperiodic_ccf(S, i, i, su);
        const double mag = std::abs(acc);
        if (mag > r.max_abs_auto_sum) r.max_abs_auto_sum = mag;
        if (mag > tol) {
          r.pass = false;
          if (!r.violating_shift) r.violating_shift = su;
        }
      }
    }
    if (in_tail[u]) {
      for (long su : {long(u), -long(u)}) {
        cdouble acc{0.0, 0.0};
        for (std::size_t i = 0; i < N; ++i) acc += aperiodic_ccf(S, i, (i + 1) % N, su);
        const double mag = std::abs(acc);
        if (mag > r.max_abs_cross_sum) r.max_abs_cross_sum = mag;
        if (mag > tol) {
          r.pass = false;
          if (!r.violating_shift) r.violating_shift = su;
        }
      }
    }
  }
  return r;
}

struct CorrelationReport {
  std::size_t rows = 0, cols = 0;
  int q = 2;
  std::vector<std::size_t> row_weights;
  double sparsity = 0.0;
  bool c1 = false;
  long measured_zcz_width = -1;
  double zero_tolerance = 0.0;
};

inline CorrelationReport analyze(const SparseMatrix& C, double tol = -1.0) {
  if (tol < 0) tol = default_zero_tolerance(C.cols);
  CorrelationReport rep;
  rep.rows = C.rows;
  rep.cols = C.cols;
  rep.q = C.q;
  for (std::size_t g = 0; g < C.rows; ++g) rep.row_weights.push_back(C.row_nonzeros(g));
  rep.sparsity = C.sparsity();
  rep.c1 = check_c1(C);
  rep.measured_zcz_width = measure_zcz_width(C, tol);
  rep.zero_tolerance = tol;
  return rep;
}

// |theta| between two rows for shifts 0..count-1
inline std::vector<double> pccf_magnitudes(const SparseMatrix& C, std::size_t g, std::size_t k,
                                           std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t u = 0; u < count; ++u) out.push_back(std::abs(pccf(C, g, k, long(u))));
  return out;
}

}  // namespace szcz
