// Frequency-selective channel model and the least-squares estimator built
// on cyclically shifted training matrices: Y = H X + V with X the vertical
// stack of the first lambda+1 right shifts of the training matrix, and
// Hhat = Y X^H (X X^H)^{-1}.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"
#include "sparse_matrix.hpp"

namespace szcz {

// right shift: output column i takes input column (i - u) mod L
inline SparseMatrix cyclic_shift(const SparseMatrix& C, std::size_t u) {
  if (u >= C.cols) throw std::invalid_argument("shift must be below the column count");
  SparseMatrix out(C.q, C.rows, C.cols);
  for (std::size_t g = 0; g < C.rows; ++g)
    for (std::size_t i = 0; i < C.cols; ++i)
      out.at(g, i) = C.at(g, (i + C.cols - u) % C.cols);
  return out;
}

// shifts u = 0..lambda stacked vertically, N_t(lambda+1) x L complex
inline ComplexMatrix build_shift_stack(const SparseMatrix& C, std::size_t lambda) {
  if (lambda + 1 > C.cols) throw std::invalid_argument("lambda + 1 may not exceed the column count");
  const auto roots = unit_root_table(C.q);
  ComplexMatrix X(C.rows * (lambda + 1), C.cols);
  for (std::size_t u = 0; u <= lambda; ++u)
    for (std::size_t g = 0; g < C.rows; ++g)
      for (std::size_t i = 0; i < C.cols; ++i) {
        const auto e = C.at(g, (i + C.cols - u) % C.cols);
        if (e != kZeroEntry) X.at(u * C.rows + g, i) = roots[e];
      }
  return X;
}

inline double min_nmse(std::size_t lambda, std::size_t M, double sigma2) {
  if (M == 0) throw std::invalid_argument("per-row nonzero count must be positive");
  return sigma2 * double(lambda + 1) / double(M);
}

// sigma2 / N_t times the real trace of (X X^H)^{-1}
inline double analytic_nmse(const SparseMatrix& C, std::size_t lambda, double sigma2) {
  const ComplexMatrix Gi = invert_hermitian(gram(build_shift_stack(C, lambda)));
  cdouble tr{0.0, 0.0};
  for (std::size_t i = 0; i < Gi.rows; ++i) tr += Gi.at(i, i);
  if (std::abs(tr.imag()) > 1e-9) throw std::runtime_error("trace has non-negligible imaginary part");
  return sigma2 / double(C.rows) * tr.real();
}

struct SimConfig {
  std::size_t nr = 2;        // receive antennas
  std::size_t lambda = 0;    // channel memory, lambda+1 taps
  double sigma2 = 0.0;       // noise variance; SNR per receive antenna is 1/sigma2
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  unsigned threads = 0;      // 0 picks the hardware concurrency
};

struct NmseResult {
  double analytic_nmse = 0.0;
  double empirical_nmse = 0.0;
  double min_nmse = 0.0;
  double condition_estimate = 0.0;  // inf-norm condition of X X^H
  bool achieved_min = false;        // |analytic - min| <= 1e-9 * min
};

// N_r x N_t(lambda+1), i.i.d. CN(0, 1/(lambda+1)) entries in row-major
// draw order
inline ComplexMatrix draw_channel(std::size_t nt, std::size_t nr, std::size_t lambda, Rng& rng) {
  if (nt == 0 || nr == 0) throw std::invalid_argument("antenna counts must be positive");
  ComplexMatrix H(nr, nt * (lambda + 1));
  const double var = 1.0 / double(lambda + 1);
  for (auto& h : H.a) h = rng.next_cgauss(var);
  return H;
}

namespace detail {
inline double kahan_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}
}  // namespace detail

// Monte-Carlo NMSE of the least-squares estimate. Trial t draws its own
// stream keyed by (seed, t): first the channel entries, then the noise
// entries in row-major order, so results do not depend on the thread
// count. The per-trial errors are reduced in index order.
inline NmseResult simulate_ls(const SparseMatrix& C, const SimConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trial count must be positive");
  if (cfg.nr == 0) throw std::invalid_argument("receive antenna count must be positive");
  if (cfg.sigma2 < 0) throw std::invalid_argument("noise variance must be non-negative");
  const auto weight = C.uniform_row_weight();
  if (!weight) throw std::invalid_argument("rows carry unequal nonzero counts");

  const std::size_t nt = C.rows;
  const ComplexMatrix X = build_shift_stack(C, cfg.lambda);
  const ComplexMatrix G = gram(X);
  const ComplexMatrix Gi = invert_hermitian(G);  // singular grams throw here
  const ComplexMatrix P = matmul(conj_transpose(X), Gi);

  NmseResult res;
  cdouble tr{0.0, 0.0};
  for (std::size_t i = 0; i < Gi.rows; ++i) tr += Gi.at(i, i);
  res.analytic_nmse = cfg.sigma2 / double(nt) * tr.real();
  res.min_nmse = min_nmse(cfg.lambda, *weight, cfg.sigma2);
  res.condition_estimate = inf_norm(G) * inf_norm(Gi);
  res.achieved_min = std::abs(res.analytic_nmse - res.min_nmse) <= 1e-9 * res.min_nmse;

  std::vector<double> errs(cfg.trials, 0.0);
  std::atomic<bool> overflowed{false};
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      Rng rng = keyed_rng(cfg.seed, t);
      const ComplexMatrix H = draw_channel(nt, cfg.nr, cfg.lambda, rng);
      ComplexMatrix Y = matmul(H, X);
      if (cfg.sigma2 > 0)
        for (auto& y : Y.a) y += rng.next_cgauss(cfg.sigma2);
      const ComplexMatrix Hhat = matmul(Y, P);
      double err = 0.0;
      for (std::size_t i = 0; i < H.a.size(); ++i) err += std::norm(Hhat.a[i] - H.a[i]);
      if (!std::isfinite(err)) {
        overflowed.store(true);
        return;
      }
      errs[t] = err;
    }
  };

  unsigned nthreads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 1;
  nthreads = unsigned(std::min<std::size_t>(nthreads, cfg.trials));
  if (nthreads <= 1) {
    worker(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (cfg.trials + nthreads - 1) / nthreads;
    for (unsigned w = 0; w < nthreads; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(cfg.trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (overflowed.load()) throw std::runtime_error("non-finite error accumulation");

  res.empirical_nmse = detail::kahan_sum(errs) / double(cfg.trials) / double(cfg.nr * nt);
  return res;
}

}  // namespace szcz
