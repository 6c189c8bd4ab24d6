// Builders for sparse zone training matrices: the single-chain and
// partitioned-chain designs, the complementary-pair kernel, and the two
// baseline arrangements that place complementary sequences block by block.
//
// All permutations, partitions, and variable positions are 1-indexed.
// Coefficient vectors are passed constant-first: mu[0] is the constant
// term, mu[l] multiplies column variable l.
#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gbf.hpp"
#include "sparse_matrix.hpp"

namespace szcz {

struct Construction {
  SparseMatrix matrix;
  std::size_t claimed_width = 0;
};

// Single quadratic chain visiting every column variable once. The chain
// runs through pi(1)..pi(m-n) with weight q/2; the trailing n positions
// pi(m-n+1)..pi(m) name the restricted variables that tie column bits to
// row bits.
struct ChainParams {
  int q = 2;
  int m = 0;
  int n = 0;
  std::vector<int> pi;     // permutation of 1..m
  std::vector<int> mu;     // size m+1, constant first
  std::vector<int> kappa;  // size n
};

inline void validate_chain_params(const ChainParams& p) {
  if (p.q < 2 || p.q % 2 != 0) throw std::invalid_argument("modulus must be even and at least 2");
  if (p.n < 1) throw std::invalid_argument("n must be at least 1");
  if (p.m <= p.n) throw std::invalid_argument("m must exceed n");
  if (p.m + p.n > 26) throw std::invalid_argument("m + n exceeds the supported limit of 26");
  if ((int)p.pi.size() != p.m) throw std::invalid_argument("pi must list all m positions");
  std::vector<int> seen = p.pi;
  std::sort(seen.begin(), seen.end());
  for (int l = 0; l < p.m; ++l)
    if (seen[l] != l + 1) throw std::invalid_argument("pi is not a permutation of 1..m");
  if (p.pi.front() != p.m) throw std::invalid_argument("pi(1) != m");
  // the restricted tail must occupy exactly the n positions below m
  std::vector<int> tail(p.pi.end() - p.n, p.pi.end());
  std::sort(tail.begin(), tail.end());
  for (int a = 0; a < p.n; ++a)
    if (tail[a] != p.m - p.n + a)
      throw std::invalid_argument("pi tail must cover m-n..m-1");
  if ((int)p.mu.size() != p.m + 1) throw std::invalid_argument("mu must hold m+1 coefficients");
  if ((int)p.kappa.size() != p.n) throw std::invalid_argument("kappa must hold n coefficients");
  const int half = p.q / 2;
  if (mod_q(p.mu[p.m], p.q) != 0 && mod_q(p.mu[p.m], p.q) != half)
    throw std::invalid_argument("mu_m must be 0 or q/2");
}

inline Construction chain_construction(const ChainParams& p) {
  validate_chain_params(p);
  Gbf f;
  f.q = p.q;
  f.n = p.n;
  f.m = p.m;
  const int half = p.q / 2;
  for (int l = 1; l <= p.m - p.n - 1; ++l)
    f.quadratic.push_back({f.x_var(p.pi[l - 1]), f.x_var(p.pi[l]), half});
  f.constant = mod_q(p.mu[0], p.q);
  for (int l = 1; l <= p.m; ++l) f.linear_x.push_back(mod_q(p.mu[l], p.q));
  for (int s = 1; s <= p.n; ++s) f.linear_y.push_back(mod_q(p.kappa[s - 1], p.q));

  Restriction w;
  w.indices.assign(p.pi.end() - p.n, p.pi.end());
  Construction out{sparse_array(f, w), std::size_t(1) << (p.pi[1] - 1)};
  return out;
}

// One quadratic chain per block of a partition of the column variables.
// blocks[a] is the ordered walk through block a+1; its first entry must be
// m-a, and each block's last variable is additionally coupled to row
// variable a+1 with weight q/2. The restricted positions are the blocks'
// last entries.
struct BlockChainParams {
  int q = 2;
  int m = 0;
  int n = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<int> mu;     // size m+1, constant first
  std::vector<int> kappa;  // size n
};

inline void validate_block_params(const BlockChainParams& p) {
  if (p.q < 2 || p.q % 2 != 0) throw std::invalid_argument("modulus must be even and at least 2");
  if (p.n < 1) throw std::invalid_argument("n must be at least 1");
  if (p.m <= p.n) throw std::invalid_argument("m must exceed n");
  if (p.m + p.n > 26) throw std::invalid_argument("m + n exceeds the supported limit of 26");
  if ((int)p.blocks.size() != p.n) throw std::invalid_argument("partition must have n blocks");
  std::vector<int> seen;
  for (int a = 0; a < p.n; ++a) {
    const auto& blk = p.blocks[a];
    if (blk.empty()) throw std::invalid_argument("partition blocks must be non-empty");
    if (blk.front() != p.m - a) throw std::invalid_argument("block a must start at m-a+1");
    seen.insert(seen.end(), blk.begin(), blk.end());
  }
  if (p.blocks[0].size() < 2) throw std::invalid_argument("first block needs at least two variables");
  std::sort(seen.begin(), seen.end());
  if ((int)seen.size() != p.m) throw std::invalid_argument("partition must cover 1..m exactly");
  for (int l = 0; l < p.m; ++l)
    if (seen[l] != l + 1) throw std::invalid_argument("partition must cover 1..m exactly");
  if ((int)p.mu.size() != p.m + 1) throw std::invalid_argument("mu must hold m+1 coefficients");
  if ((int)p.kappa.size() != p.n) throw std::invalid_argument("kappa must hold n coefficients");
  const int half = p.q / 2;
  if (mod_q(p.mu[p.m], p.q) != 0 && mod_q(p.mu[p.m], p.q) != half)
    throw std::invalid_argument("mu_m must be 0 or q/2");
}

inline Construction block_chain_construction(const BlockChainParams& p) {
  validate_block_params(p);
  Gbf f;
  f.q = p.q;
  f.n = p.n;
  f.m = p.m;
  const int half = p.q / 2;
  for (int a = 0; a < p.n; ++a) {
    const auto& blk = p.blocks[a];
    for (std::size_t b = 0; b + 1 < blk.size(); ++b)
      f.quadratic.push_back({f.x_var(blk[b]), f.x_var(blk[b + 1]), half});
    f.quadratic.push_back({f.x_var(blk.back()), f.y_var(a + 1), half});
  }
  f.constant = mod_q(p.mu[0], p.q);
  for (int l = 1; l <= p.m; ++l) f.linear_x.push_back(mod_q(p.mu[l], p.q));
  for (int s = 1; s <= p.n; ++s) f.linear_y.push_back(mod_q(p.kappa[s - 1], p.q));

  Restriction w;
  for (int a = 0; a < p.n; ++a) w.indices.push_back(p.blocks[a].back());
  Construction out{sparse_array(f, w), std::size_t(1) << (p.blocks[0][1] - 1)};
  return out;
}

// Dense pair (xi^f, xi^{f + (q/2) x_mlen}) of length 2^mlen, where f is a
// single chain over all mlen variables with linear terms mu[1..mlen] and
// constant mu[0]. Row 1 differs from row 0 by q/2 wherever the top bit of
// the column index is set.
inline SparseMatrix complementary_pair_kernel(int q, int mlen, const std::vector<int>& pi,
                                              const std::vector<int>& mu) {
  if (q < 2 || q % 2 != 0) throw std::invalid_argument("modulus must be even and at least 2");
  if (mlen < 1 || mlen > 24) throw std::invalid_argument("length exponent out of range");
  if ((int)pi.size() != mlen) throw std::invalid_argument("pi must list all mlen positions");
  std::vector<int> seen = pi;
  std::sort(seen.begin(), seen.end());
  for (int l = 0; l < mlen; ++l)
    if (seen[l] != l + 1) throw std::invalid_argument("pi is not a permutation of 1..mlen");
  if (pi.front() != mlen) throw std::invalid_argument("pi(1) != mlen");
  if ((int)mu.size() != mlen + 1) throw std::invalid_argument("mu must hold mlen+1 coefficients");

  const int half = q / 2;
  SparseMatrix pair(q, 2, std::size_t(1) << mlen);
  for (std::size_t i = 0; i < pair.cols; ++i) {
    long long acc = mu[0];
    for (int l = 0; l + 1 < mlen; ++l) {
      const auto b1 = (i >> (pi[l] - 1)) & 1u;
      const auto b2 = (i >> (pi[l + 1] - 1)) & 1u;
      if (b1 && b2) acc += half;
    }
    for (int l = 1; l <= mlen; ++l)
      if ((i >> (l - 1)) & 1u) acc += mu[l];
    const int e = mod_q(acc, q);
    pair.at(0, i) = e;
    const auto top = (i >> (mlen - 1)) & 1u;
    pair.at(1, i) = top ? mod_q(e + half, q) : e;
  }
  return pair;
}

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Row g of the output holds the pair's first sequence at column offset
// g*len and its second at nt*len + g*len, zeros elsewhere.
inline SparseMatrix pair_training_matrix(const SparseMatrix& pair, std::size_t nt) {
  if (pair.rows != 2) throw std::invalid_argument("pair input must have exactly two rows");
  if (!pair.dense()) throw std::invalid_argument("pair sequences must have no zero entries");
  if (!is_power_of_two(nt)) throw std::invalid_argument("antenna count must be a power of two");
  const std::size_t len = pair.cols;
  SparseMatrix C(pair.q, nt, 2 * nt * len);
  for (std::size_t g = 0; g < nt; ++g)
    for (std::size_t i = 0; i < len; ++i) {
      C.at(g, g * len + i) = pair.at(0, i);
      C.at(g, nt * len + g * len + i) = pair.at(1, i);
    }
  return C;
}

// Row g holds sequence j at column offset j*nt*len + g*len for every j.
inline SparseMatrix set_training_matrix(const SparseMatrix& set, std::size_t nt) {
  if (set.rows < 2) throw std::invalid_argument("set input must have at least two rows");
  if (!set.dense()) throw std::invalid_argument("set sequences must have no zero entries");
  if (!is_power_of_two(nt)) throw std::invalid_argument("antenna count must be a power of two");
  const std::size_t len = set.cols, K = set.rows;
  SparseMatrix C(set.q, nt, K * nt * len);
  for (std::size_t g = 0; g < nt; ++g)
    for (std::size_t j = 0; j < K; ++j)
      for (std::size_t i = 0; i < len; ++i)
        C.at(g, j * nt * len + g * len + i) = set.at(j, i);
  return C;
}

// Known binary (8,4) pair used by the baseline arrangement.
inline SparseMatrix baseline_czcp_pair() {
  SparseMatrix pair(2, 2, 8);
  const int d0[8] = {0, 0, 0, 1, 0, 0, 1, 0};
  const int d1[8] = {0, 0, 0, 1, 1, 1, 0, 1};
  for (std::size_t i = 0; i < 8; ++i) {
    pair.at(0, i) = d0[i];
    pair.at(1, i) = d1[i];
  }
  return pair;
}

// Known binary complementary set of four length-4 sequences.
inline SparseMatrix baseline_czcs_set() {
  SparseMatrix set(2, 4, 4);
  const int s[4][4] = {{0, 1, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {1, 1, 1, 0}};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) set.at(j, i) = s[j][i];
  return set;
}

struct ReductionCheck {
  bool equal = false;
  Construction chain;
  SparseMatrix arrangement;
};

// With the canonical permutation (m, m-n-1, m-n-2, ..., 1, m-n, ..., m-1)
// the single-chain design collapses onto the pair arrangement of the
// length-2^{m-n-1} kernel built from the same coefficients. kernel_mu has
// m-n entries, constant first; the remaining chain coefficients are zero.
inline ReductionCheck chain_reduces_to_pair_arrangement(int q, int m, int n,
                                                        const std::vector<int>& kernel_mu) {
  if (m < n + 3) throw std::invalid_argument("m must be at least n+3");
  const int mp = m - n - 1;
  if ((int)kernel_mu.size() != mp + 1)
    throw std::invalid_argument("kernel_mu must hold m-n coefficients");

  ChainParams p;
  p.q = q;
  p.m = m;
  p.n = n;
  p.pi.push_back(m);
  for (int v = mp; v >= 1; --v) p.pi.push_back(v);
  for (int v = m - n; v <= m - 1; ++v) p.pi.push_back(v);
  p.mu.assign(m + 1, 0);
  for (int l = 0; l <= mp; ++l) p.mu[l] = kernel_mu[l];
  p.kappa.assign(n, 0);

  std::vector<int> kpi;
  for (int v = mp; v >= 1; --v) kpi.push_back(v);

  ReductionCheck r;
  r.chain = chain_construction(p);
  r.arrangement = pair_training_matrix(complementary_pair_kernel(q, mp, kpi, kernel_mu),
                                       std::size_t(1) << n);
  r.equal = (r.chain.matrix == r.arrangement);
  return r;
}

}  // namespace szcz
