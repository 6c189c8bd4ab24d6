// Command-line front end: construct training matrices, verify their zone
// properties, run the channel-estimation sweeps, and dump correlation
// profiles. Matrices travel in the text format of matrix_io.hpp; reports
// are JSON, curve data is CSV.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "szcz/construct.hpp"
#include "szcz/correlation.hpp"
#include "szcz/estimation.hpp"
#include "szcz/matrix_io.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad list entry \"" + tok + "\"");
    }
    if (used != tok.size()) throw std::invalid_argument("bad list entry \"" + tok + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// blocks are separated by '|', entries within a block by ','
std::vector<std::vector<int>> parse_block_list(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::istringstream in(s);
  std::string blk;
  while (std::getline(in, blk, '|')) out.push_back(parse_int_list(blk));
  if (out.empty()) throw std::invalid_argument("empty block list");
  return out;
}

// "a", "a,b,c", "a:b" (step 1), or "a:step:b", endpoints inclusive
std::vector<double> parse_grid(const std::string& s) {
  auto parse_one = [](const std::string& tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad grid value \"" + tok + "\"");
    }
    if (used != tok.size()) throw std::invalid_argument("bad grid value \"" + tok + "\"");
    return v;
  };
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ':')) parts.push_back(tok);
    if (parts.size() != 2 && parts.size() != 3)
      throw std::invalid_argument("grid ranges look like a:b or a:step:b");
    const double a = parse_one(parts.front());
    const double b = parse_one(parts.back());
    const double step = parts.size() == 3 ? parse_one(parts[1]) : 1.0;
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
  } else {
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(parse_one(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

std::vector<std::size_t> parse_index_grid(const std::string& s) {
  std::vector<std::size_t> out;
  for (double v : parse_grid(s)) {
    if (v < 0 || v != std::floor(v))
      throw std::invalid_argument("grid value " + std::to_string(v) + " is not a whole number");
    out.push_back(std::size_t(v));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string fmt_snr(double sigma2) {
  if (sigma2 <= 0) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", -10.0 * std::log10(sigma2));
  return buf;
}

struct ConstructArgs {
  std::string method;
  int q = 2;
  int m = 0;
  int n = 0;
  std::string pi, partition, mu, kappa;
  std::size_t nt = 4;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  szcz::SparseMatrix C;
  long width = 0;
  if (a.method == "thm1" || a.method == "thm2") {
    if (a.m <= 0 || a.n <= 0) throw std::invalid_argument("--m and --n are required");
    if (a.pi.empty()) throw std::invalid_argument("--pi is required");
    const auto mu = a.mu.empty() ? std::vector<int>(std::size_t(a.m) + 1, 0) : parse_int_list(a.mu);
    const auto kappa = a.kappa.empty() ? std::vector<int>(std::size_t(a.n), 0) : parse_int_list(a.kappa);
    if (a.method == "thm1") {
      szcz::ChainParams p;
      p.q = a.q;
      p.m = a.m;
      p.n = a.n;
      p.pi = parse_int_list(a.pi);
      p.mu = mu;
      p.kappa = kappa;
      const auto got = szcz::chain_construction(p);
      C = got.matrix;
      width = long(got.claimed_width);
    } else {
      szcz::BlockChainParams p;
      p.q = a.q;
      p.m = a.m;
      p.n = a.n;
      p.blocks = parse_block_list(a.pi);
      p.mu = mu;
      p.kappa = kappa;
      if (!a.partition.empty()) {
        auto want = parse_block_list(a.partition);
        if (want.size() != p.blocks.size())
          throw std::invalid_argument("--partition and --pi disagree on the block count");
        for (std::size_t b = 0; b < want.size(); ++b) {
          auto x = want[b], y = p.blocks[b];
          std::sort(x.begin(), x.end());
          std::sort(y.begin(), y.end());
          if (x != y)
            throw std::invalid_argument("--pi block " + std::to_string(b + 1) +
                                        " walks outside its --partition block");
        }
      }
      const auto got = szcz::block_chain_construction(p);
      C = got.matrix;
      width = long(got.claimed_width);
    }
  } else if (a.method == "czcp-baseline") {
    C = szcz::pair_training_matrix(szcz::baseline_czcp_pair(), a.nt);
    width = szcz::measure_zcz_width(C);
  } else if (a.method == "czcs-baseline") {
    C = szcz::set_training_matrix(szcz::baseline_czcs_set(), a.nt);
    width = szcz::measure_zcz_width(C);
  } else {
    throw std::invalid_argument("unknown method " + a.method);
  }

  char claim[128];
  std::snprintf(claim, sizeof claim, "N=%zu L=%zu Z=%ld S=%g", C.rows, C.cols, width,
                C.sparsity());
  if (a.out.empty()) {
    std::fputs(szcz::format_matrix(C).c_str(), stdout);
    std::fprintf(stderr, "%s\n", claim);
  } else {
    szcz::write_matrix_file(a.out, C);
    std::printf("%s\n", claim);
  }
  return 0;
}

struct VerifyArgs {
  std::string file;
  long z = -1;
  double tol = -1.0;
  bool strict = false;
};

int run_verify(const VerifyArgs& a) {
  const auto C = szcz::read_matrix_file(a.file);
  const auto rep = szcz::analyze(C, a.tol);
  nlohmann::ordered_json j;
  j["N"] = rep.rows;
  j["L"] = rep.cols;
  j["q"] = rep.q;
  j["M"] = rep.row_weights;
  j["sparsity"] = rep.sparsity;
  j["c1"] = rep.c1;
  j["measured_zcz_width"] = rep.measured_zcz_width;
  bool pass = true;
  if (a.z >= 0) {
    pass = szcz::verify_szcz(C, std::size_t(a.z), a.tol).pass;
    j["pass_at_z"] = pass;
  }
  std::printf("%s\n", j.dump(2).c_str());
  return (a.strict && !pass) ? 1 : 0;
}

struct NmseArgs {
  std::string file, lambdas, snrs, sigmas, out;
  std::size_t nr = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

void emit_nmse_row(std::FILE* f, const char* name, const szcz::SparseMatrix& C, std::size_t M,
                   std::size_t lambda, double sigma2, const NmseArgs& a) {
  if (name) std::fprintf(f, "%s,", name);
  szcz::SimConfig cfg;
  cfg.nr = a.nr;
  cfg.lambda = lambda;
  cfg.sigma2 = sigma2;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  try {
    const auto r = szcz::simulate_ls(C, cfg);
    std::fprintf(f, "%zu,%s,%s,%s,%s,%zu,%llu,ok\n", lambda, fmt_snr(sigma2).c_str(),
                 fmt(r.analytic_nmse).c_str(), fmt(r.empirical_nmse).c_str(),
                 fmt(r.min_nmse).c_str(), a.trials, (unsigned long long)a.seed);
  } catch (const szcz::SingularMatrixError&) {
    std::fprintf(f, "%zu,%s,,,%s,%zu,%llu,singular\n", lambda, fmt_snr(sigma2).c_str(),
                 fmt(szcz::min_nmse(lambda, M, sigma2)).c_str(), a.trials,
                 (unsigned long long)a.seed);
  }
}

int run_nmse(const NmseArgs& a) {
  const auto C = szcz::read_matrix_file(a.file);
  const auto M = C.uniform_row_weight();
  if (!M) throw std::invalid_argument("rows carry unequal nonzero counts");
  const auto lambdas = parse_index_grid(a.lambdas);
  std::vector<double> sigmas;
  if (!a.snrs.empty())
    for (double snr : parse_grid(a.snrs)) sigmas.push_back(std::pow(10.0, -snr / 10.0));
  else
    for (double s2 : parse_grid(a.sigmas)) {
      if (s2 < 0) throw std::invalid_argument("noise variance must be non-negative");
      sigmas.push_back(s2);
    }

  std::FILE* f = stdout;
  if (!a.out.empty()) {
    f = std::fopen(a.out.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + a.out + " for writing");
  }
  std::fprintf(f, "lambda,snr_db,analytic_nmse,empirical_nmse,min_nmse,trials,seed,status\n");
  for (std::size_t lambda : lambdas)
    for (double sigma2 : sigmas) emit_nmse_row(f, nullptr, C, *M, lambda, sigma2, a);
  if (f != stdout) std::fclose(f);
  return 0;
}

struct CorrArgs {
  std::string file;
  std::size_t g = 0, k = 0;
  long max_shift = -1;
};

int run_corr(const CorrArgs& a) {
  const auto C = szcz::read_matrix_file(a.file);
  long last = a.max_shift < 0 ? long(C.cols) - 1 : a.max_shift;
  if (last > long(C.cols) - 1) throw std::invalid_argument("--max-shift exceeds L-1");
  const auto mags = szcz::pccf_magnitudes(C, a.g, a.k, std::size_t(last) + 1);
  std::printf("u,theta_abs\n");
  for (std::size_t u = 0; u < mags.size(); ++u) std::printf("%zu,%s\n", u, fmt(mags[u]).c_str());
  return 0;
}

struct ReproArgs {
  std::string outdir;
  std::size_t trials = 10000;
  std::uint64_t seed = 20260819;
  unsigned threads = 0;
};

// canned bundle: the three 4x64 reference matrices, the 4x32 one, and the
// two estimation sweeps (delay sweep at 12 dB, SNR sweep at nine taps)
int run_repro(const ReproArgs& a) {
  std::string dir = a.outdir;
  if (dir.empty()) {
    const char* env = std::getenv("SZCZ_OUTDIR");
    dir = env ? env : ".";
  }
  std::filesystem::create_directories(dir);
  auto path = [&](const char* name) { return dir + "/" + name; };

  szcz::ChainParams cp;
  cp.q = 2;
  cp.m = 5;
  cp.n = 2;
  cp.pi = {5, 2, 1, 3, 4};
  cp.mu.assign(6, 0);
  cp.kappa.assign(2, 0);
  const auto chain = szcz::chain_construction(cp).matrix;

  szcz::BlockChainParams bp;
  bp.q = 2;
  bp.m = 6;
  bp.n = 2;
  bp.blocks = {{6, 4, 3}, {5, 2, 1}};
  bp.mu.assign(7, 0);
  bp.kappa.assign(2, 0);
  const auto szcz64 = szcz::block_chain_construction(bp).matrix;
  const auto czcp64 = szcz::pair_training_matrix(szcz::baseline_czcp_pair(), 4);
  const auto czcs64 = szcz::set_training_matrix(szcz::baseline_czcs_set(), 4);

  const std::pair<const char*, const szcz::SparseMatrix*> files[] = {
      {"chain_4x32.txt", &chain},
      {"szcz_4x64.txt", &szcz64},
      {"czcp_4x64.txt", &czcp64},
      {"czcs_4x64.txt", &czcs64},
  };
  for (const auto& [name, mat] : files) {
    szcz::write_matrix_file(path(name), *mat);
    std::printf("wrote %s\n", path(name).c_str());
  }

  NmseArgs na;
  na.nr = 4;  // the reference curves use four receive antennas
  na.trials = a.trials;
  na.seed = a.seed;
  na.threads = a.threads;
  const std::pair<const char*, const szcz::SparseMatrix*> sweeps[] = {
      {"szcz_4x64", &szcz64},
      {"czcp_4x64", &czcp64},
      {"czcs_4x64", &czcs64},
  };

  {
    const auto file = path("lambda_sweep.csv");
    std::FILE* f = std::fopen(file.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + file + " for writing");
    std::fprintf(f,
                 "matrix,lambda,snr_db,analytic_nmse,empirical_nmse,min_nmse,trials,seed,status\n");
    const double sigma2 = std::pow(10.0, -1.2);  // 12 dB
    for (const auto& [name, mat] : sweeps)
      for (std::size_t lambda = 3; lambda <= 11; ++lambda)
        emit_nmse_row(f, name, *mat, *mat->uniform_row_weight(), lambda, sigma2, na);
    std::fclose(f);
    std::printf("wrote %s\n", file.c_str());
  }
  {
    const auto file = path("snr_sweep.csv");
    std::FILE* f = std::fopen(file.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + file + " for writing");
    std::fprintf(f,
                 "matrix,lambda,snr_db,analytic_nmse,empirical_nmse,min_nmse,trials,seed,status\n");
    for (const auto& [name, mat] : sweeps)
      for (int snr = 0; snr <= 14; snr += 2)
        emit_nmse_row(f, name, *mat, *mat->uniform_row_weight(), 8,
                      std::pow(10.0, -double(snr) / 10.0), na);
    std::fclose(f);
    std::printf("wrote %s\n", file.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse zero-zone training matrices: construct, verify, estimate"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand(
      "construct", "build a training matrix and print its N/L/Z/S headline");
  construct
      ->add_option("method", ca.method,
                   "thm1 (single chain), thm2 (partitioned chains), czcp-baseline, czcs-baseline")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "czcp-baseline", "czcs-baseline"}));
  construct->add_option("--q", ca.q, "even modulus of the entry alphabet (default 2)");
  construct->add_option("--m", ca.m, "column variable count; L = 2^m");
  construct->add_option("--n", ca.n, "row variable count; N = 2^n");
  construct->add_option(
      "--pi", ca.pi,
      "1-indexed variable walk, e.g. \"5,2,1,3,4\"; thm2 takes one walk per block "
      "separated by '|', e.g. \"6,4,3|5,2,1\"");
  construct->add_option("--partition", ca.partition,
                        "optional unordered block contents to cross-check --pi against, "
                        "same '|' syntax");
  construct->add_option("--mu", ca.mu,
                        "m+1 comma-separated column coefficients, constant first (default all 0)");
  construct->add_option("--kappa", ca.kappa, "n comma-separated row coefficients (default all 0)");
  construct->add_option("--nt", ca.nt, "antenna count for the baseline arrangements (default 4)");
  construct->add_option("--out", ca.out, "output file; stdout when omitted");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "report zone width, sparsity, and column rule");
  verify->add_option("--file", va.file, "matrix file to inspect")->required();
  verify->add_option("--z", va.z, "also check the zone at this width and report pass_at_z");
  verify->add_option("--tol", va.tol, "zero tolerance (default 1e-9 per column)");
  verify->add_flag("--strict", va.strict, "exit non-zero when the --z check fails");

  NmseArgs na;
  auto* nmse = app.add_subcommand("nmse", "channel-estimation error sweep as CSV");
  nmse->add_option("--file", na.file, "training matrix file")->required();
  nmse->add_option("--lambda", na.lambdas, "channel memory grid, e.g. \"8\", \"3:11\", \"3,5,7\"")
      ->required();
  auto* snr_opt = nmse->add_option("--snr-db", na.snrs, "SNR grid in dB, e.g. \"12\" or \"0:2:14\"");
  auto* sig_opt = nmse->add_option("--sigma2", na.sigmas, "noise variance grid, alternative to --snr-db");
  snr_opt->excludes(sig_opt);
  sig_opt->excludes(snr_opt);
  nmse->add_option("--nr", na.nr, "receive antennas (default 2)");
  nmse->add_option("--trials", na.trials, "Monte-Carlo trials per grid point (default 1000)");
  nmse->add_option("--seed", na.seed, "base seed; trials derive their own streams");
  nmse->add_option("--threads", na.threads, "worker threads, 0 = hardware default");
  nmse->add_option("--out", na.out, "output file; stdout when omitted");

  CorrArgs xa;
  auto* corr = app.add_subcommand("corr", "periodic correlation magnitudes of a row pair as CSV");
  corr->add_option("--file", xa.file, "matrix file")->required();
  corr->add_option("--g", xa.g, "first row index (default 0)");
  corr->add_option("--k", xa.k, "second row index (default 0)");
  corr->add_option("--max-shift", xa.max_shift, "largest shift to print (default L-1)");

  ReproArgs ra;
  auto* repro = app.add_subcommand(
      "repro", "write the reference matrices and both estimation sweeps into a directory");
  repro->add_option("--outdir", ra.outdir,
                    "target directory (default: $SZCZ_OUTDIR, falling back to .)");
  repro->add_option("--trials", ra.trials, "Monte-Carlo trials per grid point (default 10000)");
  repro->add_option("--seed", ra.seed, "base seed (default 20260819)");
  repro->add_option("--threads", ra.threads, "worker threads, 0 = hardware default");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) return run_construct(ca);
    if (verify->parsed()) return run_verify(va);
    if (nmse->parsed()) {
      if (na.snrs.empty() && na.sigmas.empty())
        throw std::invalid_argument("provide --snr-db or --sigma2");
      return run_nmse(na);
    }
    if (corr->parsed()) return run_corr(xa);
    if (repro->parsed()) return run_repro(ra);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
