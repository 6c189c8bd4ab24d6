#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "szcz/correlation.hpp"
#include "szcz/estimation.hpp"
#include "szcz/matrix_io.hpp"

using szcz::SparseMatrix;

namespace {

// noise variance at 12 dB SNR per receive antenna
constexpr double kSigma12dB = 0.06309573444801933;

double batch_variance(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / double(xs.size() - 1);
}

double batch_mean(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  return mean / double(xs.size());
}

}  // namespace

TEST_CASE("cyclic shift moves columns to the right") {
  const auto C = szcz::parse_matrix("4 1 4\n0 1 2 3\n");
  const auto S = szcz::cyclic_shift(C, 1);
  CHECK(S.at(0, 0) == 3);
  CHECK(S.at(0, 1) == 0);
  CHECK(S.at(0, 2) == 1);
  CHECK(S.at(0, 3) == 2);

  CHECK(szcz::cyclic_shift(C, 0) == C);

  const auto R = fixtures::load(fixtures::kBlockChain4x64);
  CHECK(szcz::cyclic_shift(szcz::cyclic_shift(R, 5), R.cols - 5) == R);
  CHECK_THROWS_AS(szcz::cyclic_shift(R, R.cols), std::invalid_argument);
}

TEST_CASE("shift stack holds every delay with full row energy") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  const auto X = szcz::build_shift_stack(C, 8);
  REQUIRE(X.rows == 36);
  REQUIRE(X.cols == 64);
  for (std::size_t r = 0; r < X.rows; ++r) {
    double energy = 0.0;
    for (std::size_t i = 0; i < X.cols; ++i) energy += std::norm(X.at(r, i));
    CHECK(energy == Catch::Approx(16.0));
  }

  // with no extra delays the stack is just the matrix itself
  const auto X0 = szcz::build_shift_stack(C, 0);
  const auto roots = szcz::unit_root_table(C.q);
  REQUIRE(X0.rows == C.rows);
  for (std::size_t g = 0; g < C.rows; ++g)
    for (std::size_t i = 0; i < C.cols; ++i) {
      const auto e = C.at(g, i);
      const szcz::cdouble want = e == szcz::kZeroEntry ? szcz::cdouble{} : roots[e];
      CHECK(std::abs(X0.at(g, i) - want) < 1e-15);
    }

  CHECK_THROWS_AS(szcz::build_shift_stack(C, C.cols), std::invalid_argument);
}

TEST_CASE("stack gram collapses to a scaled identity inside the zone") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  const auto G = szcz::gram(szcz::build_shift_stack(C, 8));
  REQUIRE(G.rows == 36);
  for (std::size_t r = 0; r < G.rows; ++r)
    for (std::size_t c = 0; c < G.cols; ++c) {
      const szcz::cdouble want = r == c ? szcz::cdouble{16.0, 0.0} : szcz::cdouble{};
      CHECK(std::abs(G.at(r, c) - want) < 1e-9);
    }

  // one delay past the zone the gram picks up off-diagonal mass
  const auto G9 = szcz::gram(szcz::build_shift_stack(C, 9));
  double off = 0.0;
  for (std::size_t r = 0; r < G9.rows; ++r)
    for (std::size_t c = 0; c < G9.cols; ++c)
      if (r != c) off = std::max(off, std::abs(G9.at(r, c)));
  CHECK(off > 1.0);
}

TEST_CASE("zone verification and scaled-identity grams coincide") {
  const char* texts[] = {fixtures::kChain4x32, fixtures::kBlockChain4x64,
                         fixtures::kPairBaseline4x64, fixtures::kSetBaseline4x64};
  for (const char* text : texts) {
    const auto C = fixtures::load(text);
    const std::size_t M = *C.uniform_row_weight();
    for (std::size_t lam = 0; lam <= 10; ++lam) {
      const auto G = szcz::gram(szcz::build_shift_stack(C, lam));
      double dev = 0.0;
      for (std::size_t r = 0; r < G.rows; ++r)
        for (std::size_t c = 0; c < G.cols; ++c) {
          const szcz::cdouble want = r == c ? szcz::cdouble{double(M), 0.0} : szcz::cdouble{};
          dev = std::max(dev, std::abs(G.at(r, c) - want));
        }
      CHECK((dev < 1e-9) == szcz::verify_szcz(C, lam).pass);
    }
  }
}

TEST_CASE("estimator floor arithmetic") {
  CHECK(szcz::min_nmse(8, 16, kSigma12dB) == Catch::Approx(0.035491350627010874).epsilon(1e-12));
  CHECK(szcz::min_nmse(3, 16, kSigma12dB) == Catch::Approx(0.015773933612004832).epsilon(1e-12));
  CHECK(szcz::min_nmse(0, 1, 1.0) == Catch::Approx(1.0));
  CHECK_THROWS_AS(szcz::min_nmse(3, 0, 1.0), std::invalid_argument);
}

TEST_CASE("analytic error sits on the floor while the zone covers the memory") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  for (std::size_t lam = 0; lam <= 8; ++lam) {
    const double a = szcz::analytic_nmse(C, lam, kSigma12dB);
    CHECK(a == Catch::Approx(szcz::min_nmse(lam, 16, kSigma12dB)).epsilon(1e-9));
  }
  CHECK(szcz::analytic_nmse(C, 3, 0.0) == 0.0);
}

TEST_CASE("analytic error beyond the zone matches independent references") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  CHECK(szcz::analytic_nmse(C, 9, kSigma12dB) == Catch::Approx(0.03956628347677879).epsilon(1e-6));
  CHECK(szcz::analytic_nmse(C, 10, kSigma12dB) == Catch::Approx(0.0439416722048706).epsilon(1e-6));
  CHECK(szcz::analytic_nmse(C, 11, kSigma12dB) == Catch::Approx(0.04977154052575767).epsilon(1e-6));

  const auto P = fixtures::load(fixtures::kPairBaseline4x64);
  CHECK(szcz::analytic_nmse(P, 5, kSigma12dB) == Catch::Approx(0.023792349864773955).epsilon(1e-6));
  CHECK(szcz::analytic_nmse(P, 6, kSigma12dB) == Catch::Approx(0.02786728271454187).epsilon(1e-6));
  CHECK(szcz::analytic_nmse(P, 7, kSigma12dB) == Catch::Approx(0.032113288528522924).epsilon(1e-6));
  for (std::size_t lam = 5; lam <= 7; ++lam)
    CHECK(szcz::analytic_nmse(P, lam, kSigma12dB) > szcz::min_nmse(lam, 16, kSigma12dB));
}

TEST_CASE("dense baselines go singular once the memory outruns their zone") {
  const auto P = fixtures::load(fixtures::kPairBaseline4x64);
  CHECK_THROWS_AS(szcz::analytic_nmse(P, 8, kSigma12dB), szcz::SingularMatrixError);
  CHECK_THROWS_AS(szcz::analytic_nmse(P, 9, kSigma12dB), szcz::SingularMatrixError);

  const auto S = fixtures::load(fixtures::kSetBaseline4x64);
  CHECK(szcz::analytic_nmse(S, 3, kSigma12dB) ==
        Catch::Approx(szcz::min_nmse(3, 16, kSigma12dB)).epsilon(1e-9));
  CHECK_THROWS_AS(szcz::analytic_nmse(S, 4, kSigma12dB), szcz::SingularMatrixError);
}

TEST_CASE("channel draws are reproducible and carry unit total power") {
  szcz::Rng a{42}, b{42};
  const auto H1 = szcz::draw_channel(4, 2, 3, a);
  const auto H2 = szcz::draw_channel(4, 2, 3, b);
  REQUIRE(H1.rows == 2);
  REQUIRE(H1.cols == 16);
  for (std::size_t i = 0; i < H1.a.size(); ++i) CHECK(H1.a[i] == H2.a[i]);

  // mean squared magnitude over many draws approaches 1/(lambda+1)
  szcz::Rng rng{7};
  double acc = 0.0;
  std::size_t count = 0;
  for (int rep = 0; rep < 31250; ++rep) {
    const auto H = szcz::draw_channel(4, 2, 3, rng);
    for (const auto& h : H.a) acc += std::norm(h);
    count += H.a.size();
  }
  CHECK(acc / double(count) == Catch::Approx(0.25).epsilon(0.01));

  CHECK_THROWS_AS(szcz::draw_channel(0, 2, 3, rng), std::invalid_argument);
}

TEST_CASE("simulation is deterministic and thread-count independent") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  szcz::SimConfig cfg;
  cfg.lambda = 3;
  cfg.sigma2 = kSigma12dB;
  cfg.trials = 64;
  cfg.seed = 99;
  cfg.threads = 1;
  const auto r1 = szcz::simulate_ls(C, cfg);
  const auto r2 = szcz::simulate_ls(C, cfg);
  CHECK(r1.empirical_nmse == r2.empirical_nmse);
  cfg.threads = 4;
  const auto r4 = szcz::simulate_ls(C, cfg);
  CHECK(r1.empirical_nmse == r4.empirical_nmse);
  cfg.seed = 100;
  const auto r5 = szcz::simulate_ls(C, cfg);
  CHECK(r1.empirical_nmse != r5.empirical_nmse);
}

TEST_CASE("noiseless estimation recovers the channel exactly") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  szcz::SimConfig cfg;
  cfg.lambda = 3;
  cfg.sigma2 = 0.0;
  cfg.trials = 50;
  cfg.seed = 5;
  const auto r = szcz::simulate_ls(C, cfg);
  CHECK(r.analytic_nmse == 0.0);
  CHECK(r.empirical_nmse <= 1e-18);
}

TEST_CASE("measured error tracks the analytic value") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  szcz::SimConfig cfg;
  cfg.lambda = 8;
  cfg.sigma2 = kSigma12dB;
  cfg.trials = 2000;
  cfg.seed = 20260819;
  const auto r = szcz::simulate_ls(C, cfg);
  CHECK(r.achieved_min);
  CHECK(r.condition_estimate == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(r.empirical_nmse == Catch::Approx(r.analytic_nmse).epsilon(0.02));

  const auto P = fixtures::load(fixtures::kPairBaseline4x64);
  cfg.lambda = 7;
  cfg.trials = 1500;
  const auto rp = szcz::simulate_ls(P, cfg);
  CHECK_FALSE(rp.achieved_min);
  CHECK(rp.condition_estimate > 1.0 + 1e-6);
  CHECK(rp.empirical_nmse == Catch::Approx(rp.analytic_nmse).epsilon(0.03));
}

TEST_CASE("more receive antennas tighten the estimate without moving it") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  const std::size_t batches = 200;
  std::vector<double> arm2(batches), arm4(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    szcz::SimConfig cfg;
    cfg.lambda = 3;
    cfg.sigma2 = kSigma12dB;
    cfg.trials = 50;
    cfg.threads = 2;
    cfg.nr = 2;
    cfg.seed = 2000 + b;
    arm2[b] = szcz::simulate_ls(C, cfg).empirical_nmse;
    cfg.nr = 4;
    cfg.seed = 600000 + b;
    arm4[b] = szcz::simulate_ls(C, cfg).empirical_nmse;
  }
  const double mean2 = batch_mean(arm2);
  const double mean4 = batch_mean(arm4);
  CHECK(mean2 == Catch::Approx(mean4).epsilon(0.01));
  CHECK(mean2 == Catch::Approx(szcz::min_nmse(3, 16, kSigma12dB)).epsilon(0.01));

  // doubling the antenna count halves the batch-mean variance; the ratio
  // against its expectation stays inside the central 99% band of the
  // corresponding variance-ratio distribution with 199 and 199 degrees
  // of freedom
  const double ratio = batch_variance(arm2) / (2.0 * batch_variance(arm4));
  CHECK(ratio > 0.7567866);
  CHECK(ratio < 1.3213765);
}

TEST_CASE("simulation rejects unusable configurations") {
  const auto C = fixtures::load(fixtures::kBlockChain4x64);
  szcz::SimConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(szcz::simulate_ls(C, cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.nr = 0;
  CHECK_THROWS_AS(szcz::simulate_ls(C, cfg), std::invalid_argument);
  cfg.nr = 2;
  cfg.sigma2 = -0.5;
  CHECK_THROWS_AS(szcz::simulate_ls(C, cfg), std::invalid_argument);
  cfg.sigma2 = 0.1;

  const auto ragged = szcz::parse_matrix("2 2 4\n+ + . .\n+ . . .\n");
  CHECK_THROWS_WITH(szcz::simulate_ls(ragged, cfg), "rows carry unequal nonzero counts");
}
