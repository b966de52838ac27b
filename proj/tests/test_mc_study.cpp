#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "upcross/estimator.hpp"
#include "upcross/mc_study.hpp"
#include "upcross/rng.hpp"
#include "upcross/simulate.hpp"

using upcross::McStudyResult;
using upcross::McStudySpec;
using upcross::ProcessKind;

namespace {

McStudySpec small_spec() {
  McStudySpec spec;
  spec.process = ProcessKind::armax;
  spec.sample_sizes = {300, 600};
  spec.runs = 30;
  spec.replicates = 3;
  spec.k_grid = std::vector<int>{5, 10, 20, 40};
  spec.master_seed = 31415;
  return spec;
}

bool identical(const McStudyResult& a, const McStudyResult& b) {
  if (a.cells.size() != b.cells.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const upcross::McCell& x = a.cells[i];
    const upcross::McCell& y = b.cells[i];
    if (x.n != y.n || x.k != y.k || x.absent != y.absent || x.mean_eta != y.mean_eta ||
        x.mse != y.mse || x.sd != y.sd || x.halfwidth_mean != y.halfwidth_mean ||
        x.halfwidth_mse != y.halfwidth_mse || x.halfwidth_sd != y.halfwidth_sd ||
        x.skipped_runs != y.skipped_runs) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.summaries.size(); ++i) {
    if (a.summaries[i].k0 != b.summaries[i].k0) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("run_study: degenerate aggregation pins the stream contract") {
  McStudySpec spec;
  spec.process = ProcessKind::armax;
  spec.sample_sizes = {400};
  spec.runs = 1;
  spec.replicates = 1;
  spec.k_grid = std::vector<int>{15};
  spec.master_seed = 777;

  const McStudyResult result = upcross::run_study(spec);
  REQUIRE(result.cells.size() == 1);
  CHECK(result.eta_true == 0.5);

  // the single sample must come from substream 0 of the master seed
  const upcross::ProcessSpec process{ProcessKind::armax, 2, 400,
                                     upcross::substream_seed(777, 0)};
  const upcross::EtaEstimate direct =
      upcross::estimate_eta(upcross::simulate(process), upcross::TopOrderStatistic{15});
  REQUIRE(direct.status == upcross::EstimateStatus::ok);

  const upcross::McCell& cell = result.cells.front();
  CHECK(cell.mean_eta == direct.eta_hat);
  CHECK(cell.mse == (direct.eta_hat - 0.5) * (direct.eta_hat - 0.5));
  CHECK(cell.sd == 0.0);
  CHECK(cell.halfwidth_mean == 0.0);
  CHECK(result.summaries.front().k0 == 15);
}

TEST_CASE("run_study: identical specs and any thread count give identical results") {
  McStudySpec spec = small_spec();
  const McStudyResult once = upcross::run_study(spec);
  const McStudyResult twice = upcross::run_study(spec);
  CHECK(identical(once, twice));

  spec.threads = 4;
  const McStudyResult threaded = upcross::run_study(spec);
  CHECK(identical(once, threaded));
}

TEST_CASE("run_study: cell layout, skip accounting and k0 selection") {
  const McStudySpec spec = small_spec();
  const McStudyResult result = upcross::run_study(spec);
  REQUIRE(result.cells.size() == 8);  // 2 sample sizes x 4 grid entries
  REQUIRE(result.summaries.size() == 2);

  std::size_t idx = 0;
  for (int n : {300, 600}) {
    double best_mse = 0.0;
    int best_k = -1;
    for (int k : {5, 10, 20, 40}) {
      const upcross::McCell& cell = result.cells[idx++];
      CHECK(cell.n == n);
      CHECK(cell.k == k);
      CHECK(!cell.absent);
      CHECK(cell.mean_eta >= 0.0);
      CHECK(cell.mean_eta <= 1.0);
      CHECK(cell.skipped_runs >= 0);
      CHECK(cell.skipped_runs <= static_cast<long>(spec.runs) * spec.replicates);
      if (best_k < 0 || cell.mse < best_mse) {
        best_k = k;
        best_mse = cell.mse;
      }
    }
    const upcross::McSummary& summary =
        n == 300 ? result.summaries[0] : result.summaries[1];
    CHECK(summary.n == n);
    CHECK(summary.k0 == best_k);  // first minimizer in ascending k
    CHECK(summary.k0_fraction == doctest::Approx(static_cast<double>(best_k) / n));
    CHECK(summary.at_k0.mse == best_mse);
  }
}

TEST_CASE("run_study: mse dominates squared bias") {
  const McStudyResult result = upcross::run_study(small_spec());
  const auto decomposition = upcross::bias_variance_decomposition(result, result.eta_true);
  REQUIRE(decomposition.size() == result.cells.size());
  for (std::size_t i = 0; i < decomposition.size(); ++i) {
    const upcross::McCell& cell = result.cells[i];
    const upcross::BiasVariance& bv = decomposition[i];
    CHECK(bv.n == cell.n);
    CHECK(bv.k == cell.k);
    CHECK(cell.mse >= bv.bias_sq - 1e-12);
    CHECK(bv.variance >= 0.0);
    // exact reconstruction before flooring
    CHECK(std::abs(bv.bias_sq + (cell.mse - bv.bias_sq) - cell.mse) <= 1e-12);
    CHECK(bv.variance == doctest::Approx(cell.mse - bv.bias_sq).epsilon(1e-12));
  }
}

TEST_CASE("bias_variance_decomposition: arithmetic examples") {
  McStudyResult result;
  result.eta_true = 0.5;
  upcross::McCell cell;
  cell.n = 100;
  cell.k = 10;
  cell.mean_eta = 0.52;
  cell.mse = 0.0005;
  result.cells.push_back(cell);
  cell.k = 20;
  cell.mean_eta = 0.5;  // unbiased point
  cell.mse = 0.0003;
  result.cells.push_back(cell);

  const auto decomposition = upcross::bias_variance_decomposition(result, 0.5);
  REQUIRE(decomposition.size() == 2);
  CHECK(decomposition[0].bias_sq == doctest::Approx(0.0004).epsilon(1e-12));
  CHECK(decomposition[0].variance == doctest::Approx(0.0001).epsilon(1e-12));
  CHECK(decomposition[1].bias_sq == 0.0);
  CHECK(decomposition[1].variance == doctest::Approx(0.0003));
}

TEST_CASE("run_study: armax MSE at k0 does not grow with the sample size") {
  McStudySpec spec;
  spec.process = ProcessKind::armax;
  spec.sample_sizes = {400, 1600};
  spec.runs = 100;
  spec.replicates = 2;
  spec.master_seed = 20202;  // default grid: 1..n/4 per n
  const McStudyResult result = upcross::run_study(spec);
  REQUIRE(result.summaries.size() == 2);
  CHECK(result.summaries[1].at_k0.mse <= result.summaries[0].at_k0.mse);
}

TEST_CASE("run_study: spec validation") {
  McStudySpec spec = small_spec();
  spec.sample_sizes.clear();
  CHECK_THROWS_AS(upcross::run_study(spec), std::invalid_argument);

  spec = small_spec();
  spec.runs = 0;
  CHECK_THROWS_AS(upcross::run_study(spec), std::invalid_argument);

  spec = small_spec();
  spec.ci_level = 1.0;
  CHECK_THROWS_AS(upcross::run_study(spec), std::invalid_argument);

  spec = small_spec();
  spec.k_grid = std::vector<int>{10, 5};
  CHECK_THROWS_AS(upcross::run_study(spec), std::invalid_argument);

  spec = small_spec();
  spec.k_grid = std::vector<int>{5, 350};  // out of range for n=300
  CHECK_THROWS_AS(upcross::run_study(spec), std::out_of_range);

  spec = small_spec();
  spec.process = ProcessKind::ar1;
  spec.r = 1;
  CHECK_THROWS_AS(upcross::run_study(spec), std::invalid_argument);
}

TEST_CASE("run_study: default grid is 1..n/4") {
  McStudySpec spec;
  spec.process = ProcessKind::iid_uniform;
  spec.sample_sizes = {80};
  spec.runs = 5;
  spec.replicates = 2;
  spec.master_seed = 1;
  const McStudyResult result = upcross::run_study(spec);
  CHECK(result.cells.size() == 20);
  CHECK(result.cells.front().k == 1);
  CHECK(result.cells.back().k == 20);
  CHECK(result.eta_true == 1.0);
}
