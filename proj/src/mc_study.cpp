#include "upcross/mc_study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "upcross/estimator.hpp"
#include "upcross/events.hpp"
#include "upcross/normal.hpp"
#include "upcross/rng.hpp"

namespace upcross {

namespace {

void validate_study(const McStudySpec& spec) {
  if (spec.sample_sizes.empty()) {
    throw std::invalid_argument("study requires at least one sample size");
  }
  for (int n : spec.sample_sizes) {
    if (n < 1) {
      throw std::invalid_argument("sample sizes must be positive");
    }
  }
  if (spec.runs < 1 || spec.replicates < 1) {
    throw std::invalid_argument("runs and replicates must be >= 1");
  }
  if (!(spec.ci_level > 0.0 && spec.ci_level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  if (spec.process == ProcessKind::ar1 && spec.r < 2) {
    throw std::invalid_argument("ar1 requires r >= 2");
  }
}

std::vector<int> grid_for(const McStudySpec& spec, int n) {
  std::vector<int> grid = spec.k_grid ? *spec.k_grid : default_k_grid(n);
  if (grid.empty()) {
    throw std::invalid_argument("empty k grid for n=" + std::to_string(n));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || grid[i] > n - 1) {
      throw std::out_of_range("k grid entry " + std::to_string(grid[i]) +
                              " out of range for n=" + std::to_string(n));
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("k grid must be strictly increasing");
    }
  }
  return grid;
}

// eta_hat for one simulated sample at every grid k; NaN marks a skipped k
// (no upcrossings at that level).
void eta_row(const McStudySpec& spec, int n, std::uint64_t stream, const std::vector<int>& grid,
             double* row) {
  ProcessSpec process{spec.process, spec.r, n, substream_seed(spec.master_seed, stream)};
  const TimeSeries sample = simulate(process);

  std::vector<double> sorted_desc = sample.values();
  if (grid.size() > 1) {
    std::sort(sorted_desc.begin(), sorted_desc.end(), std::greater<double>());
  } else {
    std::nth_element(sorted_desc.begin(), sorted_desc.begin() + grid.front(), sorted_desc.end(),
                     std::greater<double>());
  }

  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double u = sorted_desc[static_cast<std::size_t>(grid[j])];
    const EventCounts counts = count_events(sample, u);
    row[j] = counts.upcrossings == 0
                 ? std::numeric_limits<double>::quiet_NaN()
                 : static_cast<double>(counts.run_starts) / counts.upcrossings;
  }
}

struct ReplicateStats {
  int valid = 0;
  double mean = 0.0;
  double mse = 0.0;
  double sd = 0.0;
};

// Mean and half-width of one statistic across replicates.
void aggregate(const std::vector<double>& values, double z, double* mean_out, double* hw_out) {
  const std::size_t m = values.size();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(m);
  *mean_out = mean;
  if (m < 2) {
    *hw_out = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));
  *hw_out = z * sd / std::sqrt(static_cast<double>(m));
}

}  // namespace

McStudyResult run_study(const McStudySpec& spec) {
  validate_study(spec);
  const KnownIndices indices = known_indices(spec.process, spec.r);
  const double eta_true = indices.eta;
  const double z = normal_quantile(0.5 * (1.0 + spec.ci_level));
  const int worker_count =
      std::max(1, std::min(spec.threads, static_cast<int>(std::thread::hardware_concurrency())));

  McStudyResult result;
  result.eta_true = eta_true;

  for (std::size_t size_index = 0; size_index < spec.sample_sizes.size(); ++size_index) {
    const int n = spec.sample_sizes[size_index];
    const std::vector<int> grid = grid_for(spec, n);
    const std::size_t grid_size = grid.size();

    // replicate -> k -> per-replicate stats
    std::vector<std::vector<ReplicateStats>> stats(
        static_cast<std::size_t>(spec.replicates), std::vector<ReplicateStats>(grid_size));
    std::vector<long> skipped(grid_size, 0);

    std::vector<double> etas(static_cast<std::size_t>(spec.runs) * grid_size);
    for (int replicate = 0; replicate < spec.replicates; ++replicate) {
      const std::uint64_t stream_base =
          (static_cast<std::uint64_t>(size_index) * spec.replicates +
           static_cast<std::uint64_t>(replicate)) *
          static_cast<std::uint64_t>(spec.runs);

      // Fill one row per run. Rows are disjoint and the aggregation below
      // walks them in run order, so thread count cannot change the result.
      std::atomic<int> next_run{0};
      auto worker = [&] {
        for (int run = next_run.fetch_add(1); run < spec.runs; run = next_run.fetch_add(1)) {
          eta_row(spec, n, stream_base + static_cast<std::uint64_t>(run), grid,
                  etas.data() + static_cast<std::size_t>(run) * grid_size);
        }
      };
      if (worker_count == 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int t = 0; t < worker_count; ++t) {
          pool.emplace_back(worker);
        }
        for (auto& t : pool) {
          t.join();
        }
      }

      for (std::size_t j = 0; j < grid_size; ++j) {
        int valid = 0;
        double sum = 0.0;
        double sum_sq_dev = 0.0;
        double sum_sq = 0.0;
        for (int run = 0; run < spec.runs; ++run) {
          const double eta = etas[static_cast<std::size_t>(run) * grid_size + j];
          if (std::isnan(eta)) {
            ++skipped[j];
            continue;
          }
          ++valid;
          sum += eta;
          sum_sq_dev += (eta - eta_true) * (eta - eta_true);
          sum_sq += eta * eta;
        }
        ReplicateStats& rs = stats[static_cast<std::size_t>(replicate)][j];
        rs.valid = valid;
        if (valid > 0) {
          rs.mean = sum / valid;
          rs.mse = sum_sq_dev / valid;
          rs.sd = valid > 1 ? std::sqrt(std::max(0.0, sum_sq - valid * rs.mean * rs.mean) /
                                        (valid - 1))
                            : 0.0;
        }
      }
    }

    McSummary summary;
    summary.n = n;
    bool have_k0 = false;
    for (std::size_t j = 0; j < grid_size; ++j) {
      McCell cell;
      cell.n = n;
      cell.k = grid[j];
      cell.skipped_runs = skipped[j];

      std::vector<double> means;
      std::vector<double> mses;
      std::vector<double> sds;
      for (int replicate = 0; replicate < spec.replicates; ++replicate) {
        const ReplicateStats& rs = stats[static_cast<std::size_t>(replicate)][j];
        if (rs.valid > 0) {
          means.push_back(rs.mean);
          mses.push_back(rs.mse);
          sds.push_back(rs.sd);
        }
      }
      if (means.empty()) {
        cell.absent = true;
      } else {
        aggregate(means, z, &cell.mean_eta, &cell.halfwidth_mean);
        aggregate(mses, z, &cell.mse, &cell.halfwidth_mse);
        aggregate(sds, z, &cell.sd, &cell.halfwidth_sd);
        if (!have_k0 || cell.mse < summary.at_k0.mse) {
          have_k0 = true;
          summary.k0 = cell.k;
          summary.at_k0 = cell;
        }
      }
      result.cells.push_back(cell);
    }
    if (!have_k0) {
      throw std::runtime_error("every run was skipped at every k for n=" + std::to_string(n));
    }
    summary.k0_fraction = static_cast<double>(summary.k0) / n;
    result.summaries.push_back(summary);
  }
  return result;
}

std::vector<BiasVariance> bias_variance_decomposition(const McStudyResult& result,
                                                      double eta_true) {
  std::vector<BiasVariance> out;
  out.reserve(result.cells.size());
  for (const McCell& cell : result.cells) {
    if (cell.absent) {
      continue;
    }
    BiasVariance bv;
    bv.n = cell.n;
    bv.k = cell.k;
    bv.bias_sq = (cell.mean_eta - eta_true) * (cell.mean_eta - eta_true);
    bv.variance = std::max(0.0, cell.mse - bv.bias_sq);
    out.push_back(bv);
  }
  return out;
}

}  // namespace upcross
