#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "upcross/csv.hpp"
#include "upcross/estimator.hpp"
#include "upcross/mc_study.hpp"
#include "upcross/series.hpp"
#include "upcross/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // usage or argument errors
constexpr int kExitData = 2;   // unreadable, unparsable or invalid data files

upcross::ProcessKind parse_process(const std::string& name) {
  if (name == "armax") return upcross::ProcessKind::armax;
  if (name == "ar1") return upcross::ProcessKind::ar1;
  if (name == "iid") return upcross::ProcessKind::iid_uniform;
  throw std::invalid_argument("unknown process '" + name + "' (expected armax, ar1 or iid)");
}

// "full", "K", "MIN:MAX" or "MIN:MAX:STEP".
std::optional<std::vector<int>> parse_k_grid(const std::string& text) {
  if (text == "full") {
    return std::nullopt;
  }
  std::vector<int> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t colon = text.find(':', start);
    const std::string piece = text.substr(start, colon == std::string::npos ? colon : colon - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse k grid '" + text + "' (expected full, K, MIN:MAX or MIN:MAX:STEP)");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) {
    return std::vector<int>{parts[0]};
  }
  if (parts.size() == 2 || parts.size() == 3) {
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step < 1 || parts[0] > parts[1]) {
      throw std::invalid_argument("invalid k grid '" + text + "'");
    }
    std::vector<int> grid;
    for (int k = parts[0]; k <= parts[1]; k += step) {
      grid.push_back(k);
    }
    return grid;
  }
  throw std::invalid_argument("cannot parse k grid '" + text + "'");
}

struct SimulateArgs {
  std::string process = "armax";
  int n = 0;
  int r = 2;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  upcross::ProcessSpec spec;
  spec.kind = parse_process(args.process);
  spec.n = args.n;
  spec.r = args.r;
  spec.seed = args.seed;
  const upcross::TimeSeries series = upcross::simulate(spec);
  upcross::write_series_csv(args.out, series);
  const upcross::KnownIndices known = upcross::known_indices(spec);
  std::cerr << upcross::process_name(spec.kind) << ": n=" << spec.n << " seed=" << spec.seed
            << " eta=" << upcross::format_double(known.eta)
            << " theta=" << upcross::format_double(known.theta) << " -> " << args.out << "\n";
  return kExitOk;
}

struct EstimateArgs {
  std::string input;
  std::string out;
  int k = 0;
  int k_min = 0;
  int k_max = 0;
  double ci_level = 0.95;
  bool log_axis = false;
  std::string transform;
};

void print_single_estimate(const upcross::EtaEstimate& est, int k) {
  using upcross::format_double;
  std::cout << "k=" << k << " threshold=" << format_double(est.threshold);
  if (est.status == upcross::EstimateStatus::no_upcrossings) {
    std::cout << " status=no_upcrossings (no upcrossings at this threshold)\n";
    return;
  }
  std::cout << " eta_hat=" << format_double(est.eta_hat);
  if (est.ci) {
    std::cout << " ci=[" << format_double(est.ci->lower) << "," << format_double(est.ci->upper)
              << "]@" << format_double(est.ci->level);
    if (est.ci->degenerate) {
      std::cout << " (degenerate: (eta_hat*sigma_hat)^2 <= 1, the pivot's variance estimate"
                   " is nonpositive and the interval collapses to a point)";
    }
  }
  std::cout << " upcrossings=" << est.n_upcrossings << " run_starts=" << est.n_run_starts
            << " run_upcrossings=" << est.n_run_upcrossings
            << " sigma2_hat=" << format_double(est.sigma2_hat) << "\n";
}

int run_estimate(const EstimateArgs& args, bool have_k, bool have_range) {
  upcross::TimeSeries series = upcross::read_series_csv(args.input);
  if (!args.transform.empty()) {
    series = upcross::log_returns(series);
  }

  std::vector<int> grid;
  if (have_k) {
    grid = {args.k};
  } else if (have_range) {
    if (args.k_min > args.k_max) {
      throw std::invalid_argument("--k-min must not exceed --k-max");
    }
    for (int k = args.k_min; k <= args.k_max; ++k) {
      grid.push_back(k);
    }
  } else {
    grid = upcross::default_k_grid(series.size());
    if (grid.empty()) {
      throw std::invalid_argument("series too short for the default k grid; give --k explicitly");
    }
  }

  upcross::EtaCurve curve = upcross::eta_curve(series, grid, args.ci_level);
  curve.scale_hint = args.log_axis ? upcross::ScaleHint::logarithmic : upcross::ScaleHint::linear;
  upcross::write_curve_csv(args.out, curve);
  if (curve.entries.size() == 1) {
    print_single_estimate(curve.entries.front().estimate, curve.entries.front().k);
  } else {
    std::cout << "wrote " << curve.entries.size() << " rows (k=" << grid.front() << ".."
              << grid.back() << ") to " << args.out << "\n";
  }
  return kExitOk;
}

struct StudyArgs {
  std::string process = "armax";
  int r = 2;
  std::vector<int> n_list;
  int runs = 500;
  int replicates = 4;
  std::uint64_t seed = 0;
  double ci_level = 0.95;
  std::string k_grid = "full";
  int threads = 1;
  std::string out;
};

int run_mc_study(const StudyArgs& args) {
  upcross::McStudySpec spec;
  spec.process = parse_process(args.process);
  spec.r = args.r;
  spec.sample_sizes = args.n_list;
  spec.runs = args.runs;
  spec.replicates = args.replicates;
  spec.master_seed = args.seed;
  spec.ci_level = args.ci_level;
  spec.k_grid = parse_k_grid(args.k_grid);
  spec.threads = args.threads;

  const upcross::McStudyResult result = upcross::run_study(spec);
  upcross::write_study_csv(args.out, spec, result);
  using upcross::format_double;
  for (const upcross::McSummary& summary : result.summaries) {
    std::cout << "n=" << summary.n << " k0=" << summary.k0
              << " k0/n=" << format_double(summary.k0_fraction)
              << " mean=" << format_double(summary.at_k0.mean_eta) << "+-"
              << format_double(summary.at_k0.halfwidth_mean)
              << " mse=" << format_double(summary.at_k0.mse) << "+-"
              << format_double(summary.at_k0.halfwidth_mse)
              << " sd=" << format_double(summary.at_k0.sd) << "+-"
              << format_double(summary.at_k0.halfwidth_sd)
              << " skipped=" << summary.at_k0.skipped_runs << "\n";
  }
  std::cout << "wrote study table to " << args.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs estimator of the upcrossings index: simulators, estimation and Monte Carlo studies"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "simulate a process with known upcrossings index");
  simulate->add_option("--process", sim.process, "armax | ar1 | iid")->required();
  simulate->add_option("--n", sim.n, "series length")->required();
  simulate->add_option("--r", sim.r, "ar1 order parameter (r >= 2)");
  simulate->add_option("--seed", sim.seed, "RNG seed")->required();
  simulate->add_option("--out", sim.out, "output CSV path")->required();

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand("estimate", "estimate the upcrossings index from a CSV series");
  estimate->add_option("--input", est.input, "single-column CSV of observations")->required();
  CLI::Option* opt_k = estimate->add_option("--k", est.k, "single top-order-statistic index");
  CLI::Option* opt_kmin = estimate->add_option("--k-min", est.k_min, "grid lower bound");
  CLI::Option* opt_kmax = estimate->add_option("--k-max", est.k_max, "grid upper bound");
  estimate->add_option("--ci-level", est.ci_level, "confidence level (default 0.95)");
  estimate->add_flag("--log-axis", est.log_axis, "mark the curve for logarithmic k display");
  estimate->add_option("--transform", est.transform, "apply a transform to the input series")
      ->check(CLI::IsMember({"log-returns"}));
  estimate->add_option("--out", est.out, "output CSV path")->required();
  opt_k->excludes(opt_kmin)->excludes(opt_kmax);
  opt_kmin->needs(opt_kmax);
  opt_kmax->needs(opt_kmin);

  StudyArgs study;
  CLI::App* mc = app.add_subcommand("mc-study", "multi-sample Monte Carlo study of the estimator");
  mc->add_option("--process", study.process, "armax | ar1 | iid")->required();
  mc->add_option("--r", study.r, "ar1 order parameter (r >= 2)");
  mc->add_option("--n-list", study.n_list, "sample sizes")->required()->delimiter(',');
  mc->add_option("--runs", study.runs, "samples per replicate (default 500)");
  mc->add_option("--replicates", study.replicates, "independent replicates (default 4)");
  mc->add_option("--seed", study.seed, "master seed")->required();
  mc->add_option("--ci-level", study.ci_level, "level for replicate half-widths (default 0.95)");
  mc->add_option("--k-grid", study.k_grid, "full | K | MIN:MAX | MIN:MAX:STEP (default full)");
  mc->add_option("--threads", study.threads, "worker threads (results are identical for any count)");
  mc->add_option("--out", study.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(sim);
    }
    if (estimate->parsed()) {
      return run_estimate(est, opt_k->count() > 0, opt_kmin->count() > 0);
    }
    return run_mc_study(study);
  } catch (const upcross::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
