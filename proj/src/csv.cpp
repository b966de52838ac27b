#include "upcross/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace upcross {

namespace {

std::string trimmed(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

// Whole-token double parse; tolerates a leading '+', rejects trailing garbage.
bool parse_double(const std::string& text, double* out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return first != last && ec == std::errc() && ptr == last;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw CsvError("cannot open '" + path.string() + "' for writing", 0);
  }
  return out;
}

std::string status_name(EstimateStatus status) {
  switch (status) {
    case EstimateStatus::ok:
      return "ok";
    case EstimateStatus::no_upcrossings:
      return "no_upcrossings";
    case EstimateStatus::degenerate_ci:
      return "degenerate_ci";
  }
  return "unknown";
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CsvError("cannot open '" + path.string() + "' for reading", 0);
  }
  std::vector<double> values;
  std::string line;
  int line_number = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    line = trimmed(line);
    if (line.empty()) {
      continue;
    }
    double value = 0.0;
    if (!parse_double(line, &value)) {
      if (first_data_line) {
        // Optional header line.
        first_data_line = false;
        continue;
      }
      throw CsvError("'" + path.string() + "' line " + std::to_string(line_number) +
                         ": cannot parse '" + line + "' as a number",
                     line_number);
    }
    first_data_line = false;
    if (!std::isfinite(value)) {
      throw CsvError("'" + path.string() + "' line " + std::to_string(line_number) +
                         ": non-finite value '" + line + "'",
                     line_number);
    }
    values.push_back(value);
  }
  if (values.empty()) {
    throw CsvError("'" + path.string() + "' contains no data rows", 0);
  }
  return TimeSeries(std::move(values));
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
  std::ofstream out = open_output(path);
  out << "value\n";
  for (double v : series.values()) {
    out << format_double(v) << '\n';
  }
  if (!out) {
    throw CsvError("failed writing '" + path.string() + "'", 0);
  }
}

void write_curve_csv(const std::filesystem::path& path, const EtaCurve& curve) {
  std::ofstream out = open_output(path);
  if (curve.scale_hint == ScaleHint::logarithmic) {
    out << "# k_scale: logarithmic\n";
  }
  out << "k,threshold,eta_hat,ci_lower,ci_upper,n_upcrossings,n_run_starts,status\n";
  for (const EtaCurveEntry& entry : curve.entries) {
    const EtaEstimate& est = entry.estimate;
    out << entry.k << ',' << format_double(est.threshold) << ',';
    if (est.status != EstimateStatus::no_upcrossings) {
      out << format_double(est.eta_hat);
    }
    out << ',';
    if (est.ci) {
      out << format_double(est.ci->lower) << ',' << format_double(est.ci->upper);
    } else {
      out << ',';
    }
    out << ',' << est.n_upcrossings << ',' << est.n_run_starts << ',' << status_name(est.status)
        << '\n';
  }
  if (!out) {
    throw CsvError("failed writing '" + path.string() + "'", 0);
  }
}

void write_study_csv(const std::filesystem::path& path, const McStudySpec& spec,
                     const McStudyResult& result) {
  std::ofstream out = open_output(path);
  out << "# process: " << process_name(spec.process);
  if (spec.process == ProcessKind::ar1) {
    out << " r=" << spec.r;
  }
  out << " runs=" << spec.runs << " replicates=" << spec.replicates
      << " seed=" << spec.master_seed << " eta_true=" << format_double(result.eta_true) << "\n";
  out << "kind,n,k,k_fraction,mean_eta,hw_mean,mse,hw_mse,sd,hw_sd,skipped_runs,status\n";

  auto write_cell = [&](const char* kind, const McCell& cell, double k_fraction) {
    out << kind << ',' << cell.n << ',' << cell.k << ',' << format_double(k_fraction) << ',';
    if (cell.absent) {
      out << ",,,,,," << cell.skipped_runs << ",all_skipped\n";
      return;
    }
    out << format_double(cell.mean_eta) << ',' << format_double(cell.halfwidth_mean) << ','
        << format_double(cell.mse) << ',' << format_double(cell.halfwidth_mse) << ','
        << format_double(cell.sd) << ',' << format_double(cell.halfwidth_sd) << ','
        << cell.skipped_runs << ",ok\n";
  };

  for (const McSummary& summary : result.summaries) {
    for (const McCell& cell : result.cells) {
      if (cell.n == summary.n) {
        write_cell("k", cell, static_cast<double>(cell.k) / cell.n);
      }
    }
    write_cell("summary", summary.at_k0, summary.k0_fraction);
  }
  if (!out) {
    throw CsvError("failed writing '" + path.string() + "'", 0);
  }
}

}  // namespace upcross
