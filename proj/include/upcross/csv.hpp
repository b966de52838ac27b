#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "upcross/estimator.hpp"
#include "upcross/mc_study.hpp"
#include "upcross/series.hpp"

namespace upcross {

// Parse or I/O failure on a dataset file; line is 1-based, 0 when the error
// is not tied to a particular line.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::string message, int line_number)
      : std::runtime_error(std::move(message)), line(line_number) {}
  int line = 0;
};

// Shortest decimal that round-trips to the same double; locale independent.
std::string format_double(double value);

// Single-column CSV of reals, one observation per row, optional header
// (detected by a non-numeric first line). Rows must parse to finite values.
TimeSeries read_series_csv(const std::filesystem::path& path);

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

// Columns: k,threshold,eta_hat,ci_lower,ci_upper,n_upcrossings,n_run_starts,
// status. CI columns are empty when no interval was requested; a logarithmic
// scale hint is emitted as a leading comment line.
void write_curve_csv(const std::filesystem::path& path, const EtaCurve& curve);

// One row per (n, k) plus a summary row per n carrying k0 and the cell
// statistics at k0.
void write_study_csv(const std::filesystem::path& path, const McStudySpec& spec,
                     const McStudyResult& result);

}  // namespace upcross
