#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rriqa/config.hpp"
#include "rriqa/dataset.hpp"
#include "rriqa/eval.hpp"

namespace rriqa {

struct Cell {
  Measure measure = Measure::Wnism;
  ColorSpace space = ColorSpace::Grayscale;

  bool operator==(const Cell&) const = default;
};

// WNISM, RRED, EMISM, DNT, each in grayscale, RGB and CIELAB.
std::vector<Cell> table_cells();
// "WNISM Grayscale", "RRED LAB", ...
std::string cell_label(const Cell& cell);

struct BenchOptions {
  std::vector<Cell> cells = table_cells();
  // Measure and space are overridden per cell.
  MeasureConfig base;
  int jobs = 1;
  // Called from worker threads after each record, with (done, total).
  std::function<void(std::size_t, std::size_t)> progress;
};

struct CellResult {
  Cell cell;
  // Parallel to the record list; empty where scoring failed.
  std::vector<std::optional<double>> scores;
  std::map<int, CorrelationReport> per_type;
  std::optional<CorrelationReport> all;
};

struct BenchReport {
  std::vector<EvaluationRecord> records;
  std::vector<CellResult> cells;
  // Per-record or per-group failures, in deterministic order.
  std::vector<std::string> failures;
};

// Scores every record in every cell on a bounded worker pool, then fits the logistic per
// distortion type and over all records. Groups with fewer than 10 scored records are
// left without a correlation and noted in failures.
BenchReport run_bench(std::vector<EvaluationRecord> records, const BenchOptions& options);

// Writes scores.csv, plcc.csv, srcc.csv, improvement_plcc.csv, improvement_srcc.csv,
// method_correlation_plcc.csv, method_correlation_srcc.csv and report.json.
void write_report(const BenchReport& report, const std::filesystem::path& out_dir);

}  // namespace rriqa
