#include "rriqa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "json_writer.hpp"
#include "rriqa/error.hpp"
#include "rriqa/image_io.hpp"
#include "rriqa/measures.hpp"

namespace fs = std::filesystem;

namespace rriqa {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMinGroupSize = 10;
constexpr std::array<Measure, 4> kTableMeasures{Measure::Wnism, Measure::Rred, Measure::Emism,
                                                Measure::Dnt};
constexpr std::array<ColorSpace, 3> kTableSpaces{ColorSpace::Grayscale, ColorSpace::Rgb,
                                                 ColorSpace::Cielab};

std::string measure_label(Measure m) {
  std::string s(to_string(m));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string space_label(ColorSpace s) {
  switch (s) {
    case ColorSpace::Grayscale:
      return "Grayscale";
    case ColorSpace::Rgb:
      return "RGB";
    case ColorSpace::Cielab:
      return "LAB";
  }
  return "unknown";
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)),
                                                      1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  const auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  if (workers == 1) {
    run();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
}

MeasureConfig cell_config(const MeasureConfig& base, const Cell& cell) {
  MeasureConfig c = base;
  c.measure = cell.measure;
  c.space = cell.space;
  return c;
}

std::string fixed2(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  // Avoid "-0.00".
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

std::vector<int> report_types(const BenchReport& report) {
  std::set<int> types;
  for (const EvaluationRecord& r : report.records) types.insert(r.distortion_type);
  return {types.begin(), types.end()};
}

const CellResult* find_cell(const BenchReport& report, Measure m, ColorSpace s) {
  for (const CellResult& c : report.cells) {
    if (c.cell.measure == m && c.cell.space == s) return &c;
  }
  return nullptr;
}

enum class Metric { Plcc, Srcc };

// Tables-style values: signed PLCC after the logistic mapping, |SRCC| of the raw scores.
std::optional<double> metric_of(const std::optional<CorrelationReport>& r, Metric m) {
  if (!r) return std::nullopt;
  return m == Metric::Plcc ? r->plcc : std::abs(r->srcc_raw);
}

std::optional<double> metric_of(const CellResult& c, int type, Metric m) {
  const auto it = c.per_type.find(type);
  if (it == c.per_type.end()) return std::nullopt;
  return metric_of(std::optional<CorrelationReport>(it->second), m);
}

std::string label_of(int type) { return std::to_string(type); }

std::string table_csv(const BenchReport& report, Metric m) {
  std::string out = "Label";
  for (const CellResult& c : report.cells) out += "," + cell_label(c.cell);
  out += '\n';
  for (int type : report_types(report)) {
    out += label_of(type);
    for (const CellResult& c : report.cells) out += "," + fixed2(metric_of(c, type, m));
    out += '\n';
  }
  out += "All";
  for (const CellResult& c : report.cells) out += "," + fixed2(metric_of(c.all, m));
  out += '\n';
  return out;
}

std::string improvement_csv(const BenchReport& report, Metric m) {
  struct Column {
    const CellResult* gray;
    const CellResult* color;
  };
  std::vector<Column> columns;
  std::string out = "Label";
  for (Measure measure : kTableMeasures) {
    const CellResult* gray = find_cell(report, measure, ColorSpace::Grayscale);
    if (gray == nullptr) continue;
    for (ColorSpace s : {ColorSpace::Rgb, ColorSpace::Cielab}) {
      const CellResult* color = find_cell(report, measure, s);
      if (color == nullptr) continue;
      columns.push_back({gray, color});
      const std::string name = measure_label(measure) + " " + space_label(s);
      out += "," + name + " per," + name + " class";
    }
  }
  out += '\n';
  const auto row = [&](const std::string& label, auto&& value_of) {
    out += label;
    for (const Column& col : columns) {
      const std::optional<double> g = value_of(*col.gray);
      const std::optional<double> c = value_of(*col.color);
      if (!g || !c || *g == 0.0) {
        out += ",,";
        continue;
      }
      const ImprovementClass ic = improvement_class(*g, *c);
      out += "," + fixed2(ic.per) + "," + std::string(to_string(ic.level));
    }
    out += '\n';
  };
  for (int type : report_types(report)) {
    row(label_of(type), [&](const CellResult& c) { return metric_of(c, type, m); });
  }
  row("All", [&](const CellResult& c) { return metric_of(c.all, m); });
  return out;
}

// Pearson correlation between two measures' per-type columns, per colour space.
std::string method_correlation_csv(const BenchReport& report, Metric m) {
  std::string out = "Space,Method";
  for (Measure measure : kTableMeasures) out += "," + measure_label(measure);
  out += '\n';
  const std::vector<int> types = report_types(report);
  for (ColorSpace s : kTableSpaces) {
    for (Measure a : kTableMeasures) {
      const CellResult* ca = find_cell(report, a, s);
      if (ca == nullptr) continue;
      out += space_label(s) + "," + measure_label(a);
      for (Measure b : kTableMeasures) {
        const CellResult* cb = find_cell(report, b, s);
        std::optional<double> value;
        if (cb != nullptr && a == b) {
          value = 1.0;
        } else if (cb != nullptr) {
          // Order the pair so that (a, b) and (b, a) compute the same number.
          const CellResult* first = static_cast<int>(a) < static_cast<int>(b) ? ca : cb;
          const CellResult* second = first == ca ? cb : ca;
          std::vector<double> x;
          std::vector<double> y;
          for (int t : types) {
            const auto vx = metric_of(*first, t, m);
            const auto vy = metric_of(*second, t, m);
            if (vx && vy) {
              x.push_back(*vx);
              y.push_back(*vy);
            }
          }
          try {
            if (x.size() >= 3) value = plcc(x, y);
          } catch (const Error&) {
          }
        }
        out += "," + fixed2(value);
      }
      out += '\n';
    }
  }
  return out;
}

Json correlation_json(const CorrelationReport& r) {
  Json j;
  j["n"] = r.n;
  j["plcc"] = r.plcc;
  j["srcc"] = r.srcc;
  j["srcc_raw"] = r.srcc_raw;
  j["srcc_abs"] = std::abs(r.srcc_raw);
  j["sse"] = r.fit.sse;
  j["fit_improved"] = r.fit.improved;
  Json beta = Json::array();
  for (double b : r.fit.params.beta) beta.push_back(b);
  j["beta"] = std::move(beta);
  return j;
}

}  // namespace

std::vector<Cell> table_cells() {
  std::vector<Cell> cells;
  for (Measure m : kTableMeasures) {
    for (ColorSpace s : kTableSpaces) cells.push_back({m, s});
  }
  return cells;
}

std::string cell_label(const Cell& cell) {
  return measure_label(cell.measure) + " " + space_label(cell.space);
}

BenchReport run_bench(std::vector<EvaluationRecord> records, const BenchOptions& options) {
  if (options.cells.empty()) throw Error(Errc::InvalidArgument, "no (measure, space) cells");
  for (const Cell& c : options.cells) cell_config(options.base, c).validate();
  BenchReport report;
  report.records = std::move(records);
  const std::size_t n_cells = options.cells.size();
  const std::size_t n_records = report.records.size();

  std::vector<fs::path> refs;
  for (const EvaluationRecord& r : report.records) refs.push_back(r.reference_path);
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());

  // Sender side: one payload per (reference, cell).
  std::vector<std::vector<std::optional<FeatureSet>>> ref_features(
      refs.size(), std::vector<std::optional<FeatureSet>>(n_cells));
  std::vector<std::vector<std::string>> ref_failures(refs.size());
  parallel_for(refs.size(), options.jobs, [&](std::size_t i) {
    try {
      const RgbImage img = load_image(refs[i]);
      for (std::size_t c = 0; c < n_cells; ++c) {
        try {
          ref_features[i][c] = extract_features(img, cell_config(options.base, options.cells[c]));
        } catch (const std::exception& e) {
          ref_failures[i].push_back(refs[i].filename().string() + " [" +
                                    cell_label(options.cells[c]) + "]: " + e.what());
        }
      }
    } catch (const std::exception& e) {
      ref_failures[i].push_back(refs[i].filename().string() + ": " + e.what());
    }
  });

  // Receiver side.
  std::vector<std::vector<std::optional<double>>> scores(
      n_records, std::vector<std::optional<double>>(n_cells));
  std::vector<std::vector<std::string>> record_failures(n_records);
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  parallel_for(n_records, options.jobs, [&](std::size_t i) {
    const EvaluationRecord& rec = report.records[i];
    const std::size_t ref = static_cast<std::size_t>(
        std::lower_bound(refs.begin(), refs.end(), rec.reference_path) - refs.begin());
    try {
      const RgbImage img = load_image(rec.distorted_path);
      for (std::size_t c = 0; c < n_cells; ++c) {
        if (!ref_features[ref][c]) continue;
        try {
          const MeasureConfig config = cell_config(options.base, options.cells[c]);
          scores[i][c] = score(*ref_features[ref][c], img, config).total;
        } catch (const std::exception& e) {
          record_failures[i].push_back(rec.distorted_path.filename().string() + " [" +
                                       cell_label(options.cells[c]) + "]: " + e.what());
        }
      }
    } catch (const std::exception& e) {
      record_failures[i].push_back(rec.distorted_path.filename().string() + ": " + e.what());
    }
    const std::size_t finished = ++done;
    if (options.progress) {
      std::lock_guard lock(progress_mutex);
      options.progress(finished, n_records);
    }
  });
  for (auto& f : ref_failures) report.failures.insert(report.failures.end(), f.begin(), f.end());
  for (auto& f : record_failures) {
    report.failures.insert(report.failures.end(), f.begin(), f.end());
  }

  std::set<int> types;
  for (const EvaluationRecord& r : report.records) types.insert(r.distortion_type);
  for (std::size_t c = 0; c < n_cells; ++c) {
    CellResult cr;
    cr.cell = options.cells[c];
    cr.scores.resize(n_records);
    for (std::size_t i = 0; i < n_records; ++i) cr.scores[i] = scores[i][c];
    const auto fit = [&](std::optional<int> type) -> std::optional<CorrelationReport> {
      std::vector<double> d;
      std::vector<double> mos;
      for (std::size_t i = 0; i < n_records; ++i) {
        if (!cr.scores[i]) continue;
        if (type && report.records[i].distortion_type != *type) continue;
        d.push_back(*cr.scores[i]);
        mos.push_back(report.records[i].mos);
      }
      const std::string where =
          cell_label(cr.cell) + " " + (type ? "type " + std::to_string(*type) : "All");
      if (d.size() < kMinGroupSize) {
        report.failures.push_back(where + ": only " + std::to_string(d.size()) +
                                  " scored records");
        return std::nullopt;
      }
      try {
        return correlate(d, mos);
      } catch (const std::exception& e) {
        report.failures.push_back(where + ": " + e.what());
        return std::nullopt;
      }
    };
    for (int t : types) {
      if (auto r = fit(t)) cr.per_type.emplace(t, *r);
    }
    cr.all = fit(std::nullopt);
    report.cells.push_back(std::move(cr));
  }
  return report;
}

void write_report(const BenchReport& report, const fs::path& out_dir) {
  fs::create_directories(out_dir);

  std::string scores = "reference,type,level,mos,distorted";
  for (const CellResult& c : report.cells) scores += "," + cell_label(c.cell);
  scores += '\n';
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const EvaluationRecord& r = report.records[i];
    scores += std::to_string(r.reference_id) + "," + std::to_string(r.distortion_type) + "," +
              std::to_string(r.level) + "," + full(r.mos) + "," +
              r.distorted_path.filename().string();
    for (const CellResult& c : report.cells) {
      scores += ",";
      if (c.scores[i]) scores += full(*c.scores[i]);
    }
    scores += '\n';
  }
  write_text(out_dir / "scores.csv", scores);
  write_text(out_dir / "plcc.csv", table_csv(report, Metric::Plcc));
  write_text(out_dir / "srcc.csv", table_csv(report, Metric::Srcc));
  write_text(out_dir / "improvement_plcc.csv", improvement_csv(report, Metric::Plcc));
  write_text(out_dir / "improvement_srcc.csv", improvement_csv(report, Metric::Srcc));
  write_text(out_dir / "method_correlation_plcc.csv", method_correlation_csv(report, Metric::Plcc));
  write_text(out_dir / "method_correlation_srcc.csv", method_correlation_csv(report, Metric::Srcc));

  Json j;
  j["records"] = report.records.size();
  Json cells = Json::array();
  for (const CellResult& c : report.cells) {
    Json cj;
    cj["label"] = cell_label(c.cell);
    cj["measure"] = std::string(to_string(c.cell.measure));
    cj["space"] = std::string(to_string(c.cell.space));
    Json per_type = Json::array();
    for (const auto& [type, r] : c.per_type) {
      Json tj;
      tj["type"] = type;
      tj["label"] = type >= 1 && type <= kTidDistortionTypes
                        ? std::string(distortion_label(type))
                        : std::string();
      const Json cjson = correlation_json(r);
      for (auto it = cjson.begin(); it != cjson.end(); ++it) tj[it.key()] = it.value();
      per_type.push_back(std::move(tj));
    }
    cj["per_type"] = std::move(per_type);
    cj["all"] = c.all ? correlation_json(*c.all) : Json();
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  j["failures"] = report.failures;
  write_text(out_dir / "report.json", detail::dump_json(j, 2) + "\n");
}

}  // namespace rriqa
