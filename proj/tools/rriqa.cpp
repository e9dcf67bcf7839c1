#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rriqa/config.hpp"
#include "rriqa/dataset.hpp"
#include "rriqa/error.hpp"
#include "rriqa/harness.hpp"
#include "rriqa/image_io.hpp"
#include "rriqa/measures.hpp"
#include "rriqa/serialization.hpp"
#include "rriqa/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

const std::vector<std::string> kMeasures{"wnism", "dnt", "emism", "rred"};
const std::vector<std::string> kSpaces{"gray", "rgb", "lab"};

struct MeasureFlags {
  std::optional<std::string> measure;
  std::optional<std::string> space;
  std::optional<int> scales;
  std::optional<int> orientations;
  std::optional<double> d0;
  std::optional<int> block_size;

  void add_to(CLI::App& app) {
    app.add_option("--measure", measure, "Quality measure")->check(CLI::IsMember(kMeasures));
    app.add_option("--space", space, "Colour space")->check(CLI::IsMember(kSpaces));
    app.add_option("--scales", scales, "Decomposition scales")->check(CLI::Range(1, 12));
    app.add_option("--orientations", orientations, "Pyramid orientations")
        ->check(CLI::Range(1, 16));
    app.add_option("--d0", d0, "Pooling scale constant")->check(CLI::PositiveNumber);
    app.add_option("--block-size", block_size, "RRED block size")->check(CLI::Range(1, 64));
  }

  // Flags override `base`; unset flags keep its values.
  rriqa::MeasureConfig apply(rriqa::MeasureConfig base) const {
    if (measure) base.measure = rriqa::parse_measure(*measure);
    if (space) base.space = rriqa::parse_color_space(*space);
    if (scales) base.decomposition.scales = *scales;
    if (orientations) base.decomposition.orientations = *orientations;
    if (d0) base.d0 = *d0;
    if (block_size) base.rred.block_size = *block_size;
    return base;
  }
};

void print_score(const rriqa::DistortionScore& s, bool json) {
  if (json) {
    std::cout << rriqa::to_json(s) << '\n';
    return;
  }
  std::printf("total %.17g\n", s.total);
  for (const rriqa::ChannelScore& c : s.per_channel) {
    std::printf("%s %.17g\n", c.name.c_str(), c.score);
  }
}

std::vector<rriqa::Cell> select_cells(const MeasureFlags& flags) {
  std::vector<rriqa::Cell> cells;
  for (const rriqa::Cell& c : rriqa::table_cells()) {
    if (flags.measure && rriqa::parse_measure(*flags.measure) != c.measure) continue;
    if (flags.space && rriqa::parse_color_space(*flags.space) != c.space) continue;
    cells.push_back(c);
  }
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-reference image quality measures"};
  app.require_subcommand(1);

  MeasureFlags extract_flags;
  std::string extract_image;
  std::string extract_out;
  CLI::App* extract = app.add_subcommand("extract", "Write the reference feature payload");
  extract_flags.add_to(*extract);
  extract->add_option("image", extract_image, "Reference image (BMP or PNG)")->required();
  extract->add_option("-o,--out", extract_out, "Output payload file")->required();

  MeasureFlags compare_flags;
  std::string compare_features;
  std::string compare_image;
  bool compare_json = false;
  CLI::App* compare = app.add_subcommand("compare", "Score a distorted image against a payload");
  compare_flags.add_to(*compare);
  compare->add_option("features", compare_features, "Reference payload file")->required();
  compare->add_option("image", compare_image, "Distorted image (BMP or PNG)")->required();
  compare->add_flag("--json", compare_json, "Print the score as JSON");

  MeasureFlags bench_flags;
  std::string bench_root;
  std::string bench_out = "report";
  int bench_jobs = 1;
  CLI::App* bench = app.add_subcommand("bench", "Score a TID-layout dataset and write reports");
  bench_flags.add_to(*bench);
  bench->add_option("dataset", bench_root, "Dataset root directory")->required();
  bench->add_option("-o,--out", bench_out, "Report directory");
  bench->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::Range(1, 256));

  std::string synth_out;
  std::uint64_t synth_seed = 1;
  int synth_refs = 2;
  int synth_levels = 5;
  int synth_width = 512;
  int synth_height = 384;
  std::vector<std::string> synth_types{"noise", "blur", "quantize", "jpeg"};
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic TID-layout dataset");
  synth->add_option("-o,--out", synth_out, "Dataset root to create")->required();
  synth->add_option("--seed", synth_seed, "Random seed");
  synth->add_option("--references", synth_refs, "Number of reference images")
      ->check(CLI::Range(1, 99));
  synth->add_option("--levels", synth_levels, "Distortion levels")->check(CLI::Range(2, 9));
  synth->add_option("--width", synth_width, "Image width")->check(CLI::Range(8, 8192));
  synth->add_option("--height", synth_height, "Image height")->check(CLI::Range(8, 8192));
  synth->add_option("--types", synth_types, "Distortions")
      ->check(CLI::IsMember({"noise", "blur", "quantize", "jpeg"}))
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*extract) {
      const rriqa::MeasureConfig config = extract_flags.apply({});
      const rriqa::FeatureSet features =
          rriqa::extract_features(rriqa::load_image(extract_image), config);
      rriqa::write_feature_file(extract_out, features);
      std::cout << fs::file_size(extract_out) << " bytes written to " << extract_out << '\n';
    } else if (*compare) {
      const rriqa::FeatureSet features = rriqa::read_feature_file(compare_features);
      const rriqa::MeasureConfig config = compare_flags.apply(features.config);
      print_score(rriqa::score(features, rriqa::load_image(compare_image), config), compare_json);
    } else if (*bench) {
      if (!fs::is_directory(bench_root)) {
        throw rriqa::Error(rriqa::Errc::FileNotFound, "dataset root " + bench_root + " not found");
      }
      rriqa::DatasetLoad data = rriqa::load_tid2013(bench_root);
      for (const std::string& w : data.warnings) std::cerr << "warning: " << w << '\n';
      rriqa::BenchOptions options;
      options.cells = select_cells(bench_flags);
      options.base = bench_flags.apply({});
      options.jobs = bench_jobs;
      options.progress = [](std::size_t done, std::size_t total) {
        if (done == total || done % 50 == 0) std::cerr << "scored " << done << "/" << total << '\n';
      };
      const rriqa::BenchReport report = rriqa::run_bench(std::move(data.records), options);
      rriqa::write_report(report, bench_out);
      for (const std::string& f : report.failures) std::cerr << "failure: " << f << '\n';
      std::cout << "report written to " << bench_out << '\n';
    } else if (*synth) {
      std::vector<rriqa::SyntheticDistortion> types;
      for (const std::string& t : synth_types) {
        types.push_back(rriqa::parse_synthetic_distortion(t));
      }
      std::vector<rriqa::RgbImage> refs;
      for (int i = 0; i < synth_refs; ++i) {
        refs.push_back(rriqa::dead_leaves(synth_width, synth_height,
                                          synth_seed * 1000003ULL + static_cast<std::uint64_t>(i)));
      }
      const auto records = rriqa::synth_dataset(refs, types, synth_levels, synth_seed, synth_out);
      std::cout << records.size() << " distorted images written to " << synth_out << '\n';
    }
  } catch (const rriqa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
