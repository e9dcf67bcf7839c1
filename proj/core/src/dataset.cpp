#include "rriqa/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "rriqa/error.hpp"
#include "rriqa/image_io.hpp"

namespace fs = std::filesystem;

namespace rriqa {

namespace {

constexpr std::array<std::string_view, kTidDistortionTypes> kCatalog{
    "Additive Gaussian noise",
    "Additive noise in color components",
    "Spatially correlated noise",
    "Masked noise",
    "High frequency noise",
    "Impulse noise",
    "Quantization noise",
    "Gaussian blur",
    "Image denoising",
    "JPEG compression",
    "JPEG2000 compression",
    "JPEG transmission errors",
    "JPEG2000 transmission errors",
    "Non eccentricity pattern noise",
    "Local block-wise distortion of different intensity",
    "Mean shift",
    "Contrast change",
    "Change of color saturation",
    "Multiplicative Gaussian noise",
    "Comfort noise",
    "Lossy compression of noisy images",
    "Image color quantization with dither",
    "Chromatic aberrations",
    "Sparse sampling and reconstruction",
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_image_extension(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".bmp" || ext == ".png";
}

std::optional<int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_double(const std::string& s) {
  std::istringstream in(s);
  double v = 0.0;
  if (!(in >> v)) return std::nullopt;
  char extra = 0;
  if (in >> extra) return std::nullopt;
  return v;
}

// Sorted image files of a directory, keyed by lower-case file name.
std::map<std::string, fs::path> list_images(const fs::path& dir) {
  std::map<std::string, fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_extension(entry.path())) {
      out.emplace(lower(entry.path().filename().string()), entry.path());
    }
  }
  return out;
}

// Lower-case file name to MOS.
std::map<std::string, double> read_named_mos(const fs::path& path, std::vector<std::string>& warnings) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MissingMosFile, "cannot read " + path.string());
  std::map<std::string, double> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string a;
    std::string b;
    if (!(tokens >> a)) continue;
    if (!(tokens >> b)) {
      warnings.push_back(path.filename().string() + ":" + std::to_string(line_no) +
                         ": expected '<mos> <filename>'");
      continue;
    }
    // TID ships "<mos> <name>"; the reverse order is accepted too.
    std::optional<double> mos = parse_double(a);
    std::string name = b;
    if (!mos) {
      mos = parse_double(b);
      name = a;
    }
    if (!mos || !std::isfinite(*mos)) {
      warnings.push_back(path.filename().string() + ":" + std::to_string(line_no) +
                         ": no MOS value");
      continue;
    }
    out[lower(name)] = *mos;
  }
  return out;
}

std::vector<double> read_ordered_mos(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MissingMosFile, "cannot read " + path.string());
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    const std::optional<double> v = parse_double(token);
    if (!v) throw Error(Errc::MissingMosFile, path.string() + ": '" + token + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

fs::path find_reference(const std::map<std::string, fs::path>& refs, int id) {
  char stem[16];
  std::snprintf(stem, sizeof stem, "i%02d", id);
  for (const char* ext : {".bmp", ".png"}) {
    const auto it = refs.find(std::string(stem) + ext);
    if (it != refs.end()) return it->second;
  }
  return {};
}

std::string two_digits(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", v);
  return buf;
}

}  // namespace

std::string_view distortion_label(int type) {
  if (type < 1 || type > kTidDistortionTypes) {
    throw Error(Errc::InvalidArgument, "distortion type " + std::to_string(type) +
                                           " outside 1.." +
                                           std::to_string(kTidDistortionTypes));
  }
  return kCatalog[static_cast<std::size_t>(type - 1)];
}

std::optional<ParsedName> parse_distorted_name(std::string_view filename) {
  const std::string s = lower(filename);
  const std::size_t dot = s.rfind('.');
  if (dot == std::string::npos || s.empty() || s[0] != 'i') return std::nullopt;
  const std::string_view stem = std::string_view(s).substr(1, dot - 1);
  const std::size_t u1 = stem.find('_');
  if (u1 == std::string_view::npos) return std::nullopt;
  const std::size_t u2 = stem.find('_', u1 + 1);
  if (u2 == std::string_view::npos || stem.find('_', u2 + 1) != std::string_view::npos) {
    return std::nullopt;
  }
  const auto ref = parse_int(stem.substr(0, u1));
  const auto type = parse_int(stem.substr(u1 + 1, u2 - u1 - 1));
  const auto level = parse_int(stem.substr(u2 + 1));
  if (!ref || !type || !level || *ref < 1 || *type < 1 || *level < 1) return std::nullopt;
  return ParsedName{*ref, *type, *level};
}

DatasetLoad load_tid2013(const fs::path& root) {
  const fs::path named = root / "mos_with_names.txt";
  const fs::path ordered = root / "mos.txt";
  const bool has_named = fs::is_regular_file(named);
  if (!has_named && !fs::is_regular_file(ordered)) {
    throw Error(Errc::MissingMosFile, "no mos_with_names.txt or mos.txt under " + root.string());
  }
  DatasetLoad out;
  const auto refs = list_images(root / "reference_images");
  const auto distorted = list_images(root / "distorted_images");

  struct Entry {
    ParsedName name;
    fs::path path;
  };
  std::vector<Entry> entries;
  for (const auto& [key, path] : distorted) {
    const std::optional<ParsedName> parsed = parse_distorted_name(key);
    if (!parsed) {
      out.warnings.push_back("unparseable file name: " + path.filename().string());
      continue;
    }
    entries.push_back({*parsed, path});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.name.reference_id, a.name.distortion_type, a.name.level) <
           std::tie(b.name.reference_id, b.name.distortion_type, b.name.level);
  });

  std::map<std::string, double> mos_by_name;
  if (has_named) {
    mos_by_name = read_named_mos(named, out.warnings);
  } else {
    const std::vector<double> values = read_ordered_mos(ordered);
    if (values.size() != entries.size()) {
      out.warnings.push_back("mos.txt has " + std::to_string(values.size()) +
                             " values for " + std::to_string(entries.size()) + " images");
    }
    for (std::size_t i = 0; i < std::min(values.size(), entries.size()); ++i) {
      mos_by_name[lower(entries[i].path.filename().string())] = values[i];
    }
  }

  for (const Entry& e : entries) {
    const auto it = mos_by_name.find(lower(e.path.filename().string()));
    if (it == mos_by_name.end()) {
      out.warnings.push_back("no MOS for " + e.path.filename().string());
      continue;
    }
    const fs::path ref = find_reference(refs, e.name.reference_id);
    if (ref.empty()) {
      throw Error(Errc::MissingReference, "no reference image I" +
                                              two_digits(e.name.reference_id) + " for " +
                                              e.path.filename().string());
    }
    EvaluationRecord r;
    r.reference_id = e.name.reference_id;
    r.distortion_type = e.name.distortion_type;
    r.level = e.name.level;
    r.mos = it->second;
    r.distorted_path = e.path;
    r.reference_path = ref;
    out.records.push_back(std::move(r));
    mos_by_name.erase(it);
  }
  for (const auto& [name, mos] : mos_by_name) {
    (void)mos;
    out.warnings.push_back("MOS entry without image: " + name);
  }
  return out;
}

std::vector<EvaluationRecord> synth_dataset(const std::vector<RgbImage>& references,
                                            std::span<const SyntheticDistortion> types,
                                            int levels, std::uint64_t seed,
                                            const fs::path& out_dir) {
  if (levels < 2) throw Error(Errc::InvalidArgument, "synthetic datasets need at least 2 levels");
  if (references.empty() || types.empty()) {
    throw Error(Errc::InvalidArgument, "synthetic datasets need references and distortion types");
  }
  if (references.size() > 99) {
    throw Error(Errc::InvalidArgument, "at most 99 references fit the TID naming scheme");
  }
  const fs::path ref_dir = out_dir / "reference_images";
  const fs::path dst_dir = out_dir / "distorted_images";
  fs::create_directories(ref_dir);
  fs::create_directories(dst_dir);

  std::vector<EvaluationRecord> records;
  std::ostringstream mos;
  mos.precision(17);
  for (std::size_t i = 0; i < references.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const fs::path ref_path = ref_dir / ("I" + two_digits(id) + ".BMP");
    save_bmp(references[i], ref_path);
    for (SyntheticDistortion d : types) {
      const int type = tid_type(d);
      for (int level = 1; level <= levels; ++level) {
        const std::uint64_t noise_seed =
            seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(id) * 1000 +
                                             static_cast<std::uint64_t>(type) * 10 +
                                             static_cast<std::uint64_t>(level)));
        const std::string name =
            "i" + two_digits(id) + "_" + two_digits(type) + "_" + std::to_string(level) + ".bmp";
        save_bmp(distort(references[i], d, level, noise_seed), dst_dir / name);
        EvaluationRecord r;
        r.reference_id = id;
        r.distortion_type = type;
        r.level = level;
        r.mos = -static_cast<double>(level);
        r.distorted_path = dst_dir / name;
        r.reference_path = ref_path;
        mos << r.mos << ' ' << name << '\n';
        records.push_back(std::move(r));
      }
    }
  }
  std::ofstream f(out_dir / "mos_with_names.txt");
  if (!f) throw Error(Errc::Io, "cannot write " + (out_dir / "mos_with_names.txt").string());
  f << mos.str();
  std::sort(records.begin(), records.end(), [](const EvaluationRecord& a, const EvaluationRecord& b) {
    return std::tie(a.reference_id, a.distortion_type, a.level) <
           std::tie(b.reference_id, b.distortion_type, b.level);
  });
  return records;
}

}  // namespace rriqa
