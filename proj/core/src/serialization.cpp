#include "rriqa/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "json_writer.hpp"
#include "rriqa/error.hpp"

namespace rriqa {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kFormat = "rriqa.features";
constexpr int kVersion = 1;

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

BandKind parse_band_kind(const std::string& s) {
  for (BandKind k : {BandKind::Oriented, BandKind::Highpass, BandKind::Lowpass, BandKind::Detail,
                     BandKind::Approximation, BandKind::Imf, BandKind::Residue}) {
    if (to_string(k) == s) return k;
  }
  throw Error(Errc::InvalidPayload, "unknown subband kind '" + s + "'");
}

Json subband_json(const SubbandFeatures& f) {
  Json j;
  j["kind"] = std::string(to_string(f.kind));
  j["scale"] = f.scale;
  j["orientation"] = f.orientation;
  j["degenerate"] = f.degenerate;
  if (const auto* g = std::get_if<GgdParams>(&f.model)) {
    j["alpha"] = g->alpha;
    j["beta"] = g->beta;
    j["clamped"] = g->clamped;
  } else if (const auto* d = std::get_if<DntStatistics>(&f.model)) {
    j["mean"] = d->gaussian.mean;
    j["sigma"] = d->gaussian.sigma;
    j["std"] = d->moments.std;
    j["kurtosis"] = d->moments.kurtosis;
    j["skewness"] = d->moments.skewness;
  } else {
    const auto& e = std::get<BlockEntropySet>(f.model);
    j["block_size"] = e.block_size;
    j["entropies"] = e.entropies;
  }
  return j;
}

SubbandFeatures subband_from_json(const Json& j, Measure measure) {
  SubbandFeatures f;
  f.kind = parse_band_kind(j.at("kind").get<std::string>());
  f.scale = j.at("scale").get<int>();
  f.orientation = j.at("orientation").get<int>();
  f.degenerate = j.at("degenerate").get<bool>();
  switch (measure) {
    case Measure::Wnism:
    case Measure::Emism:
      f.model = GgdParams{j.at("alpha").get<double>(), j.at("beta").get<double>(),
                          j.at("clamped").get<bool>()};
      break;
    case Measure::Dnt:
      f.model = DntStatistics{
          {j.at("mean").get<double>(), j.at("sigma").get<double>()},
          {j.at("std").get<double>(), j.at("kurtosis").get<double>(),
           j.at("skewness").get<double>()}};
      break;
    case Measure::Rred:
      f.model = BlockEntropySet{j.at("block_size").get<int>(),
                                j.at("entropies").get<std::vector<double>>()};
      break;
  }
  return f;
}

}  // namespace

std::string to_json(const FeatureSet& features) {
  const MeasureConfig& c = features.config;
  Json j;
  j["format"] = std::string(kFormat);
  j["version"] = kVersion;
  j["measure"] = std::string(to_string(c.measure));
  j["space"] = std::string(to_string(c.space));
  j["config_hash"] = hex(feature_hash(c));
  Json cfg;
  cfg["scales"] = c.decomposition.scales;
  cfg["orientations"] = c.decomposition.orientations;
  cfg["imf_count"] = c.decomposition.imf_count;
  cfg["sift_max_iters"] = c.decomposition.sift_max_iters;
  cfg["sift_sd_threshold"] = c.decomposition.sift_sd_threshold;
  cfg["rred_block_size"] = c.rred.block_size;
  cfg["rred_noise_factor"] = c.rred.noise_factor;
  cfg["rred_subbands"] = std::string(to_string(c.rred.subbands));
  cfg["emism_include_residue"] = c.emism_include_residue;
  j["config"] = std::move(cfg);
  j["width"] = features.width;
  j["height"] = features.height;
  Json channels = Json::array();
  for (const ChannelFeatures& ch : features.channels) {
    Json cj;
    cj["name"] = ch.name;
    Json bands = Json::array();
    for (const SubbandFeatures& f : ch.subbands) bands.push_back(subband_json(f));
    cj["subbands"] = std::move(bands);
    channels.push_back(std::move(cj));
  }
  j["channels"] = std::move(channels);
  return detail::dump_json(j);
}

FeatureSet feature_set_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      throw Error(Errc::InvalidPayload, "not a feature payload");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw Error(Errc::InvalidPayload, "unsupported payload version");
    }
    FeatureSet out;
    MeasureConfig& c = out.config;
    c.measure = parse_measure(j.at("measure").get<std::string>());
    c.space = parse_color_space(j.at("space").get<std::string>());
    const Json& cfg = j.at("config");
    c.decomposition.scales = cfg.at("scales").get<int>();
    c.decomposition.orientations = cfg.at("orientations").get<int>();
    c.decomposition.imf_count = cfg.at("imf_count").get<int>();
    c.decomposition.sift_max_iters = cfg.at("sift_max_iters").get<int>();
    c.decomposition.sift_sd_threshold = cfg.at("sift_sd_threshold").get<double>();
    c.rred.block_size = cfg.at("rred_block_size").get<int>();
    c.rred.noise_factor = cfg.at("rred_noise_factor").get<double>();
    c.rred.subbands = parse_rred_subbands(cfg.at("rred_subbands").get<std::string>());
    c.emism_include_residue = cfg.at("emism_include_residue").get<bool>();
    if (j.at("config_hash").get<std::string>() != hex(feature_hash(c))) {
      throw Error(Errc::InvalidPayload, "config hash does not match the embedded configuration");
    }
    out.width = j.at("width").get<int>();
    out.height = j.at("height").get<int>();
    for (const Json& cj : j.at("channels")) {
      ChannelFeatures ch;
      ch.name = cj.at("name").get<std::string>();
      for (const Json& bj : cj.at("subbands")) {
        ch.subbands.push_back(subband_from_json(bj, c.measure));
      }
      out.channels.push_back(std::move(ch));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidPayload, e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidPayload) throw;
    throw Error(Errc::InvalidPayload, e.what());
  }
}

std::string to_json(const DistortionScore& score) {
  Json j;
  j["total"] = score.total;
  Json channels = Json::array();
  for (const ChannelScore& c : score.per_channel) {
    Json cj;
    cj["name"] = c.name;
    cj["score"] = c.score;
    channels.push_back(std::move(cj));
  }
  j["per_channel"] = std::move(channels);
  Json bands = Json::array();
  for (const SubbandScore& s : score.per_subband) {
    Json bj;
    bj["channel"] = s.channel;
    bj["kind"] = std::string(to_string(s.kind));
    bj["scale"] = s.scale;
    bj["orientation"] = s.orientation;
    bj["distance"] = std::string(to_string(s.distance.kind));
    bj["value"] = s.distance.value;
    bands.push_back(std::move(bj));
  }
  j["per_subband"] = std::move(bands);
  return detail::dump_json(j, 2);
}

void write_feature_file(const std::filesystem::path& path, const FeatureSet& features) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  const std::string text = to_json(features);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

FeatureSet read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return feature_set_from_json(buf.str());
}

}  // namespace rriqa
