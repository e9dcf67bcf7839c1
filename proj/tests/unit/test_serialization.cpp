#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "rriqa/error.hpp"
#include "rriqa/serialization.hpp"
#include "rriqa/synthetic.hpp"

using rriqa::Measure;
using rriqa::MeasureConfig;

namespace {

rriqa::FeatureSet features(Measure m, rriqa::ColorSpace s = rriqa::ColorSpace::Grayscale) {
  MeasureConfig c;
  c.measure = m;
  c.space = s;
  return rriqa::extract_features(rriqa::dead_leaves(64, 64, 8), c);
}

rriqa::Errc error_code(const std::string& text) {
  try {
    rriqa::feature_set_from_json(text);
  } catch (const rriqa::Error& e) {
    return e.code();
  }
  return rriqa::Errc::Io;
}

}  // namespace

TEST(Serialization, RoundTripIsExact) {
  for (Measure m : {Measure::Wnism, Measure::Dnt, Measure::Emism, Measure::Rred}) {
    const auto f = features(m, rriqa::ColorSpace::Cielab);
    const std::string text = rriqa::to_json(f);
    const auto back = rriqa::feature_set_from_json(text);
    EXPECT_EQ(back, f) << rriqa::to_string(m);
    EXPECT_EQ(rriqa::to_json(back), text);
  }
}

TEST(Serialization, Layout) {
  const auto doc = nlohmann::json::parse(rriqa::to_json(features(Measure::Wnism)));
  EXPECT_EQ(doc["format"], "rriqa.features");
  EXPECT_EQ(doc["version"], 1);
  EXPECT_EQ(doc["measure"], "wnism");
  EXPECT_EQ(doc["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(doc["channels"].size(), 1u);
  EXPECT_EQ(doc["channels"][0]["subbands"].size(), 12u);
  EXPECT_TRUE(doc["channels"][0]["subbands"][0].contains("alpha"));
  EXPECT_TRUE(doc["channels"][0]["subbands"][0].contains("beta"));
}

TEST(Serialization, SeventeenDigits) {
  auto f = features(Measure::Wnism);
  std::get<rriqa::GgdParams>(f.channels[0].subbands[0].model).alpha = 0.1 + 0.2;
  const std::string text = rriqa::to_json(f);
  EXPECT_NE(text.find("0.30000000000000004"), std::string::npos);
}

TEST(Serialization, TamperedHashIsRejected) {
  auto doc = nlohmann::json::parse(rriqa::to_json(features(Measure::Rred)));
  doc["config"]["rred_block_size"] = 5;
  EXPECT_EQ(error_code(doc.dump()), rriqa::Errc::InvalidPayload);
}

TEST(Serialization, MalformedIsRejected) {
  EXPECT_EQ(error_code("not json"), rriqa::Errc::InvalidPayload);
  EXPECT_EQ(error_code("{}"), rriqa::Errc::InvalidPayload);
  auto doc = nlohmann::json::parse(rriqa::to_json(features(Measure::Dnt)));
  doc["channels"][0]["subbands"][0].erase("kurtosis");
  EXPECT_EQ(error_code(doc.dump()), rriqa::Errc::InvalidPayload);
  doc = nlohmann::json::parse(rriqa::to_json(features(Measure::Dnt)));
  doc["format"] = "something.else";
  EXPECT_EQ(error_code(doc.dump()), rriqa::Errc::InvalidPayload);
}

TEST(Serialization, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "rriqa_serialization_test";
  std::filesystem::create_directories(dir);
  const auto f = features(Measure::Emism);
  rriqa::write_feature_file(dir / "f.json", f);
  EXPECT_EQ(rriqa::read_feature_file(dir / "f.json"), f);
  EXPECT_THROW(rriqa::read_feature_file(dir / "missing.json"), rriqa::Error);
  std::filesystem::remove_all(dir);
}

TEST(Serialization, ScoreJson) {
  const auto f = features(Measure::Wnism, rriqa::ColorSpace::Rgb);
  const auto s = rriqa::score_features(f, f, f.config);
  const auto doc = nlohmann::json::parse(rriqa::to_json(s));
  EXPECT_EQ(doc["total"], 0.0);
  EXPECT_EQ(doc["per_channel"].size(), 3u);
  EXPECT_EQ(doc["per_subband"].size(), 36u);
}
