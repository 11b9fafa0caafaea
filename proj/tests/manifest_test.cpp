/* Copyright 2026 The svac Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <doctest.h>

#include <functional>
#include <random>

#include <json.hpp>

#include "svac/error.hpp"
#include "svac/manifest.hpp"
#include "svac/pipeline.hpp"
#include "test_util.hpp"

using namespace svac;
using namespace svac::testing;

namespace {

Manifest make_manifest(std::size_t frames, std::size_t m, std::size_t g) {
  CompressOptions o;
  o.sample_target = frames;
  o.clip_length = m;
  o.clips_per_token = g;
  o.threads = 1;
  return compress_sequence(make_synthetic_sequence(frames, 16, 16, 1), o).manifest;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

void walk_numbers(const nlohmann::ordered_json& j, bool& any_float) {
  if (j.is_number_float()) any_float = true;
  if (j.is_structured()) {
    for (const auto& v : j) walk_numbers(v, any_float);
  }
}

}  // namespace

TEST_CASE("default configuration manifest") {
  const Manifest m = make_manifest(100, 10, 1);
  REQUIRE(m.clips.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(m.clips[i].clip_index == i);
    CHECK(m.clips[i].seg_token_index == i);
    CHECK(m.clips[i].composite_path.has_value());
    CHECK(m.clips[i].layout->rows == 3);
    CHECK_FALSE(m.clips[i].partial);
  }
  CHECK(m.seg_allocation.num_tokens == 10);
  CHECK(m.token_budget.ratio_numerator == 1);
  CHECK(m.token_budget.ratio_denominator == 5);
}

TEST_CASE("canonical JSON: documented key order, integers only") {
  const std::string text = manifest_to_json(make_manifest(23, 10, 1));
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"format_version", "frame_height", "frame_width",
                                         "total_frames", "clip_length", "resample_spec",
                                         "run_config", "clips", "seg_allocation", "token_budget"});
  std::vector<std::string> clip_keys;
  for (const auto& [k, v] : j["clips"][0].items()) clip_keys.push_back(k);
  CHECK(clip_keys == std::vector<std::string>{"clip_index", "member_source_indices", "anchor_path",
                                              "composite_path", "layout", "seg_token_index",
                                              "partial"});
  bool any_float = false;
  walk_numbers(j, any_float);
  CHECK_FALSE(any_float);
  CHECK(j["clips"][2]["partial"] == true);
  CHECK(j["resample_spec"]["kernel_a_micro"] == -500000);
}

TEST_CASE("round trip preserves structure") {
  TempDir dir;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> frames(1, 60), clip(2, 12), group(1, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const Manifest m = make_manifest(frames(rng), clip(rng), group(rng));
    write_manifest(m, dir / "m.json");
    const Manifest back = read_manifest(dir / "m.json");
    CHECK(back == m);
    CHECK(manifest_to_json(back) == manifest_to_json(m));
  }
}

TEST_CASE("single-frame input has no composite") {
  const Manifest m = make_manifest(1, 10, 1);
  REQUIRE(m.clips.size() == 1);
  CHECK_FALSE(m.clips[0].composite_path.has_value());
  CHECK_FALSE(m.clips[0].layout.has_value());
  CHECK(m.clips[0].partial);
  CHECK(m.token_budget.tokens_reduced == m.token_budget.tokens_original);
}

TEST_CASE("validation rejects documented corruptions") {
  const Manifest good = make_manifest(40, 10, 2);
  REQUIRE_NOTHROW(validate_manifest(good));

  const std::vector<std::pair<const char*, std::function<void(Manifest&)>>> cases = {
      {"duplicated clip_index", [](Manifest& m) { m.clips[1].clip_index = 0; }},
      {"clips out of order", [](Manifest& m) { std::swap(m.clips[0], m.clips[1]); }},
      {"non-contiguous members",
       [](Manifest& m) { std::swap(m.clips[0].member_source_indices[9], m.clips[1].member_source_indices[0]); }},
      {"wrong member count", [](Manifest& m) { m.clips[0].member_source_indices.pop_back(); }},
      {"total_frames mismatch", [](Manifest& m) { m.total_frames = 41; }},
      {"token index >= num_tokens", [](Manifest& m) { m.clips[2].seg_token_index = 5; }},
      {"token index disagrees with allocation", [](Manifest& m) { m.clips[2].seg_token_index = 0; }},
      {"num_tokens inconsistent", [](Manifest& m) { m.seg_allocation.num_tokens = 3; }},
      {"composite_path without layout", [](Manifest& m) { m.clips[0].layout.reset(); }},
      {"layout without composite_path", [](Manifest& m) { m.clips[0].composite_path.reset(); }},
      {"pad_cells inconsistent", [](Manifest& m) { m.clips[0].layout->pad_cells = 1; }},
      {"num_tiles inconsistent", [](Manifest& m) { m.clips[0].layout->num_tiles = 8; }},
      {"budget totals wrong", [](Manifest& m) { m.token_budget.tokens_reduced += 1; }},
      {"ratio not reduced", [](Manifest& m) {
         m.token_budget.ratio_numerator *= 2;
         m.token_budget.ratio_denominator *= 2;
       }},
      {"partial flag wrong", [](Manifest& m) { m.clips[0].partial = true; }},
      {"empty anchor path", [](Manifest& m) { m.clips[0].anchor_path.clear(); }},
  };
  for (const auto& [label, corrupt] : cases) {
    const std::string name = label;
    CAPTURE(name);
    Manifest bad = good;
    corrupt(bad);
    CHECK(code_of([&] { validate_manifest(bad); }) == ErrorCode::kSchemaViolation);
  }

  Manifest single = make_manifest(11, 10, 1);
  single.clips[1].composite_path = "x.ppm";
  single.clips[1].layout = ManifestLayout{1, 1, 0, 1};
  CHECK(code_of([&] { validate_manifest(single); }) == ErrorCode::kSchemaViolation);
}

TEST_CASE("schema errors on parse") {
  const std::string text = manifest_to_json(make_manifest(20, 10, 1));
  auto edit = [&](const std::function<void(nlohmann::ordered_json&)>& fn) {
    auto j = nlohmann::ordered_json::parse(text);
    fn(j);
    return j.dump();
  };
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j.erase("clip_length"); })); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j["extra"] = 1; })); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j["frame_width"] = "16"; })); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j["frame_width"] = 16.5; })); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j["clips"][0]["layout"] = nullptr; })); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j["clips"][0].erase("partial"); })); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j["token_budget"]["tokens_reduced"] = -1; })); }) ==
        ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { manifest_from_json(edit([](auto& j) { j["format_version"] = 2; })); }) ==
        ErrorCode::kVersionMismatch);
  CHECK(code_of([&] { manifest_from_json("{not json"); }) == ErrorCode::kSchemaViolation);
  CHECK(code_of([&] { read_manifest("/nonexistent/svac_manifest.json"); }) == ErrorCode::kMissingPath);
}
