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

#include "svac/manifest.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "svac/cost_model.hpp"
#include "svac/csa.hpp"
#include "svac/error.hpp"

namespace svac {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

void require(bool ok, const std::string& what) {
  if (!ok) schema_error(what);
}

// Object must have exactly these keys.
void expect_keys(const Json& obj, std::string_view where,
                 std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) schema_error(std::string(where) + " must be an object");
  for (std::string_view k : keys) {
    if (!obj.contains(std::string(k))) {
      schema_error(std::string(where) + " is missing '" + std::string(k) + "'");
    }
  }
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (std::string_view want : keys) known = known || k == want;
    if (!known) schema_error(std::string(where) + " has unexpected key '" + k + "'");
  }
}

template <typename T>
T get_int(const Json& obj, const char* key, std::string_view where) {
  const Json& v = obj.at(key);
  if constexpr (std::is_unsigned_v<T>) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      schema_error(std::string(where) + "." + key + " must be a non-negative integer");
    }
  } else if (!v.is_number_integer()) {
    schema_error(std::string(where) + "." + key + " must be an integer");
  }
  return v.get<T>();
}

std::string get_string(const Json& obj, const char* key, std::string_view where) {
  const Json& v = obj.at(key);
  if (!v.is_string()) schema_error(std::string(where) + "." + key + " must be a string");
  return v.get<std::string>();
}

bool get_bool(const Json& obj, const char* key, std::string_view where) {
  const Json& v = obj.at(key);
  if (!v.is_boolean()) schema_error(std::string(where) + "." + key + " must be a boolean");
  return v.get<bool>();
}

Json layout_to_json(const ManifestLayout& l) {
  Json j;
  j["rows"] = l.rows;
  j["cols"] = l.cols;
  j["num_tiles"] = l.num_tiles;
  j["pad_cells"] = l.pad_cells;
  return j;
}

ManifestLayout layout_from_json(const Json& j, const std::string& where) {
  expect_keys(j, where, {"rows", "cols", "num_tiles", "pad_cells"});
  return ManifestLayout{get_int<int>(j, "rows", where), get_int<int>(j, "cols", where),
                        get_int<int>(j, "num_tiles", where), get_int<int>(j, "pad_cells", where)};
}

}  // namespace

void validate_manifest(const Manifest& m) {
  if (m.format_version != kManifestVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "manifest version " + std::to_string(m.format_version) + ", expected " +
                    std::to_string(kManifestVersion));
  }
  require(m.frame_height >= 1 && m.frame_width >= 1, "frame dimensions must be positive");
  require(m.total_frames >= 1, "total_frames must be at least 1");
  require(m.clip_length >= 2, "clip_length must be at least 2");
  const std::uint64_t expected_clips = (m.total_frames + m.clip_length - 1) / m.clip_length;
  require(m.clips.size() == expected_clips,
          "expected " + std::to_string(expected_clips) + " clips, found " +
              std::to_string(m.clips.size()));

  std::uint64_t frames_seen = 0;
  std::optional<std::int64_t> previous_member;
  for (std::size_t i = 0; i < m.clips.size(); ++i) {
    const ManifestClip& c = m.clips[i];
    const std::string where = "clips[" + std::to_string(i) + "]";
    require(c.clip_index == i, where + ".clip_index is " + std::to_string(c.clip_index) +
                                   " (duplicated or out of order)");

    const std::size_t members = c.member_source_indices.size();
    const bool last = i + 1 == m.clips.size();
    require(members >= 1, where + " has no members");
    require(last ? members <= m.clip_length : members == m.clip_length,
            where + " has " + std::to_string(members) + " members for clip length " +
                std::to_string(m.clip_length));
    require(c.partial == (members < m.clip_length), where + ".partial disagrees with member count");
    for (std::int64_t idx : c.member_source_indices) {
      require(idx >= 0, where + " has a negative source index");
      require(!previous_member || idx > *previous_member,
              where + " members are not contiguous and increasing in sequence order");
      previous_member = idx;
    }
    frames_seen += members;

    require(!c.anchor_path.empty(), where + ".anchor_path is empty");
    require(c.composite_path.has_value() == c.layout.has_value(),
            where + ": composite_path and layout must be both set or both null");
    require(c.layout.has_value() == (members > 1),
            where + ": composite present iff the clip has more than one member");
    if (c.layout) {
      const ManifestLayout& l = *c.layout;
      require(l.rows >= 1 && l.cols >= 1, where + ".layout rows/cols must be positive");
      require(l.num_tiles == static_cast<int>(members) - 1,
              where + ".layout.num_tiles must equal follower count");
      require(l.pad_cells == l.rows * l.cols - l.num_tiles,
              where + ".layout.pad_cells must equal rows*cols - num_tiles");
      require(!c.composite_path->empty(), where + ".composite_path is empty");
    }
  }
  require(frames_seen == m.total_frames,
          "clip members sum to " + std::to_string(frames_seen) + ", total_frames is " +
              std::to_string(m.total_frames));

  require(m.seg_allocation.clips_per_token >= 1, "seg_allocation.clips_per_token must be >= 1");
  const SegAllocation alloc =
      allocate_seg_tokens(m.clips.size(), m.seg_allocation.clips_per_token);
  require(m.seg_allocation.num_tokens == alloc.num_tokens,
          "seg_allocation.num_tokens inconsistent with clip count and granularity");
  for (std::size_t i = 0; i < m.clips.size(); ++i) {
    require(m.clips[i].seg_token_index < m.seg_allocation.num_tokens,
            "clips[" + std::to_string(i) + "].seg_token_index out of range");
    require(m.clips[i].seg_token_index == alloc.clip_to_token[i],
            "clips[" + std::to_string(i) + "].seg_token_index disagrees with allocation");
  }

  const ManifestTokenBudget& b = m.token_budget;
  require(b.s_per_frame >= 1, "token_budget.s_per_frame must be >= 1");
  const CostReport expected = token_budget(m.total_frames, m.clip_length, b.s_per_frame);
  require(b.tokens_original == expected.tokens_original &&
              b.tokens_reduced == expected.tokens_reduced,
          "token_budget totals disagree with the clip partition");
  require(b.ratio_numerator == expected.ratio.num && b.ratio_denominator == expected.ratio.den,
          "token_budget ratio must be tokens_reduced/tokens_original in lowest terms");
}

std::string manifest_to_json(const Manifest& m) {
  Json j;
  j["format_version"] = m.format_version;
  j["frame_height"] = m.frame_height;
  j["frame_width"] = m.frame_width;
  j["total_frames"] = m.total_frames;
  j["clip_length"] = m.clip_length;

  Json rs;
  rs["kernel_a_micro"] = m.resample_spec.kernel_a_micro;
  rs["coordinate_convention"] = m.resample_spec.coordinate_convention;
  rs["boundary"] = m.resample_spec.boundary;
  rs["rounding"] = m.resample_spec.rounding;
  j["resample_spec"] = rs;

  Json rc;
  rc["sample_target"] = m.run_config.sample_target;
  rc["patch_size"] = m.run_config.patch_size;
  rc["keep_ratio_micro"] = m.run_config.keep_ratio_micro;
  rc["method"] = m.run_config.method;
  j["run_config"] = rc;

  Json clips = Json::array();
  for (const ManifestClip& c : m.clips) {
    Json jc;
    jc["clip_index"] = c.clip_index;
    jc["member_source_indices"] = c.member_source_indices;
    jc["anchor_path"] = c.anchor_path;
    jc["composite_path"] = c.composite_path ? Json(*c.composite_path) : Json(nullptr);
    jc["layout"] = c.layout ? layout_to_json(*c.layout) : Json(nullptr);
    jc["seg_token_index"] = c.seg_token_index;
    jc["partial"] = c.partial;
    clips.push_back(std::move(jc));
  }
  j["clips"] = std::move(clips);

  Json sa;
  sa["clips_per_token"] = m.seg_allocation.clips_per_token;
  sa["num_tokens"] = m.seg_allocation.num_tokens;
  j["seg_allocation"] = sa;

  Json tb;
  tb["s_per_frame"] = m.token_budget.s_per_frame;
  tb["tokens_original"] = m.token_budget.tokens_original;
  tb["tokens_reduced"] = m.token_budget.tokens_reduced;
  tb["ratio_numerator"] = m.token_budget.ratio_numerator;
  tb["ratio_denominator"] = m.token_budget.ratio_denominator;
  j["token_budget"] = tb;

  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    schema_error(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("manifest root must be an object");
  if (j.contains("format_version") && j["format_version"].is_number_integer() &&
      j["format_version"].get<std::int64_t>() != kManifestVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "manifest version " + j["format_version"].dump() + ", expected " +
                    std::to_string(kManifestVersion));
  }
  expect_keys(j, "manifest",
              {"format_version", "frame_height", "frame_width", "total_frames", "clip_length",
               "resample_spec", "run_config", "clips", "seg_allocation", "token_budget"});

  Manifest m;
  m.format_version = get_int<int>(j, "format_version", "manifest");
  m.frame_height = get_int<int>(j, "frame_height", "manifest");
  m.frame_width = get_int<int>(j, "frame_width", "manifest");
  m.total_frames = get_int<std::uint64_t>(j, "total_frames", "manifest");
  m.clip_length = get_int<std::uint64_t>(j, "clip_length", "manifest");

  const Json& rs = j["resample_spec"];
  expect_keys(rs, "resample_spec", {"kernel_a_micro", "coordinate_convention", "boundary", "rounding"});
  m.resample_spec.kernel_a_micro = get_int<std::int64_t>(rs, "kernel_a_micro", "resample_spec");
  m.resample_spec.coordinate_convention = get_string(rs, "coordinate_convention", "resample_spec");
  m.resample_spec.boundary = get_string(rs, "boundary", "resample_spec");
  m.resample_spec.rounding = get_string(rs, "rounding", "resample_spec");

  const Json& rc = j["run_config"];
  expect_keys(rc, "run_config", {"sample_target", "patch_size", "keep_ratio_micro", "method"});
  m.run_config.sample_target = get_int<std::uint64_t>(rc, "sample_target", "run_config");
  m.run_config.patch_size = get_int<std::uint64_t>(rc, "patch_size", "run_config");
  m.run_config.keep_ratio_micro = get_int<std::int64_t>(rc, "keep_ratio_micro", "run_config");
  m.run_config.method = get_string(rc, "method", "run_config");

  if (!j["clips"].is_array()) schema_error("clips must be an array");
  for (std::size_t i = 0; i < j["clips"].size(); ++i) {
    const Json& jc = j["clips"][i];
    const std::string where = "clips[" + std::to_string(i) + "]";
    expect_keys(jc, where,
                {"clip_index", "member_source_indices", "anchor_path", "composite_path", "layout",
                 "seg_token_index", "partial"});
    ManifestClip c;
    c.clip_index = get_int<std::uint64_t>(jc, "clip_index", where);
    if (!jc["member_source_indices"].is_array()) {
      schema_error(where + ".member_source_indices must be an array");
    }
    for (const Json& v : jc["member_source_indices"]) {
      if (!v.is_number_integer()) schema_error(where + ".member_source_indices must hold integers");
      c.member_source_indices.push_back(v.get<std::int64_t>());
    }
    c.anchor_path = get_string(jc, "anchor_path", where);
    if (!jc["composite_path"].is_null()) c.composite_path = get_string(jc, "composite_path", where);
    if (!jc["layout"].is_null()) c.layout = layout_from_json(jc["layout"], where + ".layout");
    c.seg_token_index = get_int<std::uint64_t>(jc, "seg_token_index", where);
    c.partial = get_bool(jc, "partial", where);
    m.clips.push_back(std::move(c));
  }

  const Json& sa = j["seg_allocation"];
  expect_keys(sa, "seg_allocation", {"clips_per_token", "num_tokens"});
  m.seg_allocation.clips_per_token = get_int<std::uint64_t>(sa, "clips_per_token", "seg_allocation");
  m.seg_allocation.num_tokens = get_int<std::uint64_t>(sa, "num_tokens", "seg_allocation");

  const Json& tb = j["token_budget"];
  expect_keys(tb, "token_budget",
              {"s_per_frame", "tokens_original", "tokens_reduced", "ratio_numerator",
               "ratio_denominator"});
  m.token_budget.s_per_frame = get_int<std::uint64_t>(tb, "s_per_frame", "token_budget");
  m.token_budget.tokens_original = get_int<std::uint64_t>(tb, "tokens_original", "token_budget");
  m.token_budget.tokens_reduced = get_int<std::uint64_t>(tb, "tokens_reduced", "token_budget");
  m.token_budget.ratio_numerator = get_int<std::uint64_t>(tb, "ratio_numerator", "token_budget");
  m.token_budget.ratio_denominator = get_int<std::uint64_t>(tb, "ratio_denominator", "token_budget");

  validate_manifest(m);
  return m;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  validate_manifest(manifest);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open for writing " + path.string());
  out << manifest_to_json(manifest);
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::kMissingPath, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return manifest_from_json(ss.str());
}

}  // namespace svac
