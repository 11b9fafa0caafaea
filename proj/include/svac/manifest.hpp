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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace svac {

inline constexpr int kManifestVersion = 1;
inline constexpr const char* kManifestFileName = "svac_manifest.json";

struct ManifestLayout {
  int rows = 0;
  int cols = 0;
  int num_tiles = 0;
  int pad_cells = 0;

  bool operator==(const ManifestLayout&) const = default;
};

struct ManifestClip {
  std::uint64_t clip_index = 0;
  std::vector<std::int64_t> member_source_indices;
  std::string anchor_path;
  std::optional<std::string> composite_path;
  std::optional<ManifestLayout> layout;
  std::uint64_t seg_token_index = 0;
  // Shorter than the nominal clip length (only the last clip can be).
  bool partial = false;

  bool operator==(const ManifestClip&) const = default;
};

struct ManifestResampleSpec {
  // kernel parameter in millionths, so the manifest carries no floats.
  std::int64_t kernel_a_micro = -500000;
  std::string coordinate_convention = "half_pixel_center";
  std::string boundary = "clamp_to_edge";
  std::string rounding = "round_half_away_from_zero";

  bool operator==(const ManifestResampleSpec&) const = default;
};

struct ManifestRunConfig {
  std::uint64_t sample_target = 100;
  std::uint64_t patch_size = 16;
  std::int64_t keep_ratio_micro = 250000;
  std::string method = "astc";

  bool operator==(const ManifestRunConfig&) const = default;
};

struct ManifestSegAllocation {
  std::uint64_t clips_per_token = 1;
  std::uint64_t num_tokens = 0;

  bool operator==(const ManifestSegAllocation&) const = default;
};

struct ManifestTokenBudget {
  std::uint64_t s_per_frame = 0;
  std::uint64_t tokens_original = 0;
  std::uint64_t tokens_reduced = 0;
  std::uint64_t ratio_numerator = 0;
  std::uint64_t ratio_denominator = 1;

  bool operator==(const ManifestTokenBudget&) const = default;
};

struct Manifest {
  int format_version = kManifestVersion;
  int frame_height = 0;
  int frame_width = 0;
  std::uint64_t total_frames = 0;
  std::uint64_t clip_length = 0;
  ManifestResampleSpec resample_spec;
  ManifestRunConfig run_config;
  std::vector<ManifestClip> clips;
  ManifestSegAllocation seg_allocation;
  ManifestTokenBudget token_budget;

  bool operator==(const Manifest&) const = default;
};

// Throws SchemaViolation on the first broken invariant.
void validate_manifest(const Manifest& manifest);

std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& text);

void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace svac
