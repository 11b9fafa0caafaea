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
#include <string_view>
#include <vector>

#include "svac/astc.hpp"
#include "svac/clipper.hpp"
#include "svac/csa.hpp"
#include "svac/frame.hpp"
#include "svac/manifest.hpp"
#include "svac/resample.hpp"

namespace svac {

enum class Method { kAstc, kAvgPool, kMaxPool, kPrune, kMerge };

Method parse_method(std::string_view name);
std::string_view method_name(Method method);

struct CompressOptions {
  std::size_t sample_target = 100;
  std::size_t clip_length = 10;
  std::size_t clips_per_token = 1;
  int patch_size = 16;
  double keep_ratio = 0.25;
  ResampleSpec resample;
  Method method = Method::kAstc;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct CompressResult {
  ClipSet clips;
  std::vector<CompressedClip> compressed;
  SegAllocation allocation;
  Manifest manifest;
};

unsigned resolve_threads(unsigned requested);

/// Tokens per frame for a patch grid; partial patches count as whole tokens.
std::uint64_t tokens_per_frame(int frame_h, int frame_w, int patch);

/// Samples, partitions and compresses every clip (clips run on a worker
/// pool; results land in clip order). File paths in the manifest are
/// relative to the output directory.
CompressResult compress_sequence(const FrameSequence& seq, const CompressOptions& options);

/// Writes anchors, composites and the manifest into out_dir (created if absent).
void write_compressed(const CompressResult& result, const std::filesystem::path& out_dir);

struct BaselineReport {
  Method method = Method::kAvgPool;
  std::uint64_t frames = 0;
  std::uint64_t tokens_original = 0;
  std::uint64_t tokens_reduced = 0;
};

/// Applies a token-level baseline frame by frame: 2x2/stride-2 pooling, or
/// prune/merge at keep_ratio. Prune uses `scores` when given, otherwise the
/// variance proxy.
BaselineReport run_baseline(const FrameSequence& seq, const CompressOptions& options,
                            const std::optional<std::vector<double>>& scores = std::nullopt);

/// Rebuilds the pre-resize aggregate for one clip with grid lines drawn on
/// the tile seams. With `source` the tiles are exact; otherwise the stored
/// composite is upscaled to the aggregate size.
Frame render_inspection(const Manifest& manifest, const std::filesystem::path& manifest_dir,
                        std::size_t clip_index, const FrameSequence* source,
                        const ResampleSpec& spec = {});

/// Seeded moving-gradient video for benchmarks and tests.
FrameSequence make_synthetic_sequence(std::size_t frames, int height, int width,
                                      std::uint64_t seed);

}  // namespace svac
