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

#include <cstddef>
#include <optional>

#include "svac/clipper.hpp"
#include "svac/frame.hpp"
#include "svac/resample.hpp"

namespace svac {

/// Row-major tiling plan for a clip's follower frames.
struct GridLayout {
  int rows = 1;
  int cols = 1;
  int tile_height = 1;
  int tile_width = 1;
  int num_tiles = 1;
  int pad_cells = 0;

  int height() const noexcept { return rows * tile_height; }
  int width() const noexcept { return cols * tile_width; }

  bool operator==(const GridLayout&) const = default;
};

struct AggregateImage {
  Frame image;
  GridLayout layout;
};

/// Anchor plus the resized composite of the followers. Single-frame clips
/// carry no composite and no layout.
struct CompressedClip {
  std::size_t clip_index = 0;
  Frame anchor;
  std::optional<Frame> composite;
  std::optional<GridLayout> layout;
};

/// Picks rows x cols (each in [1, num_tiles], rows*cols >= num_tiles) whose
/// grid aspect rows*H : cols*W is closest in log-ratio to H : W. Ties go to
/// fewer pad cells, then fewer rows.
GridLayout plan_grid(int num_tiles, int frame_h, int frame_w);

/// Copies follower j into row-major cell j; unused cells stay zero.
AggregateImage compose_aggregate(const Clip& clip, const GridLayout& layout);

Frame extract_tile(const AggregateImage& agg, const GridLayout& layout, int tile_index);

CompressedClip compress_clip(const Clip& clip, const ResampleSpec& spec = {});

}  // namespace svac
