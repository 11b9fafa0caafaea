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

#include "svac/astc.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <string>

#include "svac/error.hpp"

namespace svac {

namespace {

// Distortion |ln(rows*H / (cols*W)) - ln(H/W)| reduces to |ln(rows/cols)|,
// which orders the same way as max(rows,cols)/min(rows,cols). Comparing
// that ratio by cross-multiplication keeps the ordering exact.
struct Candidate {
  int rows;
  int cols;
  int pads;

  std::int64_t ratio_num() const { return std::max(rows, cols); }
  std::int64_t ratio_den() const { return std::min(rows, cols); }
};

bool better(const Candidate& a, const Candidate& b) {
  const std::int64_t lhs = a.ratio_num() * b.ratio_den();
  const std::int64_t rhs = b.ratio_num() * a.ratio_den();
  if (lhs != rhs) return lhs < rhs;
  if (a.pads != b.pads) return a.pads < b.pads;
  return a.rows < b.rows;
}

void copy_block(const Frame& src, int src_y, int src_x, Frame& dst, int dst_y, int dst_x,
                int h, int w) {
  const std::size_t row_bytes = static_cast<std::size_t>(w) * Frame::kChannels;
  const auto s = src.data();
  auto d = dst.mutable_data();
  for (int y = 0; y < h; ++y) {
    std::memcpy(d.data() + dst.offset(dst_y + y, dst_x), s.data() + src.offset(src_y + y, src_x),
                row_bytes);
  }
}

}  // namespace

GridLayout plan_grid(int num_tiles, int frame_h, int frame_w) {
  if (num_tiles < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_tiles must be at least 1");
  }
  if (frame_h < 1 || frame_w < 1) {
    throw Error(ErrorCode::kInvalidArgument, "frame dimensions must be positive");
  }

  std::optional<Candidate> best;
  for (int rows = 1; rows <= num_tiles; ++rows) {
    for (int cols = (num_tiles + rows - 1) / rows; cols <= num_tiles; ++cols) {
      const Candidate c{rows, cols, rows * cols - num_tiles};
      if (!best || better(c, *best)) best = c;
    }
  }
  return GridLayout{best->rows, best->cols, frame_h, frame_w, num_tiles, best->pads};
}

AggregateImage compose_aggregate(const Clip& clip, const GridLayout& layout) {
  const int followers = static_cast<int>(clip.followers.size());
  if (followers < 1) {
    throw Error(ErrorCode::kLayoutMismatch, "clip has no follower frames to aggregate");
  }
  if (layout.num_tiles != followers || layout.rows * layout.cols < layout.num_tiles ||
      layout.pad_cells != layout.rows * layout.cols - layout.num_tiles) {
    throw Error(ErrorCode::kLayoutMismatch,
                "layout holds " + std::to_string(layout.num_tiles) + " tiles for " +
                    std::to_string(followers) + " followers");
  }
  if (layout.tile_height != clip.anchor.height() || layout.tile_width != clip.anchor.width()) {
    throw Error(ErrorCode::kLayoutMismatch, "layout tile size differs from frame size");
  }

  Frame agg(layout.height(), layout.width(), clip.anchor.source_index());
  for (int j = 0; j < followers; ++j) {
    const Frame& f = clip.followers[static_cast<std::size_t>(j)];
    if (f.height() != layout.tile_height || f.width() != layout.tile_width) {
      throw Error(ErrorCode::kLayoutMismatch, "follower size differs from layout tile size");
    }
    copy_block(f, 0, 0, agg, (j / layout.cols) * layout.tile_height,
               (j % layout.cols) * layout.tile_width, layout.tile_height, layout.tile_width);
  }
  return AggregateImage{std::move(agg), layout};
}

Frame extract_tile(const AggregateImage& agg, const GridLayout& layout, int tile_index) {
  if (tile_index < 0 || tile_index >= layout.num_tiles) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "tile " + std::to_string(tile_index) + " of " + std::to_string(layout.num_tiles));
  }
  if (agg.image.height() != layout.height() || agg.image.width() != layout.width()) {
    throw Error(ErrorCode::kLayoutMismatch, "aggregate size differs from layout");
  }
  Frame tile(layout.tile_height, layout.tile_width);
  copy_block(agg.image, (tile_index / layout.cols) * layout.tile_height,
             (tile_index % layout.cols) * layout.tile_width, tile, 0, 0, layout.tile_height,
             layout.tile_width);
  return tile;
}

CompressedClip compress_clip(const Clip& clip, const ResampleSpec& spec) {
  CompressedClip out{clip.index, clip.anchor, std::nullopt, std::nullopt};
  if (clip.followers.empty()) return out;

  const GridLayout layout = plan_grid(static_cast<int>(clip.followers.size()),
                                      clip.anchor.height(), clip.anchor.width());
  const AggregateImage agg = compose_aggregate(clip, layout);
  out.composite = bicubic_resize(agg.image, clip.anchor.height(), clip.anchor.width(), spec);
  out.layout = layout;
  return out;
}

}  // namespace svac
