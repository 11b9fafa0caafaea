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

#include "svac/csa.hpp"

#include <algorithm>
#include <string>

#include "svac/error.hpp"

namespace svac {

std::vector<std::size_t> SegAllocation::group_sizes() const {
  std::vector<std::size_t> sizes(num_tokens, 0);
  for (std::size_t token : clip_to_token) ++sizes[token];
  return sizes;
}

SegAllocation allocate_seg_tokens(std::size_t num_clips, std::size_t clips_per_token) {
  if (num_clips < 1 || clips_per_token < 1) {
    throw Error(ErrorCode::kInvalidArgument, "clip count and clips per token must be >= 1");
  }
  SegAllocation alloc;
  alloc.num_clips = num_clips;
  alloc.clips_per_token = clips_per_token;
  alloc.num_tokens = clips_per_token <= num_clips ? num_clips / clips_per_token : 1;
  alloc.clip_to_token.resize(num_clips);
  for (std::size_t i = 0; i < num_clips; ++i) {
    alloc.clip_to_token[i] = std::min(i / clips_per_token, alloc.num_tokens - 1);
  }
  return alloc;
}

std::size_t token_for_frame(const SegAllocation& alloc, const ClipSet& clips,
                            std::size_t frame_position) {
  if (clips.clips.size() != alloc.num_clips) {
    throw Error(ErrorCode::kInvalidArgument,
                "allocation covers " + std::to_string(alloc.num_clips) + " clips, clip set has " +
                    std::to_string(clips.clips.size()));
  }
  return alloc.clip_to_token[clips.clip_of(frame_position)];
}

}  // namespace svac
