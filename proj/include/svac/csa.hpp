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
#include <vector>

#include "svac/clipper.hpp"

namespace svac {

/// Groups of g consecutive clips share one segmentation token; leftover
/// clips fold into the last group.
struct SegAllocation {
  std::size_t num_clips = 0;
  std::size_t clips_per_token = 1;
  std::size_t num_tokens = 0;
  std::vector<std::size_t> clip_to_token;

  std::vector<std::size_t> group_sizes() const;
};

SegAllocation allocate_seg_tokens(std::size_t num_clips, std::size_t clips_per_token);

std::size_t token_for_frame(const SegAllocation& alloc, const ClipSet& clips,
                            std::size_t frame_position);

}  // namespace svac
