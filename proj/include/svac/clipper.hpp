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
#include <cstdint>
#include <vector>

#include "svac/frame.hpp"

namespace svac {

/// A contiguous run of frames. The first member is the anchor.
struct Clip {
  std::size_t index = 0;
  Frame anchor;
  std::vector<Frame> followers;
  std::vector<std::int64_t> member_source_indices;

  std::size_t member_count() const noexcept { return followers.size() + 1; }
};

struct ClipSet {
  std::vector<Clip> clips;
  std::size_t nominal_length = 0;

  std::size_t total_frames() const noexcept;
  // Clip ordinal holding the frame at `position` in the sampled sequence.
  std::size_t clip_of(std::size_t position) const;
};

/// Splits the sequence into ceil(T / m) clips; clip i holds frames
/// [i*m, min((i+1)*m, T)). The last clip may be shorter than m.
ClipSet partition_clips(const FrameSequence& seq, std::size_t clip_length);

}  // namespace svac
