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

#include "svac/clipper.hpp"

#include <algorithm>
#include <string>

#include "svac/error.hpp"

namespace svac {

std::size_t ClipSet::total_frames() const noexcept {
  std::size_t total = 0;
  for (const Clip& c : clips) total += c.member_count();
  return total;
}

std::size_t ClipSet::clip_of(std::size_t position) const {
  const std::size_t total = total_frames();
  if (position >= total) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "frame position " + std::to_string(position) + " >= frame count " +
                    std::to_string(total));
  }
  return position / nominal_length;
}

ClipSet partition_clips(const FrameSequence& seq, std::size_t clip_length) {
  if (clip_length < 2) {
    throw Error(ErrorCode::kInvalidClipLength,
                "clip length must be at least 2, got " + std::to_string(clip_length));
  }
  if (seq.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot partition an empty sequence");
  }

  ClipSet out;
  out.nominal_length = clip_length;
  const std::size_t total = seq.size();
  for (std::size_t begin = 0, i = 0; begin < total; begin += clip_length, ++i) {
    const std::size_t end = std::min(begin + clip_length, total);
    Clip clip{i, seq[begin], {}, {}};
    clip.followers.reserve(end - begin - 1);
    for (std::size_t t = begin; t < end; ++t) {
      clip.member_source_indices.push_back(seq[t].source_index());
      if (t > begin) clip.followers.push_back(seq[t]);
    }
    out.clips.push_back(std::move(clip));
  }
  return out;
}

}  // namespace svac
