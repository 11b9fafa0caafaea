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
#include <optional>
#include <span>
#include <vector>

namespace svac {

/// One RGB8 image, row-major with interleaved channels.
///
/// Construction validates the size invariant (height * width * 3 bytes,
/// both dimensions at least 1). Pixel storage is mutable only through
/// mutable_data() so builders can fill a frame in place.
class Frame {
 public:
  static constexpr int kChannels = 3;

  Frame(int height, int width, std::int64_t source_index = 0);
  Frame(int height, int width, std::vector<std::uint8_t> data,
        std::int64_t source_index = 0);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::int64_t source_index() const noexcept { return source_index_; }
  void set_source_index(std::int64_t index) noexcept { source_index_ = index; }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> mutable_data() noexcept { return data_; }

  std::size_t offset(int y, int x) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }
  std::uint8_t at(int y, int x, int c) const noexcept {
    return data_[offset(y, x) + c];
  }
  std::uint8_t& at(int y, int x, int c) noexcept {
    return data_[offset(y, x) + c];
  }

  bool same_shape(const Frame& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  // Pixel equality; source_index is metadata and is not compared.
  bool pixels_equal(const Frame& other) const noexcept {
    return same_shape(other) && data_ == other.data_;
  }

 private:
  int height_;
  int width_;
  std::int64_t source_index_;
  std::vector<std::uint8_t> data_;
};

/// Ordered frames of uniform size with strictly increasing source indices.
class FrameSequence {
 public:
  FrameSequence() = default;
  explicit FrameSequence(std::vector<Frame> frames,
                         std::optional<double> fps_hint = std::nullopt);

  const std::vector<Frame>& frames() const noexcept { return frames_; }
  std::size_t size() const noexcept { return frames_.size(); }
  bool empty() const noexcept { return frames_.empty(); }
  const Frame& operator[](std::size_t i) const { return frames_[i]; }

  int height() const noexcept { return frames_.empty() ? 0 : frames_[0].height(); }
  int width() const noexcept { return frames_.empty() ? 0 : frames_[0].width(); }

  // Carried as metadata only.
  std::optional<double> fps_hint() const noexcept { return fps_hint_; }

 private:
  std::vector<Frame> frames_;
  std::optional<double> fps_hint_;
};

}  // namespace svac
