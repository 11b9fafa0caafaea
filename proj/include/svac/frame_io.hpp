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
#include <filesystem>
#include <span>
#include <string_view>

#include "svac/frame.hpp"

namespace svac {

enum class SequenceFormat { kPpmDir, kRawStream };
enum class FrameFormat { kPpm, kRawStreamSingle };

SequenceFormat parse_sequence_format(std::string_view name);

// SVACRAW1: 8-byte magic, then u32 LE height, width, frame count, then
// T*H*W*3 payload bytes, frame-major.
inline constexpr std::string_view kRawMagic = "SVACRAW1";
inline constexpr std::size_t kRawHeaderSize = 20;

FrameSequence load_sequence(const std::filesystem::path& path,
                            SequenceFormat format);

Frame read_ppm(const std::filesystem::path& path);
void write_frame(const Frame& frame, const std::filesystem::path& path,
                 FrameFormat format);
void write_raw_stream(std::span<const Frame> frames,
                      const std::filesystem::path& path);

/// Keeps frames at floor(i * T / target) for i in [0, target) when the
/// sequence is longer than target; otherwise returns it unchanged.
FrameSequence sample_uniform(const FrameSequence& seq, std::size_t target);

}  // namespace svac
