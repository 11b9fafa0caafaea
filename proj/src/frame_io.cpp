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

#include "svac/frame_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "svac/error.hpp"

namespace svac {

namespace fs = std::filesystem;

namespace {

std::size_t frame_bytes(int height, int width) {
  return static_cast<std::size_t>(height) * width * Frame::kChannels;
}

void check_dims(int height, int width) {
  if (height < 1 || width < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame dimensions must be positive, got " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
}

std::vector<std::uint8_t> read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const fs::path& path, std::span<const std::uint8_t> header,
               std::span<const std::uint8_t> payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot open for writing " + path.string());
  }
  out.write(reinterpret_cast<const char*>(header.data()),
            static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
  }
}

std::uint32_t read_u32_le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::vector<std::uint8_t> raw_header(int height, int width, std::size_t count) {
  std::vector<std::uint8_t> header(kRawMagic.begin(), kRawMagic.end());
  put_u32_le(header, static_cast<std::uint32_t>(height));
  put_u32_le(header, static_cast<std::uint32_t>(width));
  put_u32_le(header, static_cast<std::uint32_t>(count));
  return header;
}

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class PpmHeaderReader {
 public:
  PpmHeaderReader(std::span<const std::uint8_t> bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (out.empty()) fail("unexpected end of header");
    return out;
  }

  int number() {
    const std::string tok = token();
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        tok.size() > 9) {
      fail("expected a decimal number, got '" + tok + "'");
    }
    return std::stoi(tok);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      fail("missing whitespace before raster");
    }
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kMalformedHeader, path_.string() + ": " + what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

FrameSequence load_ppm_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kMalformedHeader, dir.string() + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<Frame> frames;
  frames.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    Frame f = read_ppm(files[i]);
    if (!frames.empty() && !f.same_shape(frames.front())) {
      throw Error(ErrorCode::kDimensionMismatch,
                  files[i].string() + " does not match the first frame's size");
    }
    f.set_source_index(static_cast<std::int64_t>(i));
    frames.push_back(std::move(f));
  }
  return FrameSequence(std::move(frames));
}

FrameSequence load_raw_stream(const fs::path& path) {
  const std::vector<std::uint8_t> bytes = read_all(path);
  if (bytes.size() < kRawHeaderSize) {
    throw Error(ErrorCode::kTruncatedData, path.string() + ": header shorter than 20 bytes");
  }
  if (!std::equal(kRawMagic.begin(), kRawMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::kMalformedHeader, path.string() + ": bad magic");
  }
  const std::uint32_t height = read_u32_le(bytes.data() + 8);
  const std::uint32_t width = read_u32_le(bytes.data() + 12);
  const std::uint32_t count = read_u32_le(bytes.data() + 16);
  if (height == 0 || width == 0 || height > (1u << 20) || width > (1u << 20)) {
    throw Error(ErrorCode::kMalformedHeader, path.string() + ": invalid frame size");
  }
  const std::size_t per_frame = frame_bytes(static_cast<int>(height), static_cast<int>(width));
  if (bytes.size() - kRawHeaderSize < per_frame * count) {
    throw Error(ErrorCode::kTruncatedData,
                path.string() + ": payload holds fewer than " + std::to_string(count) + " frames");
  }

  std::vector<Frame> frames;
  frames.reserve(count);
  auto cursor = bytes.begin() + kRawHeaderSize;
  for (std::uint32_t t = 0; t < count; ++t) {
    std::vector<std::uint8_t> data(cursor, cursor + static_cast<std::ptrdiff_t>(per_frame));
    cursor += static_cast<std::ptrdiff_t>(per_frame);
    frames.emplace_back(static_cast<int>(height), static_cast<int>(width), std::move(data), t);
  }
  return FrameSequence(std::move(frames));
}

}  // namespace

Frame::Frame(int height, int width, std::int64_t source_index)
    : height_(height), width_(width), source_index_(source_index) {
  check_dims(height, width);
  data_.assign(frame_bytes(height, width), 0);
}

Frame::Frame(int height, int width, std::vector<std::uint8_t> data,
             std::int64_t source_index)
    : height_(height),
      width_(width),
      source_index_(source_index),
      data_(std::move(data)) {
  check_dims(height, width);
  if (data_.size() != frame_bytes(height, width)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "frame data holds " + std::to_string(data_.size()) + " bytes, expected " +
                    std::to_string(frame_bytes(height, width)));
  }
}

FrameSequence::FrameSequence(std::vector<Frame> frames, std::optional<double> fps_hint)
    : frames_(std::move(frames)), fps_hint_(fps_hint) {
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (!frames_[i].same_shape(frames_[0])) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "frame " + std::to_string(i) + " differs in size from frame 0");
    }
    if (frames_[i].source_index() <= frames_[i - 1].source_index()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "source indices must be strictly increasing");
    }
  }
}

SequenceFormat parse_sequence_format(std::string_view name) {
  if (name == "ppm_dir") return SequenceFormat::kPpmDir;
  if (name == "raw_stream") return SequenceFormat::kRawStream;
  throw Error(ErrorCode::kInvalidArgument, "unknown input format '" + std::string(name) + "'");
}

FrameSequence load_sequence(const fs::path& path, SequenceFormat format) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kMissingPath, path.string());
  }
  return format == SequenceFormat::kPpmDir ? load_ppm_dir(path) : load_raw_stream(path);
}

Frame read_ppm(const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kMissingPath, path.string());
  }
  const std::vector<std::uint8_t> bytes = read_all(path);
  PpmHeaderReader header(bytes, path);
  if (header.token() != "P6") header.fail("bad magic, expected P6");
  const int width = header.number();
  const int height = header.number();
  const int maxval = header.number();
  if (width < 1 || height < 1) header.fail("zero dimension");
  if (maxval != 255) header.fail("maxval must be 255, got " + std::to_string(maxval));
  const std::size_t start = header.raster_start();

  const std::size_t need = frame_bytes(height, width);
  if (bytes.size() < start || bytes.size() - start < need) {
    throw Error(ErrorCode::kTruncatedData, path.string() + ": raster shorter than " +
                                               std::to_string(need) + " bytes");
  }
  const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(start);
  return Frame(height, width, std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(need)));
}

void write_frame(const Frame& frame, const fs::path& path, FrameFormat format) {
  if (format == FrameFormat::kRawStreamSingle) {
    write_raw_stream(std::span<const Frame>(&frame, 1), path);
    return;
  }
  const std::string header = "P6\n" + std::to_string(frame.width()) + " " +
                             std::to_string(frame.height()) + "\n255\n";
  write_all(path,
            std::span(reinterpret_cast<const std::uint8_t*>(header.data()), header.size()),
            frame.data());
}

void write_raw_stream(std::span<const Frame> frames, const fs::path& path) {
  if (frames.empty()) {
    throw Error(ErrorCode::kEmptyInput, "raw stream needs at least one frame");
  }
  for (const Frame& f : frames) {
    if (!f.same_shape(frames.front())) {
      throw Error(ErrorCode::kDimensionMismatch, "raw stream frames differ in size");
    }
  }
  std::vector<std::uint8_t> payload;
  payload.reserve(frames.size() * frames.front().data().size());
  for (const Frame& f : frames) payload.insert(payload.end(), f.data().begin(), f.data().end());
  write_all(path, raw_header(frames.front().height(), frames.front().width(), frames.size()),
            payload);
}

FrameSequence sample_uniform(const FrameSequence& seq, std::size_t target) {
  if (target < 1) {
    throw Error(ErrorCode::kInvalidArgument, "sample target must be at least 1");
  }
  const std::size_t total = seq.size();
  if (total <= target) return seq;

  std::vector<Frame> picked;
  picked.reserve(target);
  for (std::size_t i = 0; i < target; ++i) {
    picked.push_back(seq[i * total / target]);
  }
  return FrameSequence(std::move(picked), seq.fps_hint());
}

}  // namespace svac
