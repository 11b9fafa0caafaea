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

#include "svac/resample.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "svac/error.hpp"

namespace svac {

namespace {

struct Taps {
  std::array<int, 4> index;
  std::array<double, 4> weight;
};

std::vector<Taps> build_taps(int src_size, int dst_size, double a) {
  std::vector<Taps> taps(static_cast<std::size_t>(dst_size));
  for (int d = 0; d < dst_size; ++d) {
    const double sx = source_coordinate(d, src_size, dst_size);
    const int base = static_cast<int>(std::floor(sx));
    Taps& t = taps[static_cast<std::size_t>(d)];
    for (int k = 0; k < 4; ++k) {
      const int s = base - 1 + k;
      t.index[k] = std::clamp(s, 0, src_size - 1);
      t.weight[k] = cubic_weight(sx - s, a);
    }
  }
  return taps;
}

}  // namespace

Frame bicubic_resize(const Frame& image, int out_h, int out_w, const ResampleSpec& spec) {
  if (out_h < 1 || out_w < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "resize target must be positive, got " + std::to_string(out_h) + "x" +
                    std::to_string(out_w));
  }
  if (out_h == image.height() && out_w == image.width()) {
    return image;
  }

  constexpr int C = Frame::kChannels;
  const int src_h = image.height();
  const int src_w = image.width();
  const std::vector<Taps> col_taps = build_taps(src_w, out_w, spec.kernel_a);
  const std::vector<Taps> row_taps = build_taps(src_h, out_h, spec.kernel_a);

  // Horizontal pass: src_h x out_w, continuous values.
  std::vector<double> mid(static_cast<std::size_t>(src_h) * out_w * C);
  const auto src = image.data();
  for (int y = 0; y < src_h; ++y) {
    const std::uint8_t* row = src.data() + image.offset(y, 0);
    double* out_row = mid.data() + static_cast<std::size_t>(y) * out_w * C;
    for (int x = 0; x < out_w; ++x) {
      const Taps& t = col_taps[static_cast<std::size_t>(x)];
      for (int c = 0; c < C; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += t.weight[k] * row[t.index[k] * C + c];
        out_row[x * C + c] = acc;
      }
    }
  }

  Frame out(out_h, out_w, image.source_index());
  auto dst = out.mutable_data();
  const std::size_t stride = static_cast<std::size_t>(out_w) * C;
  for (int y = 0; y < out_h; ++y) {
    const Taps& t = row_taps[static_cast<std::size_t>(y)];
    std::uint8_t* out_row = dst.data() + y * stride;
    for (std::size_t i = 0; i < stride; ++i) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += t.weight[k] * mid[t.index[k] * stride + i];
      out_row[i] = quantize_u8(acc);
    }
  }
  return out;
}

}  // namespace svac
