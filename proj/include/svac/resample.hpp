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

#include <cmath>
#include <string_view>

#include "svac/frame.hpp"

namespace svac {

/// Free parameters of the bicubic resize. Only kernel_a is configurable;
/// the other three are fixed conventions recorded in the manifest.
struct ResampleSpec {
  double kernel_a = -0.5;

  static constexpr std::string_view kCoordinateConvention = "half_pixel_center";
  static constexpr std::string_view kBoundary = "clamp_to_edge";
  static constexpr std::string_view kRounding = "round_half_away_from_zero";
};

/// Cubic convolution kernel with parameter a (a = -0.5 is Catmull-Rom).
template <typename Scalar>
constexpr Scalar cubic_weight(Scalar x, Scalar a) {
  const Scalar ax = x < Scalar(0) ? -x : x;
  if (ax <= Scalar(1)) {
    return ((a + Scalar(2)) * ax - (a + Scalar(3))) * ax * ax + Scalar(1);
  }
  if (ax < Scalar(2)) {
    return ((a * ax - Scalar(5) * a) * ax + Scalar(8) * a) * ax - Scalar(4) * a;
  }
  return Scalar(0);
}

// Destination pixel d maps to source coordinate (d + 0.5) * src / dst - 0.5.
inline double source_coordinate(int dst_index, int src_size, int dst_size) {
  return (dst_index + 0.5) * static_cast<double>(src_size) / dst_size - 0.5;
}

// Clamp to [0, 255] and round half away from zero.
inline std::uint8_t quantize_u8(double v) {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::round(v));
}

/// Separable bicubic resize: horizontal pass into a double-precision
/// intermediate, then vertical pass, rounding once at the end. Taps outside
/// the source clamp to the nearest edge pixel. Equal dimensions return a copy.
Frame bicubic_resize(const Frame& image, int out_h, int out_w,
                     const ResampleSpec& spec = {});

}  // namespace svac
