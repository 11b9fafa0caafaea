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

#include "svac/cost_model.hpp"

#include <numeric>

#include "svac/error.hpp"

namespace svac {

Rational Rational::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

CostReport token_budget(std::uint64_t frames, std::uint64_t clip_length,
                        std::uint64_t s_per_frame) {
  if (frames < 1 || clip_length < 2 || s_per_frame < 1) {
    throw Error(ErrorCode::kInvalidArgument, "token budget needs T >= 1, m >= 2, s >= 1");
  }
  CostReport r;
  r.frames = frames;
  r.clip_length = clip_length;
  r.s_per_frame = s_per_frame;
  r.full_clips = frames / clip_length;
  const std::uint64_t tail = frames % clip_length;
  r.partial_clips = tail > 0 ? 1 : 0;

  r.tokens_original = frames * s_per_frame;
  r.tokens_reduced = r.full_clips * 2 * s_per_frame;
  if (tail == 1) {
    r.tokens_reduced += s_per_frame;
  } else if (tail > 1) {
    r.tokens_reduced += 2 * s_per_frame;
  }
  r.ratio = Rational::reduced(r.tokens_reduced, r.tokens_original);
  r.full_clip_ratio = Rational::reduced(2, clip_length);
  return r;
}

AttentionCost attention_cost(std::uint64_t n_tokens, const ModelShape& shape) {
  if (n_tokens < 1 || shape.layers < 1 || shape.hidden_dim < 1 || shape.bytes_per_element < 1) {
    throw Error(ErrorCode::kInvalidArgument, "attention cost inputs must be positive");
  }
  const double n = static_cast<double>(n_tokens);
  const double layers = static_cast<double>(shape.layers);
  const double d = static_cast<double>(shape.hidden_dim);
  return AttentionCost{2.0 * layers * n * n * d,
                       2.0 * layers * n * d * static_cast<double>(shape.bytes_per_element)};
}

CostReport cost_report(std::uint64_t frames, std::uint64_t clip_length,
                       std::uint64_t s_per_frame, const ModelShape& shape) {
  CostReport r = token_budget(frames, clip_length, s_per_frame);
  r.original_cost = attention_cost(r.tokens_original, shape);
  r.reduced_cost = attention_cost(r.tokens_reduced, shape);
  return r;
}

}  // namespace svac
