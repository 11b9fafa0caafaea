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

#include <cstdint>
#include <string>

namespace svac {

/// Non-negative fraction kept in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational reduced(std::uint64_t num, std::uint64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  bool operator==(const Rational&) const = default;
};

struct ModelShape {
  std::uint64_t layers = 24;
  std::uint64_t hidden_dim = 2048;
  std::uint64_t bytes_per_element = 2;
};

struct AttentionCost {
  double flops = 0.0;
  double kv_cache_bytes = 0.0;
};

struct CostReport {
  std::uint64_t frames = 0;
  std::uint64_t clip_length = 0;
  std::uint64_t s_per_frame = 0;
  std::uint64_t full_clips = 0;
  std::uint64_t partial_clips = 0;
  std::uint64_t tokens_original = 0;
  std::uint64_t tokens_reduced = 0;
  // Realized over the whole partition, trailing short clip included.
  Rational ratio;
  // 2/m, the per-full-clip figure.
  Rational full_clip_ratio;

  AttentionCost original_cost;
  AttentionCost reduced_cost;
};

/// Per full clip: m*s tokens in, 2*s out. A short trailing clip of length L
/// contributes L*s in and 2*s out (s when L == 1).
CostReport token_budget(std::uint64_t frames, std::uint64_t clip_length,
                        std::uint64_t s_per_frame);

/// Order-of-magnitude estimator: prefill attention 2*L*n^2*d flops,
/// KV cache 2*L*n*d*bytes.
AttentionCost attention_cost(std::uint64_t n_tokens, const ModelShape& shape);

CostReport cost_report(std::uint64_t frames, std::uint64_t clip_length,
                       std::uint64_t s_per_frame, const ModelShape& shape);

}  // namespace svac
