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

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "svac/error.hpp"
#include "svac/frame.hpp"

namespace svac {

template <typename Scalar>
using TokenMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// grid_h x grid_w patch tokens; row k of `values` is token k in row-major
/// grid order.
template <typename Scalar = double>
struct TokenGrid {
  int grid_h = 0;
  int grid_w = 0;
  int patch_size = 0;
  TokenMatrix<Scalar> values;

  Eigen::Index size() const noexcept { return values.rows(); }
  Eigen::Index dim() const noexcept { return values.cols(); }
};

/// Tokens surviving pruning or merging, ordered by original index.
template <typename Scalar = double>
struct TokenSet {
  std::vector<Eigen::Index> original_index;
  TokenMatrix<Scalar> tokens;
  // Input tokens folded into each output (1 for pruning).
  std::vector<std::size_t> source_count;

  std::size_t kept_count() const noexcept { return original_index.size(); }
};

/// round(keep_ratio * s), half away from zero.
std::size_t keep_count(std::size_t token_count, double keep_ratio);

/// One decimal value per line, token-index order.
std::vector<double> read_score_file(const std::filesystem::path& path);

template <typename Scalar = double>
TokenGrid<Scalar> patch_tokenize(const Frame& frame, int patch) {
  if (patch < 1 || frame.height() % patch != 0 || frame.width() % patch != 0) {
    throw Error(ErrorCode::kNonDivisibleDimensions,
                "patch " + std::to_string(patch) + " does not divide " +
                    std::to_string(frame.height()) + "x" + std::to_string(frame.width()));
  }
  TokenGrid<Scalar> grid;
  grid.grid_h = frame.height() / patch;
  grid.grid_w = frame.width() / patch;
  grid.patch_size = patch;
  grid.values.resize(static_cast<Eigen::Index>(grid.grid_h) * grid.grid_w,
                     static_cast<Eigen::Index>(Frame::kChannels) * patch * patch);

  const auto px = frame.data();
  for (int gy = 0; gy < grid.grid_h; ++gy) {
    for (int gx = 0; gx < grid.grid_w; ++gx) {
      auto token = grid.values.row(static_cast<Eigen::Index>(gy) * grid.grid_w + gx);
      Eigen::Index k = 0;
      for (int y = 0; y < patch; ++y) {
        const std::size_t base = frame.offset(gy * patch + y, gx * patch);
        for (int i = 0; i < patch * Frame::kChannels; ++i) {
          token(k++) = static_cast<Scalar>(px[base + static_cast<std::size_t>(i)]) / Scalar(255);
        }
      }
    }
  }
  return grid;
}

namespace detail {

template <typename Scalar, typename Reduce>
TokenGrid<Scalar> pool_tokens(const TokenGrid<Scalar>& grid, int k, int stride, Reduce reduce) {
  if (k < 1 || stride < 1) {
    throw Error(ErrorCode::kInvalidArgument, "pool window and stride must be at least 1");
  }
  if (k > grid.grid_h || k > grid.grid_w) {
    throw Error(ErrorCode::kWindowLargerThanGrid,
                "window " + std::to_string(k) + " exceeds grid " + std::to_string(grid.grid_h) +
                    "x" + std::to_string(grid.grid_w));
  }
  TokenGrid<Scalar> out;
  out.grid_h = (grid.grid_h - k) / stride + 1;
  out.grid_w = (grid.grid_w - k) / stride + 1;
  out.patch_size = grid.patch_size;
  out.values.resize(static_cast<Eigen::Index>(out.grid_h) * out.grid_w, grid.dim());

  for (int oy = 0; oy < out.grid_h; ++oy) {
    for (int ox = 0; ox < out.grid_w; ++ox) {
      auto dst = out.values.row(static_cast<Eigen::Index>(oy) * out.grid_w + ox);
      bool first = true;
      for (int wy = 0; wy < k; ++wy) {
        for (int wx = 0; wx < k; ++wx) {
          const Eigen::Index src =
              static_cast<Eigen::Index>(oy * stride + wy) * grid.grid_w + ox * stride + wx;
          if (first) {
            dst = grid.values.row(src);
            first = false;
          } else {
            reduce(dst, grid.values.row(src));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

template <typename Scalar>
TokenGrid<Scalar> avg_pool_tokens(const TokenGrid<Scalar>& grid, int k, int stride) {
  auto out = detail::pool_tokens(grid, k, stride,
                                 [](auto& acc, const auto& v) { acc += v; });
  out.values /= static_cast<Scalar>(k * k);
  return out;
}

template <typename Scalar>
TokenGrid<Scalar> max_pool_tokens(const TokenGrid<Scalar>& grid, int k, int stride) {
  return detail::pool_tokens(grid, k, stride,
                             [](auto& acc, const auto& v) { acc = acc.cwiseMax(v); });
}

/// Population variance of each token's components; stands in for
/// attention-to-CLS scores when no score file is supplied.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> saliency_scores(const TokenGrid<Scalar>& grid) {
  const auto mean = grid.values.rowwise().mean();
  return (grid.values.colwise() - mean).rowwise().squaredNorm() /
         static_cast<Scalar>(grid.dim());
}

/// Keeps the round(keep_ratio * s) highest-scoring tokens. Equal scores
/// prefer the lower index; output is sorted by original index.
template <typename Scalar>
TokenSet<Scalar> prune_tokens(const TokenGrid<Scalar>& grid, std::span<const Scalar> scores,
                              double keep_ratio) {
  if (!(keep_ratio > 0.0 && keep_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "keep ratio must lie in (0, 1]");
  }
  const auto s = static_cast<std::size_t>(grid.size());
  if (scores.size() != s) {
    throw Error(ErrorCode::kScoreCountMismatch,
                std::to_string(scores.size()) + " scores for " + std::to_string(s) + " tokens");
  }
  std::vector<Eigen::Index> order(s);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const std::size_t keep = keep_count(s, keep_ratio);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  order.resize(keep);
  std::sort(order.begin(), order.end());

  TokenSet<Scalar> out;
  out.original_index = order;
  out.source_count.assign(keep, 1);
  out.tokens.resize(static_cast<Eigen::Index>(keep), grid.dim());
  for (std::size_t i = 0; i < keep; ++i) {
    out.tokens.row(static_cast<Eigen::Index>(i)) = grid.values.row(order[i]);
  }
  return out;
}

template <typename Scalar>
Scalar cosine_similarity(const Eigen::Ref<const Eigen::Matrix<Scalar, 1, Eigen::Dynamic>>& a,
                         const Eigen::Ref<const Eigen::Matrix<Scalar, 1, Eigen::Dynamic>>& b) {
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) return Scalar(0);
  return a.dot(b) / (na * nb);
}

/// Samples d = round(keep_ratio * s) destinations at floor(j*s/d), assigns
/// every other token to its most cosine-similar destination (ties to the
/// lower destination), and replaces each destination by the unweighted mean
/// of itself and its sources.
template <typename Scalar>
TokenSet<Scalar> merge_tokens(const TokenGrid<Scalar>& grid, double keep_ratio) {
  if (!(keep_ratio > 0.0 && keep_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "keep ratio must lie in (0, 1]");
  }
  const auto s = static_cast<std::size_t>(grid.size());
  const std::size_t d = keep_count(s, keep_ratio);
  if (d < 1) {
    throw Error(ErrorCode::kInvalidArgument, "merge would keep zero tokens");
  }

  TokenSet<Scalar> out;
  out.original_index.resize(d);
  std::vector<bool> is_destination(s, false);
  for (std::size_t j = 0; j < d; ++j) {
    out.original_index[j] = static_cast<Eigen::Index>(j * s / d);
    is_destination[j * s / d] = true;
  }

  using Row = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  out.tokens.resize(static_cast<Eigen::Index>(d), grid.dim());
  std::vector<std::size_t>& members = out.source_count;
  members.assign(d, 1);
  for (std::size_t j = 0; j < d; ++j) {
    out.tokens.row(static_cast<Eigen::Index>(j)) = grid.values.row(out.original_index[j]);
  }
  for (std::size_t t = 0; t < s; ++t) {
    if (is_destination[t]) continue;
    const Row src = grid.values.row(static_cast<Eigen::Index>(t));
    std::size_t best = 0;
    Scalar best_sim = Scalar(0);
    for (std::size_t j = 0; j < d; ++j) {
      const Row dst = grid.values.row(out.original_index[j]);
      const Scalar sim = cosine_similarity<Scalar>(src, dst);
      if (j == 0 || sim > best_sim) {
        best = j;
        best_sim = sim;
      }
    }
    out.tokens.row(static_cast<Eigen::Index>(best)) += src;
    ++members[best];
  }
  for (std::size_t j = 0; j < d; ++j) {
    out.tokens.row(static_cast<Eigen::Index>(j)) /= static_cast<Scalar>(members[j]);
  }
  return out;
}

}  // namespace svac
