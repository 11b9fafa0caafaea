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

#include "svac/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "svac/cost_model.hpp"
#include "svac/error.hpp"
#include "svac/frame_io.hpp"
#include "svac/token_ops.hpp"

namespace svac {

namespace fs = std::filesystem;

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first
// exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string anchor_name(std::size_t i) { return "clip_" + std::to_string(i) + "_anchor.ppm"; }
std::string composite_name(std::size_t i) {
  return "clip_" + std::to_string(i) + "_composite.ppm";
}

std::int64_t to_micro(double v) { return std::llround(v * 1e6); }

void burn_grid_lines(Frame& image, const ManifestLayout& layout, int tile_h, int tile_w) {
  constexpr std::uint8_t kLine[3] = {255, 0, 255};
  for (int r = 1; r < layout.rows; ++r) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) image.at(r * tile_h, x, c) = kLine[c];
    }
  }
  for (int col = 1; col < layout.cols; ++col) {
    for (int y = 0; y < image.height(); ++y) {
      for (int c = 0; c < 3; ++c) image.at(y, col * tile_w, c) = kLine[c];
    }
  }
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "astc") return Method::kAstc;
  if (name == "avg_pool") return Method::kAvgPool;
  if (name == "max_pool") return Method::kMaxPool;
  if (name == "prune") return Method::kPrune;
  if (name == "merge") return Method::kMerge;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kAstc: return "astc";
    case Method::kAvgPool: return "avg_pool";
    case Method::kMaxPool: return "max_pool";
    case Method::kPrune: return "prune";
    case Method::kMerge: return "merge";
  }
  return "astc";
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t tokens_per_frame(int frame_h, int frame_w, int patch) {
  if (patch < 1) throw Error(ErrorCode::kInvalidArgument, "patch size must be >= 1");
  const auto ceil_div = [](int a, int b) { return static_cast<std::uint64_t>((a + b - 1) / b); };
  return ceil_div(frame_h, patch) * ceil_div(frame_w, patch);
}

CompressResult compress_sequence(const FrameSequence& seq, const CompressOptions& options) {
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "input sequence has no frames");

  const FrameSequence sampled = sample_uniform(seq, options.sample_target);
  CompressResult result;
  result.clips = partition_clips(sampled, options.clip_length);
  const std::size_t n = result.clips.clips.size();

  std::vector<std::optional<CompressedClip>> slots(n);
  parallel_for(n, resolve_threads(options.threads), [&](std::size_t i) {
    slots[i] = compress_clip(result.clips.clips[i], options.resample);
  });
  result.compressed.reserve(n);
  for (auto& slot : slots) result.compressed.push_back(std::move(*slot));

  result.allocation = allocate_seg_tokens(n, options.clips_per_token);

  Manifest& m = result.manifest;
  m.frame_height = sampled.height();
  m.frame_width = sampled.width();
  m.total_frames = sampled.size();
  m.clip_length = options.clip_length;
  m.resample_spec.kernel_a_micro = to_micro(options.resample.kernel_a);
  m.run_config = ManifestRunConfig{options.sample_target,
                                   static_cast<std::uint64_t>(options.patch_size),
                                   to_micro(options.keep_ratio),
                                   std::string(method_name(options.method))};
  for (std::size_t i = 0; i < n; ++i) {
    const Clip& clip = result.clips.clips[i];
    const CompressedClip& cc = result.compressed[i];
    ManifestClip mc;
    mc.clip_index = i;
    mc.member_source_indices = clip.member_source_indices;
    mc.anchor_path = anchor_name(i);
    if (cc.composite) {
      mc.composite_path = composite_name(i);
      mc.layout = ManifestLayout{cc.layout->rows, cc.layout->cols, cc.layout->num_tiles,
                                 cc.layout->pad_cells};
    }
    mc.seg_token_index = result.allocation.clip_to_token[i];
    mc.partial = clip.member_count() < options.clip_length;
    m.clips.push_back(std::move(mc));
  }
  m.seg_allocation = ManifestSegAllocation{options.clips_per_token, result.allocation.num_tokens};

  const std::uint64_t s = tokens_per_frame(m.frame_height, m.frame_width, options.patch_size);
  const CostReport budget = token_budget(m.total_frames, m.clip_length, s);
  m.token_budget = ManifestTokenBudget{s, budget.tokens_original, budget.tokens_reduced,
                                       budget.ratio.num, budget.ratio.den};
  validate_manifest(m);
  return result;
}

void write_compressed(const CompressResult& result, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw Error(ErrorCode::kIoFailure, "cannot create output directory " + out_dir.string());
  }
  for (std::size_t i = 0; i < result.compressed.size(); ++i) {
    const CompressedClip& cc = result.compressed[i];
    const ManifestClip& mc = result.manifest.clips[i];
    write_frame(cc.anchor, out_dir / mc.anchor_path, FrameFormat::kPpm);
    if (cc.composite) write_frame(*cc.composite, out_dir / *mc.composite_path, FrameFormat::kPpm);
  }
  write_manifest(result.manifest, out_dir / kManifestFileName);
}

BaselineReport run_baseline(const FrameSequence& seq, const CompressOptions& options,
                            const std::optional<std::vector<double>>& scores) {
  if (options.method == Method::kAstc) {
    throw Error(ErrorCode::kInvalidArgument, "astc is not a token-level baseline");
  }
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "input sequence has no frames");
  const FrameSequence sampled = sample_uniform(seq, options.sample_target);

  BaselineReport report;
  report.method = options.method;
  report.frames = sampled.size();
  std::vector<std::uint64_t> kept(sampled.size(), 0);
  std::vector<std::uint64_t> original(sampled.size(), 0);
  parallel_for(sampled.size(), resolve_threads(options.threads), [&](std::size_t t) {
    const TokenGrid<double> grid = patch_tokenize<double>(sampled[t], options.patch_size);
    original[t] = static_cast<std::uint64_t>(grid.size());
    switch (options.method) {
      case Method::kAvgPool:
        kept[t] = static_cast<std::uint64_t>(avg_pool_tokens(grid, 2, 2).size());
        break;
      case Method::kMaxPool:
        kept[t] = static_cast<std::uint64_t>(max_pool_tokens(grid, 2, 2).size());
        break;
      case Method::kPrune: {
        if (scores) {
          kept[t] = prune_tokens<double>(grid, *scores, options.keep_ratio).kept_count();
        } else {
          const Eigen::VectorXd proxy = saliency_scores(grid);
          kept[t] = prune_tokens<double>(grid, std::span<const double>(proxy.data(), proxy.size()),
                                         options.keep_ratio)
                        .kept_count();
        }
        break;
      }
      case Method::kMerge:
        kept[t] = merge_tokens(grid, options.keep_ratio).kept_count();
        break;
      case Method::kAstc:
        break;
    }
  });
  for (std::size_t t = 0; t < sampled.size(); ++t) {
    report.tokens_original += original[t];
    report.tokens_reduced += kept[t];
  }
  return report;
}

Frame render_inspection(const Manifest& manifest, const fs::path& manifest_dir,
                        std::size_t clip_index, const FrameSequence* source,
                        const ResampleSpec& spec) {
  if (clip_index >= manifest.clips.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "clip " + std::to_string(clip_index) + " of " +
                    std::to_string(manifest.clips.size()));
  }
  const ManifestClip& mc = manifest.clips[clip_index];
  if (!mc.layout || !mc.composite_path) {
    throw Error(ErrorCode::kNoComposite,
                "clip " + std::to_string(clip_index) + " has a single member");
  }
  const ManifestLayout& ml = *mc.layout;
  const int h = manifest.frame_height;
  const int w = manifest.frame_width;

  Frame image(ml.rows * h, ml.cols * w);
  if (source) {
    Clip clip{clip_index, Frame(h, w), {}, mc.member_source_indices};
    for (std::size_t k = 1; k < mc.member_source_indices.size(); ++k) {
      const std::int64_t want = mc.member_source_indices[k];
      const auto it = std::find_if(source->frames().begin(), source->frames().end(),
                                   [&](const Frame& f) { return f.source_index() == want; });
      if (it == source->frames().end()) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "source frame " + std::to_string(want) + " not found in input");
      }
      if (it->height() != h || it->width() != w) {
        throw Error(ErrorCode::kDimensionMismatch, "source frames differ from manifest size");
      }
      clip.followers.push_back(*it);
    }
    const GridLayout layout{ml.rows, ml.cols, h, w, ml.num_tiles, ml.pad_cells};
    image = compose_aggregate(clip, layout).image;
  } else {
    const Frame composite = read_ppm(manifest_dir / *mc.composite_path);
    if (composite.height() != h || composite.width() != w) {
      throw Error(ErrorCode::kDimensionMismatch, "composite differs from manifest frame size");
    }
    image = bicubic_resize(composite, ml.rows * h, ml.cols * w, spec);
  }
  burn_grid_lines(image, ml, h, w);
  return image;
}

FrameSequence make_synthetic_sequence(std::size_t frames, int height, int width,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> noise(0, 15);
  std::uniform_int_distribution<int> phase(0, 255);
  const int px = phase(rng), py = phase(rng), pc = phase(rng);

  std::vector<Frame> out;
  out.reserve(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    Frame f(height, width, static_cast<std::int64_t>(t));
    const int shift = static_cast<int>(t) * 3;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        f.at(y, x, 0) = static_cast<std::uint8_t>((x + shift + px) * 255 / (width + 1) % 256);
        f.at(y, x, 1) = static_cast<std::uint8_t>((y + py + shift / 2) * 255 / (height + 1) % 256);
        f.at(y, x, 2) = static_cast<std::uint8_t>(((x ^ y) + pc + noise(rng)) & 0xff);
      }
    }
    out.push_back(std::move(f));
  }
  return FrameSequence(std::move(out));
}

}  // namespace svac
