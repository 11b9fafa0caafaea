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

// svac: compress long frame sequences into anchor + composite pairs, plan
// token budgets, inspect clip aggregates, and benchmark against token-level
// baselines.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svac/cost_model.hpp"
#include "svac/error.hpp"
#include "svac/frame_io.hpp"
#include "svac/manifest.hpp"
#include "svac/pipeline.hpp"
#include "svac/token_ops.hpp"

namespace fs = std::filesystem;
using namespace svac;

namespace {

struct InputArgs {
  std::string path;
  std::string format = "auto";
};

struct CompressArgs {
  InputArgs input;
  std::string output;
  std::size_t frames = 100;
  std::size_t clip_len = 10;
  std::size_t clips_per_token = 1;
  int patch = 16;
  double keep_ratio = 0.25;
  double kernel_a = -0.5;
  std::string method = "astc";
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string scores;
};

struct PlanArgs {
  std::uint64_t frames = 100;
  std::uint64_t clip_len = 10;
  std::uint64_t tokens_per_frame = 256;
  ModelShape shape;
  std::string csv;
};

struct InspectArgs {
  std::string manifest;
  std::size_t clip = 0;
  std::string output;
  InputArgs input;
  double kernel_a = -0.5;
};

struct BenchArgs {
  InputArgs input;
  std::size_t frames = 100;
  int height = 128;
  int width = 128;
  std::size_t clip_len = 10;
  int patch = 16;
  double keep_ratio = 0.25;
  unsigned threads = 0;
  int repeats = 5;
  std::uint64_t seed = 42;
};

FrameSequence load_input(const InputArgs& in) {
  const fs::path path(in.path);
  if (!fs::exists(path)) throw Error(ErrorCode::kMissingPath, in.path);
  SequenceFormat format;
  if (in.format == "auto") {
    format = fs::is_directory(path) ? SequenceFormat::kPpmDir : SequenceFormat::kRawStream;
  } else {
    format = parse_sequence_format(in.format);
  }
  return load_sequence(path, format);
}

CompressOptions make_options(const CompressArgs& a) {
  CompressOptions o;
  o.sample_target = a.frames;
  o.clip_length = a.clip_len;
  o.clips_per_token = a.clips_per_token;
  o.patch_size = a.patch;
  o.keep_ratio = a.keep_ratio;
  o.resample.kernel_a = a.kernel_a;
  o.method = parse_method(a.method);
  o.threads = a.threads;
  return o;
}

void add_input_options(CLI::App* cmd, InputArgs& in, bool required) {
  auto* opt = cmd->add_option("--input", in.path, "Input directory of P6 frames or SVACRAW1 stream");
  if (required) opt->required();
  cmd->add_option("--format", in.format, "Input format")
      ->check(CLI::IsMember({"auto", "ppm_dir", "raw_stream"}))
      ->capture_default_str();
}

int cmd_compress(const CompressArgs& a) {
  const CompressOptions options = make_options(a);
  const FrameSequence seq = load_input(a.input);
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, a.input.path + " holds no frames");

  if (options.method != Method::kAstc) {
    std::optional<std::vector<double>> scores;
    if (!a.scores.empty()) scores = read_score_file(a.scores);
    const BaselineReport r = run_baseline(seq, options, scores);
    fs::create_directories(a.output);
    const Rational ratio = Rational::reduced(r.tokens_reduced, r.tokens_original);
    std::ofstream out(fs::path(a.output) / "baseline_report.json");
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot write baseline report in " + a.output);
    out << "{\n  \"method\": \"" << method_name(r.method) << "\",\n  \"frames\": " << r.frames
        << ",\n  \"patch_size\": " << options.patch_size
        << ",\n  \"tokens_original\": " << r.tokens_original
        << ",\n  \"tokens_reduced\": " << r.tokens_reduced
        << ",\n  \"ratio_numerator\": " << ratio.num
        << ",\n  \"ratio_denominator\": " << ratio.den << "\n}\n";
    std::cout << method_name(r.method) << ": " << r.tokens_reduced << " / " << r.tokens_original
              << " tokens (" << ratio.str() << ") over " << r.frames << " frames\n";
    return 0;
  }

  const CompressResult result = compress_sequence(seq, options);
  write_compressed(result, a.output);
  const Manifest& m = result.manifest;
  std::size_t composites = 0;
  for (const auto& c : m.clips) composites += c.composite_path ? 1 : 0;
  std::cout << "compressed " << m.total_frames << " frames (" << m.frame_width << "x"
            << m.frame_height << ") into " << m.clips.size() << " clips, " << composites
            << " composites; tokens " << m.token_budget.tokens_reduced << " / "
            << m.token_budget.tokens_original << " (" << m.token_budget.ratio_numerator << "/"
            << m.token_budget.ratio_denominator << "); manifest "
            << (fs::path(a.output) / kManifestFileName).string() << "\n";
  return 0;
}

std::string percent(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v * 100.0 << "%";
  return ss.str();
}

int cmd_plan(const PlanArgs& a) {
  std::vector<std::uint64_t> sweep = {a.clip_len, 2, 4, 5, 8, 10, 20};
  std::ofstream csv;
  if (!a.csv.empty()) {
    csv.open(a.csv);
    if (!csv) throw Error(ErrorCode::kIoFailure, "cannot write " + a.csv);
    csv << "m,tokens_original,tokens_reduced,ratio,flops_ratio,kv_ratio\n";
  }
  std::cout << "T=" << a.frames << " frames, s=" << a.tokens_per_frame << " tokens/frame; "
            << "ratio is per full clip (2/m); realized includes a short trailing clip.\n"
            << "estimator: flops = 2*layers*n^2*hidden, kv = 2*layers*n*hidden*bytes (layers="
            << a.shape.layers << ", hidden=" << a.shape.hidden_dim
            << ", bytes=" << a.shape.bytes_per_element << ")\n";
  std::cout << std::left << std::setw(12) << "m" << std::setw(18) << "tokens_original"
            << std::setw(16) << "tokens_reduced" << std::setw(16) << "ratio" << std::setw(12)
            << "realized" << std::setw(14) << "flops_ratio" << "kv_ratio\n";
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const std::uint64_t m = sweep[i];
    const CostReport r = cost_report(a.frames, m, a.tokens_per_frame, a.shape);
    const double flops = r.reduced_cost.flops / r.original_cost.flops;
    const double kv = r.reduced_cost.kv_cache_bytes / r.original_cost.kv_cache_bytes;
    const std::string label = std::to_string(m) + (i == 0 ? " (cfg)" : "");
    std::cout << std::left << std::setw(12) << label << std::setw(18) << r.tokens_original
              << std::setw(16) << r.tokens_reduced << std::setw(16)
              << (percent(r.full_clip_ratio.value()) + " " + r.full_clip_ratio.str())
              << std::setw(12) << percent(r.ratio.value()) << std::setw(14) << percent(flops)
              << percent(kv) << "\n";
    if (csv.is_open() && i > 0) {
      csv << m << "," << r.tokens_original << "," << r.tokens_reduced << ","
          << std::setprecision(10) << r.full_clip_ratio.value() << "," << flops << "," << kv
          << "\n";
    }
  }
  return 0;
}

int cmd_inspect(const InspectArgs& a) {
  const fs::path manifest_path(a.manifest);
  const Manifest m = read_manifest(manifest_path);
  std::optional<FrameSequence> source;
  if (!a.input.path.empty()) source = load_input(a.input);
  ResampleSpec spec;
  spec.kernel_a = static_cast<double>(m.resample_spec.kernel_a_micro) / 1e6;
  const Frame preview = render_inspection(m, manifest_path.parent_path(), a.clip,
                                          source ? &*source : nullptr, spec);
  write_frame(preview, a.output, FrameFormat::kPpm);
  std::cout << "clip " << a.clip << ": " << m.clips[a.clip].layout->rows << "x"
            << m.clips[a.clip].layout->cols << " aggregate (" << preview.width() << "x"
            << preview.height() << ", " << (source ? "exact tiles" : "upscaled composite")
            << ") -> " << a.output << "\n";
  return 0;
}

template <typename Fn>
double median_seconds(int repeats, Fn fn) {
  std::vector<double> times;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

int cmd_bench(const BenchArgs& a) {
  const FrameSequence seq = a.input.path.empty()
                                ? make_synthetic_sequence(a.frames, a.height, a.width, a.seed)
                                : load_input(a.input);
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "bench input holds no frames");
  const int repeats = std::max(5, a.repeats);
  const unsigned threads = resolve_threads(a.threads);

  CompressOptions options;
  options.sample_target = seq.size();
  options.clip_length = a.clip_len;
  options.patch_size = a.patch;
  options.keep_ratio = a.keep_ratio;

  const double n = static_cast<double>(seq.size());
  std::cout << "bench: " << seq.size() << " frames " << seq.width() << "x" << seq.height()
            << ", " << repeats << " runs, median\n";

  options.threads = 1;
  CompressResult single;
  const double t1 = median_seconds(repeats, [&] { single = compress_sequence(seq, options); });
  options.threads = threads;
  CompressResult multi;
  const double tn = median_seconds(repeats, [&] { multi = compress_sequence(seq, options); });
  bool identical = single.compressed.size() == multi.compressed.size();
  for (std::size_t i = 0; identical && i < single.compressed.size(); ++i) {
    const auto& x = single.compressed[i];
    const auto& y = multi.compressed[i];
    identical = x.anchor.pixels_equal(y.anchor) && x.composite.has_value() == y.composite.has_value() &&
                (!x.composite || x.composite->pixels_equal(*y.composite));
  }
  std::cout << std::fixed << std::setprecision(1);
  std::cout << "astc      threads=1: " << n / t1 << " frames/s\n";
  std::cout << "astc      threads=" << threads << ": " << n / tn << " frames/s (speedup "
            << std::setprecision(2) << t1 / tn << "x)\n" << std::setprecision(1);
  std::cout << "outputs identical across thread counts: " << (identical ? "yes" : "NO") << "\n";

  const bool divisible = seq.height() % a.patch == 0 && seq.width() % a.patch == 0;
  if (divisible) {
    for (Method method : {Method::kAvgPool, Method::kMaxPool, Method::kPrune, Method::kMerge}) {
      options.method = method;
      options.threads = 1;
      BaselineReport r;
      const double t = median_seconds(repeats, [&] { r = run_baseline(seq, options); });
      std::cout << std::left << std::setw(10) << method_name(method) << "threads=1: " << n / t
                << " frames/s, tokens " << r.tokens_reduced << " / " << r.tokens_original << "\n";
    }
  } else {
    std::cout << "baselines skipped: patch " << a.patch << " does not divide the frame size\n";
  }
  return identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svac: anchor-based spatio-temporal compression for long frame sequences"};
  app.require_subcommand(1);
  // Keys are scoped by subcommand: "compress.clip-len=8" or a [compress] section.
  app.set_config("--config", "", "key=value config file; command-line flags override it");
  app.fallthrough();

  CompressArgs compress;
  auto* c = app.add_subcommand("compress", "Compress a frame sequence into anchors + composites");
  add_input_options(c, compress.input, true);
  c->add_option("--output", compress.output, "Output directory")->required();
  c->add_option("--frames", compress.frames, "Uniform sampling target")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--clip-len", compress.clip_len, "Frames per clip (m)")
      ->check(CLI::Range(2, 1 << 20))->capture_default_str();
  c->add_option("--clips-per-token", compress.clips_per_token, "Clips sharing one SEG token")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--patch", compress.patch, "Patch size for token accounting")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--keep-ratio", compress.keep_ratio, "Keep ratio for prune/merge")
      ->check(CLI::Range(1e-9, 1.0))->capture_default_str();
  c->add_option("--kernel-a", compress.kernel_a, "Cubic kernel parameter")->capture_default_str();
  c->add_option("--method", compress.method, "Compressor")
      ->check(CLI::IsMember({"astc", "avg_pool", "max_pool", "prune", "merge"}))
      ->capture_default_str();
  c->add_option("--threads", compress.threads, "Worker threads (0 = auto)")
      ->envname("SVAC_THREADS")->capture_default_str();
  c->add_option("--seed", compress.seed, "Seed (no randomness in compress; recorded only)")
      ->capture_default_str();
  c->add_option("--scores", compress.scores, "Score sidecar for --method prune");

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Print the token budget table and an m sweep");
  p->add_option("--frames", plan.frames, "Frame count T")->check(CLI::PositiveNumber)->capture_default_str();
  p->add_option("--clip-len", plan.clip_len, "Configured clip length m")
      ->check(CLI::Range(2, 1 << 20))->capture_default_str();
  p->add_option("--tokens-per-frame", plan.tokens_per_frame, "Tokens per frame s")
      ->check(CLI::PositiveNumber)->capture_default_str();
  p->add_option("--layers", plan.shape.layers)->check(CLI::PositiveNumber)->capture_default_str();
  p->add_option("--hidden-dim", plan.shape.hidden_dim)->check(CLI::PositiveNumber)->capture_default_str();
  p->add_option("--bytes-per-element", plan.shape.bytes_per_element)
      ->check(CLI::PositiveNumber)->capture_default_str();
  p->add_option("--csv", plan.csv, "Also write the sweep as CSV");

  InspectArgs inspect;
  auto* i = app.add_subcommand("inspect", "Re-emit a clip's pre-resize aggregate with grid lines");
  i->add_option("--manifest", inspect.manifest, "Path to svac_manifest.json")->required();
  i->add_option("--clip", inspect.clip, "Clip index")->required();
  i->add_option("--output", inspect.output, "Output PPM path")->required();
  add_input_options(i, inspect.input, false);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Throughput of compress and the token baselines");
  add_input_options(b, bench.input, false);
  b->add_option("--frames", bench.frames, "Synthetic frame count")->capture_default_str();
  b->add_option("--height", bench.height)->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--width", bench.width)->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--clip-len", bench.clip_len)->check(CLI::Range(2, 1 << 20))->capture_default_str();
  b->add_option("--patch", bench.patch)->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--keep-ratio", bench.keep_ratio)->check(CLI::Range(1e-9, 1.0))->capture_default_str();
  b->add_option("--threads", bench.threads, "Threads for the parallel run (0 = auto)")
      ->envname("SVAC_THREADS")->capture_default_str();
  b->add_option("--repeats", bench.repeats, "Runs per measurement (min 5)")->capture_default_str();
  b->add_option("--seed", bench.seed, "Synthetic generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*c) return cmd_compress(compress);
    if (*p) return cmd_plan(plan);
    if (*i) return cmd_inspect(inspect);
    if (*b) return cmd_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
