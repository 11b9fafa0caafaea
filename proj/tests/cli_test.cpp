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

#include <doctest.h>

#include "cli_runner.hpp"
#include "svac/frame_io.hpp"
#include "svac/manifest.hpp"
#include "svac/pipeline.hpp"
#include "test_util.hpp"

using namespace svac;
using namespace svac::testing;
namespace fs = std::filesystem;

namespace {

std::size_t count_files(const fs::path& dir, const std::string& suffix) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) ++n;
  }
  return n;
}

fs::path write_video(const TempDir& dir, std::size_t frames, int h = 32, int w = 48) {
  const FrameSequence seq = make_synthetic_sequence(frames, h, w, 3);
  const fs::path path = dir / "video.raw";
  write_raw_stream(seq.frames(), path);
  return path;
}

}  // namespace

TEST_CASE("compress with defaults") {
  TempDir dir;
  const fs::path video = write_video(dir, 100);
  const RunResult r = run_cli("compress --input " + video.string() + " --output " + (dir / "out").string());
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  CHECK(count_files(dir / "out", "_anchor.ppm") == 10);
  CHECK(count_files(dir / "out", "_composite.ppm") == 10);
  const Manifest m = read_manifest(dir / "out" / kManifestFileName);
  CHECK(m.clips.size() == 10);
  CHECK(m.run_config.sample_target == 100);
  CHECK(m.run_config.patch_size == 16);
}

TEST_CASE("compress a one-frame input") {
  TempDir dir;
  const fs::path video = write_video(dir, 1);
  const RunResult r = run_cli("compress --input " + video.string() + " --output " + (dir / "out").string());
  REQUIRE(r.exit_code == 0);
  CHECK(count_files(dir / "out", "_anchor.ppm") == 1);
  CHECK(count_files(dir / "out", "_composite.ppm") == 0);
}

TEST_CASE("compress errors use the error prefix") {
  TempDir dir;
  RunResult r = run_cli("compress --input " + (dir / "missing").string() + " --output " + (dir / "o").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error: MissingPath", 0) == 0);

  write_bytes(dir / "bad.raw", "XXXXXXXX" + std::string(12, '\0'));
  r = run_cli("compress --input " + (dir / "bad.raw").string() + " --output " + (dir / "o").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error: MalformedHeader", 0) == 0);

  r = run_cli("compress --input x --output y --clip-len 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error:", 0) == 0);

  fs::create_directories(dir / "empty");
  r = run_cli("compress --input " + (dir / "empty").string() + " --output " + (dir / "o").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error: EmptyInput", 0) == 0);
}

TEST_CASE("ppm directory input, config file and flag precedence") {
  TempDir dir;
  const FrameSequence seq = make_synthetic_sequence(20, 16, 16, 8);
  fs::create_directories(dir / "frames");
  for (std::size_t t = 0; t < seq.size(); ++t) {
    char name[16];
    std::snprintf(name, sizeof name, "%03zu.ppm", t);
    write_frame(seq[t], dir / "frames" / name, FrameFormat::kPpm);
  }
  write_bytes(dir / "run.cfg", "# run settings\ncompress.clip-len=5\n[compress]\nclips-per-token=2\n");

  RunResult r = run_cli("compress --config " + (dir / "run.cfg").string() + " --input " +
                        (dir / "frames").string() + " --format ppm_dir --output " + (dir / "a").string());
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  Manifest m = read_manifest(dir / "a" / kManifestFileName);
  CHECK(m.clip_length == 5);
  CHECK(m.clips.size() == 4);
  CHECK(m.seg_allocation.num_tokens == 2);

  r = run_cli("compress --config " + (dir / "run.cfg").string() + " --clip-len 10 --input " +
              (dir / "frames").string() + " --output " + (dir / "b").string());
  REQUIRE(r.exit_code == 0);
  m = read_manifest(dir / "b" / kManifestFileName);
  CHECK(m.clip_length == 10);
  CHECK(m.clips.size() == 2);
}

TEST_CASE("thread count from the environment") {
  TempDir dir;
  const fs::path video = write_video(dir, 30);
  RunResult r = run_cli("compress --input " + video.string() + " --output " + (dir / "o").string(),
                        "SVAC_THREADS=3");
  CHECK(r.exit_code == 0);
  r = run_cli("compress --input " + video.string() + " --output " + (dir / "o").string(),
              "SVAC_THREADS=abc");
  CHECK(r.exit_code == 1);
}

TEST_CASE("baseline methods write a report") {
  TempDir dir;
  const fs::path video = write_video(dir, 10, 32, 64);
  for (const char* method : {"avg_pool", "max_pool", "prune", "merge"}) {
    const RunResult r = run_cli("compress --input " + video.string() + " --output " + (dir / method).string() +
                                " --method " + method + " --patch 4");
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    const std::string report = read_bytes(dir / method / "baseline_report.json");
    CHECK(report.find("\"tokens_original\": 1280") != std::string::npos);
    CHECK(report.find("\"tokens_reduced\": 320") != std::string::npos);
  }
  const RunResult bad = run_cli("compress --input " + video.string() + " --output " + (dir / "x").string() +
                                " --method avg_pool --patch 5");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.rfind("error: NonDivisibleDimensions", 0) == 0);
}

TEST_CASE("plan table and csv") {
  TempDir dir;
  const RunResult r = run_cli("plan --csv " + (dir / "plan.csv").string());
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("20% 1/5") != std::string::npos);
  CHECK(r.output.find("25% 1/4") != std::string::npos);
  CHECK(r.output.find("100% 1/1") != std::string::npos);
  const std::string csv = read_bytes(dir / "plan.csv");
  CHECK(csv.rfind("m,tokens_original,tokens_reduced,ratio,flops_ratio,kv_ratio\n", 0) == 0);
  CHECK(csv.find("\n10,25600,5120,0.2,0.04,0.2\n") != std::string::npos);
  CHECK(csv.find("\n8,25600,6656,0.25,") != std::string::npos);
  CHECK(csv.find("\n2,25600,25600,1,1,1\n") != std::string::npos);
}

TEST_CASE("inspect") {
  TempDir dir;
  const fs::path video = write_video(dir, 21);
  REQUIRE(run_cli("compress --input " + video.string() + " --output " + (dir / "o").string()).exit_code == 0);
  const std::string manifest = (dir / "o" / kManifestFileName).string();

  RunResult r = run_cli("inspect --manifest " + manifest + " --clip 1 --output " + (dir / "p.ppm").string());
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(read_ppm(dir / "p.ppm").height() == 96);

  r = run_cli("inspect --manifest " + manifest + " --clip 1 --input " + video.string() + " --output " +
              (dir / "q.ppm").string());
  CHECK(r.exit_code == 0);
  const FrameSequence seq = load_sequence(video, SequenceFormat::kRawStream);
  CHECK(read_ppm(dir / "q.ppm").at(5, 5, 0) == seq[11].at(5, 5, 0));

  r = run_cli("inspect --manifest " + manifest + " --clip 3 --output " + (dir / "r.ppm").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error: IndexOutOfRange", 0) == 0);

  r = run_cli("inspect --manifest " + manifest + " --clip 2 --output " + (dir / "r.ppm").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error: NoComposite", 0) == 0);
}

TEST_CASE("bench") {
  RunResult r = run_cli("bench --frames 20 --height 32 --width 32 --threads 4");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("outputs identical across thread counts: yes") != std::string::npos);
  CHECK(r.output.find("merge") != std::string::npos);

  r = run_cli("bench --frames 0");
  CHECK(r.exit_code == 1);
  CHECK(r.output.rfind("error: EmptyInput", 0) == 0);

  TempDir dir;
  fs::create_directories(dir / "empty");
  r = run_cli("bench --input " + (dir / "empty").string());
  CHECK(r.exit_code == 1);
}
