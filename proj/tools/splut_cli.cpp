/* Copyright 2026 The SPLUT Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
=============================================================================*/

// splut: build, run, evaluate, benchmark and verify SPLUT lookup-table models.
//
// Exit codes
//   0  success
//   1  verification mismatch
//   2  usage or validation error
//   3  malformed weight or container file
//   4  file system or image I/O error
//   5  internal error
// Failures print exactly one line to stderr: "error[<class>]: <message>".

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "splut/bench.hpp"
#include "splut/container.hpp"
#include "splut/engine.hpp"
#include "splut/errors.hpp"
#include "splut/metrics.hpp"
#include "splut/png_io.hpp"
#include "splut/reference.hpp"
#include "splut/weights.hpp"

using namespace splut;

namespace {

enum ExitCode { kOk = 0, kMismatch = 1, kUsage = 2, kParse = 3, kIo = 4, kInternal = 5 };

int fail(const char* cls, const std::string& msg, int code) {
  std::string line = msg;
  for (char& ch : line)
    if (ch == '\n' || ch == '\r') ch = ' ';
  std::fprintf(stderr, "error[%s]: %s\n", cls, line.c_str());
  return code;
}

int default_threads() {
  if (const char* env = std::getenv("SPLUT_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("SPLUT_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

std::pair<int, int> parse_size(const std::string& s) {
  int w = 0, h = 0;
  char sep = 0, extra = 0;
  if (std::sscanf(s.c_str(), "%d%c%d%c", &w, &sep, &h, &extra) != 3 || (sep != 'x' && sep != 'X') || w < 1 || h < 1)
    throw UsageError("size must look like WxH, got '" + s + "'");
  return {w, h};
}

SkipFlags parse_skips(const std::string& s) {
  if (s.size() != 3 || s.find_first_not_of("01") != std::string::npos)
    throw UsageError("skips must be three 0/1 digits (sc1 sc2 sc3), got '" + s + "'");
  return {s[0] == '1', s[1] == '1', s[2] == '1'};
}

std::string scale_text(int e) { return e == 0 ? "1" : "2^" + std::to_string(e); }

void print_summary(const LutContainer& c) {
  std::printf("variant %s  v_f %d  tables %zu\n", c.topology.name.c_str(), c.topology.query_bins,
              2 * c.topology.table_shapes().size());
  const char* names[2] = {"msb", "lsb"};
  for (int b = 0; b < 2; ++b)
    for (int s = 0; s < c.topology.stage_count(); ++s)
      for (size_t k = 0; k < c.tables[b][s].size(); ++k) {
        const auto& t = c.tables[b][s][k];
        std::printf("  %s stage %d slot %zu  %s  V=%d  out=%d  scale=%s  bytes=%zu\n", names[b], s, k,
                    to_string(t.kind()), t.bins(), t.out_channels(), scale_text(t.scale_exp()).c_str(),
                    t.entries().size());
      }
  std::printf("payload_bytes %llu\n", static_cast<unsigned long long>(c.payload_size()));
}

struct Options {
  int threads = 1;
  std::string weights, luts, out, input, output, lr_dir, hr_dir, records;
  std::string mode = "Y", size = "320x180", variant = "M", skips = "111";
  int crop = 4, iters = 10, images = 10, vf = 16;
  uint64_t seed = 1;
  std::string verify_size = "24x20";
};

int cmd_build_luts(const Options& o) {
  const WeightSet w = load_weights(o.weights);
  const LutContainer c = build_container(w, o.threads);
  save_container(o.out, c);
  print_summary(c);
  return kOk;
}

int cmd_sr(const Options& o) {
  const LutContainer c = load_container(o.luts);
  const Rgb8Image lr = read_png(o.input);
  const Rgb8Image sr = super_resolve(lr, c, {Backend::parallel, o.threads});
  write_png(o.output, sr);
  std::printf("%dx%d -> %dx%d\n", lr.width(), lr.height(), sr.width(), sr.height());
  return kOk;
}

int cmd_eval(const Options& o) {
  const LutContainer c = load_container(o.luts);
  const EvalReport r =
      evaluate_dataset(o.lr_dir, o.hr_dir, c, parse_channel_mode(o.mode), o.crop, {Backend::parallel, o.threads});
  std::fputs(format_report_table(r).c_str(), stdout);
  const std::string records = format_report_records(r);
  if (o.records.empty()) {
    std::fputs(records.c_str(), stdout);
  } else {
    const std::span<const uint8_t> bytes(reinterpret_cast<const uint8_t*>(records.data()), records.size());
    write_file(o.records, bytes);
  }
  return r.scored == static_cast<int>(r.images.size()) ? kOk : fail("io", "some images could not be scored", kIo);
}

int cmd_bench(const Options& o) {
  const auto [w, h] = parse_size(o.size);
  const LutContainer c = load_container(o.luts);
  const BenchResult r = bench_engine(c, w, h, o.iters, {Backend::parallel, o.threads});
  std::printf("variant %s  size %dx%d -> %dx%d  threads %d%s\n", c.topology.name.c_str(), w, h, w * 4, h * 4,
              r.threads, r.single_threaded ? " (single-threaded)" : "");
  std::printf("samples_ms");
  for (double s : r.samples_ms) std::printf(" %.3f", s);
  std::printf("\nmedian_ms %.3f\nmin_ms %.3f\n", r.median_ms, r.min_ms);
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto [w, h] = parse_size(o.verify_size);
  const WeightSet weights = load_weights(o.weights);
  const LutContainer c = load_container(o.luts);
  if (!(weights.topology == c.topology))
    throw UsageError("topology mismatch: weights are " + weights.topology.name + " v_f " +
                     std::to_string(weights.topology.query_bins) + ", container is " + c.topology.name + " v_f " +
                     std::to_string(c.topology.query_bins));
  for (int i = 0; i < o.images; ++i) {
    const Rgb8Image img = random_image(w, h, o.seed + static_cast<uint64_t>(i));
    const Rgb8Image got = super_resolve(img, c, {Backend::parallel, o.threads});
    const Rgb8Image want = reference_pipeline(img, weights);
    for (int y = 0; y < got.height(); ++y)
      for (int x = 0; x < got.width(); ++x)
        for (int ch = 0; ch < 3; ++ch)
          if (got.at(x, y, ch) != want.at(x, y, ch)) {
            std::printf("FAIL image %d pixel (%d, %d) channel %d: engine %d reference %d\n", i, x, y, ch,
                        got.at(x, y, ch), want.at(x, y, ch));
            return fail("mismatch",
                        "image " + std::to_string(i) + " differs at (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")",
                        kMismatch);
          }
  }
  std::printf("PASS %d images bit-exact\n", o.images);
  return kOk;
}

int cmd_init_random(const Options& o) {
  const ModelTopology topo = builtin_topology(o.variant, o.vf, parse_skips(o.skips));
  const WeightSet w = random_weights(topo, o.seed);
  save_weights(o.out, w);
  std::printf("%s v_f %d seed %llu: %zu modules\n", topo.name.c_str(), topo.query_bins,
              static_cast<unsigned long long>(o.seed), w.module_count());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"SPLUT series-parallel lookup-table x4 super-resolution"};
  app.require_subcommand(1);
  try {
    o.threads = default_threads();
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kUsage);
  }
  auto threads = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "worker threads (default $SPLUT_THREADS or 1)")->check(CLI::PositiveNumber);
  };

  auto* build = app.add_subcommand("build-luts", "transfer a weight file into a LUT container");
  build->add_option("--weights", o.weights)->required();
  build->add_option("--out", o.out)->required();
  threads(build);

  auto* sr = app.add_subcommand("sr", "super-resolve one PNG by 4x");
  sr->add_option("--luts", o.luts)->required();
  sr->add_option("--input", o.input)->required();
  sr->add_option("--output", o.output)->required();
  threads(sr);

  auto* eval = app.add_subcommand("eval", "score a dataset of LR/HR PNG pairs");
  eval->add_option("--luts", o.luts)->required();
  eval->add_option("--lr-dir", o.lr_dir)->required();
  eval->add_option("--hr-dir", o.hr_dir)->required();
  eval->add_option("--mode", o.mode, "Y or RGB")->capture_default_str();
  eval->add_option("--crop", o.crop, "border pixels ignored")->capture_default_str()->check(CLI::NonNegativeNumber);
  eval->add_option("--records", o.records, "write JSON lines here instead of stdout");
  threads(eval);

  auto* bench = app.add_subcommand("bench", "time super-resolution on a random image");
  bench->add_option("--luts", o.luts)->required();
  bench->add_option("--size", o.size, "LR size WxH")->capture_default_str();
  bench->add_option("--iters", o.iters)->capture_default_str()->check(CLI::Range(3, 100000));
  threads(bench);

  auto* verify = app.add_subcommand("verify", "check a container against the scalar reference");
  verify->add_option("--weights", o.weights)->required();
  verify->add_option("--luts", o.luts)->required();
  verify->add_option("--images", o.images)->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed)->capture_default_str();
  verify->add_option("--size", o.verify_size, "LR size WxH")->capture_default_str();
  threads(verify);

  auto* init = app.add_subcommand("init-random", "write deterministic random weights");
  init->add_option("--variant", o.variant, "S, M, L, 1-2 or 1-4")->capture_default_str();
  init->add_option("--vf", o.vf, "query bins: 8, 12, 16, 20 or 24")->capture_default_str();
  init->add_option("--seed", o.seed)->capture_default_str();
  init->add_option("--skips", o.skips, "sc1 sc2 sc3 as 0/1 digits")->capture_default_str();
  init->add_option("--out", o.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kUsage);
  }

  try {
    if (*build) return cmd_build_luts(o);
    if (*sr) return cmd_sr(o);
    if (*eval) return cmd_eval(o);
    if (*bench) return cmd_bench(o);
    if (*verify) return cmd_verify(o);
    if (*init) return cmd_init_random(o);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kUsage);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), kParse);
  } catch (const IoError& e) {
    return fail("io", e.what(), kIo);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInternal);
  }
  return kUsage;
}
