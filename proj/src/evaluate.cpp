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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "splut/errors.hpp"
#include "splut/metrics.hpp"
#include "splut/png_io.hpp"

namespace fs = std::filesystem;

namespace splut {

EvalReport evaluate_dataset(const fs::path& lr_dir, const fs::path& hr_dir, const LutContainer& container,
                            ChannelMode mode, int crop, ExecConfig cfg) {
  if (!fs::is_directory(lr_dir)) throw IoError("not a directory: " + lr_dir.string());
  if (!fs::is_directory(hr_dir)) throw IoError("not a directory: " + hr_dir.string());
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(lr_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".png") inputs.push_back(entry.path());
  if (inputs.empty()) throw IoError("no PNG files in " + lr_dir.string());
  std::sort(inputs.begin(), inputs.end());

  EvalReport report;
  report.dataset = fs::absolute(hr_dir).lexically_normal().filename().string();
  if (report.dataset.empty()) report.dataset = fs::absolute(hr_dir).parent_path().filename().string();
  report.variant = container.topology.name;
  report.mode = mode;
  report.crop = crop;
  report.images.resize(inputs.size());

  const int s = container.topology.scale;
  ExecConfig inner = cfg;
  inner.threads = 1;
  const int64_t n = static_cast<int64_t>(inputs.size());
#pragma omp parallel for num_threads(std::max(1, cfg.threads)) schedule(dynamic)
  for (int64_t i = 0; i < n; ++i) {
    ImageScore& score = report.images[i];
    score.name = inputs[i].filename().string();
    try {
      const fs::path hr_path = hr_dir / inputs[i].filename();
      if (!fs::exists(hr_path)) throw IoError("no matching HR file");
      const Rgb8Image lr = read_png(inputs[i]);
      const Rgb8Image hr = read_png(hr_path);
      if (hr.width() != lr.width() * s || hr.height() != lr.height() * s)
        throw UsageError("HR dimensions are not " + std::to_string(s) + "x the LR dimensions");
      const Rgb8Image sr = super_resolve(lr, container, inner);
      score.psnr = psnr(sr, hr, mode, crop);
      score.ssim = ssim(sr, hr, mode, crop);
    } catch (const std::exception& e) {
      score.error = e.what();
    }
  }

  double psnr_sum = 0.0, ssim_sum = 0.0;
  for (const auto& score : report.images) {
    if (!score.error.empty()) continue;
    psnr_sum += score.psnr;
    ssim_sum += score.ssim;
    ++report.scored;
  }
  if (report.scored > 0) {
    report.mean_psnr = psnr_sum / report.scored;
    report.mean_ssim = ssim_sum / report.scored;
  }
  return report;
}

std::string format_report_table(const EvalReport& r) {
  std::ostringstream out;
  char line[256];
  out << "dataset " << r.dataset << "  variant " << r.variant << "  mode " << to_string(r.mode) << "  crop "
      << r.crop << "\n";
  std::snprintf(line, sizeof line, "%-32s %10s %8s\n", "image", "PSNR(dB)", "SSIM");
  out << line;
  for (const auto& s : r.images) {
    if (!s.error.empty()) {
      std::snprintf(line, sizeof line, "%-32s error: %s\n", s.name.c_str(), s.error.c_str());
    } else {
      std::snprintf(line, sizeof line, "%-32s %10s %8.4f\n", s.name.c_str(), format_psnr(s.psnr).c_str(), s.ssim);
    }
    out << line;
  }
  std::snprintf(line, sizeof line, "%-32s %10s %8.4f  (%d scored)\n", "mean", format_psnr(r.mean_psnr).c_str(),
                r.mean_ssim, r.scored);
  out << line;
  return out.str();
}

std::string format_report_records(const EvalReport& r) {
  std::ostringstream out;
  for (const auto& s : r.images) {
    nlohmann::json rec;
    rec["name"] = s.name;
    if (!s.error.empty()) {
      rec["error"] = s.error;
    } else {
      if (std::isinf(s.psnr))
        rec["psnr"] = "inf";
      else
        rec["psnr"] = s.psnr;
      rec["ssim"] = s.ssim;
    }
    out << rec.dump() << "\n";
  }
  return out.str();
}

}  // namespace splut
