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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "splut/container.hpp"
#include "splut/engine.hpp"
#include "splut/image.hpp"

namespace splut {

enum class ChannelMode { y, rgb };

const char* to_string(ChannelMode mode);
ChannelMode parse_channel_mode(const std::string& s);

// BT.601 luma, 16 + (65.738 R + 129.057 G + 25.064 B) / 256, unrounded.
double luma(uint8_t r, uint8_t g, uint8_t b);

// 10 log10(255^2 / MSE) over the image minus `crop` border pixels; +inf for identical inputs.
double psnr(const Rgb8Image& a, const Rgb8Image& b, ChannelMode mode = ChannelMode::y, int crop = 0);

// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 0.01, K2 0.03,
// mean over valid window positions. RGB mode averages the three channels.
double ssim(const Rgb8Image& a, const Rgb8Image& b, ChannelMode mode = ChannelMode::y, int crop = 0);

struct ImageScore {
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
  std::string error;  // non-empty when the pair could not be scored
};

struct EvalReport {
  std::string dataset;
  std::string variant;
  ChannelMode mode = ChannelMode::y;
  int crop = 0;
  std::vector<ImageScore> images;
  double mean_psnr = 0.0;
  double mean_ssim = 0.0;
  int scored = 0;
};

// Super-resolves every LR PNG and scores it against the HR PNG of the same
// file name. Per-file problems are recorded in the report; an LR directory
// without PNGs throws IoError.
EvalReport evaluate_dataset(const std::filesystem::path& lr_dir, const std::filesystem::path& hr_dir,
                            const LutContainer& container, ChannelMode mode = ChannelMode::y, int crop = 4,
                            ExecConfig cfg = {});

std::string format_psnr(double db);
std::string format_report_table(const EvalReport& report);
// One JSON object per line: {"name", "psnr", "ssim"} (or "error").
std::string format_report_records(const EvalReport& report);

}  // namespace splut
