// Copyright 2026 The ITIC Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// itic: encode, decode, metrics and RD sweeps for the ITIC codec.
//
// Exit codes: 0 ok, 1 I/O, 2 invalid arguments, 3 codec error,
// 4 corrupt stream.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "itic/codec.h"
#include "itic/error.h"
#include "itic/image_io.h"
#include "itic/metrics.h"
#include "itic/weights.h"

namespace fs = std::filesystem;

namespace {

int ExitCode(itic::ErrorCode code) {
  switch (code) {
    case itic::ErrorCode::kIo:
      return 1;
    case itic::ErrorCode::kInvalidArgument:
      return 2;
    case itic::ErrorCode::kCodec:
      return 3;
    case itic::ErrorCode::kCorruptStream:
      return 4;
  }
  return 3;
}

void WriteFile(const fs::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) itic::ThrowIo("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) itic::ThrowIo("write failed: " + path.string());
}

// "identity", "seed:<u64>" or "file:<path>".
std::unique_ptr<itic::WeightProfile> ParseProfile(const std::string& arg) {
  if (arg == "identity") {
    return std::make_unique<itic::WeightProfile>(
        itic::WeightProfile::Identity());
  }
  if (arg.rfind("seed:", 0) == 0) {
    const std::string digits = arg.substr(5);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
      itic::ThrowInvalid("bad seed in --profile " + arg);
    }
    errno = 0;
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(digits.c_str(), &end, 10);
    if (errno == ERANGE) itic::ThrowInvalid("seed out of range: " + digits);
    return std::make_unique<itic::WeightProfile>(
        itic::WeightProfile::Seeded(seed));
  }
  if (arg.rfind("file:", 0) == 0 && arg.size() > 5) {
    return std::make_unique<itic::WeightProfile>(
        itic::WeightProfile::FromFile(arg.substr(5)));
  }
  itic::ThrowInvalid("--profile must be identity, seed:<u64> or file:<path>");
}

void CheckN(size_t n) {
  if (n == 0 || itic::kLatentChannels % n != 0) {
    itic::ThrowInvalid("--n " + std::to_string(n) + " does not divide 768");
  }
  if (!itic::IsSupportedSqueeze(static_cast<uint32_t>(n))) {
    itic::ThrowInvalid("--n " + std::to_string(n) +
                       " is not one of 16, 32, 128, 768");
  }
}

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

size_t WorkerCount(size_t jobs) {
  size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ITIC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<size_t>(v);
  }
  return std::max<size_t>(1, std::min(n, jobs));
}

bool IsImageFile(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".ppm";
}

struct EncodeArgs {
  std::string input, output, profile = "identity";
  size_t n = 128;
  bool no_bdct = false, pixel_shuffle = false;
};

int RunEncode(const EncodeArgs& a) {
  CheckN(a.n);
  const auto profile = ParseProfile(a.profile);
  itic::CodecConfig cfg;
  cfg.n = a.n;
  cfg.profile = profile.get();
  cfg.bdct = !a.no_bdct;
  cfg.mode = a.pixel_shuffle ? itic::DownscaleMode::kPixelShuffle
                             : itic::DownscaleMode::kHaar;
  auto [image, meta] = itic::LoadImage(a.input);
  const std::vector<uint8_t> bytes = itic::Encode(image, cfg);
  WriteFile(a.output, bytes);
  std::printf("%.6f bpp (%zu bytes)\n", itic::MeasuredBpp(bytes.size(), meta),
              bytes.size());
  return 0;
}

struct DecodeArgs {
  std::string input, output, weights;
};

int RunDecode(const DecodeArgs& a) {
  std::optional<itic::WeightProfile> weights;
  if (!a.weights.empty()) weights = itic::WeightProfile::FromFile(a.weights);
  const std::vector<uint8_t> bytes = itic::ReadBinaryFile(a.input);
  itic::DecodeOptions opts;
  if (weights) opts.weights = &*weights;
  const itic::Tensor image = itic::Decode(bytes, opts);
  itic::SaveImage(a.output, image);
  return 0;
}

struct CurveArgs {
  std::string dir, output, profile = "identity";
  std::vector<size_t> n_list;
  std::vector<double> lambda_list;
  bool no_bdct = false, pixel_shuffle = false, no_timing = false;
};

struct CurveRow {
  itic::RdPoint point;
  double wall_ms = 0.0;
};

int RunRdCurve(const CurveArgs& a) {
  if (a.n_list.empty() || a.n_list.size() != a.lambda_list.size()) {
    itic::ThrowInvalid("--n-list and --lambda-list must have equal length");
  }
  for (size_t n : a.n_list) CheckN(n);
  for (double l : a.lambda_list) {
    if (!(l > 0.0)) itic::ThrowInvalid("lambda must be positive");
  }
  std::error_code ec;
  if (!fs::is_directory(a.dir, ec)) itic::ThrowIo("not a directory: " + a.dir);
  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && IsImageFile(entry.path())) {
      images.push_back(entry.path());
    }
  }
  if (images.empty()) itic::ThrowInvalid("no .png/.ppm images in " + a.dir);
  std::sort(images.begin(), images.end(),
            [](const fs::path& x, const fs::path& y) {
              return x.filename().string() < y.filename().string();
            });

  const auto profile = ParseProfile(a.profile);
  const size_t settings = a.n_list.size();
  std::vector<CurveRow> rows(images.size() * settings);
  std::vector<std::exception_ptr> errors(images.size());
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (size_t i = next++; i < images.size(); i = next++) {
      try {
        auto [image, meta] = itic::LoadImage(images[i]);
        for (size_t s = 0; s < settings; ++s) {
          itic::CodecConfig cfg;
          cfg.n = a.n_list[s];
          cfg.lambda = a.lambda_list[s];
          cfg.profile = profile.get();
          cfg.bdct = !a.no_bdct;
          cfg.mode = a.pixel_shuffle ? itic::DownscaleMode::kPixelShuffle
                                     : itic::DownscaleMode::kHaar;
          const auto t0 = std::chrono::steady_clock::now();
          CurveRow& row = rows[i * settings + s];
          row.point = itic::RoundtripReport(image, cfg);
          row.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t workers = WorkerCount(images.size());
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ofstream out(a.output, std::ios::trunc);
  if (!out) itic::ThrowIo("cannot open " + a.output + " for writing");
  out << "image,N,lambda,bpp,psnr_db,ms_ssim,msssim_db,rd_score,wall_ms\n";
  for (size_t i = 0; i < images.size(); ++i) {
    for (size_t s = 0; s < settings; ++s) {
      const CurveRow& r = rows[i * settings + s];
      const itic::RdPoint& p = r.point;
      out << images[i].stem().string() << ',' << p.n << ',' << Fmt(p.lambda)
          << ',' << Fmt(p.bpp) << ',' << Fmt(p.psnr_db) << ','
          << Fmt(p.ms_ssim) << ',' << Fmt(p.msssim_db) << ','
          << Fmt(p.rd_score) << ',' << (a.no_timing ? "0" : Fmt(r.wall_ms))
          << '\n';
    }
  }
  if (!out) itic::ThrowIo("write failed: " + a.output);
  std::printf("%zu rows written to %s\n", rows.size(), a.output.c_str());
  return 0;
}

int RunMetrics(const std::string& a_path, const std::string& b_path) {
  auto [a, meta_a] = itic::LoadImage(a_path);
  auto [b, meta_b] = itic::LoadImage(b_path);
  if (!a.SameShape(b)) itic::ThrowInvalid("images differ in size");
  const double psnr = itic::Psnr(a, b);
  std::printf("psnr_db %.6g\n", psnr);
  if (std::min(a.height(), a.width()) >= itic::kMsSsimMinSide) {
    const double v = std::clamp(itic::MsSsim(a, b), 0.0, 1.0);
    std::printf("ms_ssim %.6g\nmsssim_db %.6g\n", v, itic::MsSsimDb(v));
  } else {
    std::printf("ms_ssim n/a (min side < %zu)\n", itic::kMsSsimMinSide);
  }
  return 0;
}

int RunExportWeights(const std::string& profile_spec,
                     const std::string& output) {
  const auto profile = ParseProfile(profile_spec);
  WriteFile(output, profile->Serialize());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ITIC invertible-transform image codec"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Compress a PNG/PPM image");
  encode->add_option("input", enc.input, "Input image")->required();
  encode->add_option("-o,--output", enc.output, "Output .itic file")
      ->required();
  encode->add_option("--n", enc.n, "Latent channels: 16, 32, 128 or 768");
  encode->add_option("--profile", enc.profile,
                     "identity | seed:<u64> | file:<path>");
  encode->add_flag("--no-bdct", enc.no_bdct, "Skip the block DCT layer");
  encode->add_flag("--pixel-shuffle", enc.pixel_shuffle,
                   "Downscale by pixel shuffle instead of Haar");

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Decompress an .itic stream");
  decode->add_option("input", dec.input, "Input .itic file")->required();
  decode->add_option("-o,--output", dec.output, "Output PNG/PPM")->required();
  decode->add_option("--weights", dec.weights,
                     "Weights file for streams coded with file:<path>");

  CurveArgs curve;
  auto* rd = app.add_subcommand("rd-curve", "Sweep a directory of images");
  rd->add_option("dir", curve.dir, "Image directory")->required();
  rd->add_option("--n-list", curve.n_list, "Comma-separated N values")
      ->delimiter(',')
      ->required();
  rd->add_option("--lambda-list", curve.lambda_list,
                 "Comma-separated lambda labels, one per N")
      ->delimiter(',')
      ->required();
  rd->add_option("-o,--output", curve.output, "Output CSV")->required();
  rd->add_option("--profile", curve.profile,
                 "identity | seed:<u64> | file:<path>");
  rd->add_flag("--no-bdct", curve.no_bdct, "Skip the block DCT layer");
  rd->add_flag("--pixel-shuffle", curve.pixel_shuffle,
               "Downscale by pixel shuffle instead of Haar");
  rd->add_flag("--no-timing", curve.no_timing,
               "Write 0 for wall_ms so reruns are byte-identical");

  std::string metric_a, metric_b;
  auto* metrics = app.add_subcommand("metrics", "PSNR and MS-SSIM of a pair");
  metrics->add_option("reference", metric_a, "Reference image")->required();
  metrics->add_option("distorted", metric_b, "Distorted image")->required();

  std::string export_profile, export_output;
  auto* export_weights = app.add_subcommand(
      "export-weights", "Write a profile in the weights file format");
  export_weights->add_option("--profile", export_profile, "seed:<u64> etc.")
      ->required();
  export_weights->add_option("-o,--output", export_output, "Output file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*encode) return RunEncode(enc);
    if (*decode) return RunDecode(dec);
    if (*rd) return RunRdCurve(curve);
    if (*metrics) return RunMetrics(metric_a, metric_b);
    if (*export_weights) return RunExportWeights(export_profile, export_output);
  } catch (const itic::Error& e) {
    std::fprintf(stderr, "itic: %s\n", e.what());
    return ExitCode(e.code());
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "itic: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "itic: %s\n", e.what());
    return 3;
  }
  return 2;
}
