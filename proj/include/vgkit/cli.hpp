#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vgkit/io.hpp"
#include "vgkit/records.hpp"

// CLI subcommands as plain functions over option structs so they can be
// driven from main() and from tests alike. Each returns a process exit
// code: 0 success, 1 usage error, 2 data error.

namespace vgkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct TtaMergeOptions {
  std::string predictions;
  std::string out;
  Frame frame = Frame::augmented;  // frame of rows that do not declare one
  ParseMode mode = ParseMode::strict;
  int workers = 1;
};
int cmd_tta_merge(const TtaMergeOptions& opt);

struct EvaluateOptions {
  std::string predictions;
  std::string truth;
  std::string report;  // JSON report path; empty writes no file
  ParseMode mode = ParseMode::strict;
  int workers = 1;
};
int cmd_evaluate(const EvaluateOptions& opt);

struct ConvertGqaOptions {
  std::string scene_graphs;
  std::string questions;
  std::string out;
  std::string val_out;  // derived from `out` when empty
  std::size_t val_count = 0;
  std::uint64_t seed = 0;
};
int cmd_convert_gqa(const ConvertGqaOptions& opt);

struct GenMasksOptions {
  std::string truth;
  std::string out_dir;
  std::vector<int> strides{8, 16, 32};
  ParseMode mode = ParseMode::strict;
};
int cmd_gen_masks(const GenMasksOptions& opt);

struct AugmentOptions {
  std::string dataset;
  std::string out;
  double p = 0.5;
  std::uint64_t seed = 0;
  ParseMode mode = ParseMode::strict;
};
int cmd_augment(const AugmentOptions& opt);

struct TtaSpecsOptions {
  int width = 0;
  int height = 0;
  std::vector<int> scales{kDefaultTtaScales.begin(), kDefaultTtaScales.end()};
  int long_cap = kDefaultTtaLongCap;
  bool flip = true;
  std::string out;  // empty prints to stdout
};
int cmd_tta_specs(const TtaSpecsOptions& opt);

/// Parses argv and dispatches to the subcommands.
int run(int argc, char** argv);

}  // namespace vgkit::cli
