#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vgkit/geometry.hpp"
#include "vgkit/io.hpp"

namespace vgkit {

/// The coordinate frame a prediction row is expressed in.
enum class Frame { augmented, original };

std::string to_string(Frame frame);
Frame frame_from_string(const std::string& s);

/// Default multi-scale test configuration: shorter side targets with a
/// shared long-side cap, each scale with and without horizontal flip.
inline constexpr std::array<int, 3> kDefaultTtaScales{600, 800, 1000};
inline constexpr int kDefaultTtaLongCap = 1333;

/// One row of a prediction file.
struct PredictionRecord {
  std::string sample_id;
  Box box;
  double score = 0.0;
  std::optional<AugmentationSpec> aug;  // required when frame == augmented
  std::optional<Frame> frame;           // absent rows inherit the reader's default
  // provenance fields present on merged outputs
  std::optional<std::size_t> winner_index;
  std::optional<double> corrected_score;
};

/// Serializes one record as a canonical JSONL line (no trailing newline).
std::string to_jsonl(const PredictionRecord& r);

/// Parses one JSONL line. `line` is used in error messages.
PredictionRecord prediction_from_jsonl(const std::string& text, long line = 0);

struct PredictionFile {
  std::vector<PredictionRecord> rows;
  std::vector<long> lines;  // 1-based source line of each row
  std::vector<Warning> warnings;
};

/// Reads a prediction JSONL file. Blank lines are ignored.
PredictionFile load_predictions(const std::string& path, ParseMode mode = ParseMode::strict);

void save_predictions(const std::string& path, const std::vector<PredictionRecord>& rows);

}  // namespace vgkit
