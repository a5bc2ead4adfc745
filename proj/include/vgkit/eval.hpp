#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vgkit/dataset.hpp"
#include "vgkit/geometry.hpp"
#include "vgkit/io.hpp"

namespace vgkit {

/// One scored prediction: a final box for a sample.
struct PredictionEntry {
  std::string sample_id;
  Box box;
};

struct EvalReport {
  double mean_iou = 0.0;
  // one entry per ground-truth sample, sorted by sample_id; missing
  // predictions appear with IoU 0
  std::vector<std::pair<std::string, double>> per_sample;
  std::size_t matched = 0;
  std::vector<std::string> missing_predictions;  // sorted
  std::vector<std::string> extra_predictions;    // sorted
};

struct EvalOptions {
  ParseMode mode = ParseMode::strict;
  int workers = 1;
};

struct EvalOutcome {
  EvalReport report;
  std::vector<Warning> warnings;
};

/// Scores predictions against ground truth with the mean-IoU metric.
/// Predictions are clipped to the truth's image bounds before scoring.
/// The mean runs over ground-truth samples; missing predictions score 0,
/// extra predictions are listed but never enter the mean.
EvalOutcome evaluate(const std::vector<PredictionEntry>& predictions,
                     const std::vector<GroundingInstance>& truths,
                     const EvalOptions& options = {});

struct DeltaSummary {
  // per-sample IoU delta (b - a), sorted by sample_id
  std::vector<std::pair<std::string, double>> per_sample;
  double mean_delta = 0.0;
  std::size_t improved = 0;
  std::size_t regressed = 0;
  std::size_t unchanged = 0;
};

/// Per-sample deltas between two reports over the same ground-truth set.
/// Throws SampleSetMismatchError when the sample sets differ.
DeltaSummary compare_reports(const EvalReport& a, const EvalReport& b);

/// Canonical JSON serialization of a report.
std::string report_to_json(const EvalReport& report);

/// Fixed-width human-readable summary.
std::string report_summary(const EvalReport& report);

}  // namespace vgkit
