#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vgkit/geometry.hpp"

namespace vgkit {

/// One top-1 detector output, already de-transformed into the original
/// image frame. `source` records the augmentation it was produced under.
struct Prediction {
  Box box;
  double score = 0.0;  // [0,1]
  AugmentationSpec source;
};

/// All candidates for one sample, in ingestion order, in one coordinate frame.
struct CandidateSet {
  std::string sample_id;
  std::vector<Prediction> predictions;
};

struct TtaResult {
  Box final_box;
  double final_score = 0.0;  // raw score of the winner, not the corrected one
  std::size_t winner_index = 0;
  std::vector<double> corrected_scores;
};

/// Mean IoU of each candidate box against all candidate boxes, the self-IoU
/// term included. Entry i is (1/n) * sum_j iou(box_i, box_j).
std::vector<double> consensus_scores(const CandidateSet& candidates);

/// Consensus-corrected selection: corrected = score + consensus, winner is
/// the argmax (first occurrence on ties). Throws EmptyCandidatesError on an
/// empty set.
TtaResult tta_select(const CandidateSet& candidates);

struct SampleError {
  std::size_t index = 0;  // position in the input batch
  std::string sample_id;
  std::string message;
};

/// Per-sample results aligned with the input; a slot is empty when that
/// sample failed, with the failure listed in `errors`.
struct BatchResult {
  std::vector<std::optional<TtaResult>> results;
  std::vector<SampleError> errors;
};

/// Runs tta_select over a batch. `workers` > 1 fans samples out to threads;
/// the output is identical for any worker count.
BatchResult tta_merge_batch(const std::vector<CandidateSet>& sets, int workers = 1);

}  // namespace vgkit
