#include "vgkit/tta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "vgkit/errors.hpp"

namespace vgkit {

namespace {

void require_valid_prediction(const Prediction& p) {
  require_valid_box(p.box, "prediction box");
  if (!std::isfinite(p.score) || p.score < 0.0 || p.score > 1.0) {
    throw ValueError("prediction score must lie in [0,1]");
  }
}

}  // namespace

std::vector<double> consensus_scores(const CandidateSet& candidates) {
  const auto& preds = candidates.predictions;
  if (preds.empty()) {
    throw EmptyCandidatesError("candidate set '" + candidates.sample_id + "' is empty");
  }
  for (const auto& p : preds) require_valid_prediction(p);

  const std::size_t n = preds.size();
  std::vector<double> means(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += iou(preds[i].box, preds[j].box);
    }
    means[i] = sum / static_cast<double>(n);
  }
  return means;
}

TtaResult tta_select(const CandidateSet& candidates) {
  const auto consensus = consensus_scores(candidates);
  const auto& preds = candidates.predictions;

  TtaResult result;
  result.corrected_scores.resize(preds.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    result.corrected_scores[i] = preds[i].score + consensus[i];
    if (result.corrected_scores[i] > result.corrected_scores[best]) best = i;
  }
  result.winner_index = best;
  result.final_box = preds[best].box;
  result.final_score = preds[best].score;
  return result;
}

BatchResult tta_merge_batch(const std::vector<CandidateSet>& sets, int workers) {
  BatchResult out;
  out.results.resize(sets.size());
  std::vector<std::optional<SampleError>> slots(sets.size());

  auto process = [&](std::size_t i) {
    try {
      out.results[i] = tta_select(sets[i]);
    } catch (const std::exception& e) {
      slots[i] = SampleError{i, sets[i].sample_id, e.what()};
    }
  };

  const int n_threads = std::min<int>(std::max(workers, 1), static_cast<int>(sets.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < sets.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < sets.size(); i = next.fetch_add(1)) {
          process(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (auto& slot : slots) {
    if (slot) out.errors.push_back(std::move(*slot));
  }
  return out;
}

}  // namespace vgkit
