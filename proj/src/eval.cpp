#include "vgkit/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include <json.hpp>

#include "vgkit/errors.hpp"
#include "vgkit/log.hpp"

namespace vgkit {

EvalOutcome evaluate(const std::vector<PredictionEntry>& predictions,
                     const std::vector<GroundingInstance>& truths,
                     const EvalOptions& options) {
  EvalOutcome out;

  std::map<std::string, Box> pred_by_id;
  for (const auto& p : predictions) {
    require_valid_box(p.box, "prediction box");
    const auto [it, inserted] = pred_by_id.insert_or_assign(p.sample_id, p.box);
    (void)it;
    if (!inserted) {
      if (options.mode == ParseMode::strict) {
        throw ValueError("duplicate prediction for sample '" + p.sample_id + "'");
      }
      out.warnings.push_back({0, "duplicate prediction for sample '" + p.sample_id + "' (last wins)"});
      log::warn(out.warnings.back().message);
    }
  }

  std::vector<const GroundingInstance*> sorted;
  sorted.reserve(truths.size());
  std::set<std::string> truth_ids;
  for (const auto& t : truths) {
    if (!t.gt_box) throw ValueError("truth sample '" + t.sample_id + "' has no gt_box");
    if (!truth_ids.insert(t.sample_id).second) {
      throw ValueError("duplicate truth sample '" + t.sample_id + "'");
    }
    sorted.push_back(&t);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->sample_id < b->sample_id; });

  std::vector<double> ious(sorted.size(), 0.0);
  std::vector<std::uint8_t> found(sorted.size(), 0);

  auto score_one = [&](std::size_t i) {
    const GroundingInstance& t = *sorted[i];
    const auto it = pred_by_id.find(t.sample_id);
    if (it == pred_by_id.end()) return;
    found[i] = 1;
    ious[i] = iou(clip_box(it->second, t.image_size), *t.gt_box);
  };

  const int n_threads =
      std::min<int>(std::max(options.workers, 1), static_cast<int>(sorted.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < sorted.size(); ++i) score_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < sorted.size(); i = next.fetch_add(1)) {
          score_one(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  EvalReport& report = out.report;
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    report.per_sample.emplace_back(sorted[i]->sample_id, ious[i]);
    total += ious[i];
    if (found[i]) {
      ++report.matched;
    } else {
      report.missing_predictions.push_back(sorted[i]->sample_id);
    }
  }
  report.mean_iou = sorted.empty() ? 0.0 : total / static_cast<double>(sorted.size());

  for (const auto& [id, box] : pred_by_id) {
    (void)box;
    if (truth_ids.find(id) == truth_ids.end()) report.extra_predictions.push_back(id);
  }
  return out;
}

DeltaSummary compare_reports(const EvalReport& a, const EvalReport& b) {
  std::map<std::string, double> a_by_id(a.per_sample.begin(), a.per_sample.end());
  std::map<std::string, double> b_by_id(b.per_sample.begin(), b.per_sample.end());

  if (a_by_id.size() != b_by_id.size()) {
    throw SampleSetMismatchError("reports cover different sample counts");
  }
  DeltaSummary summary;
  double total = 0.0;
  auto bi = b_by_id.begin();
  for (auto ai = a_by_id.begin(); ai != a_by_id.end(); ++ai, ++bi) {
    if (ai->first != bi->first) {
      throw SampleSetMismatchError("reports cover different sample sets ('" + ai->first +
                                   "' vs '" + bi->first + "')");
    }
    const double delta = bi->second - ai->second;
    summary.per_sample.emplace_back(ai->first, delta);
    total += delta;
    if (delta > 0.0) ++summary.improved;
    else if (delta < 0.0) ++summary.regressed;
    else ++summary.unchanged;
  }
  summary.mean_delta =
      summary.per_sample.empty() ? 0.0 : total / static_cast<double>(summary.per_sample.size());
  return summary;
}

std::string report_to_json(const EvalReport& report) {
  std::string s = "{\"mean_iou\":" + format_number(report.mean_iou);
  s += ",\"matched\":" + std::to_string(report.matched);

  auto id_array = [](const std::vector<std::string>& ids) {
    std::string a = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i > 0) a += ",";
      a += nlohmann::json(ids[i]).dump();
    }
    return a + "]";
  };
  s += ",\"missing_predictions\":" + id_array(report.missing_predictions);
  s += ",\"extra_predictions\":" + id_array(report.extra_predictions);

  s += ",\"per_sample\":[";
  for (std::size_t i = 0; i < report.per_sample.size(); ++i) {
    if (i > 0) s += ",";
    s += "{\"sample_id\":" + nlohmann::json(report.per_sample[i].first).dump();
    s += ",\"iou\":" + format_number(report.per_sample[i].second) + "}";
  }
  s += "]}";
  return s;
}

std::string report_summary(const EvalReport& report) {
  char buf[256];
  std::string s;
  std::snprintf(buf, sizeof buf, "%-14s%10zu\n", "ground truth", report.per_sample.size());
  s += buf;
  std::snprintf(buf, sizeof buf, "%-14s%10zu\n", "matched", report.matched);
  s += buf;
  std::snprintf(buf, sizeof buf, "%-14s%10zu\n", "missing", report.missing_predictions.size());
  s += buf;
  std::snprintf(buf, sizeof buf, "%-14s%10zu\n", "extra", report.extra_predictions.size());
  s += buf;
  std::snprintf(buf, sizeof buf, "%-14s%10.6f\n", "mean IoU", report.mean_iou);
  s += buf;
  return s;
}

}  // namespace vgkit
