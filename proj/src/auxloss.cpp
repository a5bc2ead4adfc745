#include "vgkit/auxloss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vgkit/errors.hpp"

namespace vgkit {

namespace {

void require_valid_cfg(const LossConfig& cfg) {
  if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) {
    throw ValueError("lambda must be a finite nonnegative value");
  }
  if (!(cfg.dice_smoothing > 0.0) || !std::isfinite(cfg.dice_smoothing)) {
    throw ValueError("dice_smoothing must be a finite positive value");
  }
}

int grid_cells(int pixels, int stride) { return (pixels + stride - 1) / stride; }

}  // namespace

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(
      std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

BinaryMask rasterize_box(const Box& box, const ImageSize& size, int stride) {
  require_valid_box(box);
  require_valid_size(size);
  if (stride <= 0) throw ValueError("stride must be positive");

  BinaryMask mask;
  mask.stride = stride;
  mask.width = grid_cells(size.width, stride);
  mask.height = grid_cells(size.height, stride);
  mask.cells.assign(static_cast<std::size_t>(mask.width) * mask.height, 0);

  // Cell centers inside [x1,x2) have index j with x1/stride - 0.5 <= j < x2/stride - 0.5.
  const double s = stride;
  const int j0 = std::max(0, static_cast<int>(std::ceil(box.x1 / s - 0.5)));
  const int j1 = std::min(mask.width - 1,
                          static_cast<int>(std::ceil(box.x2 / s - 0.5)) - 1);
  const int i0 = std::max(0, static_cast<int>(std::ceil(box.y1 / s - 0.5)));
  const int i1 = std::min(mask.height - 1,
                          static_cast<int>(std::ceil(box.y2 / s - 0.5)) - 1);

  for (int i = i0; i <= i1; ++i) {
    auto* row = mask.cells.data() + static_cast<std::size_t>(i) * mask.width;
    for (int j = j0; j <= j1; ++j) row[j] = 1;
  }
  return mask;
}

double dice_loss(const ProbMask& pred, const BinaryMask& target, const LossConfig& cfg) {
  require_valid_cfg(cfg);
  if (pred.stride != target.stride || pred.width != target.width ||
      pred.height != target.height) {
    throw ShapeError("pred and target masks must share stride and dimensions");
  }
  if (pred.cells.size() != target.cells.size() ||
      pred.cells.size() !=
          static_cast<std::size_t>(pred.width) * static_cast<std::size_t>(pred.height)) {
    throw ShapeError("mask cell buffers do not match the declared dimensions");
  }

  double inter = 0.0;
  double pred_sum = 0.0;
  double target_sum = 0.0;
  for (std::size_t k = 0; k < pred.cells.size(); ++k) {
    const double p = pred.cells[k];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValueError("prob mask cells must lie in [0,1]");
    }
    const double t = target.cells[k];
    inter += p * t;
    pred_sum += p;
    target_sum += t;
  }

  const double s = cfg.dice_smoothing;
  return 1.0 - (2.0 * inter + s) / (pred_sum + target_sum + s);
}

double multi_scale_dice(const std::vector<ProbMask>& preds, const Box& box,
                        const ImageSize& size, const LossConfig& cfg) {
  require_valid_cfg(cfg);
  if (preds.size() != kAuxStrides.size()) {
    throw ShapeError("expected exactly one prob mask per stride in {8,16,32}");
  }

  double total = 0.0;
  for (const int stride : kAuxStrides) {
    const ProbMask* match = nullptr;
    for (const auto& p : preds) {
      if (p.stride != stride) continue;
      if (match != nullptr) throw ShapeError("duplicate prob mask for stride " + std::to_string(stride));
      match = &p;
    }
    if (match == nullptr) throw ShapeError("missing prob mask for stride " + std::to_string(stride));
    total += dice_loss(*match, rasterize_box(box, size, stride), cfg);
  }
  return total / static_cast<double>(kAuxStrides.size());
}

double combine_loss(double l_o, double l_aux, const LossConfig& cfg) {
  require_valid_cfg(cfg);
  if (!std::isfinite(l_o) || !std::isfinite(l_aux)) {
    throw ValueError("loss terms must be finite");
  }
  return l_o + cfg.lambda * l_aux;
}

ProbMask to_prob(const BinaryMask& mask) {
  ProbMask p;
  p.stride = mask.stride;
  p.width = mask.width;
  p.height = mask.height;
  p.cells.assign(mask.cells.begin(), mask.cells.end());
  return p;
}

}  // namespace vgkit
