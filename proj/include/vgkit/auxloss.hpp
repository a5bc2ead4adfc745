#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vgkit/geometry.hpp"

namespace vgkit {

/// Feature strides the auxiliary segmentation supervision runs at
/// (1/8, 1/16 and 1/32 of the input resolution).
inline constexpr std::array<int, 3> kAuxStrides{8, 16, 32};

/// Stride-aligned occupancy grid, row-major. Cell (i,j) covers the pixel
/// square [j*stride, (j+1)*stride) x [i*stride, (i+1)*stride).
struct BinaryMask {
  int stride = 0;
  int width = 0;   // cells per row, ceil(image_width / stride)
  int height = 0;  // rows, ceil(image_height / stride)
  std::vector<std::uint8_t> cells;

  std::uint8_t at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t count() const;  // number of set cells

  bool operator==(const BinaryMask&) const = default;
};

/// Predicted occupancy probabilities, same grid layout as BinaryMask.
struct ProbMask {
  int stride = 0;
  int width = 0;
  int height = 0;
  std::vector<double> cells;  // each in [0,1]

  double at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * width + col];
  }
};

struct LossConfig {
  double lambda = 1.0;          // coefficient of the auxiliary loss
  double dice_smoothing = 1.0;  // additive smoothing, > 0
};

/// Rasterizes a box into a binary mask: cell (i,j) is set iff the cell
/// center ((j+0.5)*stride, (i+0.5)*stride) satisfies x1 <= cx < x2 and
/// y1 <= cy < y2. The box must already be clipped to the image.
BinaryMask rasterize_box(const Box& box, const ImageSize& size, int stride);

/// Dice loss 1 - (2*sum(p*t) + s) / (sum(p) + sum(t) + s), in [0,1].
/// Throws ShapeError when grids disagree in stride or dimensions.
double dice_loss(const ProbMask& pred, const BinaryMask& target,
                 const LossConfig& cfg = {});

/// Mean of the per-stride Dice losses against rasterize_box targets.
/// `preds` must contain exactly one mask per stride in kAuxStrides.
double multi_scale_dice(const std::vector<ProbMask>& preds, const Box& box,
                        const ImageSize& size, const LossConfig& cfg = {});

/// Combined objective: l_o + lambda * l_aux.
double combine_loss(double l_o, double l_aux, const LossConfig& cfg = {});

/// ProbMask with hard 0/1 cells copied from a BinaryMask.
ProbMask to_prob(const BinaryMask& mask);

}  // namespace vgkit
