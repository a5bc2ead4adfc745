#pragma once

#include <string>

namespace vgkit {

/// Axis-aligned box in continuous pixel coordinates.
/// (x1,y1) is the top-left corner, (x2,y2) the bottom-right.
struct Box {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }

  bool operator==(const Box&) const = default;
};

/// True when all coordinates are finite and x1 <= x2, y1 <= y2.
/// Zero-area boxes are valid.
bool box_is_valid(const Box& b);

/// Throws ValueError when box_is_valid() is false. `what` names the offender
/// in the message.
void require_valid_box(const Box& b, const char* what = "box");

/// Original image dimensions in whole pixels.
struct ImageSize {
  int width = 0;
  int height = 0;

  bool operator==(const ImageSize&) const = default;
};

bool size_is_valid(const ImageSize& s);
void require_valid_size(const ImageSize& s);

/// One test-time augmentation: aspect-preserving resize (shorter side to
/// `target_short`, longer side capped at `target_long_cap`) optionally
/// followed by a horizontal flip of the resized image.
struct AugmentationSpec {
  int target_short = 0;
  int target_long_cap = 0;
  bool hflip = false;
  ImageSize original;

  bool operator==(const AugmentationSpec&) const = default;
};

bool spec_is_valid(const AugmentationSpec& s);
void require_valid_spec(const AugmentationSpec& s);

/// Intersection over union of two boxes, in [0,1].
/// Defined as 0 when the union has zero area (two degenerate boxes).
double iou(const Box& a, const Box& b);

/// Resize ratio induced by a spec:
/// min(target_short / shorter_side, target_long_cap / longer_side).
double scale_ratio(const AugmentationSpec& spec);

/// Maps a box from the original image frame into the augmented frame.
/// The box must lie inside the original image (clip first via clip_box).
Box transform_box(const Box& box, const AugmentationSpec& spec);

/// Exact inverse of transform_box. The box must lie inside the augmented
/// frame (r*W x r*H).
Box detransform_box(const Box& box, const AugmentationSpec& spec);

/// Clamps a box to [0,W] x [0,H]. May produce a zero-area box. Idempotent.
Box clip_box(const Box& box, const ImageSize& size);

/// Continuous-bounds overload used for augmented frames.
Box clip_box(const Box& box, double width, double height);

}  // namespace vgkit
