#include "vgkit/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "vgkit/errors.hpp"

namespace vgkit {

namespace {

// Slack for frame-membership checks in transform/detransform. Covers the
// sub-1e-6 dust left by canonical 6-digit serialization; anything larger is
// a genuine precondition violation.
constexpr double kFrameSlack = 1e-6;

void require_in_frame(const Box& b, double w, double h, const char* what) {
  if (b.x1 < -kFrameSlack || b.y1 < -kFrameSlack || b.x2 > w + kFrameSlack ||
      b.y2 > h + kFrameSlack) {
    throw ValueError(std::string(what) + " lies outside its frame; clip it first");
  }
}

}  // namespace

bool box_is_valid(const Box& b) {
  return std::isfinite(b.x1) && std::isfinite(b.y1) && std::isfinite(b.x2) &&
         std::isfinite(b.y2) && b.x1 <= b.x2 && b.y1 <= b.y2;
}

void require_valid_box(const Box& b, const char* what) {
  if (!box_is_valid(b)) {
    throw ValueError(std::string(what) + " is not a valid box (finite, x1<=x2, y1<=y2)");
  }
}

bool size_is_valid(const ImageSize& s) { return s.width >= 1 && s.height >= 1; }

void require_valid_size(const ImageSize& s) {
  if (!size_is_valid(s)) {
    throw ValueError("image size must be at least 1x1 pixels");
  }
}

bool spec_is_valid(const AugmentationSpec& s) {
  return s.target_short >= 1 && s.target_long_cap >= s.target_short &&
         size_is_valid(s.original);
}

void require_valid_spec(const AugmentationSpec& s) {
  if (!spec_is_valid(s)) {
    throw ValueError(
        "augmentation spec must have target_short >= 1, "
        "target_long_cap >= target_short and a valid original size");
  }
}

double iou(const Box& a, const Box& b) {
  require_valid_box(a, "first box");
  require_valid_box(b, "second box");

  const double ix1 = std::max(a.x1, b.x1);
  const double iy1 = std::max(a.y1, b.y1);
  const double ix2 = std::min(a.x2, b.x2);
  const double iy2 = std::min(a.y2, b.y2);

  const double iw = std::max(0.0, ix2 - ix1);
  const double ih = std::max(0.0, iy2 - iy1);
  const double inter = iw * ih;

  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

double scale_ratio(const AugmentationSpec& spec) {
  require_valid_spec(spec);
  const double shorter = std::min(spec.original.width, spec.original.height);
  const double longer = std::max(spec.original.width, spec.original.height);
  return std::min(spec.target_short / shorter, spec.target_long_cap / longer);
}

Box transform_box(const Box& box, const AugmentationSpec& spec) {
  require_valid_box(box);
  const double r = scale_ratio(spec);
  const double w = spec.original.width;
  const double h = spec.original.height;
  require_in_frame(box, w, h, "box");

  const Box b = clip_box(box, w, h);
  Box out{b.x1 * r, b.y1 * r, b.x2 * r, b.y2 * r};
  if (spec.hflip) {
    const double frame_w = r * w;
    out = Box{frame_w - out.x2, out.y1, frame_w - out.x1, out.y2};
  }
  return out;
}

Box detransform_box(const Box& box, const AugmentationSpec& spec) {
  require_valid_box(box);
  const double r = scale_ratio(spec);
  const double frame_w = r * spec.original.width;
  const double frame_h = r * spec.original.height;
  require_in_frame(box, frame_w, frame_h, "box");

  Box b = clip_box(box, frame_w, frame_h);
  if (spec.hflip) {
    b = Box{frame_w - b.x2, b.y1, frame_w - b.x1, b.y2};
  }
  return Box{b.x1 / r, b.y1 / r, b.x2 / r, b.y2 / r};
}

Box clip_box(const Box& box, const ImageSize& size) {
  require_valid_size(size);
  return clip_box(box, static_cast<double>(size.width), static_cast<double>(size.height));
}

Box clip_box(const Box& box, double width, double height) {
  require_valid_box(box);
  return Box{std::clamp(box.x1, 0.0, width), std::clamp(box.y1, 0.0, height),
             std::clamp(box.x2, 0.0, width), std::clamp(box.y2, 0.0, height)};
}

}  // namespace vgkit
