#pragma once

#include "rsod/errors.hpp"

namespace rsod {

// Axis-aligned box in pixel coordinates: (x1,y1) top-left, (x2,y2)
// bottom-right. A valid box has x1 < x2, y1 < y2 and no negative
// coordinate. Area follows the continuous convention (x2-x1)*(y2-y1).
struct BBox {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    friend bool operator==(const BBox&, const BBox&) = default;
};

// Image size in whole pixels, both sides >= 1.
struct Dims {
    int width = 0;
    int height = 0;

    friend bool operator==(const Dims&, const Dims&) = default;
};

bool is_valid(const BBox& b);
bool is_valid(const Dims& d);

// Validating constructors; throw InvalidBox on violation.
BBox make_bbox(double x1, double y1, double x2, double y2);
Dims make_dims(int width, int height);

double area(const BBox& b);

// Intersection-over-union in [0,1]; 0 for disjoint boxes, symmetric,
// exactly 1 for identical boxes.
double iou(const BBox& a, const BBox& b);

// floor(v + 0.5): deterministic round-half-up.
double round_half_up(double v);

// Scales box coordinates from one image size to another, rounds half-up to
// integers and clamps to the target bounds. Throws DegenerateBox when
// rounding collapses the box to zero width or height, and InvalidBox when
// the input box lies outside `from`.
BBox rescale_bbox(const BBox& b, const Dims& from, const Dims& to);

// Rounds each side to the nearest multiple of m (half-up), never below m.
Dims snap_to_multiple(const Dims& d, int m);

}  // namespace rsod
