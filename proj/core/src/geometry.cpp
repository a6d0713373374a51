#include "rsod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rsod {

namespace {

std::string box_str(const BBox& b) {
    return "[" + std::to_string(b.x1) + "," + std::to_string(b.y1) + "," +
           std::to_string(b.x2) + "," + std::to_string(b.y2) + "]";
}

}  // namespace

bool is_valid(const BBox& b) {
    return std::isfinite(b.x1) && std::isfinite(b.y1) && std::isfinite(b.x2) &&
           std::isfinite(b.y2) && b.x1 >= 0.0 && b.y1 >= 0.0 && b.x1 < b.x2 && b.y1 < b.y2;
}

bool is_valid(const Dims& d) {
    return d.width >= 1 && d.height >= 1;
}

BBox make_bbox(double x1, double y1, double x2, double y2) {
    BBox b{x1, y1, x2, y2};
    if (!is_valid(b)) throw InvalidBox("invalid box " + box_str(b));
    return b;
}

Dims make_dims(int width, int height) {
    Dims d{width, height};
    if (!is_valid(d)) {
        throw InvalidBox("invalid dims " + std::to_string(width) + "x" + std::to_string(height));
    }
    return d;
}

double area(const BBox& b) {
    return (b.x2 - b.x1) * (b.y2 - b.y1);
}

double iou(const BBox& a, const BBox& b) {
    const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    const double inter = iw * ih;
    return inter / (area(a) + area(b) - inter);
}

double round_half_up(double v) {
    return std::floor(v + 0.5);
}

BBox rescale_bbox(const BBox& b, const Dims& from, const Dims& to) {
    if (!is_valid(b)) throw InvalidBox("rescale_bbox: invalid box " + box_str(b));
    if (!is_valid(from) || !is_valid(to)) throw InvalidBox("rescale_bbox: invalid dims");
    if (b.x2 > from.width || b.y2 > from.height) {
        throw InvalidBox("rescale_bbox: box " + box_str(b) + " exceeds source dims " +
                         std::to_string(from.width) + "x" + std::to_string(from.height));
    }
    const double sx = static_cast<double>(to.width) / static_cast<double>(from.width);
    const double sy = static_cast<double>(to.height) / static_cast<double>(from.height);
    BBox r{
        std::clamp(round_half_up(b.x1 * sx), 0.0, static_cast<double>(to.width)),
        std::clamp(round_half_up(b.y1 * sy), 0.0, static_cast<double>(to.height)),
        std::clamp(round_half_up(b.x2 * sx), 0.0, static_cast<double>(to.width)),
        std::clamp(round_half_up(b.y2 * sy), 0.0, static_cast<double>(to.height)),
    };
    if (r.x1 == r.x2 || r.y1 == r.y2) {
        throw DegenerateBox("box " + box_str(b) + " collapsed to " + box_str(r));
    }
    return r;
}

Dims snap_to_multiple(const Dims& d, int m) {
    if (m < 1) throw std::invalid_argument("snap_to_multiple: m must be >= 1");
    if (!is_valid(d)) throw InvalidBox("snap_to_multiple: invalid dims");
    const auto snap = [m](int v) {
        const long long q = (2LL * v + m) / (2LL * m);  // floor(v/m + 1/2)
        return static_cast<int>(std::max(q, 1LL) * m);
    };
    return Dims{snap(d.width), snap(d.height)};
}

}  // namespace rsod
