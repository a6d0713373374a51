#pragma once

// Internal helpers shared by the JSON-emitting translation units.

#include <cmath>
#include <cstdint>

#include <json.hpp>

#include "rsod/geometry.hpp"

namespace rsod::detail {

// Integral values are emitted without a decimal point.
inline nlohmann::json json_number(double v) {
    if (std::floor(v) == v && std::abs(v) <= 9007199254740992.0) {
        return static_cast<std::int64_t>(v);
    }
    return v;
}

inline nlohmann::json bbox_to_json(const BBox& b) {
    return nlohmann::json::array(
        {json_number(b.x1), json_number(b.y1), json_number(b.x2), json_number(b.y2)});
}

}  // namespace rsod::detail
