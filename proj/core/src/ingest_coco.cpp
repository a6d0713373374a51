#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>

#include <json.hpp>

#include "rsod/ingest.hpp"

namespace rsod {

namespace {

using nlohmann::json;

std::string ascii_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string path_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base.resize(dot);
    return base;
}

const json& require(const json& obj, const char* key, const char* ctx) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw MalformedAnnotation(std::string("coco: ") + ctx + " is missing \"" + key + "\"");
    }
    return *it;
}

std::int64_t require_int(const json& obj, const char* key, const char* ctx) {
    const json& v = require(obj, key, ctx);
    if (!v.is_number_integer()) {
        throw MalformedAnnotation(std::string("coco: ") + ctx + " \"" + key +
                                  "\" is not an integer");
    }
    return v.get<std::int64_t>();
}

struct PendingDetection {
    std::int64_t ann_id;
    std::size_t input_order;
    Detection det;
};

}  // namespace

std::vector<ImageRecord> parse_coco(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw MalformedAnnotation(std::string("coco: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MalformedAnnotation("coco: document is not an object");
    const json& images = require(doc, "images", "document");
    const json& annotations = require(doc, "annotations", "document");
    const json& categories = require(doc, "categories", "document");
    if (!images.is_array() || !annotations.is_array() || !categories.is_array()) {
        throw MalformedAnnotation("coco: images/annotations/categories must be arrays");
    }

    std::map<std::int64_t, std::string> cat_names;
    for (const json& c : categories) {
        const std::int64_t id = require_int(c, "id", "category");
        const json& name = require(c, "name", "category");
        if (!name.is_string() || name.get<std::string>().empty()) {
            throw MalformedAnnotation("coco: category name must be a non-empty string");
        }
        if (!cat_names.emplace(id, ascii_lower(name.get<std::string>())).second) {
            throw MalformedAnnotation("coco: duplicate category id " + std::to_string(id));
        }
    }

    std::vector<ImageRecord> records;
    std::map<std::int64_t, std::size_t> image_index;
    for (const json& im : images) {
        const std::int64_t id = require_int(im, "id", "image");
        const json& file_name = require(im, "file_name", "image");
        if (!file_name.is_string()) {
            throw MalformedAnnotation("coco: image file_name must be a string");
        }
        const std::int64_t w = require_int(im, "width", "image");
        const std::int64_t h = require_int(im, "height", "image");
        if (w < 1 || h < 1) {
            throw MalformedAnnotation("coco: non-positive size for image id " +
                                      std::to_string(id));
        }
        if (!image_index.emplace(id, records.size()).second) {
            throw MalformedAnnotation("coco: duplicate image id " + std::to_string(id));
        }
        ImageRecord record;
        record.image_path = file_name.get<std::string>();
        record.image_id = path_stem(record.image_path);
        record.dims = Dims{static_cast<int>(w), static_cast<int>(h)};
        records.push_back(std::move(record));
    }

    std::vector<std::vector<PendingDetection>> pending(records.size());
    std::size_t order = 0;
    for (const json& ann : annotations) {
        const std::int64_t image_id = require_int(ann, "image_id", "annotation");
        const auto img_it = image_index.find(image_id);
        if (img_it == image_index.end()) {
            throw MalformedAnnotation("coco: annotation references unknown image id " +
                                      std::to_string(image_id));
        }
        const std::int64_t cat_id = require_int(ann, "category_id", "annotation");
        const auto cat_it = cat_names.find(cat_id);
        if (cat_it == cat_names.end()) {
            throw UnknownCategoryId("coco: unknown category id " + std::to_string(cat_id));
        }
        const json& bbox = require(ann, "bbox", "annotation");
        if (!bbox.is_array() || bbox.size() != 4 ||
            !std::all_of(bbox.begin(), bbox.end(), [](const json& v) { return v.is_number(); })) {
            throw MalformedAnnotation("coco: bbox must be [x,y,w,h] numbers");
        }
        const double x = bbox[0].get<double>();
        const double y = bbox[1].get<double>();
        const double w = bbox[2].get<double>();
        const double h = bbox[3].get<double>();
        const ImageRecord& record = records[img_it->second];
        if (x < 0 || y < 0 || w <= 0 || h <= 0 || x + w > record.dims.width ||
            y + h > record.dims.height) {
            throw MalformedAnnotation("coco: bbox out of bounds for image id " +
                                      std::to_string(image_id));
        }
        PendingDetection p;
        p.ann_id = ann.contains("id") && ann["id"].is_number_integer()
                       ? ann["id"].get<std::int64_t>()
                       : static_cast<std::int64_t>(order);
        p.input_order = order++;
        p.det = Detection{BBox{x, y, x + w, y + h}, cat_it->second};
        pending[img_it->second].push_back(std::move(p));
    }

    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& dets = pending[i];
        std::sort(dets.begin(), dets.end(), [](const PendingDetection& a, const PendingDetection& b) {
            return a.ann_id != b.ann_id ? a.ann_id < b.ann_id : a.input_order < b.input_order;
        });
        records[i].detections.reserve(dets.size());
        for (auto& p : dets) records[i].detections.push_back(std::move(p.det));
    }
    return records;
}

}  // namespace rsod
