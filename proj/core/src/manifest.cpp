#include <algorithm>
#include <set>

#include <json.hpp>

#include "json_util.hpp"
#include "rsod/ingest.hpp"

namespace rsod {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const char* ctx) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw MalformedAnnotation(std::string("manifest: ") + ctx + " is missing \"" + key +
                                  "\"");
    }
    return *it;
}

}  // namespace

std::string to_string(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Test: return "test";
        case Split::Unsplit: return "unsplit";
    }
    return "unsplit";
}

std::string to_string(Modality m) {
    return m == Modality::SAR ? "SAR" : "optical";
}

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "test") return Split::Test;
    if (s == "unsplit") return Split::Unsplit;
    throw MalformedAnnotation("unknown split \"" + s + "\"");
}

Modality modality_from_string(const std::string& s) {
    if (s == "SAR") return Modality::SAR;
    if (s == "optical") return Modality::Optical;
    throw MalformedAnnotation("unknown modality \"" + s + "\" (expected SAR or optical)");
}

void validate_manifest(const DatasetManifest& m) {
    if (m.name.empty()) throw MalformedAnnotation("manifest: empty dataset name");
    std::set<std::string> categories(m.categories.begin(), m.categories.end());
    if (categories.size() != m.categories.size()) {
        throw MalformedAnnotation("manifest: duplicate categories");
    }
    for (const auto& c : m.categories) {
        if (c.empty()) throw MalformedAnnotation("manifest: empty category name");
    }
    std::set<std::string> seen_ids;
    for (const ImageRecord& r : m.records) {
        if (r.image_id.empty()) throw MalformedAnnotation("manifest: empty image_id");
        if (!seen_ids.insert(r.image_id).second) {
            throw MalformedAnnotation("manifest: duplicate image_id \"" + r.image_id + "\"");
        }
        if (!is_valid(r.dims)) {
            throw MalformedAnnotation("manifest: invalid dims for \"" + r.image_id + "\"");
        }
        for (const Detection& d : r.detections) {
            if (!is_valid(d.bbox) || d.bbox.x2 > r.dims.width || d.bbox.y2 > r.dims.height) {
                throw MalformedAnnotation("manifest: box outside image \"" + r.image_id + "\"");
            }
            if (!categories.count(d.label)) {
                throw MalformedAnnotation("manifest: label \"" + d.label +
                                          "\" not in category set (image \"" + r.image_id +
                                          "\")");
            }
        }
    }
}

std::string manifest_to_json(const DatasetManifest& m) {
    json doc;
    doc["name"] = m.name;
    doc["modality"] = to_string(m.modality);
    doc["categories"] = m.categories;
    json records = json::array();
    for (const ImageRecord& r : m.records) {
        json rec;
        rec["image_id"] = r.image_id;
        rec["image_path"] = r.image_path;
        rec["width"] = r.dims.width;
        rec["height"] = r.dims.height;
        rec["split"] = to_string(r.split);
        json dets = json::array();
        for (const Detection& d : r.detections) {
            json det;
            det["bbox"] = detail::bbox_to_json(d.bbox);
            det["label"] = d.label;
            dets.push_back(std::move(det));
        }
        rec["detections"] = std::move(dets);
        records.push_back(std::move(rec));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw MalformedAnnotation(std::string("manifest: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MalformedAnnotation("manifest: document is not an object");

    DatasetManifest m;
    const json& name = require(doc, "name", "document");
    const json& modality = require(doc, "modality", "document");
    const json& categories = require(doc, "categories", "document");
    const json& records = require(doc, "records", "document");
    if (!name.is_string() || !modality.is_string() || !categories.is_array() ||
        !records.is_array()) {
        throw MalformedAnnotation("manifest: wrong top-level field types");
    }
    m.name = name.get<std::string>();
    m.modality = modality_from_string(modality.get<std::string>());
    for (const json& c : categories) {
        if (!c.is_string()) throw MalformedAnnotation("manifest: categories must be strings");
        m.categories.push_back(c.get<std::string>());
    }
    for (const json& rec : records) {
        if (!rec.is_object()) throw MalformedAnnotation("manifest: record is not an object");
        ImageRecord r;
        const json& id = require(rec, "image_id", "record");
        const json& path = require(rec, "image_path", "record");
        const json& width = require(rec, "width", "record");
        const json& height = require(rec, "height", "record");
        const json& split = require(rec, "split", "record");
        const json& detections = require(rec, "detections", "record");
        if (!id.is_string() || !path.is_string() || !width.is_number_integer() ||
            !height.is_number_integer() || !split.is_string() || !detections.is_array()) {
            throw MalformedAnnotation("manifest: wrong record field types");
        }
        r.image_id = id.get<std::string>();
        r.image_path = path.get<std::string>();
        r.dims = Dims{width.get<int>(), height.get<int>()};
        r.split = split_from_string(split.get<std::string>());
        for (const json& det : detections) {
            const json& bbox = require(det, "bbox", "detection");
            const json& label = require(det, "label", "detection");
            if (!bbox.is_array() || bbox.size() != 4 ||
                !std::all_of(bbox.begin(), bbox.end(),
                             [](const json& v) { return v.is_number(); }) ||
                !label.is_string()) {
                throw MalformedAnnotation("manifest: wrong detection field types");
            }
            r.detections.push_back(Detection{
                BBox{bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(),
                     bbox[3].get<double>()},
                label.get<std::string>()});
        }
        m.records.push_back(std::move(r));
    }
    validate_manifest(m);
    return m;
}

}  // namespace rsod
