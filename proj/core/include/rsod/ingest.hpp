#pragma once

#include <map>
#include <string>
#include <vector>

#include "rsod/geometry.hpp"

namespace rsod {

// One labelled box. Labels are lower-case category names; ingest folds
// ASCII upper case so manifests stay uniform.
struct Detection {
    BBox bbox;
    std::string label;

    friend bool operator==(const Detection&, const Detection&) = default;
};

enum class Split { Train, Test, Unsplit };
enum class Modality { SAR, Optical };

std::string to_string(Split s);
std::string to_string(Modality m);
Split split_from_string(const std::string& s);
Modality modality_from_string(const std::string& s);

// One image with its ground-truth detections.
struct ImageRecord {
    std::string image_id;
    std::string image_path;
    Dims dims;
    std::vector<Detection> detections;
    Split split = Split::Unsplit;
};

struct DatasetManifest {
    std::string name;
    Modality modality = Modality::SAR;
    std::vector<std::string> categories;  // sorted, unique, lower-case
    std::vector<ImageRecord> records;
};

// VOC-style XML, one image per document: <size> with width/height plus zero
// or more <object> entries carrying <name> and <bndbox>. fallback_id fills
// in when the document has no <filename>. Throws MalformedAnnotation.
ImageRecord parse_voc_xml(const std::string& xml, const std::string& fallback_id = "");

// COCO-style JSON with images[], annotations[] and categories[]. COCO
// [x,y,w,h] boxes become [x1,y1,x2,y2] = [x, y, x+w, y+h]. Every listed
// image yields a record (empty detections allowed); per-image detections
// are ordered by annotation id. Throws MalformedAnnotation and
// UnknownCategoryId.
std::vector<ImageRecord> parse_coco(const std::string& json_text);

// One object per line: "(x1,y1),(x2,y2),c" with integer class id c resolved
// through class_map. Blank lines are skipped; leading/trailing whitespace
// and CRLF are tolerated. Throws MalformedAnnotation and UnknownCategoryId.
std::vector<Detection> parse_nwpu_txt(const std::string& text,
                                      const std::map<int, std::string>& class_map);

// Class ids 1..10 of the NWPU-VHR-10 ground truth.
const std::map<int, std::string>& nwpu_class_map();

// Checks manifest invariants: unique non-empty image ids, valid dims, every
// box inside its image, every label in the category set.
void validate_manifest(const DatasetManifest& m);

// Canonical JSON (sorted keys, stable formatting) round-trip for manifests.
std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const std::string& json_text);

}  // namespace rsod
