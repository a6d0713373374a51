#include <regex>
#include <string>

#include "rsod/ingest.hpp"

namespace rsod {

namespace {

std::string trimmed(const std::string& s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

const std::map<int, std::string>& nwpu_class_map() {
    static const std::map<int, std::string> kMap = {
        {1, "airplane"},       {2, "ship"},
        {3, "storage tank"},   {4, "baseball diamond"},
        {5, "tennis court"},   {6, "basketball court"},
        {7, "ground track field"}, {8, "harbor"},
        {9, "bridge"},         {10, "vehicle"},
    };
    return kMap;
}

std::vector<Detection> parse_nwpu_txt(const std::string& text,
                                      const std::map<int, std::string>& class_map) {
    static const std::regex kLine(R"(\((\d+),(\d+)\),\((\d+),(\d+)\),(\d+))");

    std::vector<Detection> detections;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const std::string raw =
            text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
        start = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string line = trimmed(raw);
        if (line.empty()) continue;

        std::smatch m;
        if (!std::regex_match(line, m, kLine)) {
            throw MalformedAnnotation("nwpu line " + std::to_string(line_no) +
                                      ": expected \"(x1,y1),(x2,y2),c\", got \"" + line + "\"");
        }
        const double x1 = std::stod(m[1]);
        const double y1 = std::stod(m[2]);
        const double x2 = std::stod(m[3]);
        const double y2 = std::stod(m[4]);
        if (!is_valid(BBox{x1, y1, x2, y2})) {
            throw MalformedAnnotation("nwpu line " + std::to_string(line_no) +
                                      ": inverted or empty box \"" + line + "\"");
        }
        const int class_id = std::stoi(m[5]);
        const auto it = class_map.find(class_id);
        if (it == class_map.end()) {
            throw UnknownCategoryId("nwpu line " + std::to_string(line_no) + ": class id " +
                                    std::to_string(class_id) + " not in class map");
        }
        detections.push_back(Detection{BBox{x1, y1, x2, y2}, it->second});
    }
    return detections;
}

}  // namespace rsod
