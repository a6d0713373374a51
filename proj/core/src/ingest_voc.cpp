#include <algorithm>
#include <cctype>
#include <charconv>
#include <string_view>

#include "rsod/ingest.hpp"

namespace rsod {

namespace {

// Minimal reader for the VOC annotation subset of XML: elements, attributes
// (ignored), character data with the five named entities. No CDATA, no
// namespaces, no DTD content.
struct XmlNode {
    std::string tag;
    std::string text;
    std::vector<XmlNode> children;

    const XmlNode* find(std::string_view name) const {
        for (const auto& c : children) {
            if (c.tag == name) return &c;
        }
        return nullptr;
    }
};

class XmlReader {
public:
    explicit XmlReader(std::string_view in) : in_(in) {}

    XmlNode parse_document() {
        skip_misc();
        if (eof()) fail("empty document");
        XmlNode root = parse_element();
        skip_misc();
        if (!eof()) fail("trailing content after root element");
        return root;
    }

private:
    std::string_view in_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }
    bool starts_with(std::string_view s) const { return in_.substr(pos_).starts_with(s); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw MalformedAnnotation("xml: " + msg + " at byte " + std::to_string(pos_));
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void seek_past(std::string_view end, const char* what) {
        const auto p = in_.find(end, pos_);
        if (p == std::string_view::npos) fail(std::string("unterminated ") + what);
        pos_ = p + end.size();
    }

    // Prolog, comments, DOCTYPE.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                seek_past("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                seek_past("-->", "comment");
            } else if (starts_with("<!")) {
                seek_past(">", "declaration");
            } else {
                return;
            }
        }
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
               c == '.' || c == ':';
    }

    std::string read_name() {
        const std::size_t start = pos_;
        while (!eof() && is_name_char(peek())) ++pos_;
        if (pos_ == start) fail("expected a name");
        return std::string(in_.substr(start, pos_ - start));
    }

    void skip_attribute() {
        read_name();
        skip_ws();
        if (eof() || peek() != '=') fail("malformed attribute");
        ++pos_;
        skip_ws();
        if (eof() || (peek() != '"' && peek() != '\'')) fail("unquoted attribute value");
        const char quote = peek();
        ++pos_;
        const auto p = in_.find(quote, pos_);
        if (p == std::string_view::npos) fail("unterminated attribute value");
        pos_ = p + 1;
    }

    std::string read_text() {
        std::string out;
        while (!eof() && peek() != '<') {
            if (peek() == '&') {
                decode_entity(out);
            } else {
                out += peek();
                ++pos_;
            }
        }
        return out;
    }

    void decode_entity(std::string& out) {
        static constexpr std::pair<std::string_view, char> kEntities[] = {
            {"&lt;", '<'}, {"&gt;", '>'}, {"&amp;", '&'}, {"&quot;", '"'}, {"&apos;", '\''},
        };
        for (const auto& [name, ch] : kEntities) {
            if (starts_with(name)) {
                out += ch;
                pos_ += name.size();
                return;
            }
        }
        fail("unsupported entity");
    }

    XmlNode parse_element() {
        if (eof() || peek() != '<') fail("expected '<'");
        ++pos_;
        XmlNode node;
        node.tag = read_name();
        for (;;) {
            skip_ws();
            if (starts_with("/>")) {
                pos_ += 2;
                return node;
            }
            if (starts_with(">")) {
                ++pos_;
                break;
            }
            if (eof()) fail("unterminated start tag <" + node.tag + ">");
            skip_attribute();
        }
        for (;;) {
            if (eof()) fail("unexpected end inside <" + node.tag + ">");
            if (starts_with("</")) {
                pos_ += 2;
                const std::string close = read_name();
                if (close != node.tag) {
                    fail("mismatched closing tag </" + close + "> for <" + node.tag + ">");
                }
                skip_ws();
                if (eof() || peek() != '>') fail("malformed closing tag");
                ++pos_;
                return node;
            }
            if (starts_with("<!--")) {
                seek_past("-->", "comment");
                continue;
            }
            if (starts_with("<![")) fail("CDATA is not supported");
            if (peek() == '<') {
                node.children.push_back(parse_element());
                continue;
            }
            node.text += read_text();
        }
    }
};

std::string trimmed(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

const XmlNode& require_child(const XmlNode& parent, const char* name) {
    const XmlNode* c = parent.find(name);
    if (!c) {
        throw MalformedAnnotation("voc: <" + parent.tag + "> is missing <" + name + ">");
    }
    return *c;
}

double number_field(const XmlNode& parent, const char* name) {
    const std::string text = trimmed(require_child(parent, name).text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw MalformedAnnotation("voc: <" + std::string(name) + "> is not a number: \"" +
                                  text + "\"");
    }
    return value;
}

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

}  // namespace

ImageRecord parse_voc_xml(const std::string& xml, const std::string& fallback_id) {
    const XmlNode root = XmlReader(xml).parse_document();

    const XmlNode& size = require_child(root, "size");
    const double w = number_field(size, "width");
    const double h = number_field(size, "height");
    if (w < 1 || h < 1 || w != static_cast<int>(w) || h != static_cast<int>(h)) {
        throw MalformedAnnotation("voc: <size> must hold positive integers");
    }
    const Dims dims{static_cast<int>(w), static_cast<int>(h)};

    ImageRecord record;
    record.dims = dims;
    const XmlNode* filename = root.find("filename");
    const std::string fname = filename ? trimmed(filename->text) : "";
    if (fname.empty() && fallback_id.empty()) {
        throw MalformedAnnotation("voc: no <filename> and no fallback id");
    }
    record.image_path = fname.empty() ? fallback_id : fname;
    record.image_id = path_stem(record.image_path);

    for (const XmlNode& child : root.children) {
        if (child.tag != "object") continue;
        Detection det;
        det.label = ascii_lower(trimmed(require_child(child, "name").text));
        if (det.label.empty()) throw MalformedAnnotation("voc: empty <name>");
        const XmlNode& box = require_child(child, "bndbox");
        const double x1 = number_field(box, "xmin");
        const double y1 = number_field(box, "ymin");
        const double x2 = number_field(box, "xmax");
        const double y2 = number_field(box, "ymax");
        if (!is_valid(BBox{x1, y1, x2, y2})) {
            throw MalformedAnnotation("voc: invalid bndbox (" + std::to_string(x1) + "," +
                                      std::to_string(y1) + "," + std::to_string(x2) + "," +
                                      std::to_string(y2) + ") in " + record.image_id);
        }
        if (x2 > dims.width || y2 > dims.height) {
            throw MalformedAnnotation("voc: bndbox exceeds image size in " + record.image_id);
        }
        det.bbox = BBox{x1, y1, x2, y2};
        record.detections.push_back(std::move(det));
    }
    return record;
}

}  // namespace rsod
