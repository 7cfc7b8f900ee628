#include "sweep/plan_xml.hpp"

#include "sweep/errors.hpp"
#include "sweep/numeric.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

namespace sweep {

namespace {

std::string xml_escape(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string format_value(double v) {
    if (is_exact_integer(v)) {
        return std::to_string(static_cast<std::int64_t>(v));
    }
    return format_double(v);
}

// Minimal pull parser for the chunk schema. Tracks line numbers so errors
// point at the offending element.
class XmlReader {
public:
    XmlReader(std::string text, std::string file_name)
        : text_(std::move(text)), file_(std::move(file_name)) {}

    struct Tag {
        std::string name;
        std::map<std::string, std::string> attributes;
        bool closing = false;      // </name>
        bool self_closing = false; // <name/>
        int line = 0;
    };

    // Next tag, skipping the XML declaration, comments and inter-tag text.
    // Returns false at end of input.
    bool next(Tag& tag) {
        skip_outside_tag();
        if (pos_ >= text_.size()) {
            return false;
        }
        tag = Tag{};
        tag.line = line_;
        expect('<');
        if (peek() == '/') {
            ++pos_;
            tag.closing = true;
        }
        tag.name = read_name();
        if (tag.name.empty()) {
            fail("expected element name");
        }
        while (true) {
            skip_spaces();
            char c = peek();
            if (c == '>') {
                ++pos_;
                return true;
            }
            if (c == '/') {
                ++pos_;
                expect('>');
                tag.self_closing = true;
                return true;
            }
            if (c == '\0') {
                fail("unterminated tag <" + tag.name + ">");
            }
            std::string attr = read_name();
            if (attr.empty()) {
                fail("expected attribute name in <" + tag.name + ">");
            }
            skip_spaces();
            expect('=');
            skip_spaces();
            char quote = peek();
            if (quote != '"' && quote != '\'') {
                fail("attribute '" + attr + "' must be quoted");
            }
            ++pos_;
            tag.attributes[attr] = read_attribute_value(quote);
        }
    }

    [[noreturn]] void fail(const std::string& message, int line = 0) const {
        throw FormatError(file_ + ":" + std::to_string(line ? line : line_) + ": " +
                          message);
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
        }
        ++pos_;
    }

    void expect(char c) {
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        advance();
    }

    void skip_spaces() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\n' || text_[pos_] == '\r')) {
            advance();
        }
    }

    void skip_outside_tag() {
        while (pos_ < text_.size()) {
            skip_spaces();
            if (pos_ < text_.size() && text_[pos_] != '<') {
                fail("unexpected text outside of tags");
            }
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '?') {
                skip_until("?>");
                continue;
            }
            if (pos_ + 3 < text_.size() && text_.compare(pos_, 4, "<!--") == 0) {
                skip_until("-->");
                continue;
            }
            return;
        }
    }

    void skip_until(std::string_view terminator) {
        auto end = text_.find(terminator, pos_);
        if (end == std::string::npos) {
            fail("unterminated '" + std::string(terminator) + "'");
        }
        while (pos_ < end + terminator.size()) {
            advance();
        }
    }

    std::string read_name() {
        std::string name;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.' ||
                c == ':') {
                name += c;
                advance();
            } else {
                break;
            }
        }
        return name;
    }

    std::string read_attribute_value(char quote) {
        std::string value;
        while (true) {
            if (pos_ >= text_.size()) {
                fail("unterminated attribute value");
            }
            char c = text_[pos_];
            if (c == quote) {
                advance();
                return value;
            }
            if (c == '&') {
                value += read_entity();
            } else {
                value += c;
                advance();
            }
        }
    }

    char read_entity() {
        static constexpr std::pair<std::string_view, char> entities[] = {
            {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'},
            {"&quot;", '"'}, {"&apos;", '\''},
        };
        for (auto [text, ch] : entities) {
            if (text_.compare(pos_, text.size(), text) == 0) {
                for (std::size_t i = 0; i < text.size(); ++i) {
                    advance();
                }
                return ch;
            }
        }
        fail("unknown entity reference");
    }

    std::string text_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

const std::string& require_attr(const XmlReader& reader, const XmlReader::Tag& tag,
                                const std::string& name) {
    auto it = tag.attributes.find(name);
    if (it == tag.attributes.end()) {
        reader.fail("<" + tag.name + "> missing attribute '" + name + "'", tag.line);
    }
    return it->second;
}

std::int64_t attr_int(const XmlReader& reader, const XmlReader::Tag& tag,
                      const std::string& name) {
    const std::string& raw = require_attr(reader, tag, name);
    try {
        return parse_int(raw);
    } catch (const FormatError&) {
        reader.fail("<" + tag.name + "> attribute '" + name + "' is not an integer: '" +
                        raw + "'",
                    tag.line);
    }
}

} // namespace

std::string chunk_xml_string(const Chunk& chunk, const ExplorationConfig& config) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<Experiment_plan>\n";
    for (const auto& task : chunk.tasks) {
        out << "  <Simulation id=\"" << task.task_id << "\" seed=\"" << task.seed
            << "\" finalStep=\"" << task.final_step << "\" experiment=\""
            << xml_escape(config.experiment_name) << "\" sourcePath=\""
            << xml_escape(config.model_source) << "\">\n";
        if (task.assignment.empty()) {
            out << "    <Parameters/>\n";
        } else {
            out << "    <Parameters>\n";
            for (const auto& [name, value] : task.assignment) {
                out << "      <Parameter name=\"" << xml_escape(name) << "\" type=\""
                    << (is_exact_integer(value) ? "INT" : "FLOAT") << "\" value=\""
                    << xml_escape(format_value(value)) << "\"/>\n";
            }
            out << "    </Parameters>\n";
        }
        out << "  </Simulation>\n";
    }
    out << "</Experiment_plan>\n";
    return out.str();
}

std::filesystem::path write_chunk_xml(const Chunk& chunk,
                                      const ExplorationConfig& config,
                                      const std::filesystem::path& directory) {
    if (directory.empty()) {
        throw IoError("chunk output directory is empty");
    }
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) {
        throw IoError("cannot create directory '" + directory.string() +
                      "': " + ec.message());
    }
    const auto path = directory / ("plan-" + std::to_string(chunk.chunk_id) + ".xml");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << chunk_xml_string(chunk, config);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
    return path;
}

Chunk parse_chunk_xml(const std::filesystem::path& file, std::int64_t replications) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + file.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    XmlReader reader(buffer.str(), file.filename().string());

    Chunk chunk;
    const std::string stem = file.stem().string();
    if (stem.rfind("plan-", 0) == 0) {
        try {
            chunk.chunk_id = parse_int(std::string_view(stem).substr(5));
        } catch (const FormatError&) {
            throw FormatError(file.filename().string() +
                              ": file name does not match plan-<chunkId>.xml");
        }
    }

    XmlReader::Tag tag;
    if (!reader.next(tag) || tag.closing || tag.name != "Experiment_plan") {
        reader.fail("expected <Experiment_plan> root element", tag.line);
    }
    if (tag.self_closing) {
        return chunk;
    }

    while (reader.next(tag)) {
        if (tag.closing && tag.name == "Experiment_plan") {
            return chunk;
        }
        if (tag.closing || tag.name != "Simulation") {
            reader.fail("expected <Simulation> element, got <" +
                            std::string(tag.closing ? "/" : "") + tag.name + ">",
                        tag.line);
        }
        SimulationTask task;
        task.task_id = attr_int(reader, tag, "id");
        task.seed = static_cast<std::uint64_t>(attr_int(reader, tag, "seed"));
        task.final_step = attr_int(reader, tag, "finalStep");
        require_attr(reader, tag, "experiment");
        require_attr(reader, tag, "sourcePath");
        if (replications > 0) {
            task.point_index = task.task_id / replications;
            task.replication_index = task.task_id % replications;
        }
        const bool simulation_closed = tag.self_closing;

        if (!simulation_closed) {
            XmlReader::Tag params;
            if (!reader.next(params) || params.closing || params.name != "Parameters") {
                reader.fail("expected <Parameters> inside <Simulation>", params.line);
            }
            if (!params.self_closing) {
                XmlReader::Tag p;
                while (reader.next(p)) {
                    if (p.closing && p.name == "Parameters") {
                        break;
                    }
                    if (p.closing || p.name != "Parameter" || !p.self_closing) {
                        reader.fail("expected self-closing <Parameter/> element",
                                    p.line);
                    }
                    const std::string& name = require_attr(reader, p, "name");
                    const std::string& type = require_attr(reader, p, "type");
                    const std::string& value = require_attr(reader, p, "value");
                    if (type != "FLOAT" && type != "INT") {
                        reader.fail("<Parameter> type '" + type +
                                        "' not supported (FLOAT or INT)",
                                    p.line);
                    }
                    try {
                        task.assignment.emplace_back(name, parse_double(value));
                    } catch (const FormatError&) {
                        reader.fail("<Parameter name=\"" + name +
                                        "\"> has non-numeric value '" + value + "'",
                                    p.line);
                    }
                }
            }
            XmlReader::Tag close;
            if (!reader.next(close) || !close.closing || close.name != "Simulation") {
                reader.fail("expected </Simulation>", close.line);
            }
        }
        chunk.tasks.push_back(std::move(task));
    }
    throw FormatError(file.filename().string() + ": missing </Experiment_plan>");
}

} // namespace sweep
