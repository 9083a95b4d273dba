#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "ocel/formats.hpp"
#include "ocel/xml.hpp"
#include "src/io_util.hpp"

namespace ocel::io {

namespace {

// 16-byte header prefix "SQLite format 3\0"
constexpr std::string_view kSqliteMagic{"SQLite format 3\0", 16};

std::string lowercase_extension(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return "";
    std::string ext = path.substr(dot);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

bool looks_like_sqlite(std::string_view bytes) {
    return bytes.size() >= kSqliteMagic.size() && bytes.substr(0, kSqliteMagic.size()) == kSqliteMagic;
}

std::string_view skip_leading_space(std::string_view bytes) {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
    while (!bytes.empty() &&
           (bytes.front() == ' ' || bytes.front() == '\t' || bytes.front() == '\n' ||
            bytes.front() == '\r'))
        bytes.remove_prefix(1);
    return bytes;
}

/// Distinguishes the OCEL 1.0 and 2.0 XML dialects by the root's children:
/// the legacy format carries <global> sections and key/value elements.
FormatKind classify_xml(std::string_view bytes) {
    xml::Element root;
    try {
        root = xml::parse(bytes);
    } catch (const XmlSyntaxError&) {
        throw UnknownFormatError("input is not well-formed XML");
    }
    if (root.name != "log") throw UnknownFormatError("XML root element is not <log>");
    for (const auto& child : root.children) {
        if (child.name == "global") return FormatKind::Ocel1Xml;
        if (child.name == "object-types" || child.name == "event-types")
            return FormatKind::Xml;
        if (child.name == "events" || child.name == "objects") {
            // both dialects use these section names; legacy entries are
            // built from key= elements
            for (const auto& entry : child.children)
                for (const auto& field : entry.children)
                    if (field.find_attribute("key")) return FormatKind::Ocel1Xml;
        }
    }
    return FormatKind::Xml;
}

FormatKind classify_json(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error&) {
        throw UnknownFormatError("input is not well-formed JSON");
    }
    if (!doc.is_object()) throw UnknownFormatError("top-level JSON value is not an object");
    if (doc.contains("ocel:global-log") || doc.contains("ocel:events") ||
        doc.contains("ocel:objects"))
        return FormatKind::Ocel1Json;
    if (doc.contains("objectTypes") || doc.contains("eventTypes") || doc.contains("objects") ||
        doc.contains("events"))
        return FormatKind::Json;
    throw UnknownFormatError("JSON document has no OCEL keys");
}

}  // namespace

std::string_view to_string(FormatKind kind) {
    switch (kind) {
        case FormatKind::Xml: return "xml";
        case FormatKind::Json: return "json";
        case FormatKind::Sqlite: return "sqlite";
        case FormatKind::Ocel1Json: return "ocel1-json";
        case FormatKind::Ocel1Xml: return "ocel1-xml";
    }
    return "xml";
}

std::optional<FormatKind> parse_format_kind(std::string_view text) {
    if (text == "xml" || text == "xmlocel") return FormatKind::Xml;
    if (text == "json" || text == "jsonocel") return FormatKind::Json;
    if (text == "sqlite" || text == "sqlite3" || text == "db") return FormatKind::Sqlite;
    if (text == "ocel1-json" || text == "ocel1json") return FormatKind::Ocel1Json;
    if (text == "ocel1-xml" || text == "ocel1xml") return FormatKind::Ocel1Xml;
    return std::nullopt;
}

FormatKind detect_format_bytes(std::string_view bytes) {
    if (looks_like_sqlite(bytes)) return FormatKind::Sqlite;
    const std::string_view body = skip_leading_space(bytes);
    if (!body.empty() && body.front() == '<') return classify_xml(bytes);
    if (!body.empty() && (body.front() == '{' || body.front() == '[')) return classify_json(body);
    throw UnknownFormatError("unrecognized content");
}

FormatKind detect_format(const std::string& path) {
    const std::string ext = lowercase_extension(path);
    if (ext == ".sqlite" || ext == ".sqlite3" || ext == ".db") return FormatKind::Sqlite;
    if (ext == ".xmlocel" || ext == ".xml") {
        const std::string bytes = detail::read_file(path);
        return classify_xml(bytes);
    }
    if (ext == ".jsonocel" || ext == ".json") {
        const std::string bytes = detail::read_file(path);
        return classify_json(bytes);
    }
    return detect_format_bytes(detail::read_file(path));
}

ReadResult read_any(const std::string& path, std::optional<FormatKind> kind) {
    const FormatKind resolved = kind ? *kind : detect_format(path);
    switch (resolved) {
        case FormatKind::Xml: return read_xml(path);
        case FormatKind::Json: return read_json(path);
        case FormatKind::Sqlite: return read_sqlite(path);
        case FormatKind::Ocel1Json:
        case FormatKind::Ocel1Xml: return import_ocel1(path, resolved);
    }
    throw UnknownFormatError("unsupported format");
}

void write_any(const OcelLog& log, const std::string& path, FormatKind kind) {
    switch (kind) {
        case FormatKind::Xml: write_xml(log, path); return;
        case FormatKind::Json: write_json(log, path); return;
        case FormatKind::Sqlite: write_sqlite(log, path); return;
        case FormatKind::Ocel1Json:
        case FormatKind::Ocel1Xml:
            throw UnknownFormatError("writing OCEL 1.0 files is not supported");
    }
}

ConversionSummary convert(const std::string& input_path, const std::string& output_path,
                          std::optional<FormatKind> from, std::optional<FormatKind> to) {
    const FormatKind from_kind = from ? *from : detect_format(input_path);
    FormatKind to_kind;
    if (to) {
        to_kind = *to;
    } else {
        const std::string ext = lowercase_extension(output_path);
        std::optional<FormatKind> guessed;
        if (!ext.empty()) guessed = parse_format_kind(ext.substr(1));
        if (!guessed)
            throw UnknownFormatError("cannot infer output format from '" + output_path + "'");
        to_kind = *guessed;
    }
    if (to_kind == FormatKind::Ocel1Json || to_kind == FormatKind::Ocel1Xml)
        throw UnknownFormatError("writing OCEL 1.0 files is not supported");

    const ReadResult result = read_any(input_path, from_kind);
    write_any(result.log, output_path, to_kind);

    ConversionSummary summary;
    summary.from = from_kind;
    summary.to = to_kind;
    summary.event_count = result.log.events().size();
    summary.object_count = result.log.objects().size();
    for (const auto& e : result.log.events()) summary.e2o_count += e.relations.size();
    for (const auto& o : result.log.objects()) {
        summary.o2o_count += o.relations.size();
        summary.snapshot_count += o.attribute_history.size();
    }
    summary.warning_count = result.report.warning_count;
    return summary;
}

}  // namespace ocel::io
