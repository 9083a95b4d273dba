#ifndef OCEL_FORMATS_HPP
#define OCEL_FORMATS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ocel/model.hpp"
#include "ocel/raw.hpp"
#include "ocel/validate.hpp"

namespace ocel::io {

/// The supported storage variants, including the two OCEL 1.0 legacy
/// encodings accepted for import.
enum class FormatKind { Xml, Json, Sqlite, Ocel1Json, Ocel1Xml };

std::string_view to_string(FormatKind kind);
std::optional<FormatKind> parse_format_kind(std::string_view text);

/// Maps the extension (.xmlocel/.xml, .jsonocel/.json, .sqlite/.sqlite3/.db)
/// and, for XML/JSON, the document structure onto one FormatKind. Files
/// without a conclusive extension are sniffed by content: the SQLite magic
/// header, a leading '<', or a leading '{'. Throws UnknownFormatError.
FormatKind detect_format(const std::string& path);
FormatKind detect_format_bytes(std::string_view bytes);

// --- structural parsers: bytes -> unchecked raw log ------------------------
// `parse_warnings`, when given, collects W005 diagnostics for ignored
// unknown fields.

raw::Log parse_raw_xml(std::string_view text, std::vector<Diagnostic>* parse_warnings = nullptr);
raw::Log parse_raw_json(std::string_view text, std::vector<Diagnostic>* parse_warnings = nullptr);
raw::Log parse_raw_sqlite(const std::string& path,
                          std::vector<Diagnostic>* parse_warnings = nullptr);
raw::Log parse_raw_ocel1(std::string_view text, FormatKind kind,
                         std::vector<Diagnostic>* parse_warnings = nullptr);

// --- readers: parse + validate + canonicalize ------------------------------
// Throw the format's syntax error on malformed input and SemanticError
// when the document violates the metamodel; the returned report carries
// the remaining warnings.

ReadResult read_xml(const std::string& path);
ReadResult read_xml_string(std::string_view text);
ReadResult read_json(const std::string& path);
ReadResult read_json_string(std::string_view text);
ReadResult read_sqlite(const std::string& path);

/// OCEL 1.0 import. Every omap entry becomes an E2O relation with the
/// empty qualifier, ovmap values become snapshots at the epoch sentinel,
/// and type declarations are synthesized from the observed activities,
/// object types, and value kinds (integer widens to float, any other mix
/// widens to string).
ReadResult import_ocel1(const std::string& path, FormatKind kind);
ReadResult import_ocel1_string(std::string_view text, FormatKind kind);

/// Reads any supported kind, importing OCEL 1.0 inputs.
ReadResult read_any(const std::string& path, std::optional<FormatKind> kind = std::nullopt);

// --- writers: canonical, byte-stable output --------------------------------

std::string write_xml_string(const OcelLog& log);
std::string write_json_string(const OcelLog& log);
void write_xml(const OcelLog& log, const std::string& path);
void write_json(const OcelLog& log, const std::string& path);
void write_sqlite(const OcelLog& log, const std::string& path);
void write_any(const OcelLog& log, const std::string& path, FormatKind kind);

struct ConversionSummary {
    FormatKind from = FormatKind::Xml;
    FormatKind to = FormatKind::Xml;
    std::size_t event_count = 0;
    std::size_t object_count = 0;
    std::size_t e2o_count = 0;
    std::size_t o2o_count = 0;
    std::size_t snapshot_count = 0;
    std::size_t warning_count = 0;
};

/// read -> validate -> write. Fails without touching the output path when
/// the input cannot be read or does not validate; formats are detected
/// unless given. Writing to an OCEL 1.0 kind is not supported.
ConversionSummary convert(const std::string& input_path, const std::string& output_path,
                          std::optional<FormatKind> from = std::nullopt,
                          std::optional<FormatKind> to = std::nullopt);

}  // namespace ocel::io

#endif
