// ocel: validate, convert, and analyze OCEL 2.0 event logs.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <unistd.h>

#include "ocel/analysis.hpp"
#include "ocel/formats.hpp"
#include "ocel/validate.hpp"
#include "src/io_util.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationErrors = 1;
constexpr int kExitIoOrParse = 2;
constexpr int kExitUsage = 3;

bool color_enabled() {
    return std::getenv("OCEL_NO_COLOR") == nullptr && isatty(fileno(stdout));
}

std::string paint(const std::string& text, const char* ansi) {
    if (!color_enabled()) return text;
    return std::string("\033[") + ansi + "m" + text + "\033[0m";
}

std::optional<ocel::io::FormatKind> parse_kind_flag(const std::string& value) {
    if (value.empty()) return std::nullopt;
    auto kind = ocel::io::parse_format_kind(value);
    if (!kind) throw CLI::ValidationError("--format", "unknown format '" + value + "'");
    return kind;
}

void print_report(const ocel::ValidationReport& report) {
    for (const auto& d : report.diagnostics) {
        const bool is_error = d.severity == ocel::Severity::Error;
        std::cout << paint(is_error ? "error" : "warning", is_error ? "31" : "33") << ' ' << d.code
                  << ' ' << d.location << ": " << d.message << "\n";
    }
    std::cout << report.error_count << " errors, " << report.warning_count << " warnings\n";
}

int cmd_validate(const std::string& path, const std::string& format_flag, bool quiet) {
    const auto forced = parse_kind_flag(format_flag);
    const ocel::io::FormatKind kind = forced ? *forced : ocel::io::detect_format(path);

    std::vector<ocel::Diagnostic> parse_warnings;
    ocel::raw::Log raw;
    switch (kind) {
        case ocel::io::FormatKind::Xml:
            raw = ocel::io::parse_raw_xml(ocel::io::detail::read_file(path), &parse_warnings);
            break;
        case ocel::io::FormatKind::Json:
            raw = ocel::io::parse_raw_json(ocel::io::detail::read_file(path), &parse_warnings);
            break;
        case ocel::io::FormatKind::Sqlite:
            raw = ocel::io::parse_raw_sqlite(path, &parse_warnings);
            break;
        case ocel::io::FormatKind::Ocel1Json:
        case ocel::io::FormatKind::Ocel1Xml:
            raw = ocel::io::parse_raw_ocel1(ocel::io::detail::read_file(path), kind, &parse_warnings);
            break;
    }
    ocel::ValidationReport report = ocel::validate(raw);
    for (auto& w : parse_warnings) report.diagnostics.push_back(std::move(w));
    ocel::finish_report(report);
    if (!quiet) print_report(report);
    return report.error_count == 0 ? kExitOk : kExitValidationErrors;
}

int cmd_convert(const std::string& in_path, const std::string& out_path,
                const std::string& from_flag, const std::string& to_flag) {
    std::optional<ocel::io::FormatKind> to = parse_kind_flag(to_flag);
    if (!to) {
        const auto dot = out_path.find_last_of('.');
        if (dot != std::string::npos) to = ocel::io::parse_format_kind(out_path.substr(dot + 1));
        if (!to) {
            std::cerr << "cannot infer output format from '" << out_path
                      << "'; pass --to xml|json|sqlite\n";
            return kExitUsage;
        }
    }
    if (*to == ocel::io::FormatKind::Ocel1Json || *to == ocel::io::FormatKind::Ocel1Xml) {
        std::cerr << "writing OCEL 1.0 files is not supported\n";
        return kExitUsage;
    }
    const auto summary = ocel::io::convert(in_path, out_path, parse_kind_flag(from_flag), to);
    std::cout << "converted " << to_string(summary.from) << " -> " << to_string(summary.to) << ": "
              << summary.event_count << " events, " << summary.object_count << " objects, "
              << summary.e2o_count << " e2o, " << summary.o2o_count << " o2o, "
              << summary.snapshot_count << " snapshots\n";
    return kExitOk;
}

int cmd_stats(const std::string& path, bool as_json) {
    const ocel::ReadResult result = ocel::io::read_any(path);
    const auto stats = ocel::analysis::statistics(result.log);
    std::cout << (as_json ? ocel::analysis::statistics_to_json(stats)
                          : ocel::analysis::statistics_to_text(stats));
    return kExitOk;
}

int cmd_flatten(const std::string& path, const std::string& object_type,
                const std::string& out_path) {
    const ocel::ReadResult result = ocel::io::read_any(path);
    if (!result.log.find_object_type(object_type)) {
        std::cerr << "unknown object type '" << object_type << "'; available:";
        for (const auto& t : result.log.object_types()) std::cerr << ' ' << t.name;
        std::cerr << "\n";
        return kExitUsage;
    }
    const auto traces = ocel::analysis::flatten(result.log, object_type);
    const std::string csv = ocel::analysis::traces_to_csv(traces);
    if (out_path.empty())
        std::cout << csv;
    else
        ocel::io::detail::write_file(out_path, csv);
    std::cerr << traces.size() << " traces\n";
    return kExitOk;
}

int cmd_discover(const std::string& path, const std::string& out_path) {
    const ocel::ReadResult result = ocel::io::read_any(path);
    const auto graph = ocel::analysis::discover_ocdfg(result.log);
    const std::string dot = ocel::analysis::render_ocdfg_dot(graph);
    if (out_path.empty())
        std::cout << dot;
    else
        ocel::io::detail::write_file(out_path, dot);
    std::cerr << graph.nodes.size() << " nodes, " << graph.arcs.size() << " arcs\n";
    return kExitOk;
}

int cmd_import_ocel1(const std::string& in_path, const std::string& out_path,
                     const std::string& to_flag) {
    ocel::io::FormatKind kind = ocel::io::detect_format(in_path);
    if (kind != ocel::io::FormatKind::Ocel1Json && kind != ocel::io::FormatKind::Ocel1Xml) {
        std::cerr << "input is not an OCEL 1.0 document\n";
        return kExitIoOrParse;
    }
    return cmd_convert(in_path, out_path, std::string(to_string(kind)), to_flag);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OCEL 2.0 event-log toolkit"};
    app.require_subcommand(1);

    std::string path, out_path, format_flag, from_flag, to_flag, object_type;
    bool quiet = false, as_json = false;

    auto* validate = app.add_subcommand("validate", "check a log against the metamodel");
    validate->add_option("path", path, "log file")->required();
    validate->add_option("--format", format_flag, "input format (xml|json|sqlite|ocel1-json|ocel1-xml)");
    validate->add_flag("--quiet", quiet, "suppress the report, set the exit code only");

    auto* convert = app.add_subcommand("convert", "convert between storage formats");
    convert->add_option("input", path, "input log")->required();
    convert->add_option("output", out_path, "output log")->required();
    convert->add_option("--from", from_flag, "input format override");
    convert->add_option("--to", to_flag, "output format override (xml|json|sqlite)");

    auto* stats = app.add_subcommand("stats", "summary statistics of a log");
    stats->add_option("path", path, "log file")->required();
    stats->add_flag("--json", as_json, "machine-readable output");

    auto* flatten = app.add_subcommand("flatten", "project onto one object type as CSV");
    flatten->add_option("path", path, "log file")->required();
    flatten->add_option("--object-type", object_type, "object type to flatten on")->required();
    flatten->add_option("--out", out_path, "CSV output path (default: stdout)");

    auto* discover = app.add_subcommand("discover", "discover a directly-follows graph as DOT");
    discover->add_option("path", path, "log file")->required();
    discover->add_option("--out", out_path, "DOT output path (default: stdout)");

    auto* import1 = app.add_subcommand("import-ocel1", "import an OCEL 1.0 log as OCEL 2.0");
    import1->add_option("input", path, "OCEL 1.0 input")->required();
    import1->add_option("output", out_path, "OCEL 2.0 output")->required();
    import1->add_option("--to", to_flag, "output format override (xml|json|sqlite)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(path, format_flag, quiet);
        if (app.got_subcommand(convert)) return cmd_convert(path, out_path, from_flag, to_flag);
        if (app.got_subcommand(stats)) return cmd_stats(path, as_json);
        if (app.got_subcommand(flatten)) return cmd_flatten(path, object_type, out_path);
        if (app.got_subcommand(discover)) return cmd_discover(path, out_path);
        if (app.got_subcommand(import1)) return cmd_import_ocel1(path, out_path, to_flag);
    } catch (const CLI::ValidationError& err) {
        std::cerr << err.what() << "\n";
        return kExitUsage;
    } catch (const ocel::SemanticError& err) {
        std::cerr << ocel::report_to_text(err.report());
        std::cerr << err.what() << "\n";
        return kExitValidationErrors;
    } catch (const ocel::UnknownFormatError& err) {
        std::cerr << err.what() << "\n";
        return kExitIoOrParse;
    } catch (const ocel::Error& err) {
        std::cerr << err.what() << "\n";
        return kExitIoOrParse;
    }
    return kExitUsage;
}
