#ifndef OCEL_VALIDATE_HPP
#define OCEL_VALIDATE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ocel/errors.hpp"
#include "ocel/model.hpp"
#include "ocel/raw.hpp"

namespace ocel {

enum class Severity { Error, Warning };

/// One validation finding.
///
/// Codes:
///   E001 dangling E2O reference        E005 undeclared attribute
///   E002 dangling O2O reference        E006 attribute kind mismatch
///   E003 unknown event type            E007 duplicate event/object id
///   E004 unknown object type           E008 unparseable timestamp
///   W001 empty qualifier               W003 duplicate relation pair
///   W002 object participating in       W004 attribute snapshot at the
///        no event                           epoch sentinel
///   W005 unknown field ignored (emitted by readers, not by validate)
struct Diagnostic {
    std::string code;
    Severity severity = Severity::Error;
    std::string message;
    std::string location;  // path-like, e.g. "events/e7/relations/2"

    bool operator==(const Diagnostic&) const = default;
};

struct ValidationReport {
    std::vector<Diagnostic> diagnostics;  // sorted by (location, code)
    std::size_t error_count = 0;
    std::size_t warning_count = 0;

    bool valid() const { return error_count == 0; }
};

/// Checks a parsed-but-unchecked log against the metamodel. Never
/// mutates and never fails: every finding is data. A log is valid OCEL
/// 2.0 iff the returned report has error_count == 0.
ValidationReport validate(const raw::Log& raw_log);

/// Normalizes diagnostic order and recomputes the counts.
void finish_report(ValidationReport& report);

/// One line per diagnostic: "<severity> <code> <location>: <message>".
std::string report_to_text(const ValidationReport& report);

/// The same fields as a JSON document.
std::string report_to_json(const ValidationReport& report);

/// A log decoded from a storage format plus the warnings seen on the way.
struct ReadResult {
    OcelLog log;
    ValidationReport report;  // warnings only
};

/// Thrown when a parsed log has error-severity violations.
class SemanticError : public Error {
public:
    explicit SemanticError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

struct FinalizeOptions {
    /// OCEL 1.0 import: empty qualifiers and epoch snapshots are
    /// expected artifacts of the mapping, not hygiene findings.
    bool suppress_empty_qualifier_warning = false;
    bool suppress_epoch_snapshot_warning = false;
};

/// validate + repair + canonicalize. Deduplicates duplicate relation
/// pairs and identical duplicate snapshots (the W003 findings), then
/// builds the canonical log. Throws SemanticError when the report
/// contains errors.
ReadResult finalize(const raw::Log& raw_log, const FinalizeOptions& options = {});

}  // namespace ocel

#endif
