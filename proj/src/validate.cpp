#include "ocel/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace ocel {

namespace {

constexpr std::int64_t kMaxExactDoubleInt = 9007199254740992LL;  // 2^53

std::string severity_word(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

struct Checker {
    const raw::Log& raw;
    std::vector<Diagnostic> out;

    // resolved declarations; first occurrence wins on duplicate names
    std::unordered_map<std::string, std::unordered_map<std::string, ValueKind>> event_decls;
    std::unordered_map<std::string, std::unordered_map<std::string, ValueKind>> object_decls;
    std::unordered_set<std::string> object_ids;

    void error(std::string code, std::string location, std::string message) {
        out.push_back({std::move(code), Severity::Error, std::move(message), std::move(location)});
    }
    void warning(std::string code, std::string location, std::string message) {
        out.push_back({std::move(code), Severity::Warning, std::move(message), std::move(location)});
    }

    void check_type_decls(const std::vector<raw::TypeDecl>& decls, const char* section,
                          std::unordered_map<std::string, std::unordered_map<std::string, ValueKind>>& resolved) {
        std::unordered_set<std::string> seen;
        for (const auto& decl : decls) {
            const std::string base = std::string(section) + "/" + decl.name;
            if (decl.name.empty()) {
                error("E007", base, "type with empty name");
                continue;
            }
            if (!seen.insert(decl.name).second) {
                error("E007", base, "duplicate type name '" + decl.name + "'");
                continue;
            }
            auto& attrs = resolved[decl.name];
            for (std::size_t i = 0; i < decl.attributes.size(); ++i) {
                const auto& a = decl.attributes[i];
                const std::string loc = base + "/attributes/" + std::to_string(i);
                if (a.name.empty()) {
                    error("E007", loc, "attribute declaration with empty name");
                    continue;
                }
                auto kind = parse_value_kind(a.kind_text);
                if (!kind) {
                    error("E006", loc, "unknown attribute kind '" + a.kind_text + "'");
                    continue;
                }
                if (!attrs.emplace(a.name, *kind).second)
                    error("E007", loc, "duplicate attribute declaration '" + a.name + "'");
            }
        }
    }

    // Converts a raw scalar against the declared kind. On failure
    // timestamp_parse_failure distinguishes E008 from E006.
    std::optional<AttributeValue> convert(const raw::Value& v, ValueKind kind,
                                          bool& timestamp_parse_failure) const {
        timestamp_parse_failure = false;
        using Tag = raw::Value::Tag;
        switch (kind) {
            case ValueKind::String:
                if (v.tag == Tag::Text) return AttributeValue(v.text);
                return std::nullopt;
            case ValueKind::Integer:
                if (v.tag == Tag::Integer) return AttributeValue(v.integer);
                if (v.tag == Tag::Text) {
                    if (auto i = integer_from_text(v.text)) return AttributeValue(*i);
                    return std::nullopt;
                }
                if (v.tag == Tag::Real) {
                    // storage variants may widen integers to numbers
                    if (std::isfinite(v.real) && std::floor(v.real) == v.real &&
                        std::abs(v.real) <= static_cast<double>(kMaxExactDoubleInt))
                        return AttributeValue(static_cast<std::int64_t>(v.real));
                    return std::nullopt;
                }
                return std::nullopt;
            case ValueKind::Float:
                if (v.tag == Tag::Real) {
                    if (!std::isfinite(v.real)) return std::nullopt;
                    return AttributeValue(v.real);
                }
                if (v.tag == Tag::Integer) return AttributeValue(static_cast<double>(v.integer));
                if (v.tag == Tag::Text) {
                    auto d = float_from_text(v.text);
                    if (d && std::isfinite(*d)) return AttributeValue(*d);
                    return std::nullopt;
                }
                return std::nullopt;
            case ValueKind::Boolean:
                if (v.tag == Tag::Boolean) return AttributeValue(v.boolean);
                if (v.tag == Tag::Integer && (v.integer == 0 || v.integer == 1))
                    return AttributeValue(v.integer == 1);
                if (v.tag == Tag::Text) {
                    if (v.text == "true" || v.text == "1") return AttributeValue(true);
                    if (v.text == "false" || v.text == "0") return AttributeValue(false);
                    return std::nullopt;
                }
                return std::nullopt;
            case ValueKind::Timestamp:
                if (v.tag == Tag::Text) {
                    if (auto t = Timestamp::parse(v.text)) return AttributeValue(*t);
                    timestamp_parse_failure = true;
                    return std::nullopt;
                }
                return std::nullopt;
        }
        return std::nullopt;
    }

    void check_relations(const std::vector<raw::Relation>& relations, const std::string& base,
                         const char* dangling_code) {
        std::set<std::pair<std::string, std::string>> seen;
        for (std::size_t i = 0; i < relations.size(); ++i) {
            const auto& r = relations[i];
            const std::string loc = base + "/relations/" + std::to_string(i);
            if (!object_ids.contains(r.object_id)) {
                error(dangling_code, loc,
                      "relation references unknown object '" + r.object_id + "'");
                continue;
            }
            if (r.qualifier.empty()) warning("W001", loc, "empty qualifier");
            if (!seen.emplace(r.object_id, r.qualifier).second)
                warning("W003", loc, "duplicate relation pair ('" + r.object_id + "', '" +
                                         r.qualifier + "'), deduplicated");
        }
    }

    void check_event(const raw::Event& e) {
        const std::string base = "events/" + e.id;
        auto decl = event_decls.find(e.type_name);
        if (decl == event_decls.end())
            error("E003", base, "unknown event type '" + e.type_name + "'");
        if (!Timestamp::parse(e.time_text))
            error("E008", base + "/time",
                  e.time_text.empty() ? "missing timestamp"
                                      : "unparseable timestamp '" + e.time_text + "'");
        if (decl != event_decls.end()) {
            std::map<std::string, AttributeValue> seen;
            for (std::size_t i = 0; i < e.attributes.size(); ++i) {
                const auto& a = e.attributes[i];
                const std::string loc = base + "/attributes/" + std::to_string(i);
                auto it = decl->second.find(a.name);
                if (it == decl->second.end()) {
                    error("E005", loc, "attribute '" + a.name + "' not declared for event type '" +
                                           e.type_name + "'");
                    continue;
                }
                bool ts_fail = false;
                auto value = convert(a.value, it->second, ts_fail);
                if (!value) {
                    if (ts_fail)
                        error("E008", loc, "unparseable timestamp value in attribute '" + a.name + "'");
                    else
                        error("E006", loc, "value of attribute '" + a.name + "' does not match kind '" +
                                               std::string(to_string(it->second)) + "'");
                    continue;
                }
                auto prev = seen.find(a.name);
                if (prev != seen.end()) {
                    if (prev->second == *value)
                        warning("W003", loc, "duplicate attribute '" + a.name + "', deduplicated");
                    else
                        error("E007", loc, "conflicting duplicate attribute '" + a.name + "'");
                    continue;
                }
                seen.emplace(a.name, std::move(*value));
            }
        }
        check_relations(e.relations, base, "E001");
    }

    void check_object(const raw::Object& o) {
        const std::string base = "objects/" + o.id;
        auto decl = object_decls.find(o.type_name);
        if (decl == object_decls.end())
            error("E004", base, "unknown object type '" + o.type_name + "'");
        if (decl != object_decls.end()) {
            std::map<std::pair<std::string, Timestamp>, AttributeValue> seen;
            for (std::size_t i = 0; i < o.attributes.size(); ++i) {
                const auto& a = o.attributes[i];
                const std::string loc = base + "/attributes/" + std::to_string(i);
                Timestamp t = Timestamp::epoch();
                if (a.has_time) {
                    auto parsed = Timestamp::parse(a.time_text);
                    if (!parsed) {
                        error("E008", loc + "/time",
                              "unparseable snapshot timestamp '" + a.time_text + "'");
                        continue;
                    }
                    t = *parsed;
                }
                auto it = decl->second.find(a.name);
                if (it == decl->second.end()) {
                    error("E005", loc, "attribute '" + a.name + "' not declared for object type '" +
                                           o.type_name + "'");
                    continue;
                }
                bool ts_fail = false;
                auto value = convert(a.value, it->second, ts_fail);
                if (!value) {
                    if (ts_fail)
                        error("E008", loc, "unparseable timestamp value in attribute '" + a.name + "'");
                    else
                        error("E006", loc, "value of attribute '" + a.name + "' does not match kind '" +
                                               std::string(to_string(it->second)) + "'");
                    continue;
                }
                if (t.is_epoch())
                    warning("W004", loc, "attribute snapshot at the epoch sentinel");
                auto key = std::make_pair(a.name, t);
                auto prev = seen.find(key);
                if (prev != seen.end()) {
                    if (prev->second == *value)
                        warning("W003", loc, "duplicate snapshot ('" + a.name + "'), deduplicated");
                    else
                        error("E007", loc, "conflicting snapshots of '" + a.name + "' at one instant");
                    continue;
                }
                seen.emplace(std::move(key), std::move(*value));
            }
        }
        check_relations(o.relations, base, "E002");
    }

    void run() {
        check_type_decls(raw.event_types, "event-types", event_decls);
        check_type_decls(raw.object_types, "object-types", object_decls);

        std::unordered_set<std::string> event_ids;
        for (const auto& o : raw.objects) {
            if (o.id.empty())
                error("E007", "objects/", "object with empty id");
            else if (!object_ids.insert(o.id).second)
                error("E007", "objects/" + o.id, "duplicate object id '" + o.id + "'");
        }
        for (const auto& e : raw.events) {
            if (e.id.empty())
                error("E007", "events/", "event with empty id");
            else if (!event_ids.insert(e.id).second)
                error("E007", "events/" + e.id, "duplicate event id '" + e.id + "'");
        }

        for (const auto& e : raw.events) check_event(e);
        for (const auto& o : raw.objects) check_object(o);

        // participation: any E2O mention counts, whatever else is wrong
        std::unordered_set<std::string> participating;
        for (const auto& e : raw.events)
            for (const auto& r : e.relations) participating.insert(r.object_id);
        for (const auto& o : raw.objects)
            if (!o.id.empty() && !participating.contains(o.id))
                warning("W002", "objects/" + o.id, "object participates in no event");
    }
};

}  // namespace

void finish_report(ValidationReport& report) {
    std::stable_sort(report.diagnostics.begin(), report.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         return std::tie(a.location, a.code, a.message) <
                                std::tie(b.location, b.code, b.message);
                     });
    report.error_count = 0;
    report.warning_count = 0;
    for (const auto& d : report.diagnostics)
        (d.severity == Severity::Error ? report.error_count : report.warning_count)++;
}

ValidationReport validate(const raw::Log& raw_log) {
    Checker checker{raw_log, {}, {}, {}, {}};
    checker.run();
    ValidationReport report;
    report.diagnostics = std::move(checker.out);
    finish_report(report);
    return report;
}

std::string report_to_text(const ValidationReport& report) {
    std::string out;
    for (const auto& d : report.diagnostics) {
        out += severity_word(d.severity);
        out += ' ';
        out += d.code;
        out += ' ';
        out += d.location;
        out += ": ";
        out += d.message;
        out += '\n';
    }
    return out;
}

std::string report_to_json(const ValidationReport& report) {
    nlohmann::ordered_json doc;
    doc["diagnostics"] = nlohmann::ordered_json::array();
    for (const auto& d : report.diagnostics) {
        nlohmann::ordered_json entry;
        entry["severity"] = severity_word(d.severity);
        entry["code"] = d.code;
        entry["location"] = d.location;
        entry["message"] = d.message;
        doc["diagnostics"].push_back(std::move(entry));
    }
    doc["error_count"] = report.error_count;
    doc["warning_count"] = report.warning_count;
    return doc.dump(2) + "\n";
}

SemanticError::SemanticError(ValidationReport report)
    : Error("log violates the metamodel: " + std::to_string(report.error_count) +
            " error(s); first: " +
            (report.diagnostics.empty() ? std::string("<none>")
                                        : report.diagnostics.front().code + " " +
                                              report.diagnostics.front().location + ": " +
                                              report.diagnostics.front().message)),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// finalize: repair + canonicalize a validated raw log

class LogAssembler {
public:
    static OcelLog assemble(const raw::Log& raw) {
        Checker checker{raw, {}, {}, {}, {}};
        checker.check_type_decls(raw.event_types, "event-types", checker.event_decls);
        checker.check_type_decls(raw.object_types, "object-types", checker.object_decls);
        for (const auto& o : raw.objects) checker.object_ids.insert(o.id);

        OcelLog log;
        for (const auto& [name, attrs] : checker.event_decls)
            log.event_types_.push_back({name, sorted_decls(attrs)});
        for (const auto& [name, attrs] : checker.object_decls)
            log.object_types_.push_back({name, sorted_decls(attrs)});
        std::sort(log.event_types_.begin(), log.event_types_.end(),
                  [](const auto& a, const auto& b) { return a.name < b.name; });
        std::sort(log.object_types_.begin(), log.object_types_.end(),
                  [](const auto& a, const auto& b) { return a.name < b.name; });

        bool ts_fail = false;
        for (const auto& ro : raw.objects) {
            ObjectEntity entity;
            entity.id = ro.id;
            entity.type_name = ro.type_name;
            const auto& decls = checker.object_decls.at(ro.type_name);
            std::set<std::pair<std::string, Timestamp>> seen;
            for (const auto& a : ro.attributes) {
                Timestamp t = Timestamp::epoch();
                if (a.has_time) t = *Timestamp::parse(a.time_text);
                if (!seen.emplace(a.name, t).second) continue;  // deduped (W003)
                entity.attribute_history.push_back(
                    {a.name, t, *checker.convert(a.value, decls.at(a.name), ts_fail)});
            }
            std::sort(entity.attribute_history.begin(), entity.attribute_history.end(),
                      [](const AttributeSnapshot& a, const AttributeSnapshot& b) {
                          return std::tie(a.name, a.time) < std::tie(b.name, b.time);
                      });
            entity.relations = dedup_relations<O2ORelation>(ro.relations);
            log.objects_.push_back(std::move(entity));
        }
        std::sort(log.objects_.begin(), log.objects_.end(),
                  [](const ObjectEntity& a, const ObjectEntity& b) { return a.id < b.id; });

        for (const auto& re : raw.events) {
            Event event;
            event.id = re.id;
            event.type_name = re.type_name;
            event.time = *Timestamp::parse(re.time_text);
            const auto& decls = checker.event_decls.at(re.type_name);
            for (const auto& a : re.attributes)
                event.attributes.emplace(a.name, *checker.convert(a.value, decls.at(a.name), ts_fail));
            event.relations = dedup_relations<E2ORelation>(re.relations);
            log.events_.push_back(std::move(event));
        }
        std::sort(log.events_.begin(), log.events_.end(), [](const Event& a, const Event& b) {
            return std::tie(a.time, a.id) < std::tie(b.time, b.id);
        });

        for (std::size_t i = 0; i < log.event_types_.size(); ++i)
            log.event_type_index_.emplace(log.event_types_[i].name, i);
        for (std::size_t i = 0; i < log.object_types_.size(); ++i)
            log.object_type_index_.emplace(log.object_types_[i].name, i);
        for (std::size_t i = 0; i < log.objects_.size(); ++i)
            log.object_index_.emplace(log.objects_[i].id, i);
        for (std::size_t i = 0; i < log.events_.size(); ++i)
            log.event_index_.emplace(log.events_[i].id, i);
        return log;
    }

private:
    static std::vector<AttributeDeclaration> sorted_decls(
        const std::unordered_map<std::string, ValueKind>& attrs) {
        std::vector<AttributeDeclaration> out;
        out.reserve(attrs.size());
        for (const auto& [name, kind] : attrs) out.push_back({name, kind});
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.name < b.name; });
        return out;
    }

    template <typename RelationT>
    static std::vector<RelationT> dedup_relations(const std::vector<raw::Relation>& relations) {
        std::vector<RelationT> out;
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& r : relations)
            if (seen.emplace(r.object_id, r.qualifier).second)
                out.push_back({r.object_id, r.qualifier});
        std::sort(out.begin(), out.end());
        return out;
    }
};

ReadResult finalize(const raw::Log& raw_log, const FinalizeOptions& options) {
    ValidationReport report = validate(raw_log);
    if (options.suppress_empty_qualifier_warning || options.suppress_epoch_snapshot_warning) {
        std::erase_if(report.diagnostics, [&](const Diagnostic& d) {
            return (options.suppress_empty_qualifier_warning && d.code == "W001") ||
                   (options.suppress_epoch_snapshot_warning && d.code == "W004");
        });
        finish_report(report);
    }
    if (report.error_count > 0) throw SemanticError(std::move(report));
    return {LogAssembler::assemble(raw_log), std::move(report)};
}

}  // namespace ocel
