#include <json.hpp>

#include "ocel/formats.hpp"
#include "src/io_util.hpp"

namespace ocel::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void warn_unknown(std::vector<Diagnostic>* warnings, const std::string& location,
                  const std::string& what) {
    if (warnings)
        warnings->push_back({"W005", Severity::Warning, "ignored unknown " + what, location});
}

void check_keys(const json& obj, std::initializer_list<std::string_view> known,
                const std::string& location, std::vector<Diagnostic>* warnings) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const auto& k : known)
            if (key == k) ok = true;
        if (!ok) warn_unknown(warnings, location, "key '" + key + "'");
    }
}

std::string get_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) return "";
    return it->get<std::string>();
}

raw::Value to_raw_value(const json& v, const std::string& location,
                        std::vector<Diagnostic>* warnings) {
    switch (v.type()) {
        case json::value_t::string: return raw::Value::of_text(v.get<std::string>());
        case json::value_t::number_integer: return raw::Value::of_integer(v.get<std::int64_t>());
        case json::value_t::number_unsigned: {
            const std::uint64_t u = v.get<std::uint64_t>();
            if (u <= static_cast<std::uint64_t>(INT64_MAX))
                return raw::Value::of_integer(static_cast<std::int64_t>(u));
            return raw::Value::of_real(static_cast<double>(u));
        }
        case json::value_t::number_float: return raw::Value::of_real(v.get<double>());
        case json::value_t::boolean: return raw::Value::of_boolean(v.get<bool>());
        case json::value_t::null: return raw::Value::null();
        default:
            warn_unknown(warnings, location, "non-scalar value");
            return raw::Value::null();
    }
}

std::vector<raw::TypeDecl> parse_types(const json& arr, const std::string& section,
                                       std::vector<Diagnostic>* warnings) {
    std::vector<raw::TypeDecl> out;
    if (!arr.is_array()) return out;
    for (const auto& entry : arr) {
        if (!entry.is_object()) continue;
        raw::TypeDecl decl;
        decl.name = get_string(entry, "name");
        check_keys(entry, {"name", "attributes"}, section + "/" + decl.name, warnings);
        auto attrs = entry.find("attributes");
        if (attrs != entry.end() && attrs->is_array()) {
            for (const auto& a : *attrs) {
                if (!a.is_object()) continue;
                check_keys(a, {"name", "type"}, section + "/" + decl.name, warnings);
                decl.attributes.push_back({get_string(a, "name"), get_string(a, "type")});
            }
        }
        out.push_back(std::move(decl));
    }
    return out;
}

std::vector<raw::Relation> parse_relations(const json& entry, const std::string& location,
                                           std::vector<Diagnostic>* warnings) {
    std::vector<raw::Relation> out;
    auto rels = entry.find("relationships");
    if (rels == entry.end() || !rels->is_array()) return out;
    for (const auto& r : *rels) {
        if (!r.is_object()) continue;
        check_keys(r, {"objectId", "qualifier"}, location, warnings);
        out.push_back({get_string(r, "objectId"), get_string(r, "qualifier")});
    }
    return out;
}

ordered_json render_value(const AttributeValue& v) {
    switch (v.kind()) {
        case ValueKind::String: return v.as_string();
        case ValueKind::Integer: return v.as_integer();
        case ValueKind::Float: return v.as_float();
        case ValueKind::Boolean: return v.as_boolean();
        case ValueKind::Timestamp: return v.as_timestamp().to_text();
    }
    return nullptr;
}

template <typename RelationList>
ordered_json render_relations(const RelationList& relations) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : relations) {
        ordered_json rel;
        if constexpr (std::is_same_v<typename RelationList::value_type, E2ORelation>)
            rel["objectId"] = r.object_id;
        else
            rel["objectId"] = r.target_object_id;
        rel["qualifier"] = r.qualifier;
        arr.push_back(std::move(rel));
    }
    return arr;
}

template <typename TypeList>
ordered_json render_types(const TypeList& types) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : types) {
        ordered_json entry;
        entry["name"] = t.name;
        ordered_json attrs = ordered_json::array();
        for (const auto& a : t.attributes) {
            ordered_json attr;
            attr["name"] = a.name;
            attr["type"] = std::string(to_string(a.kind));
            attrs.push_back(std::move(attr));
        }
        entry["attributes"] = std::move(attrs);
        arr.push_back(std::move(entry));
    }
    return arr;
}

}  // namespace

raw::Log parse_raw_json(std::string_view text, std::vector<Diagnostic>* parse_warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw JsonSyntaxError(std::string("json syntax error: ") + err.what());
    }
    if (!doc.is_object()) throw JsonSyntaxError("top-level JSON value must be an object");

    check_keys(doc, {"objectTypes", "eventTypes", "objects", "events"}, "log", parse_warnings);

    raw::Log log;
    if (auto it = doc.find("objectTypes"); it != doc.end())
        log.object_types = parse_types(*it, "object-types", parse_warnings);
    if (auto it = doc.find("eventTypes"); it != doc.end())
        log.event_types = parse_types(*it, "event-types", parse_warnings);

    if (auto it = doc.find("objects"); it != doc.end() && it->is_array()) {
        for (const auto& entry : *it) {
            if (!entry.is_object()) continue;
            raw::Object o;
            o.id = get_string(entry, "id");
            o.type_name = get_string(entry, "type");
            const std::string base = "objects/" + o.id;
            check_keys(entry, {"id", "type", "attributes", "relationships"}, base, parse_warnings);
            if (auto attrs = entry.find("attributes"); attrs != entry.end() && attrs->is_array()) {
                for (const auto& a : *attrs) {
                    if (!a.is_object()) continue;
                    check_keys(a, {"name", "time", "value"}, base, parse_warnings);
                    raw::Attribute attr;
                    attr.name = get_string(a, "name");
                    if (auto t = a.find("time"); t != a.end() && t->is_string()) {
                        attr.has_time = true;
                        attr.time_text = t->get<std::string>();
                    }
                    if (auto v = a.find("value"); v != a.end())
                        attr.value = to_raw_value(*v, base, parse_warnings);
                    o.attributes.push_back(std::move(attr));
                }
            }
            o.relations = parse_relations(entry, base, parse_warnings);
            log.objects.push_back(std::move(o));
        }
    }

    if (auto it = doc.find("events"); it != doc.end() && it->is_array()) {
        for (const auto& entry : *it) {
            if (!entry.is_object()) continue;
            raw::Event e;
            e.id = get_string(entry, "id");
            e.type_name = get_string(entry, "type");
            e.time_text = get_string(entry, "time");
            const std::string base = "events/" + e.id;
            check_keys(entry, {"id", "type", "time", "attributes", "relationships"}, base,
                       parse_warnings);
            if (auto attrs = entry.find("attributes"); attrs != entry.end() && attrs->is_array()) {
                for (const auto& a : *attrs) {
                    if (!a.is_object()) continue;
                    check_keys(a, {"name", "value"}, base, parse_warnings);
                    raw::Attribute attr;
                    attr.name = get_string(a, "name");
                    if (auto v = a.find("value"); v != a.end())
                        attr.value = to_raw_value(*v, base, parse_warnings);
                    e.attributes.push_back(std::move(attr));
                }
            }
            e.relations = parse_relations(entry, base, parse_warnings);
            log.events.push_back(std::move(e));
        }
    }
    return log;
}

std::string write_json_string(const OcelLog& log) {
    ordered_json doc;
    doc["objectTypes"] = render_types(log.object_types());
    doc["eventTypes"] = render_types(log.event_types());

    ordered_json objects = ordered_json::array();
    for (const auto& o : log.objects()) {
        ordered_json entry;
        entry["id"] = o.id;
        entry["type"] = o.type_name;
        ordered_json attrs = ordered_json::array();
        for (const auto& snap : o.attribute_history) {
            ordered_json attr;
            attr["name"] = snap.name;
            attr["time"] = snap.time.to_text();
            attr["value"] = render_value(snap.value);
            attrs.push_back(std::move(attr));
        }
        entry["attributes"] = std::move(attrs);
        entry["relationships"] = render_relations(o.relations);
        objects.push_back(std::move(entry));
    }
    doc["objects"] = std::move(objects);

    ordered_json events = ordered_json::array();
    for (const auto& e : log.events()) {
        ordered_json entry;
        entry["id"] = e.id;
        entry["type"] = e.type_name;
        entry["time"] = e.time.to_text();
        ordered_json attrs = ordered_json::array();
        for (const auto& [name, value] : e.attributes) {
            ordered_json attr;
            attr["name"] = name;
            attr["value"] = render_value(value);
            attrs.push_back(std::move(attr));
        }
        entry["attributes"] = std::move(attrs);
        entry["relationships"] = render_relations(e.relations);
        events.push_back(std::move(entry));
    }
    doc["events"] = std::move(events);

    return doc.dump(2) + "\n";
}

ReadResult read_json_string(std::string_view text) {
    std::vector<Diagnostic> parse_warnings;
    raw::Log raw = parse_raw_json(text, &parse_warnings);
    ReadResult result = finalize(raw);
    for (auto& w : parse_warnings) result.report.diagnostics.push_back(std::move(w));
    finish_report(result.report);
    return result;
}

ReadResult read_json(const std::string& path) {
    return read_json_string(detail::read_file(path));
}

void write_json(const OcelLog& log, const std::string& path) {
    detail::write_file(path, write_json_string(log));
}

}  // namespace ocel::io
