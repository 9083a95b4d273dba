#include <map>

#include <json.hpp>

#include "ocel/formats.hpp"
#include "ocel/xml.hpp"
#include "src/io_util.hpp"

namespace ocel::io {

namespace {

using nlohmann::json;

// Observed value kind used to synthesize attribute declarations.
enum class Observed { String, Integer, Float, Boolean, Timestamp };

Observed merge(Observed a, Observed b) {
    if (a == b) return a;
    if ((a == Observed::Integer && b == Observed::Float) ||
        (a == Observed::Float && b == Observed::Integer))
        return Observed::Float;
    return Observed::String;
}

std::string kind_text(Observed k) {
    switch (k) {
        case Observed::String: return "string";
        case Observed::Integer: return "integer";
        case Observed::Float: return "float";
        case Observed::Boolean: return "boolean";
        case Observed::Timestamp: return "time";
    }
    return "string";
}

struct TypedValue {
    raw::Value value;
    Observed observed = Observed::String;
};

struct LegacyEvent {
    std::string id;
    std::string activity;
    std::string timestamp_text;
    std::vector<std::string> omap;
    std::vector<std::pair<std::string, TypedValue>> vmap;
};

struct LegacyObject {
    std::string id;
    std::string type_name;
    std::vector<std::pair<std::string, TypedValue>> ovmap;
};

struct LegacyLog {
    std::vector<std::string> declared_object_types;
    std::vector<LegacyEvent> events;
    std::vector<LegacyObject> objects;
};

/// Converts an observed value to the synthesized (possibly widened) kind.
raw::Value widen(const TypedValue& tv, Observed target) {
    if (target == Observed::Float && tv.observed == Observed::Integer)
        return raw::Value::of_real(static_cast<double>(tv.value.integer));
    if (target == Observed::String && tv.observed != Observed::String) {
        switch (tv.value.tag) {
            case raw::Value::Tag::Integer: {
                AttributeValue v(tv.value.integer);
                return raw::Value::of_text(v.to_text());
            }
            case raw::Value::Tag::Real: return raw::Value::of_text(float_to_text(tv.value.real));
            case raw::Value::Tag::Boolean:
                return raw::Value::of_text(tv.value.boolean ? "true" : "false");
            default: return raw::Value::of_text(tv.value.text);
        }
    }
    return tv.value;
}

TypedValue from_json_value(const json& v) {
    switch (v.type()) {
        case json::value_t::string: return {raw::Value::of_text(v.get<std::string>()), Observed::String};
        case json::value_t::number_integer:
            return {raw::Value::of_integer(v.get<std::int64_t>()), Observed::Integer};
        case json::value_t::number_unsigned: {
            const std::uint64_t u = v.get<std::uint64_t>();
            if (u <= static_cast<std::uint64_t>(INT64_MAX))
                return {raw::Value::of_integer(static_cast<std::int64_t>(u)), Observed::Integer};
            return {raw::Value::of_real(static_cast<double>(u)), Observed::Float};
        }
        case json::value_t::number_float:
            return {raw::Value::of_real(v.get<double>()), Observed::Float};
        case json::value_t::boolean: return {raw::Value::of_boolean(v.get<bool>()), Observed::Boolean};
        default: return {raw::Value::of_text(v.dump()), Observed::String};
    }
}

LegacyLog parse_legacy_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw Ocel1SyntaxError(std::string("ocel 1.0 json syntax error: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("ocel:events"))
        throw Ocel1SyntaxError("not an OCEL 1.0 document: missing 'ocel:events'");

    LegacyLog log;
    if (auto global = doc.find("ocel:global-log"); global != doc.end() && global->is_object()) {
        if (auto types = global->find("ocel:object-types");
            types != global->end() && types->is_array()) {
            for (const auto& t : *types)
                if (t.is_string()) log.declared_object_types.push_back(t.get<std::string>());
        }
    }

    const json& events = doc.at("ocel:events");
    if (!events.is_object()) throw Ocel1SyntaxError("'ocel:events' must be an object");
    for (const auto& [id, entry] : events.items()) {
        if (!entry.is_object()) throw Ocel1SyntaxError("event '" + id + "' must be an object");
        LegacyEvent e;
        e.id = id;
        if (auto it = entry.find("ocel:activity"); it != entry.end() && it->is_string())
            e.activity = it->get<std::string>();
        if (auto it = entry.find("ocel:timestamp"); it != entry.end() && it->is_string())
            e.timestamp_text = it->get<std::string>();
        if (auto it = entry.find("ocel:omap"); it != entry.end() && it->is_array())
            for (const auto& o : *it)
                if (o.is_string()) e.omap.push_back(o.get<std::string>());
        if (auto it = entry.find("ocel:vmap"); it != entry.end() && it->is_object())
            for (const auto& [name, v] : it->items()) e.vmap.emplace_back(name, from_json_value(v));
        log.events.push_back(std::move(e));
    }

    if (auto objects = doc.find("ocel:objects"); objects != doc.end() && objects->is_object()) {
        for (const auto& [id, entry] : objects->items()) {
            if (!entry.is_object()) throw Ocel1SyntaxError("object '" + id + "' must be an object");
            LegacyObject o;
            o.id = id;
            if (auto it = entry.find("ocel:type"); it != entry.end() && it->is_string())
                o.type_name = it->get<std::string>();
            if (auto it = entry.find("ocel:ovmap"); it != entry.end() && it->is_object())
                for (const auto& [name, v] : it->items())
                    o.ovmap.emplace_back(name, from_json_value(v));
            log.objects.push_back(std::move(o));
        }
    }
    return log;
}

TypedValue from_typed_element(const xml::Element& el) {
    const std::string* value = el.find_attribute("value");
    const std::string text = value ? *value : "";
    if (el.name == "int") {
        if (auto i = integer_from_text(text)) return {raw::Value::of_integer(*i), Observed::Integer};
    } else if (el.name == "float") {
        if (auto d = float_from_text(text)) return {raw::Value::of_real(*d), Observed::Float};
    } else if (el.name == "boolean") {
        if (text == "true") return {raw::Value::of_boolean(true), Observed::Boolean};
        if (text == "false") return {raw::Value::of_boolean(false), Observed::Boolean};
    } else if (el.name == "date") {
        return {raw::Value::of_text(text), Observed::Timestamp};
    }
    return {raw::Value::of_text(text), Observed::String};
}

const std::string* element_key(const xml::Element& el) {
    return el.find_attribute("key");
}

LegacyLog parse_legacy_xml(std::string_view text) {
    xml::Element root;
    try {
        root = xml::parse(text);
    } catch (const XmlSyntaxError& err) {
        throw Ocel1SyntaxError(std::string("ocel 1.0 xml syntax error: ") + err.what());
    }
    if (root.name != "log") throw Ocel1SyntaxError("expected root element <log>");

    LegacyLog log;
    for (const auto& section : root.children) {
        if (section.name == "global") {
            const std::string* scope = section.find_attribute("scope");
            if (!scope || *scope != "log") continue;
            for (const auto& list : section.children) {
                const std::string* key = element_key(list);
                if (list.name != "list" || !key || *key != "object-types") continue;
                for (const auto& entry : list.children)
                    if (const std::string* v = entry.find_attribute("value"))
                        log.declared_object_types.push_back(*v);
            }
        } else if (section.name == "events") {
            for (const auto& ev : section.children) {
                if (ev.name != "event") continue;
                LegacyEvent e;
                for (const auto& field : ev.children) {
                    const std::string* key = element_key(field);
                    if (!key) continue;
                    if (*key == "id") {
                        if (const std::string* v = field.find_attribute("value")) e.id = *v;
                    } else if (*key == "activity") {
                        if (const std::string* v = field.find_attribute("value")) e.activity = *v;
                    } else if (*key == "timestamp") {
                        if (const std::string* v = field.find_attribute("value"))
                            e.timestamp_text = *v;
                    } else if (*key == "omap") {
                        for (const auto& entry : field.children)
                            if (const std::string* v = entry.find_attribute("value"))
                                e.omap.push_back(*v);
                    } else if (*key == "vmap") {
                        for (const auto& entry : field.children) {
                            const std::string* name = element_key(entry);
                            if (name) e.vmap.emplace_back(*name, from_typed_element(entry));
                        }
                    }
                }
                log.events.push_back(std::move(e));
            }
        } else if (section.name == "objects") {
            for (const auto& obj : section.children) {
                if (obj.name != "object") continue;
                LegacyObject o;
                for (const auto& field : obj.children) {
                    const std::string* key = element_key(field);
                    if (!key) continue;
                    if (*key == "id") {
                        if (const std::string* v = field.find_attribute("value")) o.id = *v;
                    } else if (*key == "type") {
                        if (const std::string* v = field.find_attribute("value")) o.type_name = *v;
                    } else if (*key == "ovmap") {
                        for (const auto& entry : field.children) {
                            const std::string* name = element_key(entry);
                            if (name) o.ovmap.emplace_back(*name, from_typed_element(entry));
                        }
                    }
                }
                log.objects.push_back(std::move(o));
            }
        }
    }
    return log;
}

}  // namespace

raw::Log parse_raw_ocel1(std::string_view text, FormatKind kind,
                         std::vector<Diagnostic>* parse_warnings) {
    (void)parse_warnings;
    if (kind != FormatKind::Ocel1Json && kind != FormatKind::Ocel1Xml)
        throw Ocel1SyntaxError("not an OCEL 1.0 format kind");
    const LegacyLog legacy =
        kind == FormatKind::Ocel1Json ? parse_legacy_json(text) : parse_legacy_xml(text);

    // synthesize declarations from the observed activities, object types,
    // and value kinds
    std::map<std::string, std::map<std::string, Observed>> event_attrs;
    std::map<std::string, std::map<std::string, Observed>> object_attrs;
    for (const auto& e : legacy.events) {
        auto& attrs = event_attrs[e.activity];
        for (const auto& [name, tv] : e.vmap) {
            auto it = attrs.find(name);
            if (it == attrs.end())
                attrs.emplace(name, tv.observed);
            else
                it->second = merge(it->second, tv.observed);
        }
    }
    for (const auto& type_name : legacy.declared_object_types) object_attrs[type_name];
    for (const auto& o : legacy.objects) {
        auto& attrs = object_attrs[o.type_name];
        for (const auto& [name, tv] : o.ovmap) {
            auto it = attrs.find(name);
            if (it == attrs.end())
                attrs.emplace(name, tv.observed);
            else
                it->second = merge(it->second, tv.observed);
        }
    }

    raw::Log out;
    for (const auto& [activity, attrs] : event_attrs) {
        raw::TypeDecl decl{activity, {}};
        for (const auto& [name, kind_value] : attrs)
            decl.attributes.push_back({name, kind_text(kind_value)});
        out.event_types.push_back(std::move(decl));
    }
    for (const auto& [type_name, attrs] : object_attrs) {
        raw::TypeDecl decl{type_name, {}};
        for (const auto& [name, kind_value] : attrs)
            decl.attributes.push_back({name, kind_text(kind_value)});
        out.object_types.push_back(std::move(decl));
    }

    for (const auto& o : legacy.objects) {
        raw::Object object;
        object.id = o.id;
        object.type_name = o.type_name;
        const auto& attrs = object_attrs.at(o.type_name);
        for (const auto& [name, tv] : o.ovmap)
            object.attributes.push_back({name, false, {}, widen(tv, attrs.at(name))});
        out.objects.push_back(std::move(object));
    }
    for (const auto& e : legacy.events) {
        raw::Event event;
        event.id = e.id;
        event.type_name = e.activity;
        event.time_text = e.timestamp_text;
        const auto& attrs = event_attrs.at(e.activity);
        for (const auto& [name, tv] : e.vmap)
            event.attributes.push_back({name, false, {}, widen(tv, attrs.at(name))});
        for (const auto& target : e.omap) event.relations.push_back({target, ""});
        out.events.push_back(std::move(event));
    }
    return out;
}

ReadResult import_ocel1_string(std::string_view text, FormatKind kind) {
    std::vector<Diagnostic> parse_warnings;
    raw::Log raw = parse_raw_ocel1(text, kind, &parse_warnings);
    FinalizeOptions options;
    options.suppress_empty_qualifier_warning = true;
    options.suppress_epoch_snapshot_warning = true;
    ReadResult result = finalize(raw, options);
    for (auto& w : parse_warnings) result.report.diagnostics.push_back(std::move(w));
    finish_report(result.report);
    return result;
}

ReadResult import_ocel1(const std::string& path, FormatKind kind) {
    return import_ocel1_string(detail::read_file(path), kind);
}

}  // namespace ocel::io
