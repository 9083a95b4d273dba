#include <fstream>
#include <sstream>

#include "ocel/formats.hpp"
#include "ocel/xml.hpp"
#include "src/io_util.hpp"

namespace ocel::io {

namespace {

void warn_unknown(std::vector<Diagnostic>* warnings, const std::string& location,
                  const std::string& what) {
    if (warnings)
        warnings->push_back({"W005", Severity::Warning, "ignored unknown " + what, location});
}

void check_attrs(const xml::Element& e, std::initializer_list<std::string_view> known,
                 const std::string& location, std::vector<Diagnostic>* warnings) {
    for (const auto& [name, value] : e.attributes) {
        bool ok = false;
        for (const auto& k : known)
            if (name == k) ok = true;
        if (!ok) warn_unknown(warnings, location, "attribute '" + name + "'");
    }
}

std::vector<raw::AttributeDecl> parse_type_attrs(const xml::Element& type_el,
                                                 const std::string& location,
                                                 std::vector<Diagnostic>* warnings) {
    std::vector<raw::AttributeDecl> out;
    for (const auto& child : type_el.children) {
        if (child.name != "attributes") {
            warn_unknown(warnings, location, "element '" + child.name + "'");
            continue;
        }
        for (const auto& attr : child.children) {
            if (attr.name != "attribute") {
                warn_unknown(warnings, location, "element '" + attr.name + "'");
                continue;
            }
            check_attrs(attr, {"name", "type"}, location, warnings);
            const std::string* name = attr.find_attribute("name");
            const std::string* kind = attr.find_attribute("type");
            out.push_back({name ? *name : "", kind ? *kind : ""});
        }
    }
    return out;
}

std::vector<raw::TypeDecl> parse_types(const xml::Element& section, std::string_view entry_name,
                                       const std::string& section_path,
                                       std::vector<Diagnostic>* warnings) {
    std::vector<raw::TypeDecl> out;
    for (const auto& child : section.children) {
        if (child.name != entry_name) {
            warn_unknown(warnings, section_path, "element '" + child.name + "'");
            continue;
        }
        check_attrs(child, {"name"}, section_path, warnings);
        const std::string* name = child.find_attribute("name");
        raw::TypeDecl decl;
        decl.name = name ? *name : "";
        decl.attributes = parse_type_attrs(child, section_path + "/" + decl.name, warnings);
        out.push_back(std::move(decl));
    }
    return out;
}

std::vector<raw::Relation> parse_relations(const xml::Element& container,
                                           const std::string& location,
                                           std::vector<Diagnostic>* warnings) {
    std::vector<raw::Relation> out;
    for (const auto& rel : container.children) {
        if (rel.name != "relationship") {
            warn_unknown(warnings, location, "element '" + rel.name + "'");
            continue;
        }
        check_attrs(rel, {"object-id", "qualifier"}, location, warnings);
        const std::string* target = rel.find_attribute("object-id");
        const std::string* qualifier = rel.find_attribute("qualifier");
        out.push_back({target ? *target : "", qualifier ? *qualifier : ""});
    }
    return out;
}

std::vector<raw::Attribute> parse_instance_attrs(const xml::Element& container, bool timed,
                                                 const std::string& location,
                                                 std::vector<Diagnostic>* warnings) {
    std::vector<raw::Attribute> out;
    for (const auto& attr : container.children) {
        if (attr.name != "attribute") {
            warn_unknown(warnings, location, "element '" + attr.name + "'");
            continue;
        }
        if (timed)
            check_attrs(attr, {"name", "time"}, location, warnings);
        else
            check_attrs(attr, {"name"}, location, warnings);
        raw::Attribute a;
        const std::string* name = attr.find_attribute("name");
        a.name = name ? *name : "";
        if (timed) {
            if (const std::string* time = attr.find_attribute("time")) {
                a.has_time = true;
                a.time_text = *time;
            }
        }
        a.value = raw::Value::of_text(attr.text);
        out.push_back(std::move(a));
    }
    return out;
}

xml::Element value_element(std::string name) {
    xml::Element e;
    e.name = std::move(name);
    return e;
}

xml::Element render_types(const char* section_name, const char* entry_name,
                          const std::vector<raw::TypeDecl>& decls) {
    xml::Element section = value_element(section_name);
    for (const auto& decl : decls) {
        xml::Element type_el = value_element(entry_name);
        type_el.attributes.emplace_back("name", decl.name);
        xml::Element attrs = value_element("attributes");
        for (const auto& a : decl.attributes) {
            xml::Element attr = value_element("attribute");
            attr.attributes.emplace_back("name", a.name);
            attr.attributes.emplace_back("type", a.kind_text);
            attrs.children.push_back(std::move(attr));
        }
        type_el.children.push_back(std::move(attrs));
        section.children.push_back(std::move(type_el));
    }
    return section;
}

xml::Element render_relations(const std::vector<E2ORelation>& relations) {
    xml::Element container = value_element("objects");
    for (const auto& r : relations) {
        xml::Element rel = value_element("relationship");
        rel.attributes.emplace_back("object-id", r.object_id);
        rel.attributes.emplace_back("qualifier", r.qualifier);
        container.children.push_back(std::move(rel));
    }
    return container;
}

xml::Element render_relations(const std::vector<O2ORelation>& relations) {
    xml::Element container = value_element("objects");
    for (const auto& r : relations) {
        xml::Element rel = value_element("relationship");
        rel.attributes.emplace_back("object-id", r.target_object_id);
        rel.attributes.emplace_back("qualifier", r.qualifier);
        container.children.push_back(std::move(rel));
    }
    return container;
}

}  // namespace

raw::Log parse_raw_xml(std::string_view text, std::vector<Diagnostic>* parse_warnings) {
    const xml::Element root = xml::parse(text);
    if (root.name != "log")
        throw XmlSyntaxError("expected root element <log>, found <" + root.name + ">");

    raw::Log log;
    for (const auto& section : root.children) {
        if (section.name == "object-types") {
            log.object_types = parse_types(section, "object-type", "object-types", parse_warnings);
        } else if (section.name == "event-types") {
            log.event_types = parse_types(section, "event-type", "event-types", parse_warnings);
        } else if (section.name == "objects") {
            for (const auto& obj : section.children) {
                if (obj.name != "object") {
                    warn_unknown(parse_warnings, "objects", "element '" + obj.name + "'");
                    continue;
                }
                raw::Object o;
                const std::string* id = obj.find_attribute("id");
                const std::string* type = obj.find_attribute("type");
                o.id = id ? *id : "";
                o.type_name = type ? *type : "";
                const std::string base = "objects/" + o.id;
                check_attrs(obj, {"id", "type"}, base, parse_warnings);
                for (const auto& part : obj.children) {
                    if (part.name == "attributes")
                        o.attributes = parse_instance_attrs(part, true, base, parse_warnings);
                    else if (part.name == "objects")
                        o.relations = parse_relations(part, base, parse_warnings);
                    else
                        warn_unknown(parse_warnings, base, "element '" + part.name + "'");
                }
                log.objects.push_back(std::move(o));
            }
        } else if (section.name == "events") {
            for (const auto& ev : section.children) {
                if (ev.name != "event") {
                    warn_unknown(parse_warnings, "events", "element '" + ev.name + "'");
                    continue;
                }
                raw::Event e;
                const std::string* id = ev.find_attribute("id");
                const std::string* type = ev.find_attribute("type");
                const std::string* time = ev.find_attribute("time");
                e.id = id ? *id : "";
                e.type_name = type ? *type : "";
                e.time_text = time ? *time : "";
                const std::string base = "events/" + e.id;
                check_attrs(ev, {"id", "type", "time"}, base, parse_warnings);
                for (const auto& part : ev.children) {
                    if (part.name == "attributes")
                        e.attributes = parse_instance_attrs(part, false, base, parse_warnings);
                    else if (part.name == "objects")
                        e.relations = parse_relations(part, base, parse_warnings);
                    else
                        warn_unknown(parse_warnings, base, "element '" + part.name + "'");
                }
                log.events.push_back(std::move(e));
            }
        } else {
            warn_unknown(parse_warnings, "log", "element '" + section.name + "'");
        }
    }
    return log;
}

std::string write_xml_string(const OcelLog& log) {
    xml::Element root = value_element("log");

    std::vector<raw::TypeDecl> object_types, event_types;
    for (const auto& t : log.object_types()) {
        raw::TypeDecl decl{t.name, {}};
        for (const auto& a : t.attributes)
            decl.attributes.push_back({a.name, std::string(to_string(a.kind))});
        object_types.push_back(std::move(decl));
    }
    for (const auto& t : log.event_types()) {
        raw::TypeDecl decl{t.name, {}};
        for (const auto& a : t.attributes)
            decl.attributes.push_back({a.name, std::string(to_string(a.kind))});
        event_types.push_back(std::move(decl));
    }
    root.children.push_back(render_types("object-types", "object-type", object_types));
    root.children.push_back(render_types("event-types", "event-type", event_types));

    xml::Element objects = value_element("objects");
    for (const auto& o : log.objects()) {
        xml::Element obj = value_element("object");
        obj.attributes.emplace_back("id", o.id);
        obj.attributes.emplace_back("type", o.type_name);
        xml::Element attrs = value_element("attributes");
        for (const auto& snap : o.attribute_history) {
            xml::Element attr = value_element("attribute");
            attr.attributes.emplace_back("name", snap.name);
            attr.attributes.emplace_back("time", snap.time.to_text());
            attr.text = snap.value.to_text();
            attrs.children.push_back(std::move(attr));
        }
        obj.children.push_back(std::move(attrs));
        obj.children.push_back(render_relations(o.relations));
        objects.children.push_back(std::move(obj));
    }
    root.children.push_back(std::move(objects));

    xml::Element events = value_element("events");
    for (const auto& e : log.events()) {
        xml::Element ev = value_element("event");
        ev.attributes.emplace_back("id", e.id);
        ev.attributes.emplace_back("type", e.type_name);
        ev.attributes.emplace_back("time", e.time.to_text());
        xml::Element attrs = value_element("attributes");
        for (const auto& [name, value] : e.attributes) {
            xml::Element attr = value_element("attribute");
            attr.attributes.emplace_back("name", name);
            attr.text = value.to_text();
            attrs.children.push_back(std::move(attr));
        }
        ev.children.push_back(std::move(attrs));
        ev.children.push_back(render_relations(e.relations));
        events.children.push_back(std::move(ev));
    }
    root.children.push_back(std::move(events));

    return xml::serialize(root);
}

ReadResult read_xml_string(std::string_view text) {
    std::vector<Diagnostic> parse_warnings;
    raw::Log raw = parse_raw_xml(text, &parse_warnings);
    ReadResult result = finalize(raw);
    for (auto& w : parse_warnings) result.report.diagnostics.push_back(std::move(w));
    finish_report(result.report);
    return result;
}

ReadResult read_xml(const std::string& path) {
    return read_xml_string(detail::read_file(path));
}

void write_xml(const OcelLog& log, const std::string& path) {
    detail::write_file(path, write_xml_string(log));
}

}  // namespace ocel::io
