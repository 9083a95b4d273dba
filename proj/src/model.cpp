#include "ocel/model.hpp"

#include <algorithm>

#include "ocel/validate.hpp"

namespace ocel {

namespace {

template <typename T>
const T* lookup(const std::vector<T>& items,
                const std::unordered_map<std::string, std::size_t>& index,
                const std::string& key) {
    auto it = index.find(key);
    return it == index.end() ? nullptr : &items[it->second];
}

raw::Value to_raw(const AttributeValue& v) {
    switch (v.kind()) {
        case ValueKind::String: return raw::Value::of_text(v.as_string());
        case ValueKind::Integer: return raw::Value::of_integer(v.as_integer());
        case ValueKind::Float: return raw::Value::of_real(v.as_float());
        case ValueKind::Boolean: return raw::Value::of_boolean(v.as_boolean());
        case ValueKind::Timestamp: return raw::Value::of_text(v.as_timestamp().to_text());
    }
    return raw::Value::null();
}

IntegrityCode integrity_code_for(const std::string& diagnostic_code) {
    if (diagnostic_code == "E001" || diagnostic_code == "E002")
        return IntegrityCode::DanglingObjectRef;
    if (diagnostic_code == "E003" || diagnostic_code == "E004") return IntegrityCode::UnknownType;
    if (diagnostic_code == "E005") return IntegrityCode::UndeclaredAttribute;
    if (diagnostic_code == "E006") return IntegrityCode::AttributeKindMismatch;
    if (diagnostic_code == "E008") return IntegrityCode::UnparseableTimestamp;
    return IntegrityCode::DuplicateId;
}

}  // namespace

std::string to_string(IntegrityCode code) {
    switch (code) {
        case IntegrityCode::DanglingObjectRef: return "DanglingObjectRef";
        case IntegrityCode::UnknownType: return "UnknownType";
        case IntegrityCode::DuplicateId: return "DuplicateId";
        case IntegrityCode::UndeclaredAttribute: return "UndeclaredAttribute";
        case IntegrityCode::AttributeKindMismatch: return "AttributeKindMismatch";
        case IntegrityCode::UnparseableTimestamp: return "UnparseableTimestamp";
    }
    return "UnknownError";
}

const EventType* OcelLog::find_event_type(const std::string& name) const {
    return lookup(event_types_, event_type_index_, name);
}

const ObjectType* OcelLog::find_object_type(const std::string& name) const {
    return lookup(object_types_, object_type_index_, name);
}

const ObjectEntity* OcelLog::find_object(const std::string& id) const {
    return lookup(objects_, object_index_, id);
}

const Event* OcelLog::find_event(const std::string& id) const {
    return lookup(events_, event_index_, id);
}

std::optional<AttributeValue> OcelLog::attribute_value_at(const std::string& object_id,
                                                          const std::string& name,
                                                          Timestamp t) const {
    const ObjectEntity* object = find_object(object_id);
    if (!object) throw UnknownObjectError(object_id);
    const ObjectType* type = find_object_type(object->type_name);
    const bool declared =
        type && std::any_of(type->attributes.begin(), type->attributes.end(),
                            [&](const AttributeDeclaration& d) { return d.name == name; });
    if (!declared) throw UndeclaredAttributeError(object->type_name, name);

    // history is sorted by (name, time); find the last snapshot <= t
    const AttributeSnapshot* best = nullptr;
    for (const auto& snap : object->attribute_history) {
        if (snap.name != name) continue;
        if (snap.time <= t) best = &snap;
        if (snap.time > t) break;
    }
    if (!best) return std::nullopt;
    return best->value;
}

std::vector<const Event*> OcelLog::events_of_object(const std::string& object_id) const {
    if (!find_object(object_id)) throw UnknownObjectError(object_id);
    std::vector<const Event*> out;
    for (const auto& event : events_)
        for (const auto& relation : event.relations)
            if (relation.object_id == object_id) {
                out.push_back(&event);
                break;
            }
    return out;
}

std::vector<O2ORelation> OcelLog::o2o_neighbors(
    const std::string& object_id, const std::optional<std::string>& qualifier_filter) const {
    const ObjectEntity* object = find_object(object_id);
    if (!object) throw UnknownObjectError(object_id);
    std::vector<O2ORelation> out;
    for (const auto& relation : object->relations)
        if (!qualifier_filter || relation.qualifier == *qualifier_filter)
            out.push_back(relation);
    return out;
}

OcelLog build_log(std::vector<EventType> event_types, std::vector<ObjectType> object_types,
                  std::vector<ObjectEntity> objects, std::vector<Event> events) {
    raw::Log raw;
    for (const auto& t : event_types) {
        raw::TypeDecl decl{t.name, {}};
        for (const auto& a : t.attributes)
            decl.attributes.push_back({a.name, std::string(to_string(a.kind))});
        raw.event_types.push_back(std::move(decl));
    }
    for (const auto& t : object_types) {
        raw::TypeDecl decl{t.name, {}};
        for (const auto& a : t.attributes)
            decl.attributes.push_back({a.name, std::string(to_string(a.kind))});
        raw.object_types.push_back(std::move(decl));
    }
    for (const auto& o : objects) {
        raw::Object ro;
        ro.id = o.id;
        ro.type_name = o.type_name;
        for (const auto& snap : o.attribute_history)
            ro.attributes.push_back({snap.name, true, snap.time.to_text(), to_raw(snap.value)});
        for (const auto& rel : o.relations) ro.relations.push_back({rel.target_object_id, rel.qualifier});
        raw.objects.push_back(std::move(ro));
    }
    for (const auto& e : events) {
        raw::Event re;
        re.id = e.id;
        re.type_name = e.type_name;
        re.time_text = e.time.to_text();
        for (const auto& [name, value] : e.attributes)
            re.attributes.push_back({name, false, {}, to_raw(value)});
        for (const auto& rel : e.relations) re.relations.push_back({rel.object_id, rel.qualifier});
        raw.events.push_back(std::move(re));
    }

    try {
        return finalize(raw).log;
    } catch (const SemanticError& err) {
        auto first = std::find_if(err.report().diagnostics.begin(), err.report().diagnostics.end(),
                                  [](const Diagnostic& d) { return d.severity == Severity::Error; });
        throw BuildError(integrity_code_for(first->code), first->location, first->message);
    }
}

}  // namespace ocel
