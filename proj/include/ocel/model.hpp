#ifndef OCEL_MODEL_HPP
#define OCEL_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ocel/errors.hpp"
#include "ocel/timestamp.hpp"
#include "ocel/value.hpp"

namespace ocel {

struct AttributeDeclaration {
    std::string name;
    ValueKind kind = ValueKind::String;

    bool operator==(const AttributeDeclaration&) const = default;
};

struct EventType {
    std::string name;
    std::vector<AttributeDeclaration> attributes;

    bool operator==(const EventType&) const = default;
};

struct ObjectType {
    std::string name;
    std::vector<AttributeDeclaration> attributes;

    bool operator==(const ObjectType&) const = default;
};

/// Qualified event-to-object relation.
struct E2ORelation {
    std::string object_id;
    std::string qualifier;

    bool operator==(const E2ORelation&) const = default;
    auto operator<=>(const E2ORelation&) const = default;
};

/// Qualified object-to-object relation, outgoing from its owner.
struct O2ORelation {
    std::string target_object_id;
    std::string qualifier;

    bool operator==(const O2ORelation&) const = default;
    auto operator<=>(const O2ORelation&) const = default;
};

struct Event {
    std::string id;
    std::string type_name;
    Timestamp time;
    std::map<std::string, AttributeValue> attributes;
    std::vector<E2ORelation> relations;  // sorted by (object_id, qualifier)

    bool operator==(const Event&) const = default;
};

/// One recorded change of an object attribute.
struct AttributeSnapshot {
    std::string name;
    Timestamp time;
    AttributeValue value;

    bool operator==(const AttributeSnapshot&) const = default;
};

struct ObjectEntity {
    std::string id;
    std::string type_name;
    std::vector<AttributeSnapshot> attribute_history;  // sorted by (name, time)
    std::vector<O2ORelation> relations;                // sorted by (target, qualifier)

    bool operator==(const ObjectEntity&) const = default;
};

/// A complete object-centric event log in canonical order.
///
/// Canonical order: types sorted by name, objects by id, events by
/// (time, id), all nested lists sorted as noted on their fields.
/// Instances are only produced by build_log / the format readers and are
/// immutable afterwards; sharing one log across readers is safe.
class OcelLog {
public:
    OcelLog() = default;

    const std::vector<EventType>& event_types() const { return event_types_; }
    const std::vector<ObjectType>& object_types() const { return object_types_; }
    const std::vector<ObjectEntity>& objects() const { return objects_; }
    const std::vector<Event>& events() const { return events_; }

    const EventType* find_event_type(const std::string& name) const;
    const ObjectType* find_object_type(const std::string& name) const;
    const ObjectEntity* find_object(const std::string& id) const;
    const Event* find_event(const std::string& id) const;

    /// Value of the snapshot with the greatest time <= t for that name;
    /// absent when nothing has been recorded by t.
    /// Throws UndeclaredAttributeError if the object's type does not
    /// declare the attribute, UnknownObjectError for an unknown id.
    std::optional<AttributeValue> attribute_value_at(const std::string& object_id,
                                                     const std::string& name,
                                                     Timestamp t) const;

    /// All events holding an E2O relation to the object, canonical order.
    std::vector<const Event*> events_of_object(const std::string& object_id) const;

    /// Outgoing O2O pairs sorted by (target id, qualifier), optionally
    /// restricted to one qualifier.
    std::vector<O2ORelation> o2o_neighbors(
        const std::string& object_id,
        const std::optional<std::string>& qualifier_filter = std::nullopt) const;

    bool operator==(const OcelLog& other) const {
        return event_types_ == other.event_types_ && object_types_ == other.object_types_ &&
               objects_ == other.objects_ && events_ == other.events_;
    }

private:
    friend class LogAssembler;

    std::vector<EventType> event_types_;
    std::vector<ObjectType> object_types_;
    std::vector<ObjectEntity> objects_;
    std::vector<Event> events_;

    std::unordered_map<std::string, std::size_t> event_type_index_;
    std::unordered_map<std::string, std::size_t> object_type_index_;
    std::unordered_map<std::string, std::size_t> object_index_;
    std::unordered_map<std::string, std::size_t> event_index_;
};

/// Assembles a canonical log from independently well-formed parts.
/// Input order is irrelevant; duplicate (object, qualifier) relation
/// pairs are dropped. Throws BuildError on the first integrity
/// violation (dangling reference, unknown type, duplicate id,
/// undeclared attribute, kind mismatch).
OcelLog build_log(std::vector<EventType> event_types, std::vector<ObjectType> object_types,
                  std::vector<ObjectEntity> objects, std::vector<Event> events);

}  // namespace ocel

#endif
