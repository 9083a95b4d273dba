#ifndef OCEL_RAW_HPP
#define OCEL_RAW_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ocel::raw {

/// Format-level scalar before attribute kinds are resolved. Text values
/// (everything in the XML variant) are converted against the declared
/// kind during validation.
struct Value {
    enum class Tag { Null, Text, Integer, Real, Boolean };

    Tag tag = Tag::Null;
    std::string text;
    std::int64_t integer = 0;
    double real = 0.0;
    bool boolean = false;

    static Value null() { return {}; }
    static Value of_text(std::string t) {
        Value v;
        v.tag = Tag::Text;
        v.text = std::move(t);
        return v;
    }
    static Value of_integer(std::int64_t i) {
        Value v;
        v.tag = Tag::Integer;
        v.integer = i;
        return v;
    }
    static Value of_real(double r) {
        Value v;
        v.tag = Tag::Real;
        v.real = r;
        return v;
    }
    static Value of_boolean(bool b) {
        Value v;
        v.tag = Tag::Boolean;
        v.boolean = b;
        return v;
    }
};

/// Event attribute (untimed) or object snapshot (timed).
struct Attribute {
    std::string name;
    bool has_time = false;
    std::string time_text;
    Value value;
};

struct Relation {
    std::string object_id;
    std::string qualifier;
};

struct AttributeDecl {
    std::string name;
    std::string kind_text;
};

struct TypeDecl {
    std::string name;
    std::vector<AttributeDecl> attributes;
};

struct Event {
    std::string id;
    std::string type_name;
    std::string time_text;
    std::vector<Attribute> attributes;
    std::vector<Relation> relations;
};

struct Object {
    std::string id;
    std::string type_name;
    std::vector<Attribute> attributes;
    std::vector<Relation> relations;
};

/// A parsed-but-unchecked log, the common output of all readers and the
/// input of validation.
struct Log {
    std::vector<TypeDecl> event_types;
    std::vector<TypeDecl> object_types;
    std::vector<Object> objects;
    std::vector<Event> events;
};

}  // namespace ocel::raw

#endif
