#ifndef OCEL_ERRORS_HPP
#define OCEL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace ocel {

/// Integrity error codes raised while assembling a log from parts.
enum class IntegrityCode {
    DanglingObjectRef,
    UnknownType,
    DuplicateId,
    UndeclaredAttribute,
    AttributeKindMismatch,
    UnparseableTimestamp,
};

std::string to_string(IntegrityCode code);

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// First integrity violation found while building a log.
class BuildError : public Error {
public:
    BuildError(IntegrityCode code, std::string location, const std::string& message)
        : Error(to_string(code) + " at " + location + ": " + message),
          code_(code),
          location_(std::move(location)) {}

    IntegrityCode code() const { return code_; }
    const std::string& location() const { return location_; }

private:
    IntegrityCode code_;
    std::string location_;
};

class UnknownObjectError : public Error {
public:
    explicit UnknownObjectError(const std::string& id)
        : Error("unknown object id: " + id) {}
};

class UnknownTypeError : public Error {
public:
    explicit UnknownTypeError(const std::string& name)
        : Error("unknown type: " + name) {}
};

class UndeclaredAttributeError : public Error {
public:
    UndeclaredAttributeError(const std::string& type_name, const std::string& attr)
        : Error("attribute '" + attr + "' not declared for type '" + type_name + "'") {}
};

class IoError : public Error {
public:
    using Error::Error;
};

class XmlSyntaxError : public Error {
public:
    using Error::Error;
};

class JsonSyntaxError : public Error {
public:
    using Error::Error;
};

class Ocel1SyntaxError : public Error {
public:
    using Error::Error;
};

class SqliteSchemaError : public Error {
public:
    using Error::Error;
};

class UnknownFormatError : public Error {
public:
    using Error::Error;
};

}  // namespace ocel

#endif
