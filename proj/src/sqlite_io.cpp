#include <sqlite3.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include "ocel/formats.hpp"

namespace ocel::io {

namespace {

// ---------------------------------------------------------------------------
// thin RAII layer over the sqlite3 C API

class Statement {
public:
    Statement(sqlite3* db, const std::string& sql) {
        if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK)
            throw SqliteSchemaError("cannot prepare statement: " + std::string(sqlite3_errmsg(db)) +
                                    " [" + sql + "]");
    }
    Statement(const Statement&) = delete;
    Statement& operator=(const Statement&) = delete;
    ~Statement() { sqlite3_finalize(stmt_); }

    void bind_text(int index, const std::string& value) {
        sqlite3_bind_text(stmt_, index, value.data(), static_cast<int>(value.size()),
                          SQLITE_TRANSIENT);
    }
    void bind_value(int index, const AttributeValue& value) {
        switch (value.kind()) {
            case ValueKind::String: bind_text(index, value.as_string()); break;
            case ValueKind::Integer: sqlite3_bind_int64(stmt_, index, value.as_integer()); break;
            case ValueKind::Float: sqlite3_bind_double(stmt_, index, value.as_float()); break;
            case ValueKind::Boolean: sqlite3_bind_int64(stmt_, index, value.as_boolean() ? 1 : 0); break;
            case ValueKind::Timestamp: bind_text(index, value.as_timestamp().to_text()); break;
        }
    }
    void bind_null(int index) { sqlite3_bind_null(stmt_, index); }

    bool step() {
        const int rc = sqlite3_step(stmt_);
        if (rc == SQLITE_ROW) return true;
        if (rc == SQLITE_DONE) return false;
        throw IoError("sqlite step failed: " + std::string(sqlite3_errstr(rc)));
    }
    void run() {
        step();
        sqlite3_reset(stmt_);
        sqlite3_clear_bindings(stmt_);
    }

    bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
    std::string column_text(int col) const {
        const unsigned char* p = sqlite3_column_text(stmt_, col);
        if (!p) return "";
        return std::string(reinterpret_cast<const char*>(p),
                           static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col)));
    }
    raw::Value column_value(int col) const {
        switch (sqlite3_column_type(stmt_, col)) {
            case SQLITE_INTEGER: return raw::Value::of_integer(sqlite3_column_int64(stmt_, col));
            case SQLITE_FLOAT: return raw::Value::of_real(sqlite3_column_double(stmt_, col));
            case SQLITE_TEXT: return raw::Value::of_text(column_text(col));
            default: return raw::Value::null();
        }
    }

private:
    sqlite3_stmt* stmt_ = nullptr;
};

class Database {
public:
    static Database open(const std::string& path, bool create) {
        sqlite3* handle = nullptr;
        const int flags = create ? SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE : SQLITE_OPEN_READONLY;
        if (sqlite3_open_v2(path.c_str(), &handle, flags, nullptr) != SQLITE_OK) {
            std::string message = handle ? sqlite3_errmsg(handle) : "out of memory";
            sqlite3_close(handle);
            throw IoError("cannot open sqlite database '" + path + "': " + message);
        }
        return Database(handle);
    }

    Database(Database&& other) noexcept : handle_(other.handle_) { other.handle_ = nullptr; }
    Database(const Database&) = delete;
    Database& operator=(const Database&) = delete;
    ~Database() { sqlite3_close(handle_); }

    void exec(const std::string& sql) {
        char* message = nullptr;
        if (sqlite3_exec(handle_, sql.c_str(), nullptr, nullptr, &message) != SQLITE_OK) {
            std::string text = message ? message : "unknown error";
            sqlite3_free(message);
            throw IoError("sqlite exec failed: " + text + " [" + sql + "]");
        }
    }

    Statement prepare(const std::string& sql) { return Statement(handle_, sql); }
    sqlite3* handle() { return handle_; }

private:
    explicit Database(sqlite3* handle) : handle_(handle) {}
    sqlite3* handle_;
};

std::string quote_identifier(const std::string& name) {
    std::string out = "\"";
    for (const char c : name) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string sanitize_type_name(const std::string& name) {
    std::string out;
    for (const char c : name)
        out.push_back(((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                       c == '_')
                          ? c
                          : '_');
    return out;
}

const std::set<std::string> kMandatoryTables = {"event",          "object",
                                                "event_object",   "object_object",
                                                "event_map_type", "object_map_type"};

/// Deterministic type -> sanitized-table-suffix mapping; suffixed with a
/// counter when sanitization collides with another type or a fixed table.
std::map<std::string, std::string> map_type_names(const std::vector<std::string>& event_types,
                                                  const std::vector<std::string>& object_types,
                                                  std::map<std::string, std::string>& object_map) {
    std::set<std::string> used_tables = kMandatoryTables;
    std::map<std::string, std::string> event_map;
    auto assign = [&used_tables](const std::string& prefix, const std::string& type_name) {
        const std::string base = sanitize_type_name(type_name);
        std::string mapped = base;
        for (int n = 2; used_tables.contains(prefix + mapped); ++n)
            mapped = base + "_" + std::to_string(n);
        used_tables.insert(prefix + mapped);
        return mapped;
    };
    for (const auto& name : event_types) event_map[name] = assign("event_", name);
    for (const auto& name : object_types) object_map[name] = assign("object_", name);
    return event_map;
}

std::string column_type_for(ValueKind kind) {
    switch (kind) {
        case ValueKind::String: return "TEXT";
        case ValueKind::Integer: return "INTEGER";
        case ValueKind::Float: return "REAL";
        case ValueKind::Boolean: return "BOOLEAN";
        case ValueKind::Timestamp: return "TIMESTAMP";
    }
    return "TEXT";
}

std::string kind_text_for_decltype(std::string decltype_text) {
    std::transform(decltype_text.begin(), decltype_text.end(), decltype_text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (decltype_text == "text" || decltype_text == "varchar" || decltype_text == "char" ||
        decltype_text == "clob")
        return "string";
    if (decltype_text == "integer" || decltype_text == "int" || decltype_text == "bigint")
        return "integer";
    if (decltype_text == "real" || decltype_text == "double" || decltype_text == "float")
        return "float";
    if (decltype_text == "boolean" || decltype_text == "bool") return "boolean";
    if (decltype_text == "timestamp" || decltype_text == "datetime" || decltype_text == "date")
        return "time";
    return decltype_text;  // validation reports the unknown kind
}

struct ColumnInfo {
    std::string name;
    std::string decltype_text;
};

std::vector<ColumnInfo> table_columns(Database& db, const std::string& table) {
    std::vector<ColumnInfo> out;
    Statement stmt = db.prepare("PRAGMA table_info(" + quote_identifier(table) + ")");
    while (stmt.step()) out.push_back({stmt.column_text(1), stmt.column_text(2)});
    return out;
}

std::set<std::string> list_tables(Database& db) {
    std::set<std::string> out;
    Statement stmt = db.prepare("SELECT name FROM sqlite_master WHERE type = 'table'");
    while (stmt.step()) out.insert(stmt.column_text(0));
    return out;
}

void require_columns(Database& db, const std::string& table,
                     std::initializer_list<std::string_view> names) {
    const auto columns = table_columns(db, table);
    for (const auto& required : names) {
        const bool found = std::any_of(columns.begin(), columns.end(), [&](const ColumnInfo& c) {
            return c.name == required;
        });
        if (!found)
            throw SqliteSchemaError("table '" + table + "' is missing mandatory column '" +
                                    std::string(required) + "'");
    }
}

void warn(std::vector<Diagnostic>* warnings, const std::string& location,
          const std::string& message) {
    if (warnings) warnings->push_back({"W005", Severity::Warning, message, location});
}

}  // namespace

void write_sqlite(const OcelLog& log, const std::string& path) {
    // attribute columns share the table with the fixed ocel_* columns and
    // SQLite identifiers are case-insensitive, so reject collisions early
    for (const auto& t : log.event_types()) {
        std::set<std::string> lowered;
        for (const auto& a : t.attributes) {
            std::string low = a.name;
            std::transform(low.begin(), low.end(), low.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (low == "ocel_id" || low == "ocel_time" || !lowered.insert(low).second)
                throw IoError("attribute name '" + a.name + "' of event type '" + t.name +
                              "' cannot be stored as a sqlite column");
        }
    }
    for (const auto& t : log.object_types()) {
        std::set<std::string> lowered;
        for (const auto& a : t.attributes) {
            std::string low = a.name;
            std::transform(low.begin(), low.end(), low.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (low == "ocel_id" || low == "ocel_time" || low == "ocel_changed_field" ||
                !lowered.insert(low).second)
                throw IoError("attribute name '" + a.name + "' of object type '" + t.name +
                              "' cannot be stored as a sqlite column");
        }
    }

    const std::string tmp = path + ".tmp";
    std::remove(tmp.c_str());
    try {
        Database db = Database::open(tmp, true);
        db.exec("PRAGMA journal_mode = OFF");
        db.exec("PRAGMA synchronous = OFF");
        db.exec("BEGIN");

        db.exec("CREATE TABLE event (ocel_id TEXT PRIMARY KEY, ocel_type TEXT)");
        db.exec("CREATE TABLE object (ocel_id TEXT PRIMARY KEY, ocel_type TEXT)");
        db.exec("CREATE TABLE event_object (ocel_event_id TEXT, ocel_object_id TEXT, "
                "ocel_qualifier TEXT)");
        db.exec("CREATE TABLE object_object (ocel_source_id TEXT, ocel_target_id TEXT, "
                "ocel_qualifier TEXT)");
        db.exec("CREATE TABLE event_map_type (ocel_type TEXT, ocel_type_map TEXT)");
        db.exec("CREATE TABLE object_map_type (ocel_type TEXT, ocel_type_map TEXT)");

        std::vector<std::string> event_type_names, object_type_names;
        for (const auto& t : log.event_types()) event_type_names.push_back(t.name);
        for (const auto& t : log.object_types()) object_type_names.push_back(t.name);
        std::map<std::string, std::string> object_map;
        std::map<std::string, std::string> event_map =
            map_type_names(event_type_names, object_type_names, object_map);

        {
            Statement insert = db.prepare("INSERT INTO event_map_type VALUES (?, ?)");
            for (const auto& t : log.event_types()) {
                insert.bind_text(1, t.name);
                insert.bind_text(2, event_map.at(t.name));
                insert.run();
            }
        }
        {
            Statement insert = db.prepare("INSERT INTO object_map_type VALUES (?, ?)");
            for (const auto& t : log.object_types()) {
                insert.bind_text(1, t.name);
                insert.bind_text(2, object_map.at(t.name));
                insert.run();
            }
        }

        for (const auto& t : log.event_types()) {
            std::string sql = "CREATE TABLE " + quote_identifier("event_" + event_map.at(t.name)) +
                              " (ocel_id TEXT, ocel_time TIMESTAMP";
            for (const auto& a : t.attributes)
                sql += ", " + quote_identifier(a.name) + " " + column_type_for(a.kind);
            sql += ")";
            db.exec(sql);
        }
        for (const auto& t : log.object_types()) {
            std::string sql = "CREATE TABLE " + quote_identifier("object_" + object_map.at(t.name)) +
                              " (ocel_id TEXT, ocel_time TIMESTAMP, ocel_changed_field TEXT";
            for (const auto& a : t.attributes)
                sql += ", " + quote_identifier(a.name) + " " + column_type_for(a.kind);
            sql += ")";
            db.exec(sql);
        }

        {
            Statement insert = db.prepare("INSERT INTO object VALUES (?, ?)");
            for (const auto& o : log.objects()) {
                insert.bind_text(1, o.id);
                insert.bind_text(2, o.type_name);
                insert.run();
            }
        }
        {
            Statement insert = db.prepare("INSERT INTO event VALUES (?, ?)");
            for (const auto& e : log.events()) {
                insert.bind_text(1, e.id);
                insert.bind_text(2, e.type_name);
                insert.run();
            }
        }
        {
            Statement insert = db.prepare("INSERT INTO event_object VALUES (?, ?, ?)");
            for (const auto& e : log.events())
                for (const auto& r : e.relations) {
                    insert.bind_text(1, e.id);
                    insert.bind_text(2, r.object_id);
                    insert.bind_text(3, r.qualifier);
                    insert.run();
                }
        }
        {
            Statement insert = db.prepare("INSERT INTO object_object VALUES (?, ?, ?)");
            for (const auto& o : log.objects())
                for (const auto& r : o.relations) {
                    insert.bind_text(1, o.id);
                    insert.bind_text(2, r.target_object_id);
                    insert.bind_text(3, r.qualifier);
                    insert.run();
                }
        }

        // one row per event in its type table
        for (const auto& t : log.event_types()) {
            std::string sql = "INSERT INTO " + quote_identifier("event_" + event_map.at(t.name)) +
                              " VALUES (?, ?";
            for (std::size_t i = 0; i < t.attributes.size(); ++i) sql += ", ?";
            sql += ")";
            Statement insert = db.prepare(sql);
            for (const auto& e : log.events()) {
                if (e.type_name != t.name) continue;
                insert.bind_text(1, e.id);
                insert.bind_text(2, e.time.to_text());
                for (std::size_t i = 0; i < t.attributes.size(); ++i) {
                    auto it = e.attributes.find(t.attributes[i].name);
                    if (it == e.attributes.end())
                        insert.bind_null(static_cast<int>(i) + 3);
                    else
                        insert.bind_value(static_cast<int>(i) + 3, it->second);
                }
                insert.run();
            }
        }

        // one row per attribute change in the object's type table
        for (const auto& t : log.object_types()) {
            std::string sql = "INSERT INTO " + quote_identifier("object_" + object_map.at(t.name)) +
                              " VALUES (?, ?, ?";
            for (std::size_t i = 0; i < t.attributes.size(); ++i) sql += ", ?";
            sql += ")";
            Statement insert = db.prepare(sql);
            for (const auto& o : log.objects()) {
                if (o.type_name != t.name) continue;
                for (const auto& snap : o.attribute_history) {
                    insert.bind_text(1, o.id);
                    insert.bind_text(2, snap.time.to_text());
                    insert.bind_text(3, snap.name);
                    for (std::size_t i = 0; i < t.attributes.size(); ++i) {
                        if (t.attributes[i].name == snap.name)
                            insert.bind_value(static_cast<int>(i) + 4, snap.value);
                        else
                            insert.bind_null(static_cast<int>(i) + 4);
                    }
                    insert.run();
                }
            }
        }

        db.exec("CREATE INDEX idx_event_object_event ON event_object (ocel_event_id)");
        db.exec("CREATE INDEX idx_event_object_object ON event_object (ocel_object_id)");
        db.exec("CREATE INDEX idx_object_object_source ON object_object (ocel_source_id)");
        db.exec("CREATE INDEX idx_object_object_target ON object_object (ocel_target_id)");
        for (const auto& t : log.event_types()) {
            const std::string table = "event_" + event_map.at(t.name);
            db.exec("CREATE INDEX " + quote_identifier("idx_" + table + "_id") + " ON " +
                    quote_identifier(table) + " (ocel_id)");
        }
        for (const auto& t : log.object_types()) {
            const std::string table = "object_" + object_map.at(t.name);
            db.exec("CREATE INDEX " + quote_identifier("idx_" + table + "_id") + " ON " +
                    quote_identifier(table) + " (ocel_id)");
        }

        db.exec("COMMIT");
    } catch (...) {
        std::remove(tmp.c_str());
        throw;
    }

    std::remove(path.c_str());
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot move '" + tmp + "' to '" + path + "'");
    }
}

raw::Log parse_raw_sqlite(const std::string& path, std::vector<Diagnostic>* parse_warnings) {
    Database db = Database::open(path, false);

    const std::set<std::string> tables = list_tables(db);
    for (const auto& required : kMandatoryTables)
        if (!tables.contains(required))
            throw SqliteSchemaError("missing mandatory table '" + required + "'");
    require_columns(db, "event", {"ocel_id", "ocel_type"});
    require_columns(db, "object", {"ocel_id", "ocel_type"});
    require_columns(db, "event_object", {"ocel_event_id", "ocel_object_id", "ocel_qualifier"});
    require_columns(db, "object_object", {"ocel_source_id", "ocel_target_id", "ocel_qualifier"});
    require_columns(db, "event_map_type", {"ocel_type", "ocel_type_map"});
    require_columns(db, "object_map_type", {"ocel_type", "ocel_type_map"});

    raw::Log log;

    auto load_section = [&](const char* map_table, const char* prefix,
                            bool object_section) -> std::map<std::string, std::string> {
        std::map<std::string, std::string> type_map;  // original -> mapped
        Statement stmt =
            db.prepare(std::string("SELECT ocel_type, ocel_type_map FROM ") + map_table +
                       " ORDER BY rowid");
        while (stmt.step()) type_map.emplace(stmt.column_text(0), stmt.column_text(1));
        for (const auto& [type_name, mapped] : type_map) {
            const std::string table = std::string(prefix) + mapped;
            if (!tables.contains(table))
                throw SqliteSchemaError("missing per-type table '" + table + "' for type '" +
                                        type_name + "'");
            raw::TypeDecl decl;
            decl.name = type_name;
            for (const auto& column : table_columns(db, table)) {
                if (column.name == "ocel_id" || column.name == "ocel_time" ||
                    (object_section && column.name == "ocel_changed_field"))
                    continue;
                decl.attributes.push_back({column.name, kind_text_for_decltype(column.decltype_text)});
            }
            (object_section ? log.object_types : log.event_types).push_back(std::move(decl));
        }
        return type_map;
    };

    const std::map<std::string, std::string> event_map = load_section("event_map_type", "event_", false);
    std::map<std::string, std::string> object_map = load_section("object_map_type", "object_", true);

    std::unordered_map<std::string, std::size_t> object_index;
    {
        Statement stmt = db.prepare("SELECT ocel_id, ocel_type FROM object ORDER BY rowid");
        while (stmt.step()) {
            raw::Object o;
            o.id = stmt.column_text(0);
            o.type_name = stmt.column_text(1);
            object_index.emplace(o.id, log.objects.size());  // duplicate ids surface as E007
            log.objects.push_back(std::move(o));
        }
    }
    std::unordered_map<std::string, std::size_t> event_index;
    {
        Statement stmt = db.prepare("SELECT ocel_id, ocel_type FROM event ORDER BY rowid");
        while (stmt.step()) {
            raw::Event e;
            e.id = stmt.column_text(0);
            e.type_name = stmt.column_text(1);
            event_index.emplace(e.id, log.events.size());
            log.events.push_back(std::move(e));
        }
    }

    // event times and attributes live in the per-type tables
    for (const auto& [type_name, mapped] : event_map) {
        const std::string table = "event_" + mapped;
        const auto columns = table_columns(db, table);
        std::string sql = "SELECT ";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) sql += ", ";
            sql += quote_identifier(columns[i].name);
        }
        sql += " FROM " + quote_identifier(table) + " ORDER BY rowid";
        Statement stmt = db.prepare(sql);
        while (stmt.step()) {
            std::string id, time_text;
            std::vector<raw::Attribute> attrs;
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const int col = static_cast<int>(i);
                if (columns[i].name == "ocel_id") {
                    id = stmt.column_text(col);
                } else if (columns[i].name == "ocel_time") {
                    if (!stmt.is_null(col)) time_text = stmt.column_text(col);
                } else if (!stmt.is_null(col)) {
                    attrs.push_back({columns[i].name, false, {}, stmt.column_value(col)});
                }
            }
            auto it = event_index.find(id);
            if (it == event_index.end()) {
                warn(parse_warnings, "events/" + id, "row in '" + table + "' has no event record");
                continue;
            }
            raw::Event& event = log.events[it->second];
            if (!event.time_text.empty() || !event.attributes.empty()) {
                warn(parse_warnings, "events/" + id, "duplicate row in '" + table + "' ignored");
                continue;
            }
            event.time_text = std::move(time_text);
            event.attributes = std::move(attrs);
        }
    }

    // each object row is one attribute change
    for (const auto& [type_name, mapped] : object_map) {
        const std::string table = "object_" + mapped;
        const auto columns = table_columns(db, table);
        std::string sql = "SELECT ";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) sql += ", ";
            sql += quote_identifier(columns[i].name);
        }
        sql += " FROM " + quote_identifier(table) + " ORDER BY rowid";
        Statement stmt = db.prepare(sql);
        while (stmt.step()) {
            std::string id, changed_field;
            bool has_time = false;
            std::string time_text;
            std::unordered_map<std::string, raw::Value> cells;
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const int col = static_cast<int>(i);
                if (columns[i].name == "ocel_id") {
                    id = stmt.column_text(col);
                } else if (columns[i].name == "ocel_time") {
                    if (!stmt.is_null(col)) {
                        has_time = true;
                        time_text = stmt.column_text(col);
                    }
                } else if (columns[i].name == "ocel_changed_field") {
                    changed_field = stmt.column_text(col);
                } else if (!stmt.is_null(col)) {
                    cells.emplace(columns[i].name, stmt.column_value(col));
                }
            }
            auto it = object_index.find(id);
            if (it == object_index.end()) {
                warn(parse_warnings, "objects/" + id, "row in '" + table + "' has no object record");
                continue;
            }
            raw::Attribute attr;
            attr.name = changed_field;
            attr.has_time = has_time;
            attr.time_text = std::move(time_text);
            auto cell = cells.find(changed_field);
            attr.value = cell == cells.end() ? raw::Value::null() : cell->second;
            log.objects[it->second].attributes.push_back(std::move(attr));
        }
    }

    {
        Statement stmt = db.prepare(
            "SELECT ocel_event_id, ocel_object_id, ocel_qualifier FROM event_object ORDER BY rowid");
        while (stmt.step()) {
            const std::string event_id = stmt.column_text(0);
            auto it = event_index.find(event_id);
            if (it == event_index.end()) {
                warn(parse_warnings, "events/" + event_id,
                     "event_object row references unknown event");
                continue;
            }
            log.events[it->second].relations.push_back({stmt.column_text(1), stmt.column_text(2)});
        }
    }
    {
        Statement stmt = db.prepare(
            "SELECT ocel_source_id, ocel_target_id, ocel_qualifier FROM object_object ORDER BY rowid");
        while (stmt.step()) {
            const std::string source_id = stmt.column_text(0);
            auto it = object_index.find(source_id);
            if (it == object_index.end()) {
                warn(parse_warnings, "objects/" + source_id,
                     "object_object row references unknown source object");
                continue;
            }
            log.objects[it->second].relations.push_back({stmt.column_text(1), stmt.column_text(2)});
        }
    }

    return log;
}

ReadResult read_sqlite(const std::string& path) {
    std::vector<Diagnostic> parse_warnings;
    raw::Log raw = parse_raw_sqlite(path, &parse_warnings);
    ReadResult result = finalize(raw);
    for (auto& w : parse_warnings) result.report.diagnostics.push_back(std::move(w));
    finish_report(result.report);
    return result;
}

}  // namespace ocel::io
