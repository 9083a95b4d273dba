#include "support/fault.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fault {

namespace {

using ocel::raw::Attribute;
using ocel::raw::Log;
using ocel::raw::Relation;
using ocel::raw::Value;

struct Targets {
    std::mt19937_64& rng;
    Log& log;
    std::unordered_set<std::size_t> used_events;
    std::unordered_set<std::size_t> used_objects;
    std::unordered_set<std::string> object_ids;
    std::unordered_map<std::string, const ocel::raw::TypeDecl*> event_decls;
    int ghost_counter = 0;

    explicit Targets(std::mt19937_64& r, Log& l) : rng(r), log(l) {
        for (const auto& o : log.objects) object_ids.insert(o.id);
        for (const auto& t : log.event_types) event_decls.emplace(t.name, &t);
    }

    std::string ghost_id() {
        std::string id;
        do {
            id = "__ghost_" + std::to_string(ghost_counter++);
        } while (object_ids.contains(id));
        return id;
    }

    template <typename Eligible>
    std::optional<std::size_t> pick_event(Eligible eligible) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < log.events.size(); ++i)
            if (!used_events.contains(i) && eligible(log.events[i])) candidates.push_back(i);
        if (candidates.empty()) return std::nullopt;
        const std::size_t choice = candidates[rng() % candidates.size()];
        used_events.insert(choice);
        return choice;
    }

    template <typename Eligible>
    std::optional<std::size_t> pick_object(Eligible eligible) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < log.objects.size(); ++i)
            if (!used_objects.contains(i) && eligible(log.objects[i])) candidates.push_back(i);
        if (candidates.empty()) return std::nullopt;
        const std::size_t choice = candidates[rng() % candidates.size()];
        used_objects.insert(choice);
        return choice;
    }
};

Value good_value_for(const std::string& kind_text) {
    if (kind_text == "string") return Value::of_text("x");
    if (kind_text == "integer") return Value::of_integer(1);
    if (kind_text == "float") return Value::of_real(1.5);
    if (kind_text == "boolean") return Value::of_boolean(true);
    return Value::of_text("2001-02-03T04:05:06.007+00:00");
}

Value bad_value_for(const std::string& kind_text) {
    if (kind_text == "string") return Value::of_integer(7);
    if (kind_text == "boolean") return Value::of_text("maybe");
    if (kind_text == "time") return Value::of_integer(5);  // kind mismatch, not E008
    return Value::of_text("abc");
}

}  // namespace

const std::set<std::string>& all_codes() {
    static const std::set<std::string> codes = {"E001", "E002", "E003", "E004", "E005", "E006",
                                                "E007", "E008", "W001", "W002", "W003", "W004"};
    return codes;
}

Injection inject(const ocel::raw::Log& base, std::mt19937_64& rng,
                 const std::set<std::string>& requested) {
    Injection result;
    result.log = base;
    Log& log = result.log;
    Targets t(rng, log);

    auto want = [&](const char* code) { return requested.contains(code); };
    auto seeded = [&](const char* code) { result.seeded.insert(code); };
    std::unordered_set<std::string> stripped;

    // strip first so later injections cannot resurrect participation
    if (want("W002")) {
        if (auto idx = t.pick_object([](const auto&) { return true; })) {
            const std::string& victim = log.objects[*idx].id;
            for (auto& e : log.events)
                std::erase_if(e.relations,
                              [&](const Relation& r) { return r.object_id == victim; });
            stripped.insert(victim);
            seeded("W002");
        }
    }

    if (want("E002")) {
        if (auto idx = t.pick_object([](const auto&) { return true; })) {
            log.objects[*idx].relations.push_back({t.ghost_id(), "q"});
            seeded("E002");
        }
    }
    if (want("E004")) {
        if (auto idx = t.pick_object([](const auto&) { return true; })) {
            log.objects[*idx].type_name = "__no_such_object_type";
            seeded("E004");
        }
    }
    if (want("W004")) {
        std::unordered_map<std::string, const ocel::raw::TypeDecl*> object_decls;
        for (const auto& d : log.object_types) object_decls.emplace(d.name, &d);
        auto has_free_attr = [&](const ocel::raw::Object& o) {
            auto it = object_decls.find(o.type_name);
            if (it == object_decls.end() || it->second->attributes.empty()) return false;
            const std::string& name = it->second->attributes.front().name;
            return std::none_of(o.attributes.begin(), o.attributes.end(), [&](const Attribute& a) {
                return a.name == name && a.has_time &&
                       a.time_text == "1970-01-01T00:00:00.000+00:00";
            });
        };
        if (auto idx = t.pick_object(has_free_attr)) {
            const auto& decl = *object_decls.at(log.objects[*idx].type_name);
            log.objects[*idx].attributes.push_back({decl.attributes.front().name, true,
                                                    "1970-01-01T00:00:00.000+00:00",
                                                    good_value_for(decl.attributes.front().kind_text)});
            seeded("W004");
        }
    }

    if (want("E001")) {
        if (auto idx = t.pick_event([](const auto&) { return true; })) {
            log.events[*idx].relations.push_back({t.ghost_id(), "q"});
            seeded("E001");
        }
    }
    if (want("E003")) {
        if (auto idx = t.pick_event([](const auto&) { return true; })) {
            log.events[*idx].type_name = "__no_such_event_type";
            seeded("E003");
        }
    }
    if (want("E005")) {
        auto known_type = [&](const ocel::raw::Event& e) {
            return t.event_decls.contains(e.type_name);
        };
        if (auto idx = t.pick_event(known_type)) {
            log.events[*idx].attributes.push_back(
                {"__undeclared_attribute", false, {}, Value::of_text("x")});
            seeded("E005");
        }
    }
    if (want("E006")) {
        auto has_attr = [&](const ocel::raw::Event& e) {
            auto it = t.event_decls.find(e.type_name);
            return it != t.event_decls.end() && !it->second->attributes.empty();
        };
        if (auto idx = t.pick_event(has_attr)) {
            const auto& decl = *t.event_decls.at(log.events[*idx].type_name);
            log.events[*idx].attributes.push_back({decl.attributes.front().name, false, {},
                                                   bad_value_for(decl.attributes.front().kind_text)});
            seeded("E006");
        }
    }
    if (want("E008")) {
        if (auto idx = t.pick_event([](const auto&) { return true; })) {
            log.events[*idx].time_text = "not-a-date";
            seeded("E008");
        }
    }
    if (want("W001")) {
        auto works = [&](const ocel::raw::Event& e) {
            // need an existing object this event does not already relate
            // to with an empty qualifier
            for (const auto& o : log.objects) {
                if (o.id.empty() || stripped.contains(o.id)) continue;
                const bool present =
                    std::any_of(e.relations.begin(), e.relations.end(), [&](const Relation& r) {
                        return r.object_id == o.id && r.qualifier.empty();
                    });
                if (!present) return true;
            }
            return false;
        };
        if (auto idx = t.pick_event(works)) {
            auto& e = log.events[*idx];
            for (const auto& o : log.objects) {
                if (o.id.empty() || stripped.contains(o.id)) continue;
                const bool present =
                    std::any_of(e.relations.begin(), e.relations.end(), [&](const Relation& r) {
                        return r.object_id == o.id && r.qualifier.empty();
                    });
                if (!present) {
                    e.relations.push_back({o.id, ""});
                    seeded("W001");
                    break;
                }
            }
        }
    }
    if (want("W003")) {
        auto has_live_relation = [&](const ocel::raw::Event& e) {
            return std::any_of(e.relations.begin(), e.relations.end(), [&](const Relation& r) {
                return t.object_ids.contains(r.object_id) && !r.qualifier.empty();
            });
        };
        if (auto idx = t.pick_event(has_live_relation)) {
            auto& e = log.events[*idx];
            for (const auto& r : e.relations) {
                if (t.object_ids.contains(r.object_id) && !r.qualifier.empty()) {
                    e.relations.push_back(r);
                    seeded("W003");
                    break;
                }
            }
        }
    }
    // duplicate last so the copy carries no other seeded fault
    if (want("E007")) {
        if (auto idx = t.pick_event([](const auto&) { return true; })) {
            log.events.push_back(log.events[*idx]);
            seeded("E007");
        }
    }

    return result;
}

}  // namespace fault
