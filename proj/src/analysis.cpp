#include "ocel/analysis.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace ocel::analysis {

namespace {

// events per object, in canonical log order
std::map<std::string, std::vector<const Event*>> events_by_object(const OcelLog& log) {
    std::map<std::string, std::vector<const Event*>> out;
    for (const auto& object : log.objects()) out[object.id];
    for (const auto& event : log.events()) {
        for (const auto& relation : event.relations) {
            // an event joins each object once, whatever the qualifiers
            auto it = out.find(relation.object_id);
            if (it != out.end() && (it->second.empty() || it->second.back() != &event))
                it->second.push_back(&event);
        }
    }
    return out;
}

std::string csv_field(const std::string& value) {
    const bool needs_quotes = value.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return value;
    std::string out = "\"";
    for (const char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string dot_escape(const std::string& value) {
    std::string out;
    for (const char c : value) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c); break;
        }
    }
    return out;
}

// ColorBrewer Dark2, cycled per object type
constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};

}  // namespace

std::vector<FlatTrace> flatten(const OcelLog& log, const std::string& object_type) {
    if (!log.find_object_type(object_type)) throw UnknownTypeError(object_type);
    const auto incidences = events_by_object(log);
    std::vector<FlatTrace> traces;
    for (const auto& object : log.objects()) {
        if (object.type_name != object_type) continue;
        FlatTrace trace;
        trace.case_id = object.id;
        for (const Event* event : incidences.at(object.id))
            trace.steps.push_back({event->id, event->type_name, event->time});
        traces.push_back(std::move(trace));
    }
    return traces;
}

LogStatistics statistics(const OcelLog& log) {
    LogStatistics stats;
    stats.event_count = log.events().size();
    stats.object_count = log.objects().size();
    for (const auto& type : log.event_types()) stats.events_per_type[type.name] = 0;
    for (const auto& type : log.object_types()) stats.objects_per_type[type.name] = 0;
    for (const auto& event : log.events()) {
        stats.e2o_count += event.relations.size();
        stats.events_per_type[event.type_name]++;
    }
    for (const auto& object : log.objects()) {
        stats.o2o_count += object.relations.size();
        stats.snapshot_count += object.attribute_history.size();
        stats.objects_per_type[object.type_name]++;
    }
    if (!log.events().empty()) {
        stats.time_span = {log.events().front().time, log.events().back().time};
        stats.objects_per_event_mean =
            static_cast<double>(stats.e2o_count) / static_cast<double>(stats.event_count);
    }
    return stats;
}

OcDfg discover_ocdfg(const OcelLog& log) {
    OcDfg graph;
    for (const auto& event : log.events()) graph.nodes.insert(event.type_name);
    const auto incidences = events_by_object(log);
    for (const auto& object : log.objects()) {
        const auto& events = incidences.at(object.id);
        if (events.empty()) continue;
        graph.start_frequencies[{events.front()->type_name, object.type_name}]++;
        graph.end_frequencies[{events.back()->type_name, object.type_name}]++;
        for (std::size_t i = 0; i + 1 < events.size(); ++i)
            graph.arcs[{events[i]->type_name, events[i + 1]->type_name, object.type_name}]++;
    }
    return graph;
}

std::string render_ocdfg_dot(const OcDfg& graph) {
    // stable color index per object type over everything in the graph
    std::set<std::string> object_types;
    for (const auto& [key, _] : graph.arcs) object_types.insert(std::get<2>(key));
    for (const auto& [key, _] : graph.start_frequencies) object_types.insert(key.second);
    for (const auto& [key, _] : graph.end_frequencies) object_types.insert(key.second);
    std::map<std::string, std::size_t> color_index;
    for (const auto& name : object_types) color_index.emplace(name, color_index.size());

    std::string out = "digraph ocdfg {\n  rankdir=LR;\n  node [shape=box, style=rounded];\n";
    for (const auto& node : graph.nodes) out += "  \"" + dot_escape(node) + "\";\n";
    for (const auto& [key, frequency] : graph.arcs) {
        const auto& [source, target, object_type] = key;
        const char* color = kPalette[color_index.at(object_type) % std::size(kPalette)];
        out += "  \"" + dot_escape(source) + "\" -> \"" + dot_escape(target) + "\" [label=\"" +
               dot_escape(object_type) + " × " + std::to_string(frequency) + "\", color=\"" +
               color + "\", fontcolor=\"" + color + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string traces_to_csv(const std::vector<FlatTrace>& traces) {
    std::string out = "case_id,event_id,activity,timestamp\n";
    for (const auto& trace : traces)
        for (const auto& step : trace.steps)
            out += csv_field(trace.case_id) + "," + csv_field(step.event_id) + "," +
                   csv_field(step.event_type) + "," + step.time.to_text() + "\n";
    return out;
}

std::string statistics_to_text(const LogStatistics& stats) {
    char mean[32];
    std::snprintf(mean, sizeof(mean), "%.2f", stats.objects_per_event_mean);
    std::string out;
    out += "events: " + std::to_string(stats.event_count) + "\n";
    out += "objects: " + std::to_string(stats.object_count) + "\n";
    out += "e2o relations: " + std::to_string(stats.e2o_count) + "\n";
    out += "o2o relations: " + std::to_string(stats.o2o_count) + "\n";
    out += "attribute snapshots: " + std::to_string(stats.snapshot_count) + "\n";
    out += "objects per event (mean): " + std::string(mean) + "\n";
    if (stats.time_span)
        out += "time span: " + stats.time_span->first.to_text() + " .. " +
               stats.time_span->second.to_text() + "\n";
    out += "events per type:\n";
    for (const auto& [name, count] : stats.events_per_type)
        out += "  " + name + ": " + std::to_string(count) + "\n";
    out += "objects per type:\n";
    for (const auto& [name, count] : stats.objects_per_type)
        out += "  " + name + ": " + std::to_string(count) + "\n";
    return out;
}

std::string statistics_to_json(const LogStatistics& stats) {
    nlohmann::ordered_json doc;
    doc["event_count"] = stats.event_count;
    doc["object_count"] = stats.object_count;
    doc["e2o_count"] = stats.e2o_count;
    doc["o2o_count"] = stats.o2o_count;
    doc["snapshot_count"] = stats.snapshot_count;
    doc["events_per_type"] = nlohmann::ordered_json::object();
    for (const auto& [name, count] : stats.events_per_type) doc["events_per_type"][name] = count;
    doc["objects_per_type"] = nlohmann::ordered_json::object();
    for (const auto& [name, count] : stats.objects_per_type) doc["objects_per_type"][name] = count;
    if (stats.time_span) {
        doc["time_span"] = {{"min", stats.time_span->first.to_text()},
                            {"max", stats.time_span->second.to_text()}};
    } else {
        doc["time_span"] = nullptr;
    }
    doc["objects_per_event_mean"] = stats.objects_per_event_mean;
    return doc.dump(2) + "\n";
}

}  // namespace ocel::analysis
