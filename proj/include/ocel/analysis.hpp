#ifndef OCEL_ANALYSIS_HPP
#define OCEL_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ocel/model.hpp"

namespace ocel::analysis {

struct FlatStep {
    std::string event_id;
    std::string event_type;
    Timestamp time;

    bool operator==(const FlatStep&) const = default;
};

/// One traditional-log trace obtained by projecting onto a single object.
struct FlatTrace {
    std::string case_id;
    std::vector<FlatStep> steps;  // sorted by (time, event_id)

    bool operator==(const FlatTrace&) const = default;
};

struct LogStatistics {
    std::size_t event_count = 0;
    std::size_t object_count = 0;
    std::size_t e2o_count = 0;
    std::size_t o2o_count = 0;
    std::size_t snapshot_count = 0;
    std::map<std::string, std::size_t> events_per_type;
    std::map<std::string, std::size_t> objects_per_type;
    std::optional<std::pair<Timestamp, Timestamp>> time_span;
    double objects_per_event_mean = 0.0;
};

/// Object-centric directly-follows graph. Arc keys are
/// (source event type, target event type, object type).
struct OcDfg {
    using ArcKey = std::tuple<std::string, std::string, std::string>;
    using EndpointKey = std::pair<std::string, std::string>;  // (event type, object type)

    std::set<std::string> nodes;
    std::map<ArcKey, std::uint64_t> arcs;
    std::map<EndpointKey, std::uint64_t> start_frequencies;
    std::map<EndpointKey, std::uint64_t> end_frequencies;

    bool operator==(const OcDfg&) const = default;
};

/// One trace per object of the type, in object-id order. Events shared by
/// several objects of the type are replicated into each trace; objects
/// without events keep an empty trace. Throws UnknownTypeError.
std::vector<FlatTrace> flatten(const OcelLog& log, const std::string& object_type);

LogStatistics statistics(const OcelLog& log);

/// Counts directly-follows pairs per object and aggregates them per
/// object type; first/last events feed the start/end frequencies.
OcDfg discover_ocdfg(const OcelLog& log);

/// DOT text: one node per event type, one edge per arc labeled
/// "objectType × frequency", one color index per object type.
std::string render_ocdfg_dot(const OcDfg& graph);

/// CSV with columns case_id,event_id,activity,timestamp (RFC 4180 quoting).
std::string traces_to_csv(const std::vector<FlatTrace>& traces);

/// Human-readable statistics, one "key: value" line per figure.
std::string statistics_to_text(const LogStatistics& stats);
std::string statistics_to_json(const LogStatistics& stats);

}  // namespace ocel::analysis

#endif
