#ifndef OCEL_TESTS_FIXTURE_HPP
#define OCEL_TESTS_FIXTURE_HPP

#include <string>

#include "ocel/analysis.hpp"
#include "ocel/model.hpp"

namespace fixture {

inline ocel::Timestamp ts(const char* text) {
    return *ocel::Timestamp::parse(text);
}

// The bundled order-mini log: an order (o1) with two items placed in e1,
// the order confirmed in e2, each item handled in e3/e4. 4 events,
// 3 objects, 6 E2O relations, 2 O2O relations, 5 snapshots.
inline ocel::OcelLog order_mini() {
    using ocel::AttributeValue;
    using ocel::ValueKind;

    std::vector<ocel::EventType> event_types = {
        {"place_order", {{"channel", ValueKind::String}}},
        {"confirm", {}},
    };
    std::vector<ocel::ObjectType> object_types = {
        {"order", {{"price", ValueKind::Float}, {"paid", ValueKind::Boolean}}},
        {"item", {{"weight", ValueKind::Float}}},
    };

    std::vector<ocel::ObjectEntity> objects(3);
    objects[0].id = "o1";
    objects[0].type_name = "order";
    objects[0].attribute_history = {
        {"price", ts("2023-10-23T08:00:00.000+00:00"), AttributeValue(100.0)},
        {"price", ts("2023-10-23T09:00:00.000+00:00"), AttributeValue(95.0)},
        {"paid", ts("2023-10-23T09:30:00.000+00:00"), AttributeValue(true)},
    };
    objects[0].relations = {{"o2", "contains"}, {"o3", "contains"}};
    objects[1].id = "o2";
    objects[1].type_name = "item";
    objects[1].attribute_history = {
        {"weight", ts("2023-10-23T08:00:00.000+00:00"), AttributeValue(0.5)},
    };
    objects[2].id = "o3";
    objects[2].type_name = "item";
    objects[2].attribute_history = {
        {"weight", ts("2023-10-23T08:00:00.000+00:00"), AttributeValue(0.75)},
    };

    std::vector<ocel::Event> events(4);
    events[0].id = "e1";
    events[0].type_name = "place_order";
    events[0].time = ts("2023-10-23T08:00:00.000+00:00");
    events[0].attributes.emplace("channel", AttributeValue("web"));
    events[0].relations = {{"o1", "order"}, {"o2", "item"}, {"o3", "item"}};
    events[1].id = "e2";
    events[1].type_name = "confirm";
    events[1].time = ts("2023-10-23T08:15:00.000+00:00");
    events[1].relations = {{"o1", "order"}};
    events[2].id = "e3";
    events[2].type_name = "confirm";
    events[2].time = ts("2023-10-23T09:00:00.000+00:00");
    events[2].relations = {{"o2", "item"}};
    events[3].id = "e4";
    events[3].type_name = "confirm";
    events[3].time = ts("2023-10-23T09:30:00.000+00:00");
    events[3].relations = {{"o3", "item"}};

    return ocel::build_log(std::move(event_types), std::move(object_types), std::move(objects),
                           std::move(events));
}

// Hand-computed directly-follows graph of order-mini.
inline ocel::analysis::OcDfg order_mini_dfg() {
    ocel::analysis::OcDfg g;
    g.nodes = {"confirm", "place_order"};
    g.arcs[{"place_order", "confirm", "item"}] = 2;
    g.arcs[{"place_order", "confirm", "order"}] = 1;
    g.start_frequencies[{"place_order", "item"}] = 2;
    g.start_frequencies[{"place_order", "order"}] = 1;
    g.end_frequencies[{"confirm", "item"}] = 2;
    g.end_frequencies[{"confirm", "order"}] = 1;
    return g;
}

inline std::string fixture_path(const std::string& name) {
    return std::string(OCEL_FIXTURE_DIR) + "/" + name;
}

}  // namespace fixture

#endif
