#!/usr/bin/env python3
"""Builds fixtures/order-mini.sqlite with plain SQL, independent of the
library writers. Run from the repository root."""

import os
import sqlite3
import sys

OUT = sys.argv[1] if len(sys.argv) > 1 else "fixtures/order-mini.sqlite"

T1 = "2023-10-23T08:00:00.000+00:00"
T2 = "2023-10-23T08:15:00.000+00:00"
T3 = "2023-10-23T09:00:00.000+00:00"
T4 = "2023-10-23T09:30:00.000+00:00"

if os.path.exists(OUT):
    os.remove(OUT)
db = sqlite3.connect(OUT)
c = db.cursor()

c.execute("CREATE TABLE event (ocel_id TEXT PRIMARY KEY, ocel_type TEXT)")
c.execute("CREATE TABLE object (ocel_id TEXT PRIMARY KEY, ocel_type TEXT)")
c.execute("CREATE TABLE event_object (ocel_event_id TEXT, ocel_object_id TEXT, ocel_qualifier TEXT)")
c.execute("CREATE TABLE object_object (ocel_source_id TEXT, ocel_target_id TEXT, ocel_qualifier TEXT)")
c.execute("CREATE TABLE event_map_type (ocel_type TEXT, ocel_type_map TEXT)")
c.execute("CREATE TABLE object_map_type (ocel_type TEXT, ocel_type_map TEXT)")

c.execute("CREATE TABLE event_confirm (ocel_id TEXT, ocel_time TIMESTAMP)")
c.execute("CREATE TABLE event_place_order (ocel_id TEXT, ocel_time TIMESTAMP, channel TEXT)")
c.execute("CREATE TABLE object_item (ocel_id TEXT, ocel_time TIMESTAMP, ocel_changed_field TEXT, weight REAL)")
c.execute(
    "CREATE TABLE object_order (ocel_id TEXT, ocel_time TIMESTAMP, ocel_changed_field TEXT, "
    "paid BOOLEAN, price REAL)"
)

c.executemany("INSERT INTO event_map_type VALUES (?, ?)",
              [("confirm", "confirm"), ("place_order", "place_order")])
c.executemany("INSERT INTO object_map_type VALUES (?, ?)",
              [("item", "item"), ("order", "order")])

c.executemany("INSERT INTO object VALUES (?, ?)",
              [("o1", "order"), ("o2", "item"), ("o3", "item")])
c.executemany("INSERT INTO event VALUES (?, ?)",
              [("e1", "place_order"), ("e2", "confirm"), ("e3", "confirm"), ("e4", "confirm")])

c.executemany("INSERT INTO event_object VALUES (?, ?, ?)", [
    ("e1", "o1", "order"), ("e1", "o2", "item"), ("e1", "o3", "item"),
    ("e2", "o1", "order"), ("e3", "o2", "item"), ("e4", "o3", "item"),
])
c.executemany("INSERT INTO object_object VALUES (?, ?, ?)", [
    ("o1", "o2", "contains"), ("o1", "o3", "contains"),
])

c.executemany("INSERT INTO event_confirm VALUES (?, ?)", [("e2", T2), ("e3", T3), ("e4", T4)])
c.executemany("INSERT INTO event_place_order VALUES (?, ?, ?)", [("e1", T1, "web")])
c.executemany("INSERT INTO object_item VALUES (?, ?, ?, ?)",
              [("o2", T1, "weight", 0.5), ("o3", T1, "weight", 0.75)])
c.executemany("INSERT INTO object_order VALUES (?, ?, ?, ?, ?)", [
    ("o1", T4, "paid", 1, None), ("o1", T1, "price", None, 100.0), ("o1", T3, "price", None, 95.0),
])

c.execute("CREATE INDEX idx_event_object_event ON event_object (ocel_event_id)")
c.execute("CREATE INDEX idx_event_object_object ON event_object (ocel_object_id)")
c.execute("CREATE INDEX idx_object_object_source ON object_object (ocel_source_id)")
c.execute("CREATE INDEX idx_object_object_target ON object_object (ocel_target_id)")
c.execute("CREATE INDEX idx_event_confirm_id ON event_confirm (ocel_id)")
c.execute("CREATE INDEX idx_event_place_order_id ON event_place_order (ocel_id)")
c.execute("CREATE INDEX idx_object_item_id ON object_item (ocel_id)")
c.execute("CREATE INDEX idx_object_order_id ON object_order (ocel_id)")

db.commit()
db.close()
print(f"wrote {OUT}")
