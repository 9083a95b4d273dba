#!/usr/bin/env python3
"""Independent fixture enumerator: counts events, objects, E2O/O2O
relations, and snapshots in each fixture encoding using only the Python
standard library. Used to cross-check the frozen test expectations."""

import json
import sqlite3
import sys
import xml.etree.ElementTree as ET


def counts_xml(path):
    root = ET.parse(path).getroot()
    events = root.find("events") or []
    objects = root.find("objects") or []
    e2o = sum(len(e.find("objects") or []) for e in events)
    o2o = sum(len(o.find("objects") or []) for o in objects)
    snaps = sum(len(o.find("attributes") or []) for o in objects)
    return dict(events=len(list(events)), objects=len(list(objects)), e2o=e2o, o2o=o2o,
                snapshots=snaps)


def counts_json(path):
    doc = json.load(open(path, encoding="utf-8"))
    if "ocel:events" in doc:  # OCEL 1.0
        events = doc["ocel:events"]
        objects = doc.get("ocel:objects", {})
        e2o = sum(len(e.get("ocel:omap", [])) for e in events.values())
        snaps = sum(len(o.get("ocel:ovmap", {})) for o in objects.values())
        return dict(events=len(events), objects=len(objects), e2o=e2o, o2o=0, snapshots=snaps)
    e2o = sum(len(e.get("relationships", [])) for e in doc.get("events", []))
    o2o = sum(len(o.get("relationships", [])) for o in doc.get("objects", []))
    snaps = sum(len(o.get("attributes", [])) for o in doc.get("objects", []))
    return dict(events=len(doc.get("events", [])), objects=len(doc.get("objects", [])), e2o=e2o,
                o2o=o2o, snapshots=snaps)


def counts_sqlite(path):
    db = sqlite3.connect(path)
    one = lambda sql: db.execute(sql).fetchone()[0]
    maps = db.execute("SELECT ocel_type_map FROM object_map_type").fetchall()
    snaps = sum(one(f'SELECT COUNT(*) FROM "object_{m[0]}"') for m in maps)
    return dict(events=one("SELECT COUNT(*) FROM event"),
                objects=one("SELECT COUNT(*) FROM object"),
                e2o=one("SELECT COUNT(*) FROM event_object"),
                o2o=one("SELECT COUNT(*) FROM object_object"),
                snapshots=snaps)


def main():
    for path in sys.argv[1:]:
        if path.endswith((".sqlite", ".db", ".sqlite3")):
            c = counts_sqlite(path)
        elif path.endswith((".jsonocel", ".json")):
            c = counts_json(path)
        else:
            c = counts_xml(path)
        print(f"{path}: {c}")


if __name__ == "__main__":
    main()
