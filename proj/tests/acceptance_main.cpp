// Acceptance suite: runs every acceptance criterion and prints one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ocel/analysis.hpp"
#include "ocel/formats.hpp"
#include "ocel/validate.hpp"
#include "support/fault.hpp"
#include "support/fixture.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"
#include "support/tmpdir.hpp"

using namespace ocel;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
    void require(bool condition, const std::string& why) {
        if (!condition) fail(why);
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// --- criterion 1: tri-format round-trip -------------------------------------

void tri_format_roundtrip(Check& check) {
    std::mt19937_64 rng(1001);
    testutil::TempDir tmp("acc_roundtrip");
    gen::Options options;  // up to 200 events, 100 objects, 5 types each
    options.allow_epoch_snapshot = true;
    for (int round = 0; round < 500 && check.ok; ++round) {
        const OcelLog log = gen::random_log(rng, options);
        const OcelLog via_xml = io::read_xml_string(io::write_xml_string(log)).log;
        check.require(via_xml == log, "xml round-trip mismatch at log " + std::to_string(round));
        const OcelLog via_json = io::read_json_string(io::write_json_string(log)).log;
        check.require(via_json == log, "json round-trip mismatch at log " + std::to_string(round));
        const std::string path = tmp.file("log.sqlite");
        io::write_sqlite(log, path);
        const OcelLog via_sqlite = io::read_sqlite(path).log;
        check.require(via_sqlite == log,
                      "sqlite round-trip mismatch at log " + std::to_string(round));
    }
}

// --- criterion 2: cross-format equality -------------------------------------

void cross_format_equality(Check& check) {
    std::mt19937_64 rng(2002);
    testutil::TempDir tmp("acc_cross");
    gen::Options options;
    options.allow_epoch_snapshot = true;
    for (int round = 0; round < 100 && check.ok; ++round) {
        const OcelLog log = gen::random_log(rng, options);
        const OcelLog a = io::read_xml_string(io::write_xml_string(log)).log;
        const OcelLog b = io::read_json_string(io::write_json_string(log)).log;
        const std::string path = tmp.file("log.sqlite");
        io::write_sqlite(log, path);
        const OcelLog c = io::read_sqlite(path).log;
        check.require(a == b && b == c && a == c,
                      "decoded logs differ pairwise at log " + std::to_string(round));
    }
}

// --- criterion 3: golden fixtures -------------------------------------------

void golden_fixtures(Check& check) {
    const OcelLog from_xml = io::read_xml(fixture::fixture_path("order-mini.xmlocel")).log;
    const OcelLog from_json = io::read_json(fixture::fixture_path("order-mini.jsonocel")).log;
    const OcelLog from_sqlite = io::read_sqlite(fixture::fixture_path("order-mini.sqlite")).log;
    check.require(from_xml == from_json && from_json == from_sqlite,
                  "the three golden encodings decode to different logs");

    check.require(from_xml.events().size() == 4, "|E| != 4");
    check.require(from_xml.objects().size() == 3, "|O| != 3");
    std::size_t e2o = 0, o2o = 0;
    for (const auto& e : from_xml.events()) e2o += e.relations.size();
    for (const auto& o : from_xml.objects()) o2o += o.relations.size();
    check.require(e2o == 6, "E2O count != 6");
    check.require(o2o == 2, "O2O count != 2");
    check.require(from_xml == fixture::order_mini(), "decoded golden differs from built fixture");
}

// --- criterion 4: validation fault injection ---------------------------------

void fault_injection(Check& check) {
    // each code at its documented location, seeded into order-mini
    auto base = gen::to_raw(fixture::order_mini());
    struct Seed {
        std::string code;
        std::string location;
        std::function<void(raw::Log&)> plant;
    };
    const std::vector<Seed> seeds = {
        {"E001", "events/e2/relations/0",
         [](raw::Log& r) { r.events[1].relations[0].object_id = "ghost"; }},
        {"E002", "objects/o1/relations/0",
         [](raw::Log& r) { r.objects[0].relations[0].object_id = "ghost"; }},
        {"E003", "events/e1", [](raw::Log& r) { r.events[0].type_name = "nope"; }},
        {"E004", "objects/o2", [](raw::Log& r) { r.objects[1].type_name = "nope"; }},
        {"E005", "events/e1/attributes/1",
         [](raw::Log& r) {
             r.events[0].attributes.push_back({"bogus", false, {}, raw::Value::of_text("x")});
         }},
        {"E006", "events/e1/attributes/0",
         [](raw::Log& r) { r.events[0].attributes[0].value = raw::Value::of_integer(7); }},
        {"E007", "events/e3", [](raw::Log& r) { r.events.push_back(r.events[2]); }},
        {"E008", "events/e4/time", [](raw::Log& r) { r.events[3].time_text = "not-a-date"; }},
        {"W001", "objects/o1/relations/0",
         [](raw::Log& r) { r.objects[0].relations[0].qualifier = ""; }},
        {"W002", "objects/o2",
         [](raw::Log& r) {
             for (auto& e : r.events)
                 std::erase_if(e.relations,
                               [](const raw::Relation& rel) { return rel.object_id == "o2"; });
         }},
        {"W003", "events/e1/relations/3",
         [](raw::Log& r) { r.events[0].relations.push_back(r.events[0].relations[0]); }},
        {"W004", "objects/o1/attributes/3",
         [](raw::Log& r) {
             r.objects[0].attributes.push_back(
                 {"price", true, "1970-01-01T00:00:00.000+00:00", raw::Value::of_real(1.0)});
         }},
    };
    for (const auto& seed : seeds) {
        raw::Log corrupted = base;
        seed.plant(corrupted);
        const ValidationReport report = validate(corrupted);
        bool hit = false;
        for (const auto& d : report.diagnostics)
            if (d.code == seed.code && d.location == seed.location) hit = true;
        check.require(hit, seed.code + " not reported at " + seed.location);
    }

    // agreement with the independent checker over corrupted random logs
    std::mt19937_64 rng(4004);
    gen::Options options;
    options.max_events = 60;
    options.max_objects = 30;
    options.min_events = 6;
    options.min_objects = 4;
    for (int round = 0; round < 200 && check.ok; ++round) {
        const OcelLog log = gen::random_log(rng, options);
        std::set<std::string> requested;
        for (const auto& code : fault::all_codes())
            if (rng() % 2 == 0) requested.insert(code);
        const auto injected = fault::inject(gen::to_raw(log), rng, requested);

        const auto expected = oracle::expected_diagnostics(injected.log);
        std::multiset<oracle::Finding> actual;
        std::set<std::string> reported;
        for (const auto& d : validate(injected.log).diagnostics) {
            actual.insert({d.severity == Severity::Error ? 'E' : 'W', d.code, d.location});
            reported.insert(d.code);
        }
        check.require(actual == expected,
                      "diagnostic sets disagree with the oracle at log " + std::to_string(round));
        for (const auto& code : injected.seeded)
            check.require(reported.contains(code),
                          "seeded " + code + " unreported at log " + std::to_string(round));
    }
}

// --- criterion 5: OCEL 1.0 compatibility -------------------------------------

void ocel1_compatibility(Check& check) {
    const OcelLog imported =
        io::import_ocel1(fixture::fixture_path("ocel1-mini.jsonocel"), io::FormatKind::Ocel1Json)
            .log;
    check.require(imported.events().size() == 3, "|E| != 3 after import");
    check.require(imported.objects().size() == 2, "|O| != 2 after import");
    std::size_t e2o = 0;
    for (const auto& e : imported.events()) {
        e2o += e.relations.size();
        for (const auto& r : e.relations)
            check.require(r.qualifier.empty(), "omap relation has a non-empty qualifier");
    }
    check.require(e2o == 5, "omap relation count != 5");

    testutil::TempDir tmp("acc_ocel1");
    check.require(io::read_xml_string(io::write_xml_string(imported)).log == imported,
                  "xml re-export not lossless");
    check.require(io::read_json_string(io::write_json_string(imported)).log == imported,
                  "json re-export not lossless");
    const std::string path = tmp.file("imported.sqlite");
    io::write_sqlite(imported, path);
    check.require(io::read_sqlite(path).log == imported, "sqlite re-export not lossless");
}

// --- criterion 6: analysis oracles -------------------------------------------

void analysis_oracles(Check& check) {
    std::mt19937_64 rng(6006);
    gen::Options options;
    options.max_events = 80;
    options.max_objects = 40;
    for (int round = 0; round < 200 && check.ok; ++round) {
        const OcelLog log = gen::random_log(rng, options);

        for (const auto& type : log.object_types()) {
            const auto traces = analysis::flatten(log, type.name);
            std::size_t total_steps = 0;
            for (const auto& t : traces) total_steps += t.steps.size();
            check.require(total_steps == oracle::incidence_pairs(log, type.name),
                          "flatten conservation violated at log " + std::to_string(round));
        }

        const analysis::OcDfg graph = analysis::discover_ocdfg(log);
        check.require(graph == oracle::ocdfg_bruteforce(log),
                      "dfg differs from brute force at log " + std::to_string(round));

        std::map<std::string, std::uint64_t> arc_totals, expected_arcs, starts, ends, active;
        for (const auto& [key, f] : graph.arcs) arc_totals[std::get<2>(key)] += f;
        for (const auto& [key, f] : graph.start_frequencies) starts[key.second] += f;
        for (const auto& [key, f] : graph.end_frequencies) ends[key.second] += f;
        for (const auto& object : log.objects()) {
            const auto events = oracle::events_of_object_bruteforce(log, object.id);
            if (events.empty()) continue;
            if (events.size() > 1) expected_arcs[object.type_name] += events.size() - 1;
            active[object.type_name] += 1;
        }
        check.require(arc_totals == expected_arcs && starts == active && ends == active,
                      "dfg totals identity violated at log " + std::to_string(round));
    }
    check.require(analysis::discover_ocdfg(fixture::order_mini()) == fixture::order_mini_dfg(),
                  "order-mini dfg differs from the hand-computed graph");
}

// --- criterion 7: evolving attributes ----------------------------------------

void evolving_attributes(Check& check) {
    std::mt19937_64 rng(7007);
    gen::Options options;
    options.max_events = 10;
    options.max_objects = 25;
    options.max_snapshots_per_object = 6;
    int queries = 0;
    while (queries < 1000 && check.ok) {
        const OcelLog log = gen::random_log(rng, options);
        for (const auto& object : log.objects()) {
            const ObjectType* type = log.find_object_type(object.type_name);
            for (const auto& decl : type->attributes) {
                const Timestamp t(static_cast<std::int64_t>(rng() % 4100000000000LL) - 50000);
                const auto expected =
                    oracle::last_write_before(object.attribute_history, decl.name, t);
                const auto actual = log.attribute_value_at(object.id, decl.name, t);
                check.require(actual == expected, "last-write-before mismatch");
                ++queries;
            }
        }
    }
    check.require(queries >= 1000, "generated fewer than 1000 query pairs");
}

// --- criterion 8: CLI end-to-end ----------------------------------------------

int run_cli(const std::string& args, const std::string& out_path, const std::string& err_path) {
    const std::string command =
        std::string(OCEL_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    return WEXITSTATUS(std::system(command.c_str()));
}

void cli_end_to_end(Check& check) {
    testutil::TempDir tmp("acc_cli");
    const std::string out = tmp.file("out.txt");
    const std::string err = tmp.file("err.txt");
    const std::string xml = "'" + fixture::fixture_path("order-mini.xmlocel") + "'";
    const std::string ocel1 = "'" + fixture::fixture_path("ocel1-mini.jsonocel") + "'";

    check.require(run_cli("validate " + xml, out, err) == 0, "validate exit != 0");
    check.require(slurp(out).find("0 errors, 0 warnings") != std::string::npos,
                  "validate summary missing");
    check.require(run_cli("validate /missing.xmlocel", out, err) == 2,
                  "validate on a missing path should exit 2");

    const std::string conv1 = tmp.file("c1.sqlite");
    const std::string conv2 = tmp.file("c2.sqlite");
    check.require(run_cli("convert " + xml + " '" + conv1 + "'", out, err) == 0,
                  "convert exit != 0");
    check.require(slurp(out).find("4 events, 3 objects") != std::string::npos,
                  "convert summary missing");
    check.require(run_cli("convert " + xml + " '" + conv2 + "'", out, err) == 0,
                  "second convert exit != 0");
    check.require(slurp(conv1) == slurp(conv2), "converted outputs are not byte-identical");
    check.require(run_cli("convert " + xml + " '" + tmp.file("x.bin") + "' --to gibberish", out,
                          err) == 3,
                  "convert --to gibberish should exit 3");

    check.require(run_cli("stats " + xml, out, err) == 0, "stats exit != 0");
    const std::string stats_a = slurp(out);
    check.require(stats_a.find("events: 4") != std::string::npos, "stats output missing counts");
    check.require(run_cli("stats " + xml, out, err) == 0, "stats rerun exit != 0");
    check.require(stats_a == slurp(out), "stats output not byte-stable");

    const std::string csv1 = tmp.file("f1.csv");
    const std::string csv2 = tmp.file("f2.csv");
    check.require(
        run_cli("flatten " + xml + " --object-type item --out '" + csv1 + "'", out, err) == 0,
        "flatten exit != 0");
    check.require(
        run_cli("flatten " + xml + " --object-type item --out '" + csv2 + "'", out, err) == 0,
        "flatten rerun exit != 0");
    check.require(slurp(csv1) == slurp(csv2) && !slurp(csv1).empty(),
                  "flatten output not byte-stable");
    check.require(run_cli("flatten " + xml + " --object-type nope", out, err) == 3,
                  "flatten with unknown type should exit 3");

    const std::string dot1 = tmp.file("g1.dot");
    const std::string dot2 = tmp.file("g2.dot");
    check.require(run_cli("discover " + xml + " --out '" + dot1 + "'", out, err) == 0,
                  "discover exit != 0");
    check.require(run_cli("discover " + xml + " --out '" + dot2 + "'", out, err) == 0,
                  "discover rerun exit != 0");
    check.require(slurp(dot1) == slurp(dot2) && !slurp(dot1).empty(),
                  "discover output not byte-stable");

    check.require(run_cli("import-ocel1 " + ocel1 + " '" + tmp.file("i.xmlocel") + "'", out, err) ==
                      0,
                  "import-ocel1 exit != 0");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)(Check&);
    };
    const Criterion criteria[] = {
        {"tri-format round-trip, 500 randomized logs", tri_format_roundtrip},
        {"cross-format equality, 100 randomized logs", cross_format_equality},
        {"golden fixtures decode identically with exact counts", golden_fixtures},
        {"validation fault injection and oracle agreement", fault_injection},
        {"OCEL 1.0 import compatibility and lossless re-export", ocel1_compatibility},
        {"analysis oracles: flatten conservation and DFG identities", analysis_oracles},
        {"evolving attributes: 1000 last-write-before queries", evolving_attributes},
        {"CLI end-to-end exit codes and byte-stable outputs", cli_end_to_end},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto started = std::chrono::steady_clock::now();
        Check check;
        try {
            criterion.run(check);
        } catch (const std::exception& err) {
            check.fail(std::string("exception: ") + err.what());
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
        if (check.ok) {
            std::printf("[PASS] %s (%lld ms)\n", criterion.name, static_cast<long long>(elapsed));
        } else {
            std::printf("[FAIL] %s: %s\n", criterion.name, check.detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
