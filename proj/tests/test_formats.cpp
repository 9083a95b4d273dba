#include <doctest.h>

#include <fstream>
#include <random>

#include "ocel/formats.hpp"
#include "support/fixture.hpp"
#include "support/gen.hpp"
#include "support/tmpdir.hpp"

using namespace ocel;
using namespace ocel::io;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

const char* kEmptyXml =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<log>\n"
    "  <object-types/>\n"
    "  <event-types/>\n"
    "  <objects/>\n"
    "  <events/>\n"
    "</log>\n";

}  // namespace

TEST_CASE("xml golden: read gives the fixture, write reproduces the bytes") {
    const std::string path = fixture::fixture_path("order-mini.xmlocel");
    const ReadResult result = read_xml(path);
    CHECK(result.report.error_count == 0);
    CHECK(result.report.warning_count == 0);
    CHECK(result.log == fixture::order_mini());
    CHECK(write_xml_string(result.log) == slurp(path));
}

TEST_CASE("json golden: read gives the fixture, write reproduces the bytes") {
    const std::string path = fixture::fixture_path("order-mini.jsonocel");
    const ReadResult result = read_json(path);
    CHECK(result.report.error_count == 0);
    CHECK(result.log == fixture::order_mini());
    CHECK(write_json_string(result.log) == slurp(path));
}

TEST_CASE("xml: empty sections give the empty log, and the empty log writes canonically") {
    const ReadResult result = read_xml_string("<log><objects/><events/></log>");
    CHECK(result.log == OcelLog{});
    CHECK(write_xml_string(OcelLog{}) == kEmptyXml);
    CHECK(read_xml_string(kEmptyXml).log == OcelLog{});
}

TEST_CASE("json: empty arrays give the empty log, and the empty log writes canonically") {
    const ReadResult result =
        read_json_string(R"({"objectTypes":[],"eventTypes":[],"objects":[],"events":[]})");
    CHECK(result.log == OcelLog{});
    const std::string text = write_json_string(OcelLog{});
    CHECK(text ==
          "{\n  \"objectTypes\": [],\n  \"eventTypes\": [],\n  \"objects\": [],\n  \"events\": "
          "[]\n}\n");
    CHECK(read_json_string(text).log == OcelLog{});
}

TEST_CASE("xml: bad attribute time is a semantic E008, not a crash") {
    const char* doc =
        "<log><object-types><object-type name=\"t\"><attributes>"
        "<attribute name=\"a\" type=\"string\"/></attributes></object-type></object-types>"
        "<objects><object id=\"o1\" type=\"t\"><attributes>"
        "<attribute name=\"a\" time=\"not-a-date\">x</attribute></attributes></object></objects>"
        "</log>";
    try {
        (void)read_xml_string(doc);
        FAIL("expected SemanticError");
    } catch (const SemanticError& err) {
        bool found = false;
        for (const auto& d : err.report().diagnostics)
            if (d.code == "E008") found = true;
        CHECK(found);
    }
}

TEST_CASE("json: missing event time is a semantic E008") {
    const char* doc =
        R"({"objectTypes":[],"eventTypes":[{"name":"a","attributes":[]}],
            "objects":[],"events":[{"id":"e1","type":"a"}]})";
    try {
        (void)read_json_string(doc);
        FAIL("expected SemanticError");
    } catch (const SemanticError& err) {
        CHECK(err.report().diagnostics.front().code == "E008");
        CHECK(err.report().diagnostics.front().location == "events/e1/time");
    }
}

TEST_CASE("xml syntax errors and json syntax errors are distinct from semantic ones") {
    CHECK_THROWS_AS((void)read_xml_string("<log><unclosed>"), XmlSyntaxError);
    CHECK_THROWS_AS((void)read_xml_string("<notocel/>"), XmlSyntaxError);
    CHECK_THROWS_AS((void)read_json_string("{oops"), JsonSyntaxError);
    CHECK_THROWS_AS((void)read_json_string("[1,2]"), JsonSyntaxError);
}

TEST_CASE("unknown fields are ignored with a warning") {
    const ReadResult from_xml = read_xml_string(
        "<log><wat/><objects/><events><event id=\"e\" type=\"t\" time=\"2023-01-01T00:00:00Z\" "
        "extra=\"1\"><attributes/><objects/></event></events>"
        "<event-types><event-type name=\"t\"><attributes/></event-type></event-types></log>");
    bool w005 = false;
    for (const auto& d : from_xml.report.diagnostics)
        if (d.code == "W005") w005 = true;
    CHECK(w005);

    const ReadResult from_json = read_json_string(
        R"({"objectTypes":[],"eventTypes":[],"objects":[],"events":[],"vendor":42})");
    REQUIRE(from_json.report.diagnostics.size() == 1);
    CHECK(from_json.report.diagnostics[0].code == "W005");
}

TEST_CASE("duplicate relation pairs are repaired with W003") {
    const char* doc =
        "<log><object-types><object-type name=\"t\"><attributes/></object-type></object-types>"
        "<event-types><event-type name=\"a\"><attributes/></event-type></event-types>"
        "<objects><object id=\"o1\" type=\"t\"><attributes/><objects/></object></objects>"
        "<events><event id=\"e1\" type=\"a\" time=\"2023-01-01T00:00:00Z\"><attributes/>"
        "<objects><relationship object-id=\"o1\" qualifier=\"q\"/>"
        "<relationship object-id=\"o1\" qualifier=\"q\"/></objects></event></events></log>";
    const ReadResult result = read_xml_string(doc);
    CHECK(result.log.events()[0].relations.size() == 1);
    bool w003 = false;
    for (const auto& d : result.report.diagnostics)
        if (d.code == "W003") w003 = true;
    CHECK(w003);
}

TEST_CASE("readers accept lenient timestamp spellings") {
    const char* doc =
        "<log><event-types><event-type name=\"a\"><attributes/></event-type></event-types>"
        "<events><event id=\"e1\" type=\"a\" time=\"2023-10-23 08:15:00\"><attributes/><objects/>"
        "</event></events></log>";
    const ReadResult result = read_xml_string(doc);
    CHECK(result.log.events()[0].time == *Timestamp::parse("2023-10-23T08:15:00.000+00:00"));
}

TEST_CASE("property: xml and json round-trips preserve random logs") {
    std::mt19937_64 rng(53);
    gen::Options options;
    options.max_events = 60;
    options.max_objects = 30;
    options.allow_epoch_snapshot = true;
    for (int round = 0; round < 60; ++round) {
        const OcelLog log = gen::random_log(rng, options);
        CHECK(read_xml_string(write_xml_string(log)).log == log);
        CHECK(read_json_string(write_json_string(log)).log == log);
    }
}

TEST_CASE("property: writers are byte-stable") {
    std::mt19937_64 rng(59);
    gen::Options options;
    options.max_events = 40;
    for (int round = 0; round < 15; ++round) {
        const OcelLog log = gen::random_log(rng, options);
        CHECK(write_xml_string(log) == write_xml_string(log));
        CHECK(write_json_string(log) == write_json_string(log));
        const OcelLog reread = read_json_string(write_json_string(log)).log;
        CHECK(write_json_string(reread) == write_json_string(log));
    }
}

TEST_CASE("detect_format: extensions and sniffing") {
    testutil::TempDir tmp("detect");

    const std::string xml_path = tmp.file("a.xmlocel");
    write_xml(fixture::order_mini(), xml_path);
    CHECK(detect_format(xml_path) == FormatKind::Xml);

    const std::string json_path = tmp.file("b.jsonocel");
    write_json(fixture::order_mini(), json_path);
    CHECK(detect_format(json_path) == FormatKind::Json);

    const std::string sqlite_path = tmp.file("c.sqlite");
    write_sqlite(fixture::order_mini(), sqlite_path);
    CHECK(detect_format(sqlite_path) == FormatKind::Sqlite);

    // magic header wins when the extension is inconclusive
    const std::string dat_path = tmp.file("d.dat");
    write_sqlite(fixture::order_mini(), dat_path);
    CHECK(detect_format(dat_path) == FormatKind::Sqlite);

    CHECK(detect_format(fixture::fixture_path("ocel1-mini.jsonocel")) == FormatKind::Ocel1Json);
    CHECK(detect_format(fixture::fixture_path("ocel1-mini.xmlocel")) == FormatKind::Ocel1Xml);

    CHECK_THROWS_AS(detect_format_bytes("<notocel/>"), UnknownFormatError);
    CHECK_THROWS_AS(detect_format_bytes("{\"hello\": 1}"), UnknownFormatError);
    CHECK_THROWS_AS(detect_format_bytes("plain text"), UnknownFormatError);
    CHECK(detect_format_bytes(slurp(fixture::fixture_path("order-mini.xmlocel"))) ==
          FormatKind::Xml);
}

TEST_CASE("convert: cross-format chain ends equal to the fixture") {
    testutil::TempDir tmp("convert");
    const std::string sqlite_path = tmp.file("mid.sqlite");
    const std::string json_path = tmp.file("end.jsonocel");

    const auto s1 = convert(fixture::fixture_path("order-mini.xmlocel"), sqlite_path);
    CHECK(s1.event_count == 4);
    CHECK(s1.object_count == 3);
    CHECK(s1.e2o_count == 6);
    CHECK(s1.o2o_count == 2);
    CHECK(s1.snapshot_count == 5);

    const auto s2 = convert(sqlite_path, json_path, std::nullopt, FormatKind::Json);
    CHECK(s2.event_count == 4);
    CHECK(read_json(json_path).log == fixture::order_mini());
}

TEST_CASE("convert: empty xml to json") {
    testutil::TempDir tmp("convertempty");
    const std::string in_path = tmp.file("empty.xmlocel");
    const std::string out_path = tmp.file("empty.jsonocel");
    {
        std::ofstream out(in_path, std::ios::binary);
        out << kEmptyXml;
    }
    const auto summary = convert(in_path, out_path);
    CHECK(summary.event_count == 0);
    CHECK(slurp(out_path) == write_json_string(OcelLog{}));
}

TEST_CASE("convert: validation failure writes no output") {
    testutil::TempDir tmp("convertfail");
    const std::string in_path = tmp.file("bad.xmlocel");
    {
        std::ofstream out(in_path, std::ios::binary);
        out << "<log><event-types><event-type name=\"a\"><attributes/></event-type></event-types>"
               "<events><event id=\"e1\" type=\"a\" time=\"2023-01-01T00:00:00Z\"><attributes/>"
               "<objects><relationship object-id=\"ghost\" qualifier=\"q\"/></objects>"
               "</event></events></log>";
    }
    const std::string out_path = tmp.file("out.jsonocel");
    CHECK_THROWS_AS(convert(in_path, out_path), SemanticError);
    CHECK_FALSE(std::filesystem::exists(out_path));
}
