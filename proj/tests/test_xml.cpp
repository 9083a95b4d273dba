#include <doctest.h>

#include "ocel/xml.hpp"

using namespace ocel;

TEST_CASE("xml: basic document") {
    const auto root = xml::parse("<a x=\"1\"><b>text</b><c/></a>");
    CHECK(root.name == "a");
    CHECK(*root.find_attribute("x") == "1");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].text == "text");
    CHECK(root.children[1].name == "c");
}

TEST_CASE("xml: prolog, comments, doctype, PIs, CDATA") {
    const char* doc =
        "\xEF\xBB\xBF<?xml version=\"1.0\"?>\n"
        "<!DOCTYPE log [<!ENTITY x \"y\">]>\n"
        "<!-- top comment -->\n"
        "<log><!-- inner --><a><![CDATA[1 < 2 & so]]></a><?pi data?></log>";
    const auto root = xml::parse(doc);
    CHECK(root.name == "log");
    REQUIRE(root.children.size() == 1);
    CHECK(root.children[0].text == "1 < 2 & so");
}

TEST_CASE("xml: entity and character references") {
    const auto root = xml::parse("<a q=\"&lt;&gt;&amp;&quot;&apos;&#65;&#x1F642;\">&amp;&#10;</a>");
    CHECK(*root.find_attribute("q") == "<>&\"'A\U0001F642");
    CHECK(root.text == "&\n");
}

TEST_CASE("xml: syntax errors carry position") {
    CHECK_THROWS_AS(xml::parse("<a><b></a>"), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse("<a"), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse("<a>&bogus;</a>"), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse("<a x=1/>"), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse("<a/><b/>"), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse(""), XmlSyntaxError);
    try {
        xml::parse("<a>\n  <b></c>\n</a>");
    } catch (const XmlSyntaxError& err) {
        CHECK(std::string(err.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("xml: escaping round-trips hostile strings through attributes and text") {
    const std::string hostile = "a<b>&\"'\t\nend\r 中🙂]]>";
    xml::Element root;
    root.name = "r";
    root.attributes.emplace_back("v", hostile);
    xml::Element child;
    child.name = "c";
    child.text = hostile;
    root.children.push_back(child);

    const std::string doc = xml::serialize(root);
    const auto back = xml::parse(doc);
    CHECK(*back.find_attribute("v") == hostile);
    CHECK(back.children[0].text == hostile);
}

TEST_CASE("xml: serializer shape") {
    xml::Element root;
    root.name = "log";
    xml::Element empty;
    empty.name = "objects";
    root.children.push_back(empty);
    CHECK(xml::serialize(root) ==
          "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log>\n  <objects/>\n</log>\n");
}
