#include <doctest.h>

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "composer/modelgen.hpp"
#include "composer/report.hpp"

using namespace composer;

TEST_CASE("relation files round-trip through json byte for byte") {
    RelationFile f = from_relation(hypergroupoid_blocks(3, 2));
    CHECK(f.arity == 4);
    CHECK(f.rows.size() == 8);
    std::string text = to_json(f);
    CHECK(text == to_json(f));
    RelationFile back = relation_from_json(text);
    CHECK(back == f);
    CHECK(to_json(back) == text);
    CHECK(to_relation(back) == hypergroupoid_blocks(3, 2));
}

TEST_CASE("column metadata is carried through unchanged") {
    RelationFile f;
    f.arity = 2;
    f.columns = {{"source", {0, 1, 5}}, {"target", {1, 9}}};
    f.rows = {{0, 9}, {5, 1}};
    RelationFile back = relation_from_json(to_json(f));
    CHECK(back == f);
    CHECK(back.columns[0].name == "source");

    /* provided universes win over the labels present */
    Relation r = to_relation(f);
    CHECK(r.columns[0] == std::set<Label>{0, 1, 5});
    CHECK(r.rows.count({0, 9}) == 1);

    /* derived universes are the labels present */
    RelationFile bare;
    bare.arity = 2;
    bare.rows = {{0, 9}, {5, 1}};
    CHECK(to_relation(bare).columns[0] == std::set<Label>{0, 5});
}

TEST_CASE("relation file validation rejects malformed input") {
    RelationFile f;
    f.arity = 0;
    CHECK_THROWS_AS(validate(f), std::invalid_argument);
    f.arity = 2;
    f.rows = {{0, 1}, {0, 1}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);
    f.rows = {{0, 1, 2}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);
    f.rows = {{0, 1}};
    f.columns = {{"", {0}}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);
    f.columns = {{"", {0}}, {"", {2}}};
    CHECK_THROWS_AS(validate(f), std::invalid_argument);
    f.columns.clear();
    validate(f);

    CHECK_THROWS_AS(relation_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(relation_from_json("[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(relation_from_json(R"({"schema":"other","kind":"relation"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(relation_from_json(
                        R"({"schema":"composer-kit/1","kind":"report","arity":1,"rows":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(relation_from_json(
                        R"({"schema":"composer-kit/1","kind":"relation","rows":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(relation_from_json(
                        R"({"schema":"composer-kit/1","kind":"relation","arity":1,"rows":[[-1]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(relation_from_json(
                        R"({"schema":"composer-kit/1","kind":"relation","arity":1,"rows":[[0.5]]})"),
                    std::invalid_argument);
}

TEST_CASE("text tables are fixed width and deterministic") {
    RelationFile f;
    f.arity = 2;
    f.rows = {{0, 1}, {2, 10}};
    CHECK(to_text(f) == "relation arity=2 rows=2\n   0  1\n   2 10\n");

    Report r;
    r.command = "count --n 7";
    r.records.push_back({"count", 7, -1, "pass", 12869, 0, {}});
    r.work = 12869;
    CHECK(to_text(r) ==
          "command: count --n 7\n"
          "status: pass\n"
          "records: 1 work: 12869\n"
          "  count  m=7  pass  checked=12869 failed=0\n");
    CHECK(to_text(r, f) == to_text(r) + "\n" + to_text(f));
}

TEST_CASE("reports serialize with stable fields and nested payload") {
    Relation model = hypergroupoid_blocks(3, 2);
    CheckReport result =
        check_truncated_composer(coskeleton(generate_complex(model), 5), 3, 0, 2);
    REQUIRE(result.ok);
    Report rep = make_report("verify --n 3 --i 0", result);
    CHECK(rep.ok);
    CHECK(rep.records.size() == result.records.size());
    long long work = 0;
    for (const auto& rec : result.records) work += rec.checked;
    CHECK(rep.work == work);

    std::string solo = to_json(rep);
    CHECK(solo == to_json(rep));
    nlohmann::json doc = nlohmann::json::parse(solo);
    CHECK(doc["schema"] == "composer-kit/1");
    CHECK(doc["kind"] == "report");
    CHECK(doc["command"] == "verify --n 3 --i 0");
    CHECK(doc["ok"] == true);
    CHECK(doc["timing"]["records"] == rep.records.size());
    CHECK(doc["timing"]["work"] == work);
    CHECK(doc["records"].size() == rep.records.size());
    CHECK(doc["records"][0].contains("witnesses"));

    RelationFile payload = from_relation(model);
    nlohmann::json both = nlohmann::json::parse(to_json(rep, payload));
    CHECK(relation_from_json(both["relation"].dump()) == payload);
}

TEST_CASE("parallel sweeps return the identical report") {
    Relation model = hypergroupoid_blocks(3, 2);
    TruncatedComplex C = coskeleton(generate_complex(model), 5);
    Report serial = make_report("x", check_truncated_composer(C, 3, 0, 2, 1));
    Report wide = make_report("x", check_truncated_composer(C, 3, 0, 2, 4));
    CHECK(to_json(serial) == to_json(wide));

    TruncatedComplex S = standard_simplex_complex(3, 5);
    Report hserial = make_report("x", check_hypergroupoid(S, 3, 2, 1));
    Report hwide = make_report("x", check_hypergroupoid(S, 3, 2, 3));
    CHECK(hserial.ok);
    CHECK(to_json(hserial) == to_json(hwide));

    CHECK_THROWS_AS(check_truncated_composer(C, 3, 0, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(check_hypergroupoid(S, 3, 2, -1), std::invalid_argument);
}
