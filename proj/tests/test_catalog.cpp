#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crf/catalog.hpp"
#include "crf/chern.hpp"

using namespace crf;

TEST_CASE("builtin catalog covers every algebra and structure variant") {
    const Catalog& cat = Catalog::builtin();
    CHECK(cat.entries.size() == 30);
    CHECK(cat.find_all("d_4").size() == 2);
    CHECK(cat.find_all("d_4,1/2").size() == 3);
    CHECK(cat.find_all("d_4,lambda").size() == 3);
    CHECK(cat.find_all("d'_4,delta").size() == 4);
    CHECK(cat.find_all("r'_2").size() == 2);
    CHECK(cat.find_all("rr'_3,gamma").size() == 2);
    CHECK(cat.find("h_4", 1, "J") != nullptr);
    CHECK(cat.find("no_such_algebra", 1, "J") == nullptr);
    // continuous families carry five default samples
    for (const CatalogEntry& e : cat.entries)
        if (!e.params.empty()) CHECK(e.samples.size() == 5);
}

TEST_CASE("instantiation evaluates expressions and validates") {
    const Catalog& cat = Catalog::builtin();
    const CatalogEntry* h4 = cat.find("h_4", 1, "J");
    REQUIRE(h4 != nullptr);
    CatalogInstance inst = instantiate(*h4, {});
    CHECK(inst.structure.bracket.at(3, 1, 0) == doctest::Approx(std::sqrt(10.0)));
    CHECK(max_abs(inst.expected_P - Mat::diag({0, -3, 0, -3})) == 0.0);
    CHECK(!inst.expected_c.has_value());

    const CatalogEntry* dl = cat.find("d_4,lambda", 1, "J_1");
    REQUIRE(dl != nullptr);
    CatalogInstance i2 = instantiate(*dl, {{"lambda", 2.0}});
    CHECK(i2.expected_c.value() == doctest::Approx(-6.0));
    CHECK(i2.expected_kahler);  // the declared condition holds exactly at 2
    CatalogInstance i3 = instantiate(*dl, {{"lambda", 1.5}});
    CHECK(!i3.expected_kahler);

    CHECK_THROWS_WITH_AS(instantiate(*dl, {{"lambda", 0.3}}),
                         doctest::Contains("out of range"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(instantiate(*dl, {{"lambda", 1.0}}),
                         doctest::Contains("out of range"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(instantiate(*dl, {}), doctest::Contains("missing parameter"),
                         std::invalid_argument);
}

TEST_CASE("exactly seven structures carry no soliton data") {
    const Catalog& cat = Catalog::builtin();
    std::vector<std::string> expected = {
        "r'_2#1/J_1",      "r_4,1#1/J",        "d_4#2/J_2",      "d_4,1/2#2/J_2",
        "d'_4,delta#1/J_1", "d'_4,delta#1/J_2", "h_4#1/J",
    };
    std::vector<std::string> actual;
    for (const CatalogEntry& e : cat.entries)
        if (!e.expected.c.has_value()) actual.push_back(e.key());
    CHECK(actual == expected);
}

TEST_CASE("row verification on a known-good entry") {
    const Catalog& cat = Catalog::builtin();
    RowReport rep = verify_entry(*cat.find("rr_3,0", 1, "J"), {});
    CHECK(rep.pass);
    bool saw_operator = false, saw_soliton = false, saw_kahler = false;
    for (const CheckResult& c : rep.checks) {
        if (c.name == "operator") saw_operator = true;
        if (c.name == "soliton") saw_soliton = true;
        if (c.name == "kahler") saw_kahler = true;
        CHECK(c.pass);
    }
    CHECK(saw_operator);
    CHECK(saw_soliton);
    CHECK(saw_kahler);
}

TEST_CASE("full verification passes on the shipped catalog") {
    CatalogReport rep = verify_all(Catalog::builtin(), 5, true);
    for (const RowReport& r : rep.rows) {
        if (!r.pass)
            for (const CheckResult& c : r.checks)
                if (!c.pass)
                    MESSAGE(r.key, ": ", c.name, " residual=", c.residual, " ", c.detail);
        CHECK(r.pass);
    }
    CHECK(rep.failures == 0);
}

TEST_CASE("a single perturbed expectation produces exactly one failure") {
    Catalog cat = Catalog::builtin();
    for (CatalogEntry& e : cat.entries)
        if (e.algebra == "r_2r_2") e.expected.P_diag[0] = "-1+1e-6";
    CatalogReport rep = verify_all(cat, 1, false);
    CHECK(rep.failures == 1);
    for (const RowReport& r : rep.rows)
        if (!r.pass) CHECK(r.key.find("r_2r_2") != std::string::npos);
}

TEST_CASE("parallel and serial verification agree exactly") {
    CatalogReport a = verify_all(Catalog::builtin(), 2, true);
    CatalogReport b = verify_all(Catalog::builtin(), 2, false);
    REQUIRE(a.rows.size() == b.rows.size());
    CHECK(a.failures == b.failures);
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].key == b.rows[i].key);
        CHECK(a.rows[i].pass == b.rows[i].pass);
        REQUIRE(a.rows[i].checks.size() == b.rows[i].checks.size());
        for (size_t j = 0; j < a.rows[i].checks.size(); ++j) {
            CHECK(a.rows[i].checks[j].name == b.rows[i].checks[j].name);
            CHECK(a.rows[i].checks[j].residual == b.rows[i].checks[j].residual);
        }
    }
}

TEST_CASE("sample expansion honors ranges and exclusions") {
    const Catalog& cat = Catalog::builtin();
    auto items = expand_samples(cat, 8);
    for (const auto& [entry, params] : items)
        for (const ParamSpec& p : entry->params) {
            REQUIRE(params.count(p.name) == 1);
            CHECK(p.admits(params.at(p.name)));
        }
    // parameterless rows appear once, families eight times
    int h4_count = 0, dl_count = 0;
    for (const auto& [entry, params] : items) {
        if (entry->algebra == "h_4") ++h4_count;
        if (entry->algebra == "d_4,lambda" && entry->variant == 1) ++dl_count;
    }
    CHECK(h4_count == 1);
    CHECK(dl_count == 8);
}

TEST_CASE("the form is closed and (1,1) on every catalog instance") {
    for (const auto& [entry, params] : expand_samples(Catalog::builtin(), 2)) {
        CatalogInstance inst = instantiate(*entry, params);
        const HermitianStructure& h = inst.structure;
        Mat p = chern_ricci_form(h);
        CHECK(d_two_form(h.bracket, p).max_entry() < 1e-9);
        CHECK(max_abs(transpose(h.J) * p * h.J - p) < 1e-9);
    }
}

TEST_CASE("quotient metadata survives the round trip") {
    const Catalog& cat = Catalog::builtin();
    const CatalogEntry* rh3 = cat.find("rh_3", 1, "J");
    REQUIRE(rh3 != nullptr);
    CHECK(rh3->quotients.find("Kodaira") != std::string::npos);
    Catalog again = Catalog::from_json_text(cat.to_json_text());
    CHECK(again.find("rh_3", 1, "J")->quotients == rh3->quotients);
}

TEST_CASE("catalog serialization round-trips and matches the shipped file") {
    const Catalog& cat = Catalog::builtin();
    Catalog again = Catalog::from_json_text(cat.to_json_text());
    REQUIRE(again.entries.size() == cat.entries.size());
    for (size_t i = 0; i < cat.entries.size(); ++i)
        CHECK(again.entries[i].key() == cat.entries[i].key());

    std::ifstream in(std::string(CRF_DATA_DIR) + "/catalog.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(nlohmann::json::parse(ss.str()) == nlohmann::json::parse(builtin_catalog_json()));
}
