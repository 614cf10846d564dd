#include <doctest.h>

#include <json.hpp>

#include "stabforge/errors.hpp"
#include "stabforge/papertables/tables.hpp"

using namespace stabforge;
using namespace stabforge::papertables;

namespace {

const TableEntry& entry(const std::string& id) {
    for (const auto& e : registry())
        if (e.id == id) return e;
    throw Error("no row " + id);
}

nlohmann::json without_ms(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    for (auto& r : j["rows"]) r.erase("ms");
    return j;
}

}  // namespace

TEST_CASE("registry row counts") {
    CHECK(table_entries("dim0").size() == 6);
    CHECK(table_entries("dim1").size() == 16);
    CHECK(table_entries("cubic").size() == 11);
    CHECK(table_entries("sameinv").size() == 5);
    CHECK(table_entries("badprimes").size() == 9);
    CHECK_THROWS_AS(table_entries("dim2"), ParseError);

    std::set<std::string> ids;
    for (const auto& e : registry()) {
        CHECK(ids.insert(e.id).second);
        CHECK_FALSE(e.instances.empty());
        CHECK(e.desk_scale == e.reason.empty());
        if (e.table == "sameinv" && e.desk_scale) CHECK(e.pair != Pair::None);
    }
    CHECK_FALSE(entry("cubic-5").desk_scale);
    CHECK_FALSE(entry("cubic-7").desk_scale);
    CHECK_FALSE(entry("sameinv-4").desk_scale);
    CHECK(entry("dim1-8").desk_scale);
}

TEST_CASE("single rows") {
    const auto& a = entry("dim0-1");
    auto r = verify_entry(a, a.instances.at(1), 0);
    CHECK(r.pass);
    CHECK(r.computed == "dim V = 3, generic_invariant_dim = 0");

    const auto& b4 = entry("dim1-12");
    CHECK(verify_entry(b4, b4.instances.at(0), 0).pass);

    const auto& g2 = entry("dim0-6");
    auto r2 = verify_entry(g2, g2.instances.at(0), 2);
    CHECK(r2.pass);
    CHECK(r2.primes == std::vector<std::uint32_t>{2});

    const auto& spin = entry("sameinv-1");
    auto s0 = verify_entry(spin, spin.instances.at(0), 0);
    CHECK(s0.pass);
    CHECK(s0.computed == "H 0,0,0,1 / G 0,0,0,1");
    auto s2 = verify_entry(spin, spin.instances.at(0), 2);
    CHECK(s2.pass);
    CHECK(s2.computed == "H 0,1,0,1 / G 0,1,0,1");

    const auto& big = entry("cubic-7");
    CHECK_THROWS_AS(verify_entry(big, big.instances.at(0), 0), SkippedGuardRail);
}

TEST_CASE("badprimes suite") {
    auto s = run_suite("badprimes", {});
    CHECK(s.rows.size() == 13);
    CHECK(s.pass());
    CHECK(s.skipped.empty());
}

TEST_CASE("dim1 at characteristics 0 and 3") {
    auto s = run_suite("dim1", {0, 3});
    CHECK(s.pass());
    bool f4 = false;
    for (const auto& r : s.rows) {
        CHECK(r.characteristic != 2);
        if (r.id.rfind("dim1-16/", 0) == 0) {
            f4 = true;
            CHECK(r.characteristic == 3);
            CHECK(r.computed.find("dim V = 25") == 0);
        }
    }
    CHECK(f4);
}

TEST_CASE("cubic rows over Q") {
    auto s = run_suite("cubic", {0});
    CHECK(s.pass());
    REQUIRE(s.rows.size() == 4);
    CHECK(s.rows[0].computed.find("stabilizer dim = 8") != std::string::npos);
    CHECK(s.rows[1].computed.find("stabilizer dim = 52") != std::string::npos);
    CHECK(s.rows[2].computed.find("stabilizer dim = 14") != std::string::npos);
    CHECK(s.skipped.size() == 7);
}

TEST_CASE("report json") {
    Options one{7, 1}, two{7, 2};
    auto a = run_suite("sameinv", {0, 2, 3}, one);
    auto b = run_suite("sameinv", {0, 2, 3}, two);
    auto j = nlohmann::json::parse(a.to_json());
    CHECK(j["schema_version"] == STABFORGE_SCHEMA_VERSION);
    CHECK(j["table"] == "sameinv");
    CHECK(j["seed"] == 7);
    CHECK(j["pass"] == true);
    REQUIRE(j["rows"].size() == a.rows.size());
    for (const auto& r : j["rows"])
        for (const char* key : {"id", "group", "rep", "char", "expected", "computed", "pass", "ms"}) CHECK(r.contains(key));
    CHECK(j["skipped"].size() == 1);
    CHECK(j["skipped"][0]["id"] == "sameinv-4");
    CHECK(without_ms(a.to_json()) == without_ms(b.to_json()));
    CHECK(without_ms(a.to_json()) == without_ms(run_suite("sameinv", {0, 2, 3}, one).to_json()));
}
