#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "weaver/datasets.hpp"
#include "weaver/errors.hpp"

using namespace weaver;

TEST_CASE("registry has at least nineteen sorted unique names") {
    const auto names = list_datasets();
    CHECK(names.size() >= 19);
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
    CHECK(std::find(names.begin(), names.end(), "tiktok") != names.end());
    CHECK(std::find(names.begin(), names.end(), "youtube") != names.end());
    CHECK(std::find(names.begin(), names.end(), "zoom") != names.end());
}

TEST_CASE("every bundled record loads as a valid 24-hour series") {
    for (const auto& name : list_datasets()) {
        const auto ts = load_dataset(name);
        REQUIRE(ts.size() == 24);
        CHECK(ts.x.front() == 0.0);
        CHECK(ts.x.back() == 23.0);
        for (double v : ts.y) CHECK(v >= 0.0);
    }
}

TEST_CASE("tiktok loads with hourly grid") {
    const auto ts = load_dataset("tiktok");
    REQUIRE(ts.size() == 24);
    for (int h = 0; h < 24; ++h) CHECK(ts.x[h] == static_cast<double>(h));
}

TEST_CASE("unknown names list near matches") {
    CHECK_THROWS_WITH_AS(load_dataset("tiktak"), doctest::Contains("tiktok"), ValidationError);
    CHECK_THROWS_WITH_AS(load_dataset("no_such"), doctest::Contains("unknown dataset"),
                         ValidationError);
}

TEST_CASE("external pattern files extend and shadow the registry") {
    std::istringstream in(
        "# comment line\n"
        "\n"
        "custom_app,1,1,1,1,1,1,1,1,1,1,1,1,2,2,2,2,2,2,2,2,2,2,2,2\n"
        "tiktok,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9,9\n");
    const auto extra = parse_patterns(in, "test");
    REQUIRE(extra.size() == 2);
    const auto custom = load_dataset("custom_app", extra);
    CHECK(custom.y[12] == 2.0);
    const auto shadowed = load_dataset("tiktok", extra);
    CHECK(shadowed.y[0] == 9.0);  // external record wins
}

TEST_CASE("pattern parser rejects malformed records") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_patterns(in, "test");
    };
    CHECK_THROWS_WITH_AS(parse("short,1,2,3\n"), doctest::Contains("24 values"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("BadName,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n"),
                         doctest::Contains("snake token"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("neg,-1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n"),
                         doctest::Contains(">= 0"), ValidationError);
    CHECK_THROWS_AS(parse("dup,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n"
                          "dup,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n"),
                    ValidationError);
    CHECK_THROWS_WITH_AS(parse("bad,x,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n"),
                         doctest::Contains("bad number"), ValidationError);
}

TEST_CASE("missing pattern file raises an IO error") {
    CHECK_THROWS_AS(load_patterns_file("/nonexistent/patterns.csv"), IoError);
}
