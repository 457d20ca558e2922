#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "support/run_cli.hpp"
#include "weaver/io.hpp"

using testutil::run_cli;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("datasets list prints at least nineteen names") {
    const auto r = run_cli("datasets list");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    bool has_tiktok = false;
    while (std::getline(lines, line)) {
        ++count;
        if (line == "tiktok") has_tiktok = true;
    }
    CHECK(count >= 19);
    CHECK(has_tiktok);
}

TEST_CASE("datasets show prints 24 comma-separated values") {
    const auto r = run_cli("datasets show tiktok");
    CHECK(r.exit_code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), ',') == 23);
}

TEST_CASE("datasets show on an unknown name exits 2") {
    const auto r = run_cli("datasets show nope");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error[validation]") != std::string::npos);
}

TEST_CASE("WEAVER_DATASETS extends the registry") {
    TempDir dir;
    write_file(dir.file("extra.csv"),
               "my_app,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n");
    const auto r = run_cli("--datasets " + dir.file("extra.csv") + " datasets show my_app");
    CHECK(r.exit_code == 0);
    const auto env = run_cli("datasets show my_app");  // without the flag: unknown
    CHECK(env.exit_code == 2);
}

TEST_CASE("generate from config writes the expected CSV") {
    TempDir dir;
    write_file(dir.file("cfg.json"), R"json({
        "input": {"dataset": "tiktok"},
        "seed": 42,
        "stages": [
            {"kind": "oversample", "n": 60},
            {"kind": "integral_match"},
            {"kind": "smooth", "s": 1.0},
            {"kind": "noise", "snr_db": 30}
        ],
        "output": {"csv": ")json" + dir.file("out.csv") + R"json("}
    })json");
    const auto r = run_cli("generate --config " + dir.file("cfg.json"));
    REQUIRE(r.exit_code == 0);
    const auto csv = testutil::slurp(dir.file("out.csv"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1382);  // header + 23*60+1 rows

    // determinism: a second run produces identical bytes
    const auto r2 = run_cli("generate --config " + dir.file("cfg.json") + " --output " +
                            dir.file("out2.csv"));
    REQUIRE(r2.exit_code == 0);
    CHECK(testutil::slurp(dir.file("out2.csv")) == csv);
}

TEST_CASE("generate with inline flags mirrors the config path") {
    TempDir dir;
    const auto r = run_cli("generate --dataset tiktok --seed 42 --n 60 --integral-match "
                           "--s 1.0 --snr_db 30 --output " + dir.file("inline.csv"));
    REQUIRE(r.exit_code == 0);
    write_file(dir.file("cfg.json"), R"json({
        "input": {"dataset": "tiktok"},
        "seed": 42,
        "stages": [
            {"kind": "oversample", "n": 60},
            {"kind": "integral_match"},
            {"kind": "smooth", "s": 1.0},
            {"kind": "noise", "snr_db": 30}
        ],
        "output": {"csv": ")json" + dir.file("cfg.csv") + R"json("}
    })json");
    const auto r2 = run_cli("generate --config " + dir.file("cfg.json"));
    REQUIRE(r2.exit_code == 0);
    CHECK(testutil::slurp(dir.file("inline.csv")) == testutil::slurp(dir.file("cfg.csv")));
}

TEST_CASE("generate exit codes follow the error taxonomy") {
    TempDir dir;
    // io error: missing input file
    auto r = run_cli("generate --input /nonexistent/in.csv --n 4");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error[io]") != std::string::npos);

    // validation error: unknown config key
    write_file(dir.file("bad.json"), R"json({"input": {"dataset": "tiktok"}, "bogus": 1})json");
    r = run_cli("generate --config " + dir.file("bad.json"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error[validation]") != std::string::npos);
    CHECK(r.err.find("bogus") != std::string::npos);

    // validation error: malformed JSON
    write_file(dir.file("broken.json"), "{nope");
    r = run_cli("generate --config " + dir.file("broken.json"));
    CHECK(r.exit_code == 2);

    // numeric error: trend blows up during evaluation
    write_file(dir.file("num.json"), R"json({
        "input": {"dataset": "tiktok"},
        "stages": [{"kind": "trend", "expr": "t/(t-t)"}]
    })json");
    r = run_cli("generate --config " + dir.file("num.json"));
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("error[numeric]") != std::string::npos);

    // usage error
    r = run_cli("generate");
    CHECK(r.exit_code == 2);
}

TEST_CASE("generate svg contains the three verification panels") {
    TempDir dir;
    const auto r = run_cli("generate --dataset zoom --n 30 --integral-match --average_n 30 "
                           "--output " + dir.file("o.csv") + " --svg " + dir.file("o.svg"));
    REQUIRE(r.exit_code == 0);
    const auto svg = testutil::slurp(dir.file("o.svg"));
    CHECK(svg.find("a) Original") != std::string::npos);
    CHECK(svg.find("b) Processed") != std::string::npos);
    CHECK(svg.find("c) Averaged") != std::string::npos);
}

TEST_CASE("average command groups a minute series back to hours") {
    TempDir dir;
    auto r = run_cli("generate --dataset tiktok --n 60 --integral-match --output " +
                     dir.file("fine.csv"));
    REQUIRE(r.exit_code == 0);
    r = run_cli("average --input " + dir.file("fine.csv") + " --n 60 --output " +
                dir.file("hourly.csv"));
    REQUIRE(r.exit_code == 0);
    const auto csv = testutil::slurp(dir.file("hourly.csv"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 24);  // header + 23 groups

    // constant series stays constant
    write_file(dir.file("const.csv"), "x,y\n0,5\n1,5\n2,5\n3,5\n4,5\n");
    r = run_cli("average --input " + dir.file("const.csv") + " --n 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "x,y\n0,5\n2,5\n");
}

TEST_CASE("average rejects bad grids and group sizes with exit 2") {
    TempDir dir;
    write_file(dir.file("irregular.csv"), "x,y\n0,1\n1,1\n3,1\n");
    auto r = run_cli("average --input " + dir.file("irregular.csv") + " --n 1");
    CHECK(r.exit_code == 2);
    write_file(dir.file("ok.csv"), "x,y\n0,1\n1,1\n2,1\n");
    r = run_cli("average --input " + dir.file("ok.csv") + " --n 0");
    CHECK(r.exit_code == 2);
}

TEST_CASE("plot renders one panel per stage plus original and averaged") {
    TempDir dir;
    write_file(dir.file("cfg.json"), R"json({
        "input": {"dataset": "tiktok"},
        "seed": 42,
        "stages": [
            {"kind": "oversample", "n": 12},
            {"kind": "integral_match"},
            {"kind": "noise", "snr_db": 30}
        ],
        "output": {"average_n": 12}
    })json");
    const auto r = run_cli("plot --config " + dir.file("cfg.json") + " --output " +
                           dir.file("fig.svg"));
    REQUIRE(r.exit_code == 0);
    const auto svg = testutil::slurp(dir.file("fig.svg"));
    for (const char* title : {"a) Original", "b) Oversampled", "c) Matched", "d) Noised",
                              "e) Averaged"})
        CHECK(svg.find(title) != std::string::npos);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("generate --help").exit_code == 0);
}
