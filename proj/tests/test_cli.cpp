// Copyright 2026 The contestable authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exit-code contract of the contestctl binary: 0 ok/Compliant,
// 1 NonCompliant, 2 Inconclusive, 3 usage/parse/validation, 4 integrity.

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "support.hpp"

using testsupport::fixture_path;
using testsupport::read_file;
using testsupport::TempDir;
using testsupport::write_file;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args, const TempDir& dir, const std::string& stdin_file = "") {
    std::string out_path = dir.file("run.out");
    std::string err_path = dir.file("run.err");
    std::string cmd = std::string(CONTESTCTL_PATH) + " " + args;
    if (!stdin_file.empty()) cmd += " < " + stdin_file;
    cmd += " > " + out_path + " 2> " + err_path;
    int status = std::system(cmd.c_str());
    return CliResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out_path),
                     read_file(err_path)};
}

// Simulated tier-skip scenario shared by the monitor cases.
struct SkipScenario {
    TempDir dir;
    std::string trace = dir.file("skip.trace");
    std::string history = dir.file("skip.csv");

    SkipScenario() {
        CliResult r = run_cli("simulate " + fixture_path("tierskip.simconfig") + " --out-trace " +
                                  trace + " --out-history " + history,
                              dir);
        REQUIRE(r.exit_code == 0);
    }
};

}  // namespace

TEST_CASE("check: clean contract exits 0, machine output stays off stdout") {
    TempDir dir;
    CliResult r = run_cli("check " + fixture_path("lufthansa.contract"), dir);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(r.err.find("ok") != std::string::npos);
}

TEST_CASE("check: missing file exits 3") {
    TempDir dir;
    CliResult r = run_cli("check " + dir.file("nope.contract"), dir);
    CHECK(r.exit_code == 3);
}

TEST_CASE("check: duplicate norm ids exit 3 with the diagnostic") {
    TempDir dir;
    write_file(dir.file("dup.contract"),
               "contract \"x\" version 1 effective 2017-01-01 {\n"
               "  norm N1 \"a\" { on event e(a = x) require x == 1 }\n"
               "  norm N1 \"b\" { on event e(a = x) require x == 2 }\n}\n");
    CliResult r = run_cli("check " + dir.file("dup.contract"), dir);
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("duplicate norm id 'N1'") != std::string::npos);
}

TEST_CASE("check: parse error exits 3 with position") {
    TempDir dir;
    write_file(dir.file("bad.contract"), "contract \"x\" 1\n");
    CliResult r = run_cli("check " + dir.file("bad.contract"), dir);
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("1:14") != std::string::npos);
}

TEST_CASE("contest: missing history file warns and exits 2 Inconclusive") {
    SkipScenario s;
    CliResult r = run_cli("contest " + fixture_path("lufthansa.contract") + " " + s.trace +
                              " --source history=" + s.dir.file("absent.csv") +
                              " --decision 1 --out " + s.dir.file("r.json"),
                          s.dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("not found, using empty table") != std::string::npos);
    CHECK(read_file(s.dir.file("r.json")).find("\"verdict\": \"Inconclusive\"") !=
          std::string::npos);
}

TEST_CASE("contest: report goes to stdout without --out") {
    SkipScenario s;
    CliResult r = run_cli("contest " + fixture_path("lufthansa.contract") + " " + s.trace +
                              " --source history=" + s.history + " --decision 0",
                          s.dir);
    CHECK(r.exit_code == 0);  // decision 0 is the first tier_opened: Inapplicable only
    CHECK(r.out.find("\"verdict\": \"Compliant\"") != std::string::npos);
}

TEST_CASE("contest: a decision seq outside the trace exits 3") {
    SkipScenario s;
    CliResult r = run_cli("contest " + fixture_path("lufthansa.contract") + " " + s.trace +
                              " --source history=" + s.history + " --decision 100000",
                          s.dir);
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("outside trace") != std::string::npos);
}

TEST_CASE("contest: unknown --source name exits 3") {
    SkipScenario s;
    CliResult r = run_cli("contest " + fixture_path("lufthansa.contract") + " " + s.trace +
                              " --source bogus=" + s.history + " --decision 0",
                          s.dir);
    CHECK(r.exit_code == 3);
}

TEST_CASE("monitor observe: compliant stream exits 0, violating stream exits 1") {
    TempDir dir;
    CliResult sim = run_cli("simulate " + fixture_path("compliant.simconfig") + " --out-trace " +
                                dir.file("ok.trace") + " --out-history " + dir.file("ok.csv"),
                            dir);
    REQUIRE(sim.exit_code == 0);
    CliResult ok = run_cli("monitor " + fixture_path("lufthansa.contract") +
                               " --source history=" + dir.file("ok.csv") + " --mode observe",
                           dir, dir.file("ok.trace"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.err.find("record(s) out") != std::string::npos);  // the timing counter

    SkipScenario s;
    CliResult bad = run_cli("monitor " + fixture_path("lufthansa.contract") +
                                " --source history=" + s.history + " --mode observe",
                            s.dir, s.trace);
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("\"status\":\"Violated\"") != std::string::npos);
}

TEST_CASE("monitor observe: a non-chaining event exits 4") {
    SkipScenario s;
    std::string text = read_file(s.trace);
    // duplicate the first event line: the second copy cannot chain
    std::size_t header_end = text.find('\n') + 1;
    std::size_t first_end = text.find('\n', header_end) + 1;
    std::string mutated = text.substr(0, first_end) + text.substr(header_end, first_end - header_end);
    write_file(s.dir.file("dup.trace"), mutated);
    CliResult r = run_cli("monitor " + fixture_path("lufthansa.contract") +
                              " --source history=" + s.history + " --mode observe",
                          s.dir, s.dir.file("dup.trace"));
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("chain error") != std::string::npos);
}

TEST_CASE("monitor: a malformed line is a protocol violation, exit 3") {
    SkipScenario s;
    write_file(s.dir.file("garbage.stream"), "this is not an event\n");
    CliResult r = run_cli("monitor " + fixture_path("lufthansa.contract") + " --mode observe",
                          s.dir, s.dir.file("garbage.stream"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("monitor regiment: blocks are reported but the stream ends exit 0") {
    TempDir dir;
    write_file(
        dir.file("proposals.stream"),
        R"({"seq":0,"ts":"2017-11-08T08:00:00.000000Z","event_type":"tier_opened","attrs":{"capacity":5,"flight":"LH100","route":"TXL-MUC","tier":1},"algo_version":"policy-v1","contract_version":1})"
        "\n"
        R"({"seq":1,"ts":"2017-11-08T08:01:00.000000Z","event_type":"tier_opened","attrs":{"capacity":5,"flight":"LH100","route":"TXL-MUC","tier":2},"algo_version":"policy-v1","contract_version":1})"
        "\n");
    CliResult r = run_cli("monitor " + fixture_path("lufthansa.contract") + " --mode regiment",
                          dir, dir.file("proposals.stream"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"decision\":\"allow\"") != std::string::npos);
    CHECK(r.out.find("\"decision\":\"block\"") != std::string::npos);
}

TEST_CASE("simulate: tiers out of order exit 3; outputs are deterministic") {
    TempDir dir;
    write_file(dir.file("bad.simconfig"), "tiers = 10:220, 10:100\n");
    CliResult bad = run_cli("simulate " + dir.file("bad.simconfig") + " --out-trace " +
                                dir.file("t") + " --out-history " + dir.file("h"),
                            dir);
    CHECK(bad.exit_code == 3);

    CliResult a = run_cli("simulate " + fixture_path("gouge.simconfig") + " --out-trace " +
                              dir.file("a.trace") + " --out-history " + dir.file("a.csv"),
                          dir);
    CliResult b = run_cli("simulate " + fixture_path("gouge.simconfig") + " --out-trace " +
                              dir.file("b.trace") + " --out-history " + dir.file("b.csv"),
                          dir);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(read_file(dir.file("a.trace")) == read_file(dir.file("b.trace")));
    CHECK(read_file(dir.file("a.csv")) == read_file(dir.file("b.csv")));
}

TEST_CASE("usage errors exit 3") {
    TempDir dir;
    CliResult r = run_cli("contest", dir);
    CHECK(r.exit_code == 3);
    CliResult unknown = run_cli("frobnicate", dir);
    CHECK(unknown.exit_code == 3);
}
