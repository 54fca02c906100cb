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

// Exercises the toolkit exclusively through the public C header, the way
// an embedding application (or the CLI) would.

#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "contestable/contestable.h"
#include "support.hpp"

using testsupport::fixture_path;
using testsupport::read_file;
using testsupport::TempDir;

namespace {

struct Owned {
    char* ptr = nullptr;
    ~Owned() { ct_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct ContractGuard {
    ct_contract* ptr = nullptr;
    ~ContractGuard() { ct_contract_free(ptr); }
};

ct_contract* load_fixture_contract() {
    ct_contract* c = nullptr;
    REQUIRE(ct_contract_parse_file(fixture_path("lufthansa.contract").c_str(), &c) == CT_OK);
    return c;
}

// Simulate a scenario into a temp dir, returning (trace path, history path).
std::pair<std::string, std::string> simulate_into(const TempDir& dir, const std::string& config) {
    std::string trace_path = dir.file("sim.trace");
    std::string history_path = dir.file("history.csv");
    REQUIRE(ct_simulate(fixture_path(config).c_str(), trace_path.c_str(),
                        history_path.c_str()) == CT_OK);
    return {trace_path, history_path};
}

}  // namespace

TEST_CASE("version and error strings are always non-null") {
    CHECK(ct_version() != nullptr);
    CHECK(ct_last_error() != nullptr);
}

TEST_CASE("contract parse, validate, format through the C surface") {
    ContractGuard c{load_fixture_contract()};
    CHECK(std::string(ct_contract_id(c.ptr)) == "lufthansa-pricing");
    CHECK(ct_contract_version(c.ptr) == 1);
    REQUIRE(ct_contract_source_count(c.ptr) == 1);
    CHECK(std::string(ct_contract_source_name(c.ptr, 0)) == "history");
    CHECK(std::string(ct_contract_source_location(c.ptr, 0)) == "history.csv");

    Owned diagnostics;
    size_t count = 99;
    CHECK(ct_contract_validate(c.ptr, &diagnostics.ptr, &count) == CT_OK);
    CHECK(count == 0);
    CHECK(diagnostics.str().empty());

    Owned text;
    REQUIRE(ct_contract_format(c.ptr, &text.ptr) == CT_OK);
    ContractGuard reparsed;
    CHECK(ct_contract_parse(text.ptr, &reparsed.ptr) == CT_OK);
    Owned text2;
    REQUIRE(ct_contract_format(reparsed.ptr, &text2.ptr) == CT_OK);
    CHECK(text.str() == text2.str());
}

TEST_CASE("parse errors produce CT_ERR_PARSE with a located message") {
    ct_contract* c = nullptr;
    CHECK(ct_contract_parse("contract \"x\" 1", &c) == CT_ERR_PARSE);
    CHECK(c == nullptr);
    CHECK(std::string(ct_last_error()).find("1:14") != std::string::npos);
}

TEST_CASE("validation failures produce CT_ERR_VALIDATION and the diagnostics text") {
    ContractGuard c;
    REQUIRE(ct_contract_parse(
                "contract \"x\" version 1 effective 2017-01-01 {\n"
                "  norm N1 \"t\" { on event e(a = x) require q > 1 }\n}",
                &c.ptr) == CT_OK);
    Owned diagnostics;
    size_t count = 0;
    CHECK(ct_contract_validate(c.ptr, &diagnostics.ptr, &count) == CT_ERR_VALIDATION);
    CHECK(count == 1);
    CHECK(diagnostics.str().find("unbound variable 'q'") != std::string::npos);
}

TEST_CASE("null arguments are CT_ERR_ARG, never a crash") {
    CHECK(ct_contract_parse(nullptr, nullptr) == CT_ERR_ARG);
    CHECK(ct_trace_read_file(nullptr, nullptr) == CT_ERR_ARG);
    CHECK(ct_monitor_feed(nullptr, nullptr, nullptr, nullptr, nullptr) == CT_ERR_ARG);
    CHECK(std::string(ct_last_error()) == "null argument");
}

TEST_CASE("traces round-trip files and verify through the C surface") {
    TempDir dir;
    auto [trace_path, history_path] = simulate_into(dir, "compliant.simconfig");

    ct_trace* t = nullptr;
    REQUIRE(ct_trace_read_file(trace_path.c_str(), &t) == CT_OK);
    CHECK(ct_trace_event_count(t) > 20);
    CHECK(ct_trace_verify(t, nullptr, nullptr) == CT_OK);

    std::string copy_path = dir.file("copy.trace");
    REQUIRE(ct_trace_write_file(t, copy_path.c_str()) == CT_OK);
    CHECK(read_file(copy_path) == read_file(trace_path));

    Owned state;
    REQUIRE(ct_trace_state_json(t, ct_trace_event_count(t) - 1, &state.ptr) == CT_OK);
    CHECK(state.str().find("\"sold_out\": true") != std::string::npos);
    ct_trace_free(t);
}

TEST_CASE("a tampered trace file reports the offending seq and kind") {
    TempDir dir;
    auto [trace_path, history_path] = simulate_into(dir, "compliant.simconfig");
    std::string text = read_file(trace_path);
    auto pos = text.find("\"tier\":2");
    REQUIRE(pos != std::string::npos);
    text[pos + 7] = '9';  // tier 2 -> 9 inside some event's attrs
    testsupport::write_file(trace_path, text);

    ct_trace* t = nullptr;
    REQUIRE(ct_trace_read_file(trace_path.c_str(), &t) == CT_OK);
    uint64_t bad_seq = 0;
    const char* kind = nullptr;
    CHECK(ct_trace_verify(t, &bad_seq, &kind) == CT_ERR_INTEGRITY);
    CHECK(kind != nullptr);
    ct_trace_free(t);
}

TEST_CASE("contest through the C surface yields the report document") {
    TempDir dir;
    ContractGuard c{load_fixture_contract()};
    auto [trace_path, history_path] = simulate_into(dir, "gouge.simconfig");

    ct_history* history = nullptr;
    REQUIRE(ct_history_read_file(c.ptr, "history", history_path.c_str(), &history) == CT_OK);
    const char* names[] = {"history"};
    const ct_history* tables[] = {history};

    ct_trace* t = nullptr;
    REQUIRE(ct_trace_read_file(trace_path.c_str(), &t) == CT_OK);
    uint64_t decision = ct_trace_event_count(t) - 1;
    ct_trace_free(t);

    Owned report;
    int verdict = -1;
    int integrity_ok = -1;
    REQUIRE(ct_contest_run(c.ptr, trace_path.c_str(), names, tables, 1, decision, 1, &report.ptr,
                           &verdict, &integrity_ok) == CT_OK);
    CHECK(verdict == 1);  // NonCompliant
    CHECK(integrity_ok == 1);
    CHECK(report.str().find("\"verdict\": \"NonCompliant\"") != std::string::npos);
    CHECK(report.str().find("\"algo_version_at_decision\": \"policy-v2\"") != std::string::npos);

    // Unknown source names are rejected up front.
    const char* bad_names[] = {"nope"};
    Owned ignored;
    CHECK(ct_contest_run(c.ptr, trace_path.c_str(), bad_names, tables, 1, decision, 1,
                         &ignored.ptr, nullptr, nullptr) == CT_ERR_ARG);

    ct_history_free(history);
}

TEST_CASE("contesting under a mismatched contract version is CT_ERR_VERSION_MISMATCH") {
    TempDir dir;
    auto [trace_path, history_path] = simulate_into(dir, "gouge.simconfig");
    std::string v2_text = read_file(fixture_path("lufthansa.contract"));
    auto pos = v2_text.find("version 1");
    v2_text.replace(pos, 9, "version 2");
    ContractGuard c;
    REQUIRE(ct_contract_parse(v2_text.c_str(), &c.ptr) == CT_OK);

    Owned report;
    CHECK(ct_contest_run(c.ptr, trace_path.c_str(), nullptr, nullptr, 0, 5, 1, &report.ptr,
                         nullptr, nullptr) == CT_ERR_VERSION_MISMATCH);
    CHECK(std::string(ct_last_error()).find("version") != std::string::npos);
}

TEST_CASE("an unreadable trace file still contests to an Inconclusive report") {
    TempDir dir;
    ContractGuard c{load_fixture_contract()};
    testsupport::write_file(dir.file("broken.trace"),
                            "{\"trace_id\":\"t\",\"created\":\"2017-01-01T00:00:00.000000Z\","
                            "\"scope_key_attr\":\"flight\"}\nnot json at all\n");
    Owned report;
    int verdict = -1;
    int integrity_ok = -1;
    REQUIRE(ct_contest_run(c.ptr, dir.file("broken.trace").c_str(), nullptr, nullptr, 0, 0, 1,
                           &report.ptr, &verdict, &integrity_ok) == CT_OK);
    CHECK(verdict == 2);
    CHECK(integrity_ok == 0);
    CHECK(report.str().find("\"kind\": \"format-error\"") != std::string::npos);
}

TEST_CASE("observe monitor streams a trace file line by line") {
    TempDir dir;
    ContractGuard c{load_fixture_contract()};
    auto [trace_path, history_path] = simulate_into(dir, "tierskip.simconfig");
    ct_history* history = nullptr;
    REQUIRE(ct_history_read_file(c.ptr, "history", history_path.c_str(), &history) == CT_OK);
    const char* names[] = {"history"};
    const ct_history* tables[] = {history};

    ct_monitor* monitor = nullptr;
    REQUIRE(ct_monitor_new(c.ptr, names, tables, 1, 0, &monitor) == CT_OK);

    std::ifstream in(trace_path);
    std::string line;
    int violations = 0;
    size_t records = 0;
    while (std::getline(in, line)) {
        Owned out;
        int violated = 0;
        int blocked = 0;
        REQUIRE(ct_monitor_feed(monitor, line.c_str(), &out.ptr, &violated, &blocked) == CT_OK);
        violations += violated;
        std::string s = out.str();
        records += static_cast<size_t>(std::count(s.begin(), s.end(), '\n'));
    }
    CHECK(violations == 1);
    CHECK(records > 10);

    // A line that does not chain is CT_ERR_CHAIN.
    std::ifstream again(trace_path);
    std::getline(again, line);  // header
    std::getline(again, line);  // event 0, already consumed by the monitor
    Owned out;
    CHECK(ct_monitor_feed(monitor, line.c_str(), &out.ptr, nullptr, nullptr) == CT_ERR_CHAIN);

    Owned bad;
    CHECK(ct_monitor_feed(monitor, "garbage", &bad.ptr, nullptr, nullptr) == CT_ERR_FORMAT);

    ct_monitor_free(monitor);
    ct_history_free(history);
}

TEST_CASE("regiment monitor blocks violating proposals and reports them") {
    ContractGuard c{load_fixture_contract()};
    ct_monitor* monitor = nullptr;
    REQUIRE(ct_monitor_new(c.ptr, nullptr, nullptr, 0, 1, &monitor) == CT_OK);

    auto feed = [&](const std::string& line, int* blocked) {
        Owned out;
        REQUIRE(ct_monitor_feed(monitor, line.c_str(), &out.ptr, nullptr, blocked) == CT_OK);
        return out.str();
    };

    int blocked = 0;
    std::string allow = feed(
        R"({"seq":0,"ts":"2017-11-08T08:00:00.000000Z","event_type":"tier_opened","attrs":{"capacity":5,"flight":"LH100","route":"TXL-MUC","tier":1},"algo_version":"policy-v1","contract_version":1})",
        &blocked);
    CHECK(blocked == 0);
    CHECK(allow.find("\"decision\":\"allow\"") != std::string::npos);

    std::string block = feed(
        R"({"seq":1,"ts":"2017-11-08T08:01:00.000000Z","event_type":"tier_opened","attrs":{"capacity":5,"flight":"LH100","route":"TXL-MUC","tier":2},"algo_version":"policy-v1","contract_version":1})",
        &blocked);
    CHECK(blocked == 1);
    CHECK(block.find("\"decision\":\"block\"") != std::string::npos);
    CHECK(block.find("\"status\":\"Violated\"") != std::string::npos);

    ct_monitor_free(monitor);
}

TEST_CASE("simulate rejects invalid configs with CT_ERR_CONFIG") {
    TempDir dir;
    testsupport::write_file(dir.file("bad.simconfig"), "tiers = 10:200, 10:100\n");
    CHECK(ct_simulate(dir.file("bad.simconfig").c_str(), dir.file("t").c_str(),
                      dir.file("h").c_str()) == CT_ERR_CONFIG);
    CHECK(std::string(ct_last_error()).find("strictly increasing") != std::string::npos);
}
