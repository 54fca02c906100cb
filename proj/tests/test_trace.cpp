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

#include <doctest.h>

#include <set>
#include <sstream>

#include "core/errors.hpp"
#include "core/history.hpp"
#include "core/trace.hpp"
#include "support.hpp"

using namespace contestable;
using testsupport::random_airline_trace;

namespace {

// The documented sample event (also in the README). Its canonical bytes
// and SHA-256 were frozen from an independent implementation (Python
// hashlib) before this module was written.
Event sample_event() {
    Event e;
    e.seq = 0;
    e.ts_us = 1483228800000000;  // 2017-01-01T00:00:00Z
    e.event_type = "tier_opened";
    e.attrs = {{"capacity", 20.0}, {"flight", std::string("LH100")},
               {"route", std::string("TXL-MUC")}, {"tier", 1.0}};
    e.algo_version = "policy-v1";
    e.contract_version = 1;
    e.prev_hash = kZeroHash;
    return e;
}

const char* kSampleCanonical =
    "{\"seq\":0,\"ts\":\"2017-01-01T00:00:00.000000Z\",\"event_type\":\"tier_opened\","
    "\"attrs\":{\"capacity\":20,\"flight\":\"LH100\",\"route\":\"TXL-MUC\",\"tier\":1},"
    "\"algo_version\":\"policy-v1\",\"contract_version\":1,"
    "\"prev_hash\":\"0000000000000000000000000000000000000000000000000000000000000000\"}";

const char* kSampleSha256 = "8fced1544ef71b4f140fb0a9fe44cd862f40b5f38aee06bc9987ffda71f11a5b";

Trace small_trace(std::size_t n) {
    Trace t;
    t.header = {"t", 1483228800000000, "flight"};
    for (std::size_t i = 0; i < n; ++i) {
        append_event(t, 1483228800000000 + static_cast<std::int64_t>(i) * 1000000, "seat_sold",
                     {{"flight", std::string("LH100")}, {"tier", 1.0}}, "policy-v1", 1);
    }
    return t;
}

}  // namespace

TEST_CASE("golden: canonical bytes and SHA-256 of the documented sample event") {
    Event e = sample_event();
    CHECK(canonical_bytes(e) == kSampleCanonical);
    CHECK(to_hex(compute_event_hash(e)) == kSampleSha256);
}

TEST_CASE("canonical bytes are deterministic and insertion-order free") {
    Event e = sample_event();
    CHECK(canonical_bytes(e) == canonical_bytes(e));

    Event reordered = sample_event();
    reordered.attrs.clear();
    reordered.attrs.emplace("tier", 1.0);
    reordered.attrs.emplace("route", std::string("TXL-MUC"));
    reordered.attrs.emplace("capacity", 20.0);
    reordered.attrs.emplace("flight", std::string("LH100"));
    CHECK(canonical_bytes(reordered) == canonical_bytes(e));
}

TEST_CASE("canonical bytes format numbers in shortest round-trip form") {
    Event e = sample_event();
    e.attrs["price"] = 0.3;
    e.attrs["big"] = 1e20;
    std::string bytes = canonical_bytes(e);
    CHECK(bytes.find("\"price\":0.3,") != std::string::npos);
    CHECK(bytes.find("\"big\":1e+20,") != std::string::npos);
}

TEST_CASE("appending to an empty trace chains from the zero hash") {
    Trace t;
    t.header = {"t", 0, "flight"};
    const Event& e =
        append_event(t, 1000, "tier_opened", {{"flight", std::string("LH100")}}, "policy-v1", 1);
    CHECK(e.seq == 0);
    CHECK(e.prev_hash == kZeroHash);
    CHECK(e.hash == compute_event_hash(e));
    CHECK(t.events.size() == 1);
}

TEST_CASE("append rejects a regressing timestamp") {
    Trace t = small_trace(2);
    CHECK_THROWS_AS(append_event(t, t.events.back().ts_us - 1, "seat_sold", {}, "policy-v1", 1),
                    OutOfOrderTimestamp);
    // equal timestamps are allowed: seq is the authoritative order
    CHECK_NOTHROW(append_event(t, t.events.back().ts_us, "seat_sold", {}, "policy-v1", 1));
}

TEST_CASE("a freshly built 100-event trace verifies") {
    Trace t = small_trace(100);
    CHECK(verify_integrity(t).ok);
}

TEST_CASE("tampering an attr without recomputing is pinned to the successor's prev_hash") {
    Trace t = small_trace(2);
    t.events[0].attrs["tier"] = 2.0;
    IntegrityResult r = verify_integrity(t);
    REQUIRE(!r.ok);
    CHECK(r.seq == 1);
    CHECK(r.kind == IntegrityKind::ChainBreak);
}

TEST_CASE("deleting an event is a seq gap at its position") {
    Trace t = small_trace(10);
    t.events.erase(t.events.begin() + 5);
    IntegrityResult r = verify_integrity(t);
    REQUIRE(!r.ok);
    CHECK(r.seq == 5);
    CHECK(r.kind == IntegrityKind::SeqGap);
}

TEST_CASE("recomputing a tampered event's hash leaves a chain break at the successor") {
    Trace t = small_trace(6);
    t.events[3].attrs["tier"] = 9.0;
    t.events[3].hash = compute_event_hash(t.events[3]);
    IntegrityResult r = verify_integrity(t);
    REQUIRE(!r.ok);
    CHECK(r.seq == 4);
    CHECK(r.kind == IntegrityKind::ChainBreak);
}

TEST_CASE("tampering only the stored hash of a non-tip event is a hash mismatch") {
    Trace t = small_trace(6);
    t.events[2].hash[0] ^= 0xFF;
    IntegrityResult r = verify_integrity(t);
    REQUIRE(!r.ok);
    CHECK(r.seq == 2);
    CHECK(r.kind == IntegrityKind::HashMismatch);
}

TEST_CASE("timestamp regressions are reported at the regressing event") {
    Trace t = small_trace(4);
    t.events[2].ts_us = t.events[1].ts_us - 5;
    IntegrityResult r = verify_integrity(t);
    REQUIRE(!r.ok);
    CHECK(r.seq == 2);
    CHECK(r.kind == IntegrityKind::TsRegress);
}

TEST_CASE("write then read round-trips bytes and value") {
    Trace t = small_trace(50);
    std::ostringstream out;
    write_trace(t, out);
    std::istringstream in(out.str());
    Trace back = read_trace(in);
    CHECK(back == t);
    std::ostringstream out2;
    write_trace(back, out2);
    CHECK(out2.str() == out.str());
}

TEST_CASE("read rejects malformed input with the line number") {
    Trace t = small_trace(3);
    std::ostringstream out;
    write_trace(t, out);
    std::string text = out.str();

    SUBCASE("truncated last line") {
        std::string truncated = text.substr(0, text.size() - 10);
        std::istringstream in(truncated);
        try {
            read_trace(in);
            FAIL("expected TraceFormatError");
        } catch (const TraceFormatError& e) {
            CHECK(e.line == 4);  // header + 3 events
        }
    }

    SUBCASE("garbage line in the middle") {
        std::string mutated = text;
        mutated.replace(mutated.find("\"seat_sold\""), 11, "\"seat_sold ");
        std::istringstream in(mutated);
        CHECK_THROWS_AS(read_trace(in), TraceFormatError);
    }

    SUBCASE("empty file") {
        std::istringstream in("");
        try {
            read_trace(in);
            FAIL("expected TraceFormatError");
        } catch (const TraceFormatError& e) {
            CHECK(e.line == 1);
        }
    }

    SUBCASE("extra field") {
        std::string mutated = text;
        auto pos = mutated.find("\"hash\":");
        mutated.insert(pos, "\"bogus\":1,");
        std::istringstream in(mutated);
        CHECK_THROWS_AS(read_trace(in), TraceFormatError);
    }
}

TEST_CASE("a header-only file is an empty trace that verifies") {
    std::istringstream in(header_line({"t", 0, "flight"}) + "\n");
    Trace t = read_trace(in);
    CHECK(t.events.empty());
    CHECK(t.header.trace_id == "t");
    CHECK(verify_integrity(t).ok);
}

TEST_CASE("slice_until keeps an inclusive verified prefix") {
    Trace t = small_trace(10);
    CHECK(slice_until(t, 9) == t);
    CHECK(slice_until(t, 0).events.size() == 1);
    CHECK_THROWS_AS(slice_until(t, 10), SeqOutOfRange);
}

TEST_CASE("property: every prefix of a valid trace is a valid trace") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Trace t = random_airline_trace(seed, 40);
        for (std::uint64_t s = 0; s < t.events.size(); ++s) {
            Trace prefix = slice_until(t, s);
            CAPTURE(seed);
            CAPTURE(s);
            CHECK(verify_integrity(prefix).ok);
        }
    }
}

TEST_CASE("property: any single-byte file mutation breaks verification or reading") {
    Trace t = small_trace(20);
    std::ostringstream out;
    write_trace(t, out);
    const std::string text = out.str();
    std::size_t event_region = text.find('\n') + 1;  // events only; the header is not chained
    SplitMix64 rng(7);
    for (int i = 0; i < 300; ++i) {
        std::string mutated = text;
        std::size_t pos = event_region + rng.next() % (text.size() - event_region);
        char replacement = static_cast<char>('!' + rng.next() % 90);
        if (mutated[pos] == replacement) replacement = replacement == 'x' ? 'y' : 'x';
        mutated[pos] = replacement;
        CAPTURE(pos);
        std::istringstream in(mutated);
        try {
            Trace back = read_trace(in);
            IntegrityResult r = verify_integrity(back);
            CHECK(!r.ok);
        } catch (const TraceFormatError&) {
            // unreadable is detected too
        }
    }
}

TEST_CASE("canonical bytes differ for distinct events in a trace") {
    Trace t = small_trace(30);
    std::set<std::string> seen;
    for (const Event& e : t.events) {
        CHECK(seen.insert(canonical_bytes(e)).second);
    }
}

// --- history tables -----------------------------------------------------------

namespace {

SourceDecl history_decl() {
    SourceDecl s;
    s.name = "history";
    s.columns = {{"route", ScalarKind::String},
                 {"sale_date", ScalarKind::Date},
                 {"tier", ScalarKind::Number},
                 {"avg_price", ScalarKind::Number}};
    s.location = "history.csv";
    return s;
}

}  // namespace

TEST_CASE("history csv reads typed rows and rejects bad cells") {
    std::istringstream in("route,sale_date,tier,avg_price\n"
                          "TXL-MUC,2016-11-08,1,102.85\n"
                          "\"TXL,MUC\",2015-11-08,2,97.5\n");
    HistoryTable t = read_history_csv(in, history_decl());
    REQUIRE(t.rows.size() == 2);
    CHECK(std::get<std::string>(t.rows[1][0]) == "TXL,MUC");
    CHECK(std::get<Date>(t.rows[0][1]) == Date{2016, 11, 8});
    CHECK(std::get<double>(t.rows[0][3]) == 102.85);

    std::istringstream bad("route,sale_date,tier,avg_price\nTXL,2016-11-08,one,5\n");
    try {
        read_history_csv(bad, history_decl());
        FAIL("expected TraceFormatError");
    } catch (const TraceFormatError& e) {
        CHECK(e.line == 2);
    }

    std::istringstream bad_header("route,sale_date,tier\nTXL,2016-11-08,1\n");
    CHECK_THROWS_AS(read_history_csv(bad_header, history_decl()), TraceFormatError);
}

TEST_CASE("history csv accepts reordered header columns") {
    std::istringstream in("tier,route,avg_price,sale_date\n1,TXL-MUC,100,2016-11-08\n");
    HistoryTable t = read_history_csv(in, history_decl());
    REQUIRE(t.rows.size() == 1);
    CHECK(std::get<double>(t.rows[0][2]) == 1.0);
    CHECK(std::get<std::string>(t.rows[0][0]) == "TXL-MUC");
}

TEST_CASE("history content hash is stable across incidental formatting") {
    std::istringstream a("route,sale_date,tier,avg_price\nTXL-MUC,2016-11-08,1,102.85\n");
    std::istringstream b("tier,route,avg_price,sale_date\n1,TXL-MUC,102.85,2016-11-08\n");
    SourceMap ma{{"history", read_history_csv(a, history_decl())}};
    SourceMap mb{{"history", read_history_csv(b, history_decl())}};
    CHECK(history_content_hash(ma) == history_content_hash(mb));

    std::istringstream c("route,sale_date,tier,avg_price\nTXL-MUC,2016-11-08,1,102.86\n");
    SourceMap mc{{"history", read_history_csv(c, history_decl())}};
    CHECK(history_content_hash(ma) != history_content_hash(mc));
}
