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

#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "core/ast.hpp"
#include "core/rng.hpp"
#include "core/trace.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

/// Self-cleaning scratch directory per test.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("contestable-test-" + std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }

private:
    static int& counter() {
        static int n = 0;
        return n;
    }
};

/// Events drawn from the airline vocabulary, randomized but chainable.
inline contestable::Trace random_airline_trace(std::uint64_t seed, std::size_t max_events) {
    using namespace contestable;
    SplitMix64 rng(seed);
    Trace trace;
    trace.header = {"random-" + std::to_string(seed), 0, "flight"};
    std::size_t n = 1 + rng.next() % max_events;
    std::int64_t ts = 1500000000000000;
    const char* types[] = {"tier_opened", "price_set", "seat_sold", "tier_sold_out",
                           "competitor_bankruptcy", "maintenance_check"};
    const char* flights[] = {"LH100", "LH200"};
    for (std::size_t i = 0; i < n; ++i) {
        std::string type = types[rng.next() % 6];
        AttrMap attrs;
        if (type == "competitor_bankruptcy") {
            attrs.emplace("competitor", std::string("AB"));
            attrs.emplace("date", Date{2017, 11, static_cast<int>(1 + rng.next() % 28)});
        } else {
            attrs.emplace("flight", std::string(flights[rng.next() % 2]));
            attrs.emplace("route", std::string("TXL-MUC"));
            attrs.emplace("tier", static_cast<double>(1 + rng.next() % 4));
            if (type == "price_set") {
                attrs.emplace("price", static_cast<double>(80 + rng.next() % 200));
                attrs.emplace("sale_date",
                              Date{2017, 11, static_cast<int>(1 + rng.next() % 28)});
            }
            if (type == "tier_opened") {
                attrs.emplace("capacity", static_cast<double>(5 + rng.next() % 20));
            }
        }
        ts += static_cast<std::int64_t>(rng.next() % 3600) * 1000000;
        append_event(trace, ts, std::move(type), std::move(attrs), "policy-v1", 1);
    }
    return trace;
}

/// Random parser-reachable contract ASTs for round-trip properties.
class AstGen {
public:
    explicit AstGen(std::uint64_t seed) : rng_(seed) {}

    contestable::Contract contract() {
        using namespace contestable;
        Contract c;
        c.id = "gen-" + ident();
        c.version = 1 + static_cast<std::int64_t>(rng_.next() % 9);
        c.effective_from = date();
        std::size_t n_sources = rng_.next() % 3;
        for (std::size_t i = 0; i < n_sources; ++i) {
            SourceDecl s;
            s.name = "src_" + std::to_string(i);
            std::size_t n_cols = 1 + rng_.next() % 4;
            for (std::size_t j = 0; j < n_cols; ++j) {
                ScalarKind kinds[] = {ScalarKind::Number, ScalarKind::String, ScalarKind::Date};
                s.columns.emplace_back("col_" + std::to_string(j), kinds[rng_.next() % 3]);
            }
            s.location = "data/" + s.name + ".csv";
            c.sources.push_back(std::move(s));
        }
        std::size_t n_norms = rng_.next() % 4;
        for (std::size_t i = 0; i < n_norms; ++i) {
            NormDef n;
            n.id = "N" + std::to_string(i);
            n.title = string_value();
            n.trigger = pattern();
            if (rng_.next() % 2) n.when_clause = expr(2);
            n.require_clause = expr(3);
            c.norms.push_back(std::move(n));
        }
        return c;
    }

    contestable::ExprPtr expr(int depth) {
        using namespace contestable;
        if (depth <= 0) return leaf();
        switch (rng_.next() % 10) {
            case 0: return leaf();
            case 1: return make_expr<Binary>(binop(), expr(depth - 1), expr(depth - 1));
            case 2: return make_expr<Not>(expr(depth - 1));
            case 3: return make_expr<Abs>(expr(depth - 1));
            case 4: return make_expr<SameDay>(expr(depth - 1), expr(depth - 1));
            case 5: return make_expr<Let>(ident(), expr(depth - 1), expr(depth - 1));
            case 6:
                return make_expr<Aggregate>("src_" + std::to_string(rng_.next() % 2),
                                            "col_" + std::to_string(rng_.next() % 3),
                                            expr(depth - 1));
            case 7:
                return make_expr<ExistsBefore>(pattern(),
                                               rng_.next() % 2 ? expr(depth - 1) : nullptr);
            default: return make_expr<Binary>(binop(), expr(depth - 1), expr(depth - 1));
        }
    }

private:
    contestable::SplitMix64 rng_;

    std::string ident() {
        static const char* names[] = {"x", "y", "price", "tier_no", "v2", "route_id"};
        return names[rng_.next() % 6];
    }

    std::string string_value() {
        static const char* values[] = {"plain", "with space", "quote\"inside", "tab\there", ""};
        return values[rng_.next() % 5];
    }

    contestable::Date date() {
        return contestable::Date{2000 + static_cast<int>(rng_.next() % 30),
                                 static_cast<int>(1 + rng_.next() % 12),
                                 static_cast<int>(1 + rng_.next() % 28)};
    }

    contestable::BinaryOp binop() {
        using contestable::BinaryOp;
        BinaryOp ops[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div,
                          BinaryOp::Eq,  BinaryOp::Ne,  BinaryOp::Lt,  BinaryOp::Le,
                          BinaryOp::Gt,  BinaryOp::Ge,  BinaryOp::And, BinaryOp::Or};
        return ops[rng_.next() % 12];
    }

    contestable::EventPattern pattern() {
        contestable::EventPattern p;
        p.event_type = "ev_" + std::to_string(rng_.next() % 3);
        std::size_t n = rng_.next() % 3;
        for (std::size_t i = 0; i < n; ++i) {
            p.binders.emplace_back("attr_" + std::to_string(i), ident() + std::to_string(i));
        }
        return p;
    }

    contestable::ExprPtr leaf() {
        using namespace contestable;
        switch (rng_.next() % 5) {
            case 0: {
                double candidates[] = {0, 1, 2.5, 0.3, 1e-3, 12345, 7.25e8, 0.1234567890123};
                return make_expr<NumberLit>(candidates[rng_.next() % 8]);
            }
            case 1: return make_expr<StringLit>(string_value());
            case 2: return make_expr<BoolLit>(rng_.next() % 2 == 0);
            case 3: return make_expr<DateLit>(date());
            default: return make_expr<VarRef>(ident());
        }
    }
};

}  // namespace testsupport
