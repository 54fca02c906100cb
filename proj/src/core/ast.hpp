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

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scalar.hpp"

namespace contestable {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct NumberLit {
    double value;
};
struct StringLit {
    std::string value;
};
struct BoolLit {
    bool value;
};
struct DateLit {
    Date value;
};
struct VarRef {
    std::string name;
};

enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Not {
    ExprPtr operand;
};
struct Abs {
    ExprPtr operand;
};
/// Built-in predicate: equal month and day-of-month, years ignored.
struct SameDay {
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Let {
    std::string name;
    ExprPtr value;
    ExprPtr body;
};
/// avg(source.column where predicate) — arithmetic mean over selected rows.
struct Aggregate {
    std::string source;
    std::string column;
    ExprPtr where;
};

/// Event pattern: type plus attribute-to-variable binders.
struct EventPattern {
    std::string event_type;
    std::vector<std::pair<std::string, std::string>> binders;  // attribute -> variable
};

/// exists event <pattern> [where <predicate>] before trigger — quantifies
/// over the strict prefix (events with seq < the triggering event's seq).
struct ExistsBefore {
    EventPattern pattern;
    ExprPtr where;  // may be null
};

struct Expr {
    std::variant<NumberLit, StringLit, BoolLit, DateLit, VarRef, Binary, Not, Abs, SameDay, Let,
                 Aggregate, ExistsBefore>
        node;
};

template <typename T, typename... Args>
ExprPtr make_expr(Args&&... args) {
    return std::make_unique<Expr>(Expr{T{std::forward<Args>(args)...}});
}

struct SourceDecl {
    std::string name;
    std::vector<std::pair<std::string, ScalarKind>> columns;
    std::string location;  // path reference resolved at evaluation time
};

struct NormDef {
    std::string id;
    std::string title;
    EventPattern trigger;
    ExprPtr when_clause;  // may be null
    ExprPtr require_clause;
};

struct Contract {
    std::string id;
    std::int64_t version = 1;
    Date effective_from;
    std::vector<SourceDecl> sources;
    std::vector<NormDef> norms;
};

bool expr_equal(const Expr& a, const Expr& b);
bool pattern_equal(const EventPattern& a, const EventPattern& b);
bool norm_equal(const NormDef& a, const NormDef& b);
bool contract_equal(const Contract& a, const Contract& b);

ExprPtr clone_expr(const Expr& e);

const char* binary_op_token(BinaryOp op);

}  // namespace contestable
