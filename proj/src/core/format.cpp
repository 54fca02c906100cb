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

#include "format.hpp"

namespace contestable {

namespace {

// Grammar levels, loosest to tightest. A child below its position's
// minimum level gets parenthesized.
enum Level : int {
    kOr = 1,
    kAnd = 2,
    kNot = 3,
    kCmp = 4,
    kSum = 5,
    kTerm = 6,
    kUnary = 7,
};

int node_level(const Expr& e) {
    if (const auto* b = std::get_if<Binary>(&e.node)) {
        switch (b->op) {
            case BinaryOp::Or: return kOr;
            case BinaryOp::And: return kAnd;
            case BinaryOp::Eq:
            case BinaryOp::Ne:
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: return kCmp;
            case BinaryOp::Add:
            case BinaryOp::Sub: return kSum;
            case BinaryOp::Mul:
            case BinaryOp::Div: return kTerm;
        }
    }
    if (std::holds_alternative<Not>(e.node)) return kNot;
    return kUnary;
}

class Printer {
public:
    explicit Printer(std::string& out) : out_(out) {}

    // `tail` marks positions where everything to the right of the node in
    // the emitted text belongs to it, so an open-ended `let` body cannot
    // capture sibling tokens. Non-tail lets are parenthesized.
    void expr(const Expr& e, int min_level, bool tail, int indent) {
        bool parens = node_level(e) < min_level ||
                      (std::holds_alternative<Let>(e.node) && !tail);
        if (parens) {
            out_ += '(';
            tail = true;
        }
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NumberLit>) {
                    out_ += format_number(n.value);
                } else if constexpr (std::is_same_v<T, StringLit>) {
                    string_literal(n.value);
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    out_ += n.value ? "true" : "false";
                } else if constexpr (std::is_same_v<T, DateLit>) {
                    out_ += format_date(n.value);
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    out_ += n.name;
                } else if constexpr (std::is_same_v<T, Binary>) {
                    binary(n, tail, indent);
                } else if constexpr (std::is_same_v<T, Not>) {
                    out_ += "not ";
                    expr(*n.operand, kCmp, tail, indent);
                } else if constexpr (std::is_same_v<T, Abs>) {
                    out_ += "abs(";
                    expr(*n.operand, kOr, true, indent);
                    out_ += ')';
                } else if constexpr (std::is_same_v<T, SameDay>) {
                    out_ += "same_day(";
                    expr(*n.lhs, kOr, true, indent);
                    out_ += ", ";
                    expr(*n.rhs, kOr, true, indent);
                    out_ += ')';
                } else if constexpr (std::is_same_v<T, Let>) {
                    out_ += "let ";
                    out_ += n.name;
                    out_ += " = ";
                    expr(*n.value, kOr, true, indent + 1);
                    newline(indent + 1);
                    out_ += "in ";
                    expr(*n.body, kOr, true, indent + 1);
                } else if constexpr (std::is_same_v<T, Aggregate>) {
                    out_ += "avg(";
                    out_ += n.source;
                    out_ += '.';
                    out_ += n.column;
                    out_ += " where ";
                    expr(*n.where, kOr, true, indent);
                    out_ += ')';
                } else {
                    static_assert(std::is_same_v<T, ExistsBefore>);
                    out_ += "exists ";
                    pattern(n.pattern);
                    if (n.where) {
                        out_ += " where ";
                        expr(*n.where, kOr, true, indent);
                    }
                    out_ += " before trigger";
                }
            },
            e.node);
        if (parens) out_ += ')';
    }

    void pattern(const EventPattern& p) {
        out_ += "event ";
        out_ += p.event_type;
        out_ += '(';
        bool first = true;
        for (const auto& [attr, var] : p.binders) {
            if (!first) out_ += ", ";
            first = false;
            out_ += attr;
            out_ += " = ";
            out_ += var;
        }
        out_ += ')';
    }

    void string_literal(const std::string& value) {
        out_ += '"';
        for (char c : value) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default: out_ += c;
            }
        }
        out_ += '"';
    }

    void newline(int indent) {
        out_ += '\n';
        out_.append(static_cast<std::size_t>(indent) * 2, ' ');
    }

private:
    std::string& out_;

    void binary(const Binary& b, bool tail, int indent) {
        int level = kOr;
        switch (b.op) {
            case BinaryOp::Or: level = kOr; break;
            case BinaryOp::And: level = kAnd; break;
            case BinaryOp::Eq:
            case BinaryOp::Ne:
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: level = kCmp; break;
            case BinaryOp::Add:
            case BinaryOp::Sub: level = kSum; break;
            case BinaryOp::Mul:
            case BinaryOp::Div: level = kTerm; break;
        }
        // Left-associative chains keep the left child at the same level;
        // comparisons do not chain, so both sides step up a level.
        int left_min = level == kCmp ? kSum : level;
        int right_min = level == kCmp ? kSum : level + 1;
        expr(*b.lhs, left_min, false, indent);
        out_ += ' ';
        out_ += binary_op_token(b.op);
        out_ += ' ';
        expr(*b.rhs, right_min, tail, indent);
    }
};

}  // namespace

std::string format_expr(const Expr& e) {
    std::string out;
    Printer(out).expr(e, kOr, true, 0);
    return out;
}

std::string format_contract(const Contract& contract) {
    std::string out;
    Printer p(out);
    out += "contract ";
    p.string_literal(contract.id);
    out += " version ";
    out += std::to_string(contract.version);
    out += " effective ";
    out += format_date(contract.effective_from);
    out += " {\n";
    for (const auto& s : contract.sources) {
        out += "  source ";
        out += s.name;
        out += '(';
        bool first = true;
        for (const auto& [col, kind] : s.columns) {
            if (!first) out += ", ";
            first = false;
            out += col;
            out += ": ";
            out += kind_name(kind);
        }
        out += ") from ";
        p.string_literal(s.location);
        out += '\n';
    }
    for (const auto& n : contract.norms) {
        out += "  norm ";
        out += n.id;
        out += ' ';
        p.string_literal(n.title);
        out += " {\n";
        out += "    on ";
        p.pattern(n.trigger);
        out += '\n';
        if (n.when_clause) {
            out += "    when ";
            p.expr(*n.when_clause, kOr, true, 2);
            out += '\n';
        }
        out += "    require ";
        p.expr(*n.require_clause, kOr, true, 2);
        out += '\n';
        out += "  }\n";
    }
    out += "}\n";
    return out;
}

}  // namespace contestable
