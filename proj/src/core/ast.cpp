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

#include "ast.hpp"

namespace contestable {

namespace {

bool expr_ptr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return expr_equal(*a, *b);
}

}  // namespace

bool pattern_equal(const EventPattern& a, const EventPattern& b) {
    return a.event_type == b.event_type && a.binders == b.binders;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, NumberLit>) {
                return lhs.value == rhs.value;
            } else if constexpr (std::is_same_v<T, StringLit>) {
                return lhs.value == rhs.value;
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return lhs.value == rhs.value;
            } else if constexpr (std::is_same_v<T, DateLit>) {
                return lhs.value == rhs.value;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                return lhs.name == rhs.name;
            } else if constexpr (std::is_same_v<T, Binary>) {
                return lhs.op == rhs.op && expr_ptr_equal(lhs.lhs, rhs.lhs) &&
                       expr_ptr_equal(lhs.rhs, rhs.rhs);
            } else if constexpr (std::is_same_v<T, Not>) {
                return expr_ptr_equal(lhs.operand, rhs.operand);
            } else if constexpr (std::is_same_v<T, Abs>) {
                return expr_ptr_equal(lhs.operand, rhs.operand);
            } else if constexpr (std::is_same_v<T, SameDay>) {
                return expr_ptr_equal(lhs.lhs, rhs.lhs) && expr_ptr_equal(lhs.rhs, rhs.rhs);
            } else if constexpr (std::is_same_v<T, Let>) {
                return lhs.name == rhs.name && expr_ptr_equal(lhs.value, rhs.value) &&
                       expr_ptr_equal(lhs.body, rhs.body);
            } else if constexpr (std::is_same_v<T, Aggregate>) {
                return lhs.source == rhs.source && lhs.column == rhs.column &&
                       expr_ptr_equal(lhs.where, rhs.where);
            } else {
                static_assert(std::is_same_v<T, ExistsBefore>);
                return pattern_equal(lhs.pattern, rhs.pattern) &&
                       expr_ptr_equal(lhs.where, rhs.where);
            }
        },
        a.node);
}

bool norm_equal(const NormDef& a, const NormDef& b) {
    return a.id == b.id && a.title == b.title && pattern_equal(a.trigger, b.trigger) &&
           expr_ptr_equal(a.when_clause, b.when_clause) &&
           expr_ptr_equal(a.require_clause, b.require_clause);
}

bool contract_equal(const Contract& a, const Contract& b) {
    if (a.id != b.id || a.version != b.version || a.effective_from != b.effective_from) return false;
    if (a.sources.size() != b.sources.size() || a.norms.size() != b.norms.size()) return false;
    for (std::size_t i = 0; i < a.sources.size(); ++i) {
        const auto& s = a.sources[i];
        const auto& t = b.sources[i];
        if (s.name != t.name || s.columns != t.columns || s.location != t.location) return false;
    }
    for (std::size_t i = 0; i < a.norms.size(); ++i) {
        if (!norm_equal(a.norms[i], b.norms[i])) return false;
    }
    return true;
}

ExprPtr clone_expr(const Expr& e) {
    return std::visit(
        [](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit> || std::is_same_v<T, StringLit> ||
                          std::is_same_v<T, BoolLit> || std::is_same_v<T, DateLit> ||
                          std::is_same_v<T, VarRef>) {
                return make_expr<T>(n);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return make_expr<Binary>(n.op, clone_expr(*n.lhs), clone_expr(*n.rhs));
            } else if constexpr (std::is_same_v<T, Not>) {
                return make_expr<Not>(clone_expr(*n.operand));
            } else if constexpr (std::is_same_v<T, Abs>) {
                return make_expr<Abs>(clone_expr(*n.operand));
            } else if constexpr (std::is_same_v<T, SameDay>) {
                return make_expr<SameDay>(clone_expr(*n.lhs), clone_expr(*n.rhs));
            } else if constexpr (std::is_same_v<T, Let>) {
                return make_expr<Let>(n.name, clone_expr(*n.value), clone_expr(*n.body));
            } else if constexpr (std::is_same_v<T, Aggregate>) {
                return make_expr<Aggregate>(n.source, n.column, clone_expr(*n.where));
            } else {
                static_assert(std::is_same_v<T, ExistsBefore>);
                return make_expr<ExistsBefore>(n.pattern, n.where ? clone_expr(*n.where) : nullptr);
            }
        },
        e.node);
}

const char* binary_op_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
    }
    return "?";
}

}  // namespace contestable
