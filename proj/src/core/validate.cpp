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

#include "validate.hpp"

#include <map>
#include <optional>
#include <set>

namespace contestable {

namespace {

// Kinds are checked gradually: trigger-bound variables have unknown kind
// until runtime, so Any unifies with everything.
enum class TypeKind { Number, String, Date, Bool, Any };

TypeKind from_scalar_kind(ScalarKind k) {
    switch (k) {
        case ScalarKind::Number: return TypeKind::Number;
        case ScalarKind::String: return TypeKind::String;
        case ScalarKind::Date: return TypeKind::Date;
        case ScalarKind::Bool: return TypeKind::Bool;
    }
    return TypeKind::Any;
}

const char* type_name(TypeKind k) {
    switch (k) {
        case TypeKind::Number: return "number";
        case TypeKind::String: return "string";
        case TypeKind::Date: return "date";
        case TypeKind::Bool: return "boolean";
        case TypeKind::Any: return "any";
    }
    return "?";
}

class Checker {
public:
    Checker(const Contract& contract, std::vector<Diagnostic>& out) : contract_(contract), out_(out) {}

    void check_norm(const NormDef& norm) {
        norm_id_ = norm.id;
        std::set<std::string> attrs;
        std::set<std::string> vars;
        for (const auto& [attr, var] : norm.trigger.binders) {
            if (!attrs.insert(attr).second) {
                report("trigger binds attribute '" + attr + "' more than once");
            }
            if (!vars.insert(var).second) {
                report("trigger binds variable '" + var + "' more than once");
            }
        }
        scope_.clear();
        for (const auto& [attr, var] : norm.trigger.binders) {
            scope_.emplace_back(var, TypeKind::Any);
        }
        if (norm.when_clause) {
            require_boolean(check_expr(*norm.when_clause), "when clause");
        }
        require_boolean(check_expr(*norm.require_clause), "require clause");
    }

private:
    const Contract& contract_;
    std::vector<Diagnostic>& out_;
    std::string norm_id_;
    std::vector<std::pair<std::string, TypeKind>> scope_;

    void report(std::string msg) { out_.push_back({norm_id_, std::move(msg)}); }

    void require_boolean(TypeKind t, const std::string& what) {
        if (t != TypeKind::Bool && t != TypeKind::Any) {
            report(what + " has kind " + type_name(t) + ", expected boolean");
        }
    }

    std::optional<TypeKind> lookup(const std::string& name) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
            if (it->first == name) return it->second;
        }
        return std::nullopt;
    }

    const SourceDecl* find_source(const std::string& name) const {
        for (const auto& s : contract_.sources) {
            if (s.name == name) return &s;
        }
        return nullptr;
    }

    TypeKind numeric_operand(TypeKind t, const char* op) {
        if (t != TypeKind::Number && t != TypeKind::Any) {
            report(std::string("operand of '") + op + "' has kind " + type_name(t) +
                   ", expected number");
        }
        return TypeKind::Number;
    }

    TypeKind check_expr(const Expr& e) {
        return std::visit(
            [&](const auto& n) -> TypeKind {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NumberLit>) {
                    return TypeKind::Number;
                } else if constexpr (std::is_same_v<T, StringLit>) {
                    return TypeKind::String;
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    return TypeKind::Bool;
                } else if constexpr (std::is_same_v<T, DateLit>) {
                    return TypeKind::Date;
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    if (auto t = lookup(n.name)) return *t;
                    report("unbound variable '" + n.name + "'");
                    return TypeKind::Any;
                } else if constexpr (std::is_same_v<T, Binary>) {
                    return check_binary(n);
                } else if constexpr (std::is_same_v<T, Not>) {
                    require_boolean(check_expr(*n.operand), "operand of 'not'");
                    return TypeKind::Bool;
                } else if constexpr (std::is_same_v<T, Abs>) {
                    numeric_operand(check_expr(*n.operand), "abs");
                    return TypeKind::Number;
                } else if constexpr (std::is_same_v<T, SameDay>) {
                    for (const Expr* side : {n.lhs.get(), n.rhs.get()}) {
                        TypeKind t = check_expr(*side);
                        if (t != TypeKind::Date && t != TypeKind::Any) {
                            report("argument of same_day has kind " + std::string(type_name(t)) +
                                   ", expected date");
                        }
                    }
                    return TypeKind::Bool;
                } else if constexpr (std::is_same_v<T, Let>) {
                    TypeKind bound = check_expr(*n.value);
                    scope_.emplace_back(n.name, bound);
                    TypeKind body = check_expr(*n.body);
                    scope_.pop_back();
                    return body;
                } else if constexpr (std::is_same_v<T, Aggregate>) {
                    return check_aggregate(n);
                } else {
                    static_assert(std::is_same_v<T, ExistsBefore>);
                    return check_exists(n);
                }
            },
            e.node);
    }

    TypeKind check_binary(const Binary& b) {
        TypeKind lhs = check_expr(*b.lhs);
        TypeKind rhs = check_expr(*b.rhs);
        switch (b.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::Div:
                numeric_operand(lhs, binary_op_token(b.op));
                numeric_operand(rhs, binary_op_token(b.op));
                return TypeKind::Number;
            case BinaryOp::Eq:
            case BinaryOp::Ne:
                if (lhs != TypeKind::Any && rhs != TypeKind::Any && lhs != rhs) {
                    report(std::string("'") + binary_op_token(b.op) + "' compares " +
                           type_name(lhs) + " with " + type_name(rhs));
                }
                return TypeKind::Bool;
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge:
                for (TypeKind t : {lhs, rhs}) {
                    if (t != TypeKind::Number && t != TypeKind::Date && t != TypeKind::Any) {
                        report(std::string("operand of '") + binary_op_token(b.op) +
                               "' has kind " + type_name(t) + ", expected number or date");
                    }
                }
                if (lhs != TypeKind::Any && rhs != TypeKind::Any && lhs != rhs) {
                    report(std::string("'") + binary_op_token(b.op) + "' compares " +
                           type_name(lhs) + " with " + type_name(rhs));
                }
                return TypeKind::Bool;
            case BinaryOp::And:
            case BinaryOp::Or:
                require_boolean(lhs, std::string("left operand of '") + binary_op_token(b.op) + "'");
                require_boolean(rhs, std::string("right operand of '") + binary_op_token(b.op) + "'");
                return TypeKind::Bool;
        }
        return TypeKind::Any;
    }

    TypeKind check_aggregate(const Aggregate& agg) {
        const SourceDecl* src = find_source(agg.source);
        if (!src) {
            report("aggregate references undeclared source '" + agg.source + "'");
            return TypeKind::Number;
        }
        bool column_found = false;
        for (const auto& [col, kind] : src->columns) {
            if (col == agg.column) {
                column_found = true;
                if (kind != ScalarKind::Number) {
                    report("avg over column '" + agg.source + "." + agg.column + "' of kind " +
                           kind_name(kind) + ", expected number");
                }
            }
        }
        if (!column_found) {
            report("source '" + agg.source + "' has no column '" + agg.column + "'");
        }
        std::size_t mark = scope_.size();
        for (const auto& [col, kind] : src->columns) {
            scope_.emplace_back(col, from_scalar_kind(kind));
        }
        require_boolean(check_expr(*agg.where), "aggregate predicate");
        scope_.resize(mark);
        return TypeKind::Number;
    }

    TypeKind check_exists(const ExistsBefore& ex) {
        std::set<std::string> attrs;
        std::set<std::string> vars;
        for (const auto& [attr, var] : ex.pattern.binders) {
            if (!attrs.insert(attr).second) {
                report("existential pattern binds attribute '" + attr + "' more than once");
            }
            if (!vars.insert(var).second) {
                report("existential pattern binds variable '" + var + "' more than once");
            }
        }
        if (ex.where) {
            std::size_t mark = scope_.size();
            for (const auto& [attr, var] : ex.pattern.binders) {
                scope_.emplace_back(var, TypeKind::Any);
            }
            require_boolean(check_expr(*ex.where), "existential predicate");
            scope_.resize(mark);
        }
        return TypeKind::Bool;
    }
};

}  // namespace

std::vector<Diagnostic> validate_contract(const Contract& contract) {
    std::vector<Diagnostic> out;
    if (contract.version < 1) {
        out.push_back({"", "contract version must be at least 1, got " +
                               std::to_string(contract.version)});
    }
    std::set<std::string> source_names;
    for (const auto& s : contract.sources) {
        if (!source_names.insert(s.name).second) {
            out.push_back({"", "duplicate source name '" + s.name + "'"});
        }
        std::set<std::string> cols;
        for (const auto& [col, kind] : s.columns) {
            if (!cols.insert(col).second) {
                out.push_back({"", "source '" + s.name + "' declares column '" + col +
                                       "' more than once"});
            }
        }
    }
    std::set<std::string> norm_ids;
    for (const auto& n : contract.norms) {
        if (!norm_ids.insert(n.id).second) {
            out.push_back({n.id, "duplicate norm id '" + n.id + "'"});
        }
    }
    Checker checker(contract, out);
    for (const auto& n : contract.norms) {
        checker.check_norm(n);
    }
    return out;
}

std::string diagnostic_to_string(const Diagnostic& d) {
    if (d.norm_id.empty()) return d.message;
    return "norm " + d.norm_id + ": " + d.message;
}

}  // namespace contestable
