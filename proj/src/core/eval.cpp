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

#include "eval.hpp"

#include <algorithm>
#include <cmath>

namespace contestable {

const char* status_name(Status s) {
    switch (s) {
        case Status::Fulfilled: return "Fulfilled";
        case Status::Violated: return "Violated";
        case Status::Undetermined: return "Undetermined";
        case Status::Inapplicable: return "Inapplicable";
    }
    return "?";
}

std::optional<Status> status_from_name(std::string_view name) {
    if (name == "Fulfilled") return Status::Fulfilled;
    if (name == "Violated") return Status::Violated;
    if (name == "Undetermined") return Status::Undetermined;
    if (name == "Inapplicable") return Status::Inapplicable;
    return std::nullopt;
}

namespace {

Value undet(std::string reason) {
    return Undetermined{std::move(reason)};
}

std::optional<Scalar> lookup(const Env& env, const std::string& name) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == name) return it->second;
    }
    return std::nullopt;
}

std::string kind_mismatch(const char* what, const Scalar& got, const char* want) {
    return std::string(what) + " got " + kind_name(scalar_kind(got)) + ", expected " + want;
}

// Pattern matching shared by triggers and existentials: the event type
// must match and every binder attribute must be present.
std::optional<std::map<std::string, Scalar>> match_pattern(const EventPattern& pattern,
                                                           const Event& event,
                                                           bool missing_attr_throws) {
    if (event.event_type != pattern.event_type) return std::nullopt;
    std::map<std::string, Scalar> bindings;
    for (const auto& [attr, var] : pattern.binders) {
        auto it = event.attrs.find(attr);
        if (it == event.attrs.end()) {
            if (missing_attr_throws) {
                throw MissingAttribute("event '" + pattern.event_type + "' at seq " +
                                       std::to_string(event.seq) + " lacks attribute '" + attr +
                                       "' bound by the trigger");
            }
            return std::nullopt;
        }
        bindings[var] = it->second;
    }
    return bindings;
}

class Evaluator {
public:
    Evaluator(const EvalContext& ctx) : ctx_(ctx) {}

    Value eval(const Expr& e, Env& env) {
        return std::visit(
            [&](const auto& n) -> Value {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NumberLit>) {
                    return Scalar{n.value};
                } else if constexpr (std::is_same_v<T, StringLit>) {
                    return Scalar{n.value};
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    return Scalar{n.value};
                } else if constexpr (std::is_same_v<T, DateLit>) {
                    return Scalar{n.value};
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    if (auto v = lookup(env, n.name)) return *v;
                    return undet("unbound variable '" + n.name + "'");
                } else if constexpr (std::is_same_v<T, Binary>) {
                    return binary(n, env);
                } else if constexpr (std::is_same_v<T, Not>) {
                    Value v = eval(*n.operand, env);
                    if (is_undetermined(v)) return v;
                    const Scalar& s = std::get<Scalar>(v);
                    if (scalar_kind(s) != ScalarKind::Bool) {
                        return undet(kind_mismatch("operand of 'not'", s, "boolean"));
                    }
                    return Scalar{!std::get<bool>(s)};
                } else if constexpr (std::is_same_v<T, Abs>) {
                    Value v = eval(*n.operand, env);
                    if (is_undetermined(v)) return v;
                    const Scalar& s = std::get<Scalar>(v);
                    if (scalar_kind(s) != ScalarKind::Number) {
                        return undet(kind_mismatch("operand of abs", s, "number"));
                    }
                    return Scalar{std::fabs(std::get<double>(s))};
                } else if constexpr (std::is_same_v<T, SameDay>) {
                    Value a = eval(*n.lhs, env);
                    Value b = eval(*n.rhs, env);
                    if (is_undetermined(a)) return a;
                    if (is_undetermined(b)) return b;
                    const Scalar& sa = std::get<Scalar>(a);
                    const Scalar& sb = std::get<Scalar>(b);
                    if (scalar_kind(sa) != ScalarKind::Date) {
                        return undet(kind_mismatch("argument of same_day", sa, "date"));
                    }
                    if (scalar_kind(sb) != ScalarKind::Date) {
                        return undet(kind_mismatch("argument of same_day", sb, "date"));
                    }
                    const Date& da = std::get<Date>(sa);
                    const Date& db = std::get<Date>(sb);
                    return Scalar{da.month == db.month && da.day == db.day};
                } else if constexpr (std::is_same_v<T, Let>) {
                    Value bound = eval(*n.value, env);
                    if (is_undetermined(bound)) return bound;
                    if (ctx_.computed) (*ctx_.computed)[n.name] = std::get<Scalar>(bound);
                    env.emplace_back(n.name, std::get<Scalar>(bound));
                    Value result = eval(*n.body, env);
                    env.pop_back();
                    return result;
                } else if constexpr (std::is_same_v<T, Aggregate>) {
                    return aggregate(n, env);
                } else {
                    static_assert(std::is_same_v<T, ExistsBefore>);
                    return exists(n, env);
                }
            },
            e.node);
    }

private:
    const EvalContext& ctx_;

    Value binary(const Binary& b, Env& env) {
        Value lv = eval(*b.lhs, env);
        Value rv = eval(*b.rhs, env);
        if (is_undetermined(lv)) return lv;
        if (is_undetermined(rv)) return rv;
        const Scalar& lhs = std::get<Scalar>(lv);
        const Scalar& rhs = std::get<Scalar>(rv);
        switch (b.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::Div: {
                if (scalar_kind(lhs) != ScalarKind::Number) {
                    return undet(kind_mismatch("arithmetic operand", lhs, "number"));
                }
                if (scalar_kind(rhs) != ScalarKind::Number) {
                    return undet(kind_mismatch("arithmetic operand", rhs, "number"));
                }
                double x = std::get<double>(lhs), y = std::get<double>(rhs);
                switch (b.op) {
                    case BinaryOp::Add: return Scalar{x + y};
                    case BinaryOp::Sub: return Scalar{x - y};
                    case BinaryOp::Mul: return Scalar{x * y};
                    default:
                        if (y == 0.0) return undet("division by zero");
                        return Scalar{x / y};
                }
            }
            case BinaryOp::Eq:
            case BinaryOp::Ne: {
                if (scalar_kind(lhs) != scalar_kind(rhs)) {
                    return undet(std::string("'") + binary_op_token(b.op) + "' compares " +
                                 kind_name(scalar_kind(lhs)) + " with " +
                                 kind_name(scalar_kind(rhs)));
                }
                bool eq = lhs == rhs;
                return Scalar{b.op == BinaryOp::Eq ? eq : !eq};
            }
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: {
                int cmp;
                if (scalar_kind(lhs) == ScalarKind::Number &&
                    scalar_kind(rhs) == ScalarKind::Number) {
                    double x = std::get<double>(lhs), y = std::get<double>(rhs);
                    cmp = x < y ? -1 : (x > y ? 1 : 0);
                } else if (scalar_kind(lhs) == ScalarKind::Date &&
                           scalar_kind(rhs) == ScalarKind::Date) {
                    const Date& x = std::get<Date>(lhs);
                    const Date& y = std::get<Date>(rhs);
                    cmp = x < y ? -1 : (y < x ? 1 : 0);
                } else {
                    return undet(std::string("'") + binary_op_token(b.op) + "' compares " +
                                 kind_name(scalar_kind(lhs)) + " with " +
                                 kind_name(scalar_kind(rhs)) +
                                 ", expected two numbers or two dates");
                }
                switch (b.op) {
                    case BinaryOp::Lt: return Scalar{cmp < 0};
                    case BinaryOp::Le: return Scalar{cmp <= 0};
                    case BinaryOp::Gt: return Scalar{cmp > 0};
                    default: return Scalar{cmp >= 0};
                }
            }
            case BinaryOp::And:
            case BinaryOp::Or: {
                if (scalar_kind(lhs) != ScalarKind::Bool) {
                    return undet(kind_mismatch("boolean operand", lhs, "boolean"));
                }
                if (scalar_kind(rhs) != ScalarKind::Bool) {
                    return undet(kind_mismatch("boolean operand", rhs, "boolean"));
                }
                bool x = std::get<bool>(lhs), y = std::get<bool>(rhs);
                return Scalar{b.op == BinaryOp::And ? x && y : x || y};
            }
        }
        return undet("unreachable operator");
    }

    Value aggregate(const Aggregate& agg, Env& env) {
        if (!ctx_.sources) return undet("no data for source '" + agg.source + "'");
        auto it = ctx_.sources->find(agg.source);
        if (it == ctx_.sources->end()) {
            return undet("no data for source '" + agg.source + "'");
        }
        const HistoryTable& table = it->second;
        int value_col = table.column_index(agg.column);
        if (value_col < 0) {
            return undet("source '" + agg.source + "' has no column '" + agg.column + "'");
        }
        double sum = 0;
        std::size_t count = 0;
        std::size_t mark = env.size();
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const auto& row = table.rows[r];
            env.resize(mark);
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                env.emplace_back(table.columns[c], row[c]);
            }
            Value pred = eval(*agg.where, env);
            if (is_undetermined(pred)) {
                env.resize(mark);
                return undet("aggregate predicate undetermined at row " + std::to_string(r + 1) +
                             ": " + std::get<Undetermined>(pred).reason);
            }
            const Scalar& p = std::get<Scalar>(pred);
            if (scalar_kind(p) != ScalarKind::Bool) {
                env.resize(mark);
                return undet(kind_mismatch("aggregate predicate", p, "boolean"));
            }
            if (std::get<bool>(p)) {
                const Scalar& v = row[static_cast<std::size_t>(value_col)];
                if (scalar_kind(v) != ScalarKind::Number) {
                    env.resize(mark);
                    return undet(kind_mismatch("aggregated column value", v, "number"));
                }
                sum += std::get<double>(v);
                ++count;
            }
        }
        env.resize(mark);
        if (count == 0) return undet("empty aggregate");
        double mean = sum / static_cast<double>(count);
        if (ctx_.computed) (*ctx_.computed)[agg.source + "." + agg.column] = Scalar{mean};
        return Scalar{mean};
    }

    Value exists(const ExistsBefore& ex, Env& env) {
        bool found = false;
        std::uint64_t witness = 0;
        std::size_t mark = env.size();
        for (const Event& event : ctx_.prefix) {
            if (event.seq >= ctx_.trigger_seq) break;
            auto bindings = match_pattern(ex.pattern, event, /*missing_attr_throws=*/false);
            if (!bindings) continue;
            bool holds = true;
            if (ex.where) {
                env.resize(mark);
                for (const auto& [var, value] : *bindings) {
                    env.emplace_back(var, value);
                }
                Value pred = eval(*ex.where, env);
                env.resize(mark);
                if (is_undetermined(pred)) {
                    return undet("existential predicate undetermined at seq " +
                                 std::to_string(event.seq) + ": " +
                                 std::get<Undetermined>(pred).reason);
                }
                const Scalar& p = std::get<Scalar>(pred);
                if (scalar_kind(p) != ScalarKind::Bool) {
                    return undet(kind_mismatch("existential predicate", p, "boolean"));
                }
                holds = std::get<bool>(p);
            }
            if (holds && !found) {
                found = true;
                witness = event.seq;  // smallest matching seq, deterministic evidence
            }
        }
        if (found && ctx_.witnesses) ctx_.witnesses->push_back(witness);
        return Scalar{found};
    }
};

}  // namespace

std::optional<std::map<std::string, Scalar>> match_trigger(const NormDef& norm, const Event& event) {
    return match_pattern(norm.trigger, event, /*missing_attr_throws=*/true);
}

Value eval_expr(const Expr& expr, Env& env, const EvalContext& ctx) {
    return Evaluator(ctx).eval(expr, env);
}

NormInstanceResult evaluate_norm_instance(const NormDef& norm, const Event& event,
                                          std::span<const Event> prefix,
                                          const SourceMap& sources) {
    NormInstanceResult result;
    result.norm_id = norm.id;
    result.trigger_seq = event.seq;
    auto bindings = match_trigger(norm, event);
    if (!bindings) {
        // Callers only evaluate matched triggers; a non-match here is a
        // contract/dispatch bug, reported as Undetermined rather than a verdict.
        result.status = Status::Undetermined;
        result.diagnostic = "trigger does not match event type '" + event.event_type + "'";
        result.evidence_seqs.push_back(event.seq);
        return result;
    }
    result.bindings = *bindings;

    std::vector<std::uint64_t> witnesses;
    EvalContext ctx{prefix, &sources, event.seq, &result.computed, &witnesses};
    Env env(result.bindings.begin(), result.bindings.end());

    auto finish = [&](Status status, std::string diagnostic = {}) {
        result.status = status;
        result.diagnostic = std::move(diagnostic);
        witnesses.push_back(event.seq);
        std::sort(witnesses.begin(), witnesses.end());
        witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
        result.evidence_seqs = std::move(witnesses);
    };

    auto clause = [&](const Expr& e, const char* what) -> std::optional<bool> {
        Value v = eval_expr(e, env, ctx);
        if (is_undetermined(v)) {
            finish(Status::Undetermined,
                   std::string(what) + ": " + std::get<Undetermined>(v).reason);
            return std::nullopt;
        }
        const Scalar& s = std::get<Scalar>(v);
        if (scalar_kind(s) != ScalarKind::Bool) {
            finish(Status::Undetermined, std::string(what) + " evaluated to " +
                                             kind_name(scalar_kind(s)) + ", expected boolean");
            return std::nullopt;
        }
        return std::get<bool>(s);
    };

    if (norm.when_clause) {
        auto guard = clause(*norm.when_clause, "when clause");
        if (!guard) return result;
        if (!*guard) {
            finish(Status::Inapplicable);
            return result;
        }
    }
    auto required = clause(*norm.require_clause, "require clause");
    if (!required) return result;
    finish(*required ? Status::Fulfilled : Status::Violated);
    return result;
}

std::vector<NormInstanceResult> evaluate_trace(const Contract& contract, const Trace& trace,
                                               const SourceMap& sources) {
    IntegrityResult integrity = verify_integrity(trace);
    if (!integrity.ok) {
        throw IntegrityException(integrity);
    }
    std::vector<NormInstanceResult> results;
    std::span<const Event> events{trace.events};
    for (std::size_t i = 0; i < events.size(); ++i) {
        std::span<const Event> prefix = events.first(i + 1);
        for (const NormDef& norm : contract.norms) {
            try {
                if (match_trigger(norm, events[i])) {
                    results.push_back(evaluate_norm_instance(norm, events[i], prefix, sources));
                }
            } catch (const MissingAttribute& e) {
                throw MissingAttribute(std::string(e.what()) + " (while evaluating norm '" +
                                       norm.id + "')");
            }
        }
    }
    return results;
}

}  // namespace contestable
