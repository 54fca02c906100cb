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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ast.hpp"
#include "errors.hpp"
#include "history.hpp"
#include "trace.hpp"

namespace contestable {

/// Outcome of one activation of one norm by one trigger event.
enum class Status { Fulfilled, Violated, Undetermined, Inapplicable };

const char* status_name(Status s);
std::optional<Status> status_from_name(std::string_view name);

/// Missing data (empty aggregate, absent source, division by zero, a
/// runtime kind clash) yields Undetermined rather than a verdict, and it
/// propagates strictly: no operator turns an Undetermined operand into a
/// determined result, including `and`/`or`.
struct Undetermined {
    std::string reason;
};

using Value = std::variant<Scalar, Undetermined>;

inline bool is_undetermined(const Value& v) { return v.index() == 1; }

struct NormInstanceResult {
    std::string norm_id;
    std::uint64_t trigger_seq = 0;
    std::map<std::string, Scalar> bindings;
    Status status = Status::Undetermined;
    std::vector<std::uint64_t> evidence_seqs;  // sorted; always includes trigger_seq
    std::map<std::string, Scalar> computed;    // let-bound and aggregate values by name
    std::string diagnostic;                    // non-empty iff Undetermined

    bool operator==(const NormInstanceResult&) const = default;
};

/// Environment of variable bindings; later entries shadow earlier ones.
using Env = std::vector<std::pair<std::string, Scalar>>;

/// Returns the trigger bindings iff the event type matches and every
/// binder attribute is present. Returns nullopt on a type mismatch.
/// Throws MissingAttribute when the type matches but a binder attribute
/// is absent (a trace/contract mismatch, not a norm outcome).
std::optional<std::map<std::string, Scalar>> match_trigger(const NormDef& norm, const Event& event);

/// Evaluation context: the strict prefix an `exists … before trigger`
/// ranges over is every event with seq < trigger_seq within `prefix`.
struct EvalContext {
    std::span<const Event> prefix;
    const SourceMap* sources = nullptr;
    std::uint64_t trigger_seq = 0;
    std::map<std::string, Scalar>* computed = nullptr;  // optional sink
    std::vector<std::uint64_t>* witnesses = nullptr;    // optional sink
};

/// Strict bottom-up evaluation. Total: every failure mode folds into
/// Undetermined with a reason.
Value eval_expr(const Expr& expr, Env& env, const EvalContext& ctx);

/// Evaluate one activation. `prefix` must be the inclusive prefix ending
/// at the trigger event (slice_until semantics).
NormInstanceResult evaluate_norm_instance(const NormDef& norm, const Event& event,
                                          std::span<const Event> prefix, const SourceMap& sources);

/// Batch reference semantics: for each event in seq order and each norm
/// in declaration order, every matching trigger yields one instance
/// evaluated over the inclusive prefix. This is the oracle the streaming
/// monitor must agree with. Verifies trace integrity first.
std::vector<NormInstanceResult> evaluate_trace(const Contract& contract, const Trace& trace,
                                               const SourceMap& sources);

/// Thrown by evaluate_trace when the trace fails verification.
class IntegrityException : public Error {
public:
    explicit IntegrityException(const IntegrityResult& result)
        : Error("trace integrity: " + result.to_string()), result(result) {}

    IntegrityResult result;
};

}  // namespace contestable
