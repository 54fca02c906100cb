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

#include "contest.hpp"

#include <cmath>

#include "errors.hpp"
#include "json_out.hpp"

namespace contestable {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Compliant: return "Compliant";
        case Verdict::NonCompliant: return "NonCompliant";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict derive_verdict(const std::vector<NormInstanceResult>& results) {
    bool undetermined = false;
    for (const auto& r : results) {
        if (r.status == Status::Violated) return Verdict::NonCompliant;
        if (r.status == Status::Undetermined) undetermined = true;
    }
    return undetermined ? Verdict::Inconclusive : Verdict::Compliant;
}

ContestReport contest_decision(const Contract& contract, const Trace& trace,
                               const SourceMap& sources, std::uint64_t decision_seq,
                               ScopeMode scope_mode) {
    if (decision_seq >= trace.events.size()) {
        throw SeqOutOfRange("decision seq " + std::to_string(decision_seq) +
                            " outside trace of length " + std::to_string(trace.events.size()));
    }
    const Event& decision = trace.events[decision_seq];
    if (decision.contract_version != contract.version) {
        throw VersionMismatch("decision at seq " + std::to_string(decision_seq) +
                              " was taken under contract version " +
                              std::to_string(decision.contract_version) +
                              ", contest supplied version " + std::to_string(contract.version));
    }

    ContestReport report;
    report.decision_seq = decision_seq;
    report.contract_id = contract.id;
    report.contract_version = contract.version;
    report.algo_version_at_decision = decision.algo_version;
    report.history_content_hash = history_content_hash(sources);

    IntegrityResult integrity = verify_integrity(trace);
    if (!integrity.ok) {
        // A broken record proves nothing about the decision, only about
        // record keeping; the report says which.
        report.trace_integrity = {false, integrity.seq, integrity_kind_name(integrity.kind)};
        report.verdict = Verdict::Inconclusive;
        return report;
    }

    if (scope_mode == ScopeMode::ScopeKey) {
        auto anchor = decision.attrs.find(trace.header.scope_key_attr);
        if (anchor == decision.attrs.end()) {
            throw ScopeError("decision event at seq " + std::to_string(decision_seq) +
                             " lacks scope key attribute '" + trace.header.scope_key_attr + "'");
        }
        for (std::uint64_t s = 0; s <= decision_seq; ++s) {
            auto it = trace.events[s].attrs.find(trace.header.scope_key_attr);
            if (it != trace.events[s].attrs.end() && it->second == anchor->second) {
                report.scope_seqs.push_back(s);
            }
        }
    } else {
        for (std::uint64_t s = 0; s <= decision_seq; ++s) {
            report.scope_seqs.push_back(s);
        }
    }

    // Trigger events are restricted to the scope; evidence may cite any
    // event in the decision prefix.
    std::span<const Event> events{trace.events};
    for (std::uint64_t s : report.scope_seqs) {
        const Event& event = trace.events[s];
        for (const NormDef& norm : contract.norms) {
            if (match_trigger(norm, event)) {
                report.results.push_back(
                    evaluate_norm_instance(norm, event, events.first(s + 1), sources));
            }
        }
    }
    report.verdict = derive_verdict(report.results);
    return report;
}

ContestReport unreadable_trace_report(const Contract& contract, const SourceMap& sources,
                                      std::uint64_t decision_seq, std::size_t bad_line) {
    ContestReport report;
    report.decision_seq = decision_seq;
    report.contract_id = contract.id;
    report.contract_version = contract.version;
    report.trace_integrity = {false, bad_line, "format-error"};
    report.verdict = Verdict::Inconclusive;
    report.history_content_hash = history_content_hash(sources);
    return report;
}

std::string render_report(const ContestReport& report) {
    ojson out;
    out["decision_seq"] = report.decision_seq;
    out["contract_id"] = report.contract_id;
    out["contract_version"] = report.contract_version;
    out["algo_version_at_decision"] = report.algo_version_at_decision;
    ojson integrity;
    integrity["ok"] = report.trace_integrity.ok;
    if (!report.trace_integrity.ok) {
        integrity["seq"] = report.trace_integrity.seq;
        integrity["kind"] = report.trace_integrity.kind;
    }
    out["trace_integrity"] = std::move(integrity);
    out["scope_seqs"] = report.scope_seqs;
    ojson results = ojson::array();
    for (const auto& r : report.results) {
        results.push_back(result_to_json(r));
    }
    out["results"] = std::move(results);
    out["verdict"] = verdict_name(report.verdict);
    out["history_content_hash"] = to_hex(report.history_content_hash);
    return out.dump(2) + "\n";
}

ContestReport load_report(const std::string& json_text) {
    nlohmann::json v = nlohmann::json::parse(json_text, nullptr, false);
    if (v.is_discarded() || !v.is_object()) {
        throw Error("report is not a JSON object");
    }
    ContestReport report;
    report.decision_seq = v.at("decision_seq").get<std::uint64_t>();
    report.contract_id = v.at("contract_id").get<std::string>();
    report.contract_version = v.at("contract_version").get<std::int64_t>();
    report.algo_version_at_decision = v.at("algo_version_at_decision").get<std::string>();
    const auto& integrity = v.at("trace_integrity");
    report.trace_integrity.ok = integrity.at("ok").get<bool>();
    if (!report.trace_integrity.ok) {
        report.trace_integrity.seq = integrity.at("seq").get<std::uint64_t>();
        report.trace_integrity.kind = integrity.at("kind").get<std::string>();
    }
    report.scope_seqs = v.at("scope_seqs").get<std::vector<std::uint64_t>>();
    for (const auto& r : v.at("results")) {
        report.results.push_back(result_from_json(r));
    }
    std::string verdict = v.at("verdict").get<std::string>();
    bool known = false;
    for (Verdict w : {Verdict::Compliant, Verdict::NonCompliant, Verdict::Inconclusive}) {
        if (verdict == verdict_name(w)) {
            report.verdict = w;
            known = true;
        }
    }
    if (!known) throw Error("unknown verdict '" + verdict + "'");
    auto hash = from_hex(v.at("history_content_hash").get<std::string>());
    if (!hash) throw Error("history_content_hash is not 64 lowercase hex digits");
    report.history_content_hash = *hash;

    Verdict expected = report.trace_integrity.ok ? derive_verdict(report.results)
                                                 : Verdict::Inconclusive;
    if (report.verdict != expected) {
        throw Error(std::string("report verdict '") + verdict_name(report.verdict) +
                    "' does not match its results, expected '" + verdict_name(expected) + "'");
    }
    return report;
}

namespace {

std::optional<std::int64_t> attr_int(const Event& e, const char* name) {
    auto it = e.attrs.find(name);
    if (it == e.attrs.end() || scalar_kind(it->second) != ScalarKind::Number) return std::nullopt;
    return std::llround(std::get<double>(it->second));
}

std::optional<double> attr_number(const Event& e, const char* name) {
    auto it = e.attrs.find(name);
    if (it == e.attrs.end() || scalar_kind(it->second) != ScalarKind::Number) return std::nullopt;
    return std::get<double>(it->second);
}

std::optional<std::string> attr_string(const Event& e, const char* name) {
    auto it = e.attrs.find(name);
    if (it == e.attrs.end() || scalar_kind(it->second) != ScalarKind::String) return std::nullopt;
    return std::get<std::string>(it->second);
}

}  // namespace

WorldState reconstruct_state(const Trace& trace, std::uint64_t at_seq) {
    if (at_seq >= trace.events.size()) {
        throw SeqOutOfRange("seq " + std::to_string(at_seq) + " outside trace of length " +
                            std::to_string(trace.events.size()));
    }
    WorldState state;
    const std::string& key_attr = trace.header.scope_key_attr;
    for (std::uint64_t s = 0; s <= at_seq; ++s) {
        const Event& e = trace.events[s];
        if (e.event_type == "competitor_bankruptcy") {
            if (auto who = attr_string(e, "competitor")) {
                state.bankrupt_competitors.push_back(*who);
            }
            continue;
        }
        if (e.event_type != "tier_opened" && e.event_type != "seat_sold" &&
            e.event_type != "tier_sold_out" && e.event_type != "price_set") {
            continue;  // unknown event types fold as no-ops
        }
        auto key_it = e.attrs.find(key_attr);
        if (key_it == e.attrs.end() || scalar_kind(key_it->second) != ScalarKind::String) continue;
        auto tier = attr_int(e, "tier");
        if (!tier) continue;
        TierState& t = state.keys[std::get<std::string>(key_it->second)][*tier];
        if (e.event_type == "tier_opened") {
            t.open = true;
            if (auto cap = attr_int(e, "capacity")) {
                t.capacity = *cap;
                t.remaining = *cap;
            }
        } else if (e.event_type == "seat_sold") {
            if (t.remaining > 0) {
                --t.remaining;
                if (t.remaining == 0) {
                    t.sold_out = true;
                    t.open = false;
                }
            }
        } else if (e.event_type == "tier_sold_out") {
            t.sold_out = true;
            t.open = false;
        } else if (e.event_type == "price_set") {
            if (auto price = attr_number(e, "price")) {
                t.price = *price;
                t.price_known = true;
            }
        }
    }
    return state;
}

std::string world_state_to_json(const WorldState& state) {
    ojson out;
    ojson keys = ojson::object();
    for (const auto& [key, tiers] : state.keys) {
        ojson per_tier = ojson::object();
        for (const auto& [tier, t] : tiers) {
            ojson ts;
            ts["open"] = t.open;
            ts["sold_out"] = t.sold_out;
            if (t.capacity >= 0) {
                ts["capacity"] = t.capacity;
                ts["remaining"] = t.remaining;
            }
            if (t.price_known) ts["price"] = t.price;
            per_tier[std::to_string(tier)] = std::move(ts);
        }
        keys[key] = std::move(per_tier);
    }
    out["keys"] = std::move(keys);
    out["bankrupt_competitors"] = state.bankrupt_competitors;
    return out.dump(2) + "\n";
}

}  // namespace contestable
