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

#include "json_out.hpp"

#include "errors.hpp"

namespace contestable {

ojson scalar_to_json(const Scalar& s) {
    switch (scalar_kind(s)) {
        case ScalarKind::Number: return std::get<double>(s);
        case ScalarKind::String: return std::get<std::string>(s);
        case ScalarKind::Date: return format_date(std::get<Date>(s));
        case ScalarKind::Bool: return std::get<bool>(s);
    }
    return nullptr;
}

Scalar scalar_from_report_json(const nlohmann::json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (auto d = parse_date(s)) return *d;
        return s;
    }
    throw Error("report scalar is not a number, string, date, or boolean");
}

ojson result_to_json(const NormInstanceResult& r) {
    ojson out;
    out["norm_id"] = r.norm_id;
    out["trigger_seq"] = r.trigger_seq;
    ojson bindings = ojson::object();
    for (const auto& [name, value] : r.bindings) {
        bindings[name] = scalar_to_json(value);
    }
    out["bindings"] = std::move(bindings);
    out["status"] = status_name(r.status);
    out["evidence_seqs"] = r.evidence_seqs;
    ojson computed = ojson::object();
    for (const auto& [name, value] : r.computed) {
        computed[name] = scalar_to_json(value);
    }
    out["computed"] = std::move(computed);
    if (r.diagnostic.empty()) {
        out["diagnostic"] = nullptr;
    } else {
        out["diagnostic"] = r.diagnostic;
    }
    return out;
}

NormInstanceResult result_from_json(const nlohmann::json& v) {
    NormInstanceResult r;
    r.norm_id = v.at("norm_id").get<std::string>();
    r.trigger_seq = v.at("trigger_seq").get<std::uint64_t>();
    for (auto it = v.at("bindings").begin(); it != v.at("bindings").end(); ++it) {
        r.bindings[it.key()] = scalar_from_report_json(it.value());
    }
    auto status = status_from_name(v.at("status").get<std::string>());
    if (!status) throw Error("unknown status '" + v.at("status").get<std::string>() + "'");
    r.status = *status;
    r.evidence_seqs = v.at("evidence_seqs").get<std::vector<std::uint64_t>>();
    for (auto it = v.at("computed").begin(); it != v.at("computed").end(); ++it) {
        r.computed[it.key()] = scalar_from_report_json(it.value());
    }
    if (v.contains("diagnostic") && !v.at("diagnostic").is_null()) {
        r.diagnostic = v.at("diagnostic").get<std::string>();
    }
    return r;
}

}  // namespace contestable
