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

#include <iosfwd>
#include <string>
#include <vector>

#include "history.hpp"
#include "scalar.hpp"
#include "trace.hpp"

namespace contestable {

/// Tier-pricing scenarios. Compliant follows the open-in-order policy and
/// keeps posted prices at the preset tier prices. TierSkip opens exactly
/// one tier while the previous one still has seats. PriceGouge emits a
/// competitor_bankruptcy event mid-window and multiplies every later
/// posted price by gouge_factor, switching algo_version from policy-v1
/// to policy-v2 at that event.
enum class Scenario { Compliant, TierSkip, PriceGouge };

const char* scenario_name(Scenario s);

struct TierSpec {
    std::int64_t capacity = 0;
    double base_price = 0;

    bool operator==(const TierSpec&) const = default;
};

struct SimConfig {
    std::string route = "TXL-MUC";
    std::string flight = "LH100";
    Date departure_date{2017, 11, 20};
    std::vector<TierSpec> tiers;          // strictly increasing base_price
    std::int64_t sale_days = 10;          // window ends the day before departure
    std::int64_t arrivals_min = 3;        // seeded buyer arrivals per day
    std::int64_t arrivals_max = 8;
    Scenario scenario = Scenario::Compliant;
    double gouge_factor = 1.35;
    std::int64_t bankruptcy_day = -1;     // day index in window; -1 = middle
    std::int64_t skip_at_remaining = 2;   // TierSkip: open next tier at this residue
    std::int64_t history_years = 5;
    std::uint64_t seed = 42;
    std::string competitor = "Air Berlin";
};

/// Plain key-value config: one `key = value` per line, `#` comments.
SimConfig parse_sim_config(std::istream& in);
SimConfig parse_sim_config_file(const std::string& path);

/// Throws ConfigError unless all SimConfig invariants hold.
void validate_sim_config(const SimConfig& config);

/// Deterministic trace of the configured scenario. Depends only on the
/// config (including the seed), never on the history table.
Trace simulate(const SimConfig& config);

/// Reference data the contract's aggregate ranges over: one row per
/// (previous year, tier, window date), priced at the tier base price
/// times seeded noise in [0.95, 1.05]. Dates that do not exist in an
/// earlier year (Feb 29) are skipped. For PriceGouge the noise stream is
/// re-derived until at least one emitted gouged price deviates from its
/// history mean by more than 0.30, so the scenario provably violates.
HistoryTable gen_history(const SimConfig& config);

}  // namespace contestable
