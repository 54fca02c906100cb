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

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "core/errors.hpp"
#include "core/eval.hpp"
#include "core/parser.hpp"
#include "core/sim.hpp"
#include "support.hpp"

using namespace contestable;
using testsupport::fixture_path;
using testsupport::read_file;

namespace {

const Contract& lufthansa() {
    static Contract c = parse_contract(read_file(fixture_path("lufthansa.contract")));
    return c;
}

SimConfig base_config(Scenario s) {
    SimConfig config;
    config.tiers = {{20, 100.0}, {15, 150.0}, {10, 220.0}};
    config.sale_days = 12;
    config.arrivals_min = 4;
    config.arrivals_max = 9;
    config.scenario = s;
    config.bankruptcy_day = 3;
    config.seed = 42;
    return config;
}

std::string trace_bytes(const Trace& t) {
    std::ostringstream out;
    write_trace(t, out);
    return out.str();
}

}  // namespace

TEST_CASE("config files parse into validated configs") {
    std::istringstream in(read_file(fixture_path("gouge.simconfig")));
    SimConfig c = parse_sim_config(in);
    CHECK(c.scenario == Scenario::PriceGouge);
    CHECK(c.route == "TXL-MUC");
    CHECK(c.flight == "LH100");
    CHECK(c.departure_date == Date{2017, 11, 20});
    REQUIRE(c.tiers.size() == 3);
    CHECK(c.tiers[1] == TierSpec{15, 150.0});
    CHECK(c.gouge_factor == 1.35);
    CHECK(c.bankruptcy_day == 3);
    CHECK(c.competitor == "Air Berlin");
    CHECK(c.seed == 42);
}

TEST_CASE("config validation enforces the invariants") {
    SimConfig c = base_config(Scenario::Compliant);

    SUBCASE("decreasing tier prices") {
        c.tiers = {{10, 200.0}, {10, 100.0}};
        CHECK_THROWS_AS(validate_sim_config(c), ConfigError);
    }
    SUBCASE("zero capacity") {
        c.tiers[0].capacity = 0;
        CHECK_THROWS_AS(validate_sim_config(c), ConfigError);
    }
    SUBCASE("no history years") {
        c.history_years = 0;
        CHECK_THROWS_AS(validate_sim_config(c), ConfigError);
    }
    SUBCASE("skip residue outside the first tier") {
        c.scenario = Scenario::TierSkip;
        c.skip_at_remaining = 20;
        CHECK_THROWS_AS(validate_sim_config(c), ConfigError);
    }
    SUBCASE("bankruptcy after the window") {
        c.scenario = Scenario::PriceGouge;
        c.bankruptcy_day = 12;
        CHECK_THROWS_AS(validate_sim_config(c), ConfigError);
    }
    SUBCASE("unknown key") {
        std::istringstream in("scenario = compliant\nbogus = 1\n");
        CHECK_THROWS_AS(parse_sim_config(in), ConfigError);
    }
}

TEST_CASE("same seed, same bytes; different seed, different bytes") {
    SimConfig c = base_config(Scenario::PriceGouge);
    CHECK(trace_bytes(simulate(c)) == trace_bytes(simulate(c)));
    CHECK(history_to_csv(gen_history(c)) == history_to_csv(gen_history(c)));

    SimConfig other = c;
    other.seed = 43;
    CHECK(trace_bytes(simulate(other)) != trace_bytes(simulate(c)));
}

TEST_CASE("compliant traces open tiers in order, each after the previous sells out") {
    Trace t = simulate(base_config(Scenario::Compliant));
    CHECK(verify_integrity(t).ok);
    double last_opened = 0;
    std::set<double> sold_out;
    for (const Event& e : t.events) {
        if (e.event_type == "tier_opened") {
            double tier = std::get<double>(e.attrs.at("tier"));
            CHECK(tier == last_opened + 1);
            if (tier > 1) CHECK(sold_out.count(tier - 1) == 1);
            last_opened = tier;
        } else if (e.event_type == "tier_sold_out") {
            sold_out.insert(std::get<double>(e.attrs.at("tier")));
        }
    }
    CHECK(last_opened == 3);
    CHECK(sold_out.size() == 3);  // demand is sized to exhaust every tier
}

TEST_CASE("history rows: one per year, tier and window date") {
    SimConfig c = base_config(Scenario::Compliant);
    c.sale_days = 1;
    HistoryTable h = gen_history(c);
    CHECK(h.rows.size() == 5 * 3);  // 5 years x 3 tiers x 1 date

    int per_tier = 0;
    for (const auto& row : h.rows) {
        if (std::get<double>(row[2]) == 1.0) ++per_tier;
    }
    CHECK(per_tier == 5);
}

TEST_CASE("history prices stay within the noise band around the base price") {
    SimConfig c = base_config(Scenario::Compliant);
    HistoryTable h = gen_history(c);
    double sum_tier1 = 0;
    int n_tier1 = 0;
    for (const auto& row : h.rows) {
        double tier = std::get<double>(row[2]);
        double price = std::get<double>(row[3]);
        double base = c.tiers[static_cast<std::size_t>(tier) - 1].base_price;
        CHECK(price >= 0.95 * base - 0.005);
        CHECK(price <= 1.05 * base + 0.005);
        if (tier == 1.0) {
            sum_tier1 += price;
            ++n_tier1;
        }
    }
    CHECK(std::fabs(sum_tier1 / n_tier1 - 100.0) < 5.0);
}

TEST_CASE("compliant scenario evaluates with zero Violated and zero Undetermined") {
    SimConfig c = base_config(Scenario::Compliant);
    SourceMap sources{{"history", gen_history(c)}};
    auto results = evaluate_trace(lufthansa(), simulate(c), sources);
    CHECK(!results.empty());
    for (const auto& r : results) {
        CHECK(r.status != Status::Violated);
        CHECK(r.status != Status::Undetermined);
    }
}

TEST_CASE("tier-skip plants exactly one N1 violation") {
    SimConfig c = base_config(Scenario::TierSkip);
    SourceMap sources{{"history", gen_history(c)}};
    Trace t = simulate(c);
    std::size_t violated = 0;
    for (const auto& r : evaluate_trace(lufthansa(), t, sources)) {
        if (r.status == Status::Violated) {
            ++violated;
            CHECK(r.norm_id == "N1");
        }
    }
    CHECK(violated == 1);
}

TEST_CASE("price-gouge violates N2 but never N1, and switches algo_version at the event") {
    SimConfig c = base_config(Scenario::PriceGouge);
    SourceMap sources{{"history", gen_history(c)}};
    Trace t = simulate(c);

    bool before_bankruptcy = true;
    for (const Event& e : t.events) {
        if (e.event_type == "competitor_bankruptcy") before_bankruptcy = false;
        CHECK(e.algo_version == (before_bankruptcy ? "policy-v1" : "policy-v2"));
    }
    REQUIRE(!before_bankruptcy);  // the bankruptcy event exists

    std::size_t violated_n2 = 0;
    for (const auto& r : evaluate_trace(lufthansa(), t, sources)) {
        if (r.norm_id == "N1") CHECK(r.status != Status::Violated);
        if (r.norm_id == "N2" && r.status == Status::Violated) {
            ++violated_n2;
            CHECK(std::get<double>(r.computed.at("deviation")) > 0.30);
        }
    }
    CHECK(violated_n2 >= 1);
}

TEST_CASE("gouged prices multiply the preset price by the gouge factor") {
    SimConfig c = base_config(Scenario::PriceGouge);
    Trace t = simulate(c);
    for (const Event& e : t.events) {
        if (e.event_type != "price_set") continue;
        double tier = std::get<double>(e.attrs.at("tier"));
        double base = c.tiers[static_cast<std::size_t>(tier) - 1].base_price;
        double expected = e.algo_version == "policy-v2"
                              ? std::round(base * c.gouge_factor * 100) / 100
                              : base;
        CHECK(std::get<double>(e.attrs.at("price")) == expected);
    }
}

TEST_CASE("leap-day history rows are skipped in non-leap years") {
    SimConfig c = base_config(Scenario::Compliant);
    c.departure_date = Date{2016, 3, 1};  // window covers 2016-02-29
    c.sale_days = 2;
    c.history_years = 4;  // 2012 is the only previous leap year
    HistoryTable h = gen_history(c);
    std::size_t feb29 = 0;
    for (const auto& row : h.rows) {
        const Date& d = std::get<Date>(row[1]);
        if (d.month == 2 && d.day == 29) ++feb29;
    }
    CHECK(feb29 == 3);  // only 2012, once per tier
    CHECK(h.rows.size() == 4 * 3 * 2 - 3 * 3);
}
