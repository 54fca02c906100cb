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

#include "sim.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace contestable {

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Compliant: return "compliant";
        case Scenario::TierSkip: return "tier-skip";
        case Scenario::PriceGouge: return "price-gouge";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& v, const std::string& key) {
    std::int64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    }
    return out;
}

double parse_number(const std::string& v, const std::string& key) {
    double out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
    return out;
}

std::vector<TierSpec> parse_tiers(const std::string& v) {
    // capacity:price pairs, comma separated, e.g. "20:100, 15:150, 10:220"
    std::vector<TierSpec> tiers;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("tier '" + item + "' is not capacity:price");
        }
        TierSpec t;
        t.capacity = parse_int(trim(item.substr(0, colon)), "tiers");
        t.base_price = parse_number(trim(item.substr(colon + 1)), "tiers");
        tiers.push_back(t);
    }
    return tiers;
}

double round_cents(double v) {
    return std::round(v * 100.0) / 100.0;
}

constexpr std::int64_t kMicrosPerDay = 86400000000LL;

std::int64_t day_start_micros(const Date& d) {
    return days_from_civil(d) * kMicrosPerDay;
}

}  // namespace

SimConfig parse_sim_config(std::istream& in) {
    SimConfig config;
    config.tiers = {{20, 100.0}, {15, 150.0}, {10, 220.0}};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "route") {
            config.route = value;
        } else if (key == "flight") {
            config.flight = value;
        } else if (key == "departure_date") {
            auto d = parse_date(value);
            if (!d) throw ConfigError("departure_date '" + value + "' is not YYYY-MM-DD");
            config.departure_date = *d;
        } else if (key == "tiers") {
            config.tiers = parse_tiers(value);
        } else if (key == "sale_days") {
            config.sale_days = parse_int(value, key);
        } else if (key == "arrivals_min") {
            config.arrivals_min = parse_int(value, key);
        } else if (key == "arrivals_max") {
            config.arrivals_max = parse_int(value, key);
        } else if (key == "scenario") {
            if (value == "compliant") {
                config.scenario = Scenario::Compliant;
            } else if (value == "tier-skip") {
                config.scenario = Scenario::TierSkip;
            } else if (value == "price-gouge") {
                config.scenario = Scenario::PriceGouge;
            } else {
                throw ConfigError("unknown scenario '" + value + "'");
            }
        } else if (key == "gouge_factor") {
            config.gouge_factor = parse_number(value, key);
        } else if (key == "bankruptcy_day") {
            config.bankruptcy_day = parse_int(value, key);
        } else if (key == "skip_at_remaining") {
            config.skip_at_remaining = parse_int(value, key);
        } else if (key == "history_years") {
            config.history_years = parse_int(value, key);
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_int(value, key));
        } else if (key == "competitor") {
            config.competitor = value;
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    validate_sim_config(config);
    return config;
}

SimConfig parse_sim_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_sim_config(in);
}

void validate_sim_config(const SimConfig& config) {
    if (config.tiers.empty()) {
        throw ConfigError("at least one tier is required");
    }
    for (std::size_t i = 0; i < config.tiers.size(); ++i) {
        if (config.tiers[i].capacity < 1) {
            throw ConfigError("tier " + std::to_string(i + 1) + " capacity must be positive");
        }
        if (config.tiers[i].base_price <= 0) {
            throw ConfigError("tier " + std::to_string(i + 1) + " base price must be positive");
        }
        if (i > 0 && config.tiers[i].base_price <= config.tiers[i - 1].base_price) {
            throw ConfigError("tier base prices must be strictly increasing, tier " +
                              std::to_string(i + 1) + " is not");
        }
    }
    if (config.history_years < 1) throw ConfigError("history_years must be at least 1");
    if (config.sale_days < 1) throw ConfigError("sale_days must be at least 1");
    if (config.arrivals_min < 1 || config.arrivals_max < config.arrivals_min) {
        throw ConfigError("arrivals must satisfy 1 <= arrivals_min <= arrivals_max");
    }
    if (config.gouge_factor <= 0) throw ConfigError("gouge_factor must be positive");
    if (config.scenario == Scenario::TierSkip) {
        if (config.skip_at_remaining < 1 ||
            config.skip_at_remaining >= config.tiers.front().capacity) {
            throw ConfigError("skip_at_remaining must be in [1, first tier capacity)");
        }
        if (config.tiers.size() < 2) {
            throw ConfigError("tier-skip needs at least two tiers");
        }
    }
    if (config.scenario == Scenario::PriceGouge) {
        if (config.bankruptcy_day >= config.sale_days) {
            throw ConfigError("bankruptcy_day must fall inside the sale window");
        }
    }
}

namespace {

class Simulation {
public:
    explicit Simulation(const SimConfig& config)
        : config_(config), rng_(config.seed) {}

    Trace run() {
        Trace trace;
        Date window_start =
            civil_from_days(days_from_civil(config_.departure_date) - config_.sale_days);
        trace.header.trace_id = config_.flight + "-" + format_date(config_.departure_date);
        trace.header.created_us = day_start_micros(window_start);
        trace.header.scope_key_attr = "flight";
        trace_ = &trace;

        std::int64_t bankruptcy_day = config_.bankruptcy_day >= 0 ? config_.bankruptcy_day
                                                                  : config_.sale_days / 2;
        for (std::int64_t day = 0; day < config_.sale_days; ++day) {
            date_ = civil_from_days(days_from_civil(window_start) + day);
            ts_ = day_start_micros(date_) + 8 * 3600 * 1000000LL;  // sales open 08:00 UTC
            if (day == 0) {
                open_tier(0);
            } else if (selling_ < config_.tiers.size()) {
                // daily repricing of the tier currently on sale
                emit_price_set(selling_);
            }
            if (config_.scenario == Scenario::PriceGouge && day == bankruptcy_day) {
                emit_bankruptcy();
            }
            std::int64_t arrivals = rng_.next_in(config_.arrivals_min, config_.arrivals_max);
            for (std::int64_t a = 0; a < arrivals && selling_ < config_.tiers.size(); ++a) {
                sell_one_seat();
            }
        }
        trace_ = nullptr;
        return trace;
    }

private:
    const SimConfig& config_;
    SplitMix64 rng_;
    Trace* trace_ = nullptr;
    Date date_{};
    std::int64_t ts_ = 0;
    std::size_t selling_ = 0;   // index of the tier buyers currently draw from
    std::size_t opened_ = 0;    // tiers opened so far
    std::int64_t remaining_ = 0;
    bool skipped_ = false;
    bool gouging_ = false;

    const char* algo_version() const { return gouging_ ? "policy-v2" : "policy-v1"; }

    double posted_price(std::size_t tier_idx) const {
        double p = config_.tiers[tier_idx].base_price;
        if (gouging_) p *= config_.gouge_factor;
        return round_cents(p);
    }

    void emit(std::string type, AttrMap attrs) {
        append_event(*trace_, ts_, std::move(type), std::move(attrs), algo_version(), 1);
        ts_ += rng_.next_in(1, 90) * 1000000LL;  // a few seconds between events
    }

    AttrMap base_attrs(std::size_t tier_idx) const {
        return AttrMap{{"flight", config_.flight},
                       {"route", config_.route},
                       {"tier", static_cast<double>(tier_idx + 1)}};
    }

    void emit_price_set(std::size_t tier_idx) {
        AttrMap attrs = base_attrs(tier_idx);
        attrs.emplace("price", posted_price(tier_idx));
        attrs.emplace("sale_date", date_);
        emit("price_set", std::move(attrs));
    }

    void open_tier(std::size_t tier_idx) {
        AttrMap attrs = base_attrs(tier_idx);
        attrs.emplace("capacity", static_cast<double>(config_.tiers[tier_idx].capacity));
        emit("tier_opened", std::move(attrs));
        emit_price_set(tier_idx);
        if (tier_idx == selling_) {
            remaining_ = config_.tiers[tier_idx].capacity;
        }
        opened_ = tier_idx + 1;
    }

    void emit_bankruptcy() {
        gouging_ = true;  // flips algo_version for this and all later events
        AttrMap attrs{{"competitor", config_.competitor}, {"date", date_}};
        emit("competitor_bankruptcy", std::move(attrs));
        if (selling_ < config_.tiers.size()) {
            emit_price_set(selling_);  // repost at the gouged price
        }
    }

    void sell_one_seat() {
        AttrMap attrs = base_attrs(selling_);
        attrs.emplace("sale_date", date_);
        emit("seat_sold", std::move(attrs));
        --remaining_;
        if (config_.scenario == Scenario::TierSkip && !skipped_ &&
            remaining_ == config_.skip_at_remaining && opened_ == selling_ + 1 &&
            opened_ < config_.tiers.size()) {
            // the one early opening: the next tier goes on offer while this
            // one still has seats
            skipped_ = true;
            open_tier(opened_);
        }
        if (remaining_ == 0) {
            emit("tier_sold_out", base_attrs(selling_));
            ++selling_;
            if (selling_ < config_.tiers.size()) {
                remaining_ = config_.tiers[selling_].capacity;
                if (opened_ < selling_ + 1) {
                    open_tier(selling_);
                }
            }
        }
    }
};

// Gouged price_set events paired with their history mean, for the
// reseed-until-violating check.
struct GougeCheck {
    std::size_t tier_idx;
    Date sale_date;
    double price;
};

std::vector<GougeCheck> gouged_prices(const SimConfig& config, const Trace& trace) {
    std::vector<GougeCheck> out;
    for (const Event& e : trace.events) {
        if (e.event_type != "price_set" || e.algo_version != "policy-v2") continue;
        GougeCheck g;
        g.tier_idx = static_cast<std::size_t>(std::get<double>(e.attrs.at("tier"))) - 1;
        g.sale_date = std::get<Date>(e.attrs.at("sale_date"));
        g.price = std::get<double>(e.attrs.at("price"));
        out.push_back(g);
    }
    return out;
}

HistoryTable build_history(const SimConfig& config, std::uint64_t noise_seed) {
    SplitMix64 rng(noise_seed);
    HistoryTable table;
    table.columns = {"route", "sale_date", "tier", "avg_price"};
    table.kinds = {ScalarKind::String, ScalarKind::Date, ScalarKind::Number, ScalarKind::Number};
    std::int64_t window_start = days_from_civil(config.departure_date) - config.sale_days;
    for (std::int64_t years_back = 1; years_back <= config.history_years; ++years_back) {
        for (std::size_t tier_idx = 0; tier_idx < config.tiers.size(); ++tier_idx) {
            for (std::int64_t day = 0; day < config.sale_days; ++day) {
                Date d = civil_from_days(window_start + day);
                int year = d.year - static_cast<int>(years_back);
                if (!is_valid_date(year, d.month, d.day)) continue;  // Feb 29 in a non-leap year
                double noise = 0.95 + 0.10 * rng.next_unit();
                std::vector<Scalar> row(4);
                row[0] = config.route;
                row[1] = Date{year, d.month, d.day};
                row[2] = static_cast<double>(tier_idx + 1);
                row[3] = round_cents(config.tiers[tier_idx].base_price * noise);
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

double history_mean(const HistoryTable& table, const SimConfig& config, std::size_t tier_idx,
                    const Date& sale_date) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& row : table.rows) {
        if (std::get<std::string>(row[0]) != config.route) continue;
        const Date& d = std::get<Date>(row[1]);
        if (d.month != sale_date.month || d.day != sale_date.day) continue;
        if (std::get<double>(row[2]) != static_cast<double>(tier_idx + 1)) continue;
        sum += std::get<double>(row[3]);
        ++count;
    }
    return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

Trace simulate(const SimConfig& config) {
    validate_sim_config(config);
    return Simulation(config).run();
}

HistoryTable gen_history(const SimConfig& config) {
    validate_sim_config(config);
    // Separate stream from the trace's so the two artifacts stay independent.
    std::uint64_t noise_seed = config.seed ^ 0xD1B54A32D192ED03ULL;
    if (config.scenario != Scenario::PriceGouge) {
        return build_history(config, noise_seed);
    }
    auto gouged = gouged_prices(config, simulate(config));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        HistoryTable table = build_history(config, noise_seed + static_cast<std::uint64_t>(attempt));
        for (const GougeCheck& g : gouged) {
            double mean = history_mean(table, config, g.tier_idx, g.sale_date);
            if (mean > 0 && std::fabs(g.price - mean) / mean > 0.30) {
                return table;
            }
        }
    }
    throw ConfigError("price-gouge scenario cannot realize a deviation above 0.30; "
                      "raise gouge_factor");
}

}  // namespace contestable
