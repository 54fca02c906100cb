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

// contestctl — command-line front end over the contestable C API.
//
// Exit codes: 0 ok/Compliant, 1 NonCompliant, 2 Inconclusive,
// 3 usage/parse/validation error, 4 integrity or chain error.
// Human-readable output goes to stderr; machine-readable documents go to
// files or stdout only.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contestable/contestable.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNonCompliant = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;
constexpr int kExitIntegrity = 4;

struct ContractHandle {
    ct_contract* ptr = nullptr;
    ~ContractHandle() { ct_contract_free(ptr); }
};

struct HistoryHandle {
    ct_history* ptr = nullptr;
    ~HistoryHandle() { ct_history_free(ptr); }
};

struct MonitorHandle {
    ct_monitor* ptr = nullptr;
    ~MonitorHandle() { ct_monitor_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { ct_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

int fail(const std::string& what, int code = kExitUsage) {
    std::cerr << "contestctl: " << what;
    const char* detail = ct_last_error();
    if (detail && *detail) std::cerr << ": " << detail;
    std::cerr << "\n";
    return code;
}

int load_contract(const std::string& path, ContractHandle& contract, bool report_clean) {
    if (ct_contract_parse_file(path.c_str(), &contract.ptr) != CT_OK) {
        return fail("cannot load contract '" + path + "'");
    }
    OwnedString diagnostics;
    size_t count = 0;
    ct_rc rc = ct_contract_validate(contract.ptr, &diagnostics.ptr, &count);
    if (rc == CT_ERR_VALIDATION) {
        std::cerr << diagnostics.str();
        std::cerr << "contestctl: contract '" << path << "' has " << count << " diagnostic(s)\n";
        return kExitUsage;
    }
    if (rc != CT_OK) {
        return fail("cannot validate contract '" + path + "'");
    }
    if (report_clean) {
        std::cerr << "contract '" << ct_contract_id(contract.ptr) << "' version "
                  << ct_contract_version(contract.ptr) << ": ok\n";
    }
    return kExitOk;
}

// History tables come from --source overrides, else from each declared
// location resolved against the contract file's directory. A missing file
// is an empty table: missing reference data must surface as Undetermined,
// not abort the contest.
int load_sources(const ContractHandle& contract, const std::string& contract_path,
                 const std::vector<std::string>& overrides, std::vector<std::string>& names,
                 std::vector<std::unique_ptr<HistoryHandle>>& tables) {
    std::map<std::string, std::string> location_override;
    for (const auto& spec : overrides) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) {
            return fail("--source expects name=path, got '" + spec + "'");
        }
        location_override[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
    std::filesystem::path base = std::filesystem::path(contract_path).parent_path();
    size_t n = ct_contract_source_count(contract.ptr);
    for (size_t i = 0; i < n; ++i) {
        std::string name = ct_contract_source_name(contract.ptr, i);
        std::filesystem::path path;
        auto it = location_override.find(name);
        if (it != location_override.end()) {
            path = it->second;
            location_override.erase(it);
        } else {
            path = ct_contract_source_location(contract.ptr, i);
            if (path.is_relative()) path = base / path;
        }
        auto handle = std::make_unique<HistoryHandle>();
        if (std::filesystem::exists(path)) {
            if (ct_history_read_file(contract.ptr, name.c_str(), path.string().c_str(),
                                     &handle->ptr) != CT_OK) {
                return fail("cannot load history '" + path.string() + "'");
            }
        } else {
            std::cerr << "contestctl: warning: history file '" << path.string()
                      << "' for source '" << name << "' not found, using empty table\n";
            if (ct_history_empty(contract.ptr, name.c_str(), &handle->ptr) != CT_OK) {
                return fail("cannot build empty table for source '" + name + "'");
            }
        }
        names.push_back(std::move(name));
        tables.push_back(std::move(handle));
    }
    if (!location_override.empty()) {
        return fail("--source names unknown source '" + location_override.begin()->first + "'");
    }
    return kExitOk;
}

int cmd_check(const std::string& contract_path) {
    ContractHandle contract;
    return load_contract(contract_path, contract, /*report_clean=*/true);
}

int cmd_contest(const std::string& contract_path, const std::string& trace_path,
                const std::vector<std::string>& source_overrides, uint64_t decision_seq,
                const std::string& scope, const std::string& out_path) {
    ContractHandle contract;
    if (int rc = load_contract(contract_path, contract, false); rc != kExitOk) return rc;
    std::vector<std::string> names;
    std::vector<std::unique_ptr<HistoryHandle>> tables;
    if (int rc = load_sources(contract, contract_path, source_overrides, names, tables);
        rc != kExitOk) {
        return rc;
    }
    std::vector<const char*> name_ptrs;
    std::vector<const ct_history*> table_ptrs;
    for (size_t i = 0; i < names.size(); ++i) {
        name_ptrs.push_back(names[i].c_str());
        table_ptrs.push_back(tables[i]->ptr);
    }
    OwnedString report;
    int verdict = 2;
    int integrity_ok = 0;
    ct_rc rc = ct_contest_run(contract.ptr, trace_path.c_str(), name_ptrs.data(),
                              table_ptrs.data(), name_ptrs.size(), decision_seq,
                              scope == "whole" ? 1 : 0, &report.ptr, &verdict, &integrity_ok);
    if (rc == CT_ERR_VERSION_MISMATCH) return fail("version mismatch");
    if (rc != CT_OK) return fail("contest failed");
    if (out_path.empty()) {
        std::cout << report.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) return fail("cannot write report to '" + out_path + "'");
        out << report.str();
        std::cerr << "report written to " << out_path << "\n";
    }
    if (!integrity_ok) {
        std::cerr << "contestctl: trace integrity check failed, verdict Inconclusive\n";
        return kExitIntegrity;
    }
    switch (verdict) {
        case 0: std::cerr << "verdict: Compliant\n"; return kExitOk;
        case 1: std::cerr << "verdict: NonCompliant\n"; return kExitNonCompliant;
        default: std::cerr << "verdict: Inconclusive\n"; return kExitInconclusive;
    }
}

int cmd_monitor(const std::string& contract_path, const std::vector<std::string>& source_overrides,
                const std::string& mode) {
    ContractHandle contract;
    if (int rc = load_contract(contract_path, contract, false); rc != kExitOk) return rc;
    std::vector<std::string> names;
    std::vector<std::unique_ptr<HistoryHandle>> tables;
    if (int rc = load_sources(contract, contract_path, source_overrides, names, tables);
        rc != kExitOk) {
        return rc;
    }
    std::vector<const char*> name_ptrs;
    std::vector<const ct_history*> table_ptrs;
    for (size_t i = 0; i < names.size(); ++i) {
        name_ptrs.push_back(names[i].c_str());
        table_ptrs.push_back(tables[i]->ptr);
    }
    MonitorHandle monitor;
    if (ct_monitor_new(contract.ptr, name_ptrs.data(), table_ptrs.data(), name_ptrs.size(),
                       mode == "regiment" ? 1 : 0, &monitor.ptr) != CT_OK) {
        return fail("cannot start monitor");
    }
    auto started = std::chrono::steady_clock::now();
    std::string line;
    size_t lines = 0;
    size_t emitted = 0;
    bool any_violation = false;
    while (std::getline(std::cin, line)) {
        ++lines;
        OwnedString out;
        int violated = 0;
        int blocked = 0;
        ct_rc rc = ct_monitor_feed(monitor.ptr, line.c_str(), &out.ptr, &violated, &blocked);
        if (rc == CT_ERR_FORMAT) return fail("protocol violation on line " + std::to_string(lines));
        if (rc == CT_ERR_CHAIN) {
            return fail("chain error on line " + std::to_string(lines), kExitIntegrity);
        }
        if (rc != CT_OK) return fail("monitor step failed");
        std::string records = out.str();
        std::cout << records;
        emitted += static_cast<size_t>(std::count(records.begin(), records.end(), '\n'));
        if (violated) any_violation = true;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "monitor: " << lines << " line(s) in, " << emitted << " record(s) out, "
              << elapsed << " us\n";
    if (mode == "observe" && any_violation) return kExitNonCompliant;
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& trace_out,
                 const std::string& history_out) {
    if (ct_simulate(config_path.c_str(), trace_out.c_str(), history_out.c_str()) != CT_OK) {
        return fail("simulation failed");
    }
    std::cerr << "wrote " << trace_out << " and " << history_out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compliance contracts, tamper-evident traces, and decision contests"};
    app.require_subcommand(1);

    std::string contract_path;
    std::string trace_path;
    std::vector<std::string> source_overrides;
    uint64_t decision_seq = 0;
    std::string scope = "key";
    std::string out_path;
    std::string mode = "observe";
    std::string config_path;
    std::string trace_out;
    std::string history_out;

    auto* check = app.add_subcommand("check", "parse and validate a contract");
    check->add_option("contract", contract_path, "contract file")->required();

    auto* contest = app.add_subcommand("contest", "contest a recorded decision");
    contest->add_option("contract", contract_path, "contract file")->required();
    contest->add_option("trace", trace_path, "trace file")->required();
    contest->add_option("--source", source_overrides,
                        "history override name=path (default: declared locations)");
    contest->add_option("--decision", decision_seq, "seq of the contested decision event")
        ->required();
    contest->add_option("--scope", scope, "events examined: key (scope key) or whole (trace)")
        ->check(CLI::IsMember({"key", "whole"}));
    contest->add_option("--out", out_path, "report file (default: stdout)");

    auto* monitor = app.add_subcommand("monitor", "monitor an event stream from stdin");
    monitor->add_option("contract", contract_path, "contract file")->required();
    monitor->add_option("--source", source_overrides, "history override name=path");
    monitor->add_option("--mode", mode, "observe (log) or regiment (block)")
        ->check(CLI::IsMember({"observe", "regiment"}));

    auto* simulate = app.add_subcommand("simulate", "generate a pricing scenario");
    simulate->add_option("config", config_path, "simulator config file")->required();
    simulate->add_option("--out-trace", trace_out, "trace output path")->required();
    simulate->add_option("--out-history", history_out, "history CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::stringstream out;
        int code = app.exit(e, out, out);
        std::cerr << out.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (check->parsed()) return cmd_check(contract_path);
    if (contest->parsed()) {
        return cmd_contest(contract_path, trace_path, source_overrides, decision_seq, scope,
                           out_path);
    }
    if (monitor->parsed()) return cmd_monitor(contract_path, source_overrides, mode);
    if (simulate->parsed()) return cmd_simulate(config_path, trace_out, history_out);
    return kExitUsage;
}
