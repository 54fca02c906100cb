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

#include "contestable/contestable.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "../core/contest.hpp"
#include "../core/errors.hpp"
#include "../core/eval.hpp"
#include "../core/format.hpp"
#include "../core/history.hpp"
#include "../core/json_out.hpp"
#include "../core/monitor.hpp"
#include "../core/parser.hpp"
#include "../core/sim.hpp"
#include "../core/trace.hpp"
#include "../core/validate.hpp"

using namespace contestable;

struct ct_contract {
    Contract value;
};
struct ct_trace {
    Trace value;
};
struct ct_history {
    std::string source;
    HistoryTable value;
};
struct ct_monitor {
    Monitor value;
    std::size_t lines_fed = 0;

    ct_monitor(const ct_contract* contract, SourceMap sources, MonitorMode mode)
        : value(contract->value, std::move(sources), mode) {}
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) {
    g_last_error = msg;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Translate core exceptions to stable return codes.
template <typename Fn>
ct_rc guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        set_error(e.what());
        return CT_ERR_PARSE;
    } catch (const TraceFormatError& e) {
        set_error(e.what());
        return CT_ERR_FORMAT;
    } catch (const ChainError& e) {
        set_error(e.what());
        return CT_ERR_CHAIN;
    } catch (const VersionMismatch& e) {
        set_error(e.what());
        return CT_ERR_VERSION_MISMATCH;
    } catch (const SeqOutOfRange& e) {
        set_error(e.what());
        return CT_ERR_ARG;
    } catch (const ScopeError& e) {
        set_error(e.what());
        return CT_ERR_ARG;
    } catch (const MissingAttribute& e) {
        set_error(e.what());
        return CT_ERR_FORMAT;
    } catch (const ConfigError& e) {
        set_error(e.what());
        return CT_ERR_CONFIG;
    } catch (const IntegrityException& e) {
        set_error(e.what());
        return CT_ERR_INTEGRITY;
    } catch (const Error& e) {
        set_error(e.what());
        return CT_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return CT_ERR_INTERNAL;
    }
}

ct_rc require_args(bool ok) {
    if (!ok) set_error("null argument");
    return ok ? CT_OK : CT_ERR_ARG;
}

const SourceDecl* find_source_decl(const Contract& contract, const char* name) {
    for (const auto& s : contract.sources) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

ct_rc build_source_map(const ct_contract* contract, const char* const* names,
                       const ct_history* const* tables, size_t n, SourceMap& out) {
    for (size_t i = 0; i < n; ++i) {
        if (!names[i] || !tables[i]) {
            set_error("null source binding at index " + std::to_string(i));
            return CT_ERR_ARG;
        }
        if (!find_source_decl(contract->value, names[i])) {
            set_error(std::string("contract declares no source '") + names[i] + "'");
            return CT_ERR_ARG;
        }
        out[names[i]] = tables[i]->value;
    }
    return CT_OK;
}

int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::Compliant: return 0;
        case Verdict::NonCompliant: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 2;
}

}  // namespace

extern "C" {

const char* ct_version(void) {
    return "0.1.0";
}

const char* ct_last_error(void) {
    return g_last_error.c_str();
}

void ct_string_free(char* s) {
    std::free(s);
}

ct_rc ct_contract_parse(const char* text, ct_contract** out) {
    if (ct_rc rc = require_args(text && out); rc != CT_OK) return rc;
    return guarded([&] {
        auto handle = std::make_unique<ct_contract>();
        handle->value = parse_contract(text);
        *out = handle.release();
        return CT_OK;
    });
}

ct_rc ct_contract_parse_file(const char* path, ct_contract** out) {
    if (ct_rc rc = require_args(path && out); rc != CT_OK) return rc;
    return guarded([&]() -> ct_rc {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            set_error(std::string("cannot open contract file '") + path + "'");
            return CT_ERR_IO;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        auto handle = std::make_unique<ct_contract>();
        handle->value = parse_contract(buf.str());
        *out = handle.release();
        return CT_OK;
    });
}

void ct_contract_free(ct_contract* contract) {
    delete contract;
}

ct_rc ct_contract_validate(const ct_contract* contract, char** diagnostics, size_t* count) {
    if (ct_rc rc = require_args(contract && diagnostics && count); rc != CT_OK) return rc;
    return guarded([&] {
        auto list = validate_contract(contract->value);
        std::string joined;
        for (const auto& d : list) {
            joined += diagnostic_to_string(d);
            joined += '\n';
        }
        *diagnostics = dup_string(joined);
        *count = list.size();
        return list.empty() ? CT_OK : CT_ERR_VALIDATION;
    });
}

ct_rc ct_contract_format(const ct_contract* contract, char** text) {
    if (ct_rc rc = require_args(contract && text); rc != CT_OK) return rc;
    return guarded([&] {
        *text = dup_string(format_contract(contract->value));
        return CT_OK;
    });
}

const char* ct_contract_id(const ct_contract* contract) {
    return contract ? contract->value.id.c_str() : "";
}

int64_t ct_contract_version(const ct_contract* contract) {
    return contract ? contract->value.version : 0;
}

size_t ct_contract_source_count(const ct_contract* contract) {
    return contract ? contract->value.sources.size() : 0;
}

const char* ct_contract_source_name(const ct_contract* contract, size_t index) {
    if (!contract || index >= contract->value.sources.size()) return nullptr;
    return contract->value.sources[index].name.c_str();
}

const char* ct_contract_source_location(const ct_contract* contract, size_t index) {
    if (!contract || index >= contract->value.sources.size()) return nullptr;
    return contract->value.sources[index].location.c_str();
}

ct_rc ct_trace_read_file(const char* path, ct_trace** out) {
    if (ct_rc rc = require_args(path && out); rc != CT_OK) return rc;
    return guarded([&] {
        auto handle = std::make_unique<ct_trace>();
        handle->value = read_trace_file(path);
        *out = handle.release();
        return CT_OK;
    });
}

ct_rc ct_trace_write_file(const ct_trace* trace, const char* path) {
    if (ct_rc rc = require_args(trace && path); rc != CT_OK) return rc;
    return guarded([&] {
        write_trace_file(trace->value, path);
        return CT_OK;
    });
}

void ct_trace_free(ct_trace* trace) {
    delete trace;
}

size_t ct_trace_event_count(const ct_trace* trace) {
    return trace ? trace->value.events.size() : 0;
}

ct_rc ct_trace_verify(const ct_trace* trace, uint64_t* bad_seq, const char** kind) {
    if (ct_rc rc = require_args(trace != nullptr); rc != CT_OK) return rc;
    IntegrityResult result = verify_integrity(trace->value);
    if (result.ok) return CT_OK;
    if (bad_seq) *bad_seq = result.seq;
    if (kind) *kind = integrity_kind_name(result.kind);
    set_error("trace integrity: " + result.to_string());
    return CT_ERR_INTEGRITY;
}

ct_rc ct_trace_state_json(const ct_trace* trace, uint64_t at_seq, char** json) {
    if (ct_rc rc = require_args(trace && json); rc != CT_OK) return rc;
    return guarded([&] {
        *json = dup_string(world_state_to_json(reconstruct_state(trace->value, at_seq)));
        return CT_OK;
    });
}

ct_rc ct_history_read_file(const ct_contract* contract, const char* source_name, const char* path,
                           ct_history** out) {
    if (ct_rc rc = require_args(contract && source_name && path && out); rc != CT_OK) return rc;
    return guarded([&]() -> ct_rc {
        const SourceDecl* decl = find_source_decl(contract->value, source_name);
        if (!decl) {
            set_error(std::string("contract declares no source '") + source_name + "'");
            return CT_ERR_ARG;
        }
        auto handle = std::make_unique<ct_history>();
        handle->source = source_name;
        handle->value = read_history_csv_file(path, *decl);
        *out = handle.release();
        return CT_OK;
    });
}

ct_rc ct_history_empty(const ct_contract* contract, const char* source_name, ct_history** out) {
    if (ct_rc rc = require_args(contract && source_name && out); rc != CT_OK) return rc;
    const SourceDecl* decl = find_source_decl(contract->value, source_name);
    if (!decl) {
        set_error(std::string("contract declares no source '") + source_name + "'");
        return CT_ERR_ARG;
    }
    auto handle = std::make_unique<ct_history>();
    handle->source = source_name;
    handle->value = empty_history(*decl);
    *out = handle.release();
    return CT_OK;
}

void ct_history_free(ct_history* history) {
    delete history;
}

ct_rc ct_contest_run(const ct_contract* contract, const char* trace_path,
                     const char* const* source_names, const ct_history* const* tables,
                     size_t n_sources, uint64_t decision_seq, int scope_whole_trace,
                     char** report_json, int* verdict, int* integrity_ok) {
    if (ct_rc rc = require_args(contract && trace_path && report_json &&
                                (n_sources == 0 || (source_names && tables)));
        rc != CT_OK) {
        return rc;
    }
    SourceMap sources;
    if (ct_rc rc = build_source_map(contract, source_names, tables, n_sources, sources);
        rc != CT_OK) {
        return rc;
    }
    return guarded([&]() -> ct_rc {
        ContestReport report;
        try {
            Trace trace = read_trace_file(trace_path);
            report = contest_decision(contract->value, trace, sources, decision_seq,
                                      scope_whole_trace ? ScopeMode::WholeTrace
                                                        : ScopeMode::ScopeKey);
        } catch (const TraceFormatError& e) {
            // An unreadable record is an integrity failure of record keeping;
            // it still produces a (necessarily Inconclusive) report.
            report = unreadable_trace_report(contract->value, sources, decision_seq, e.line);
        }
        *report_json = dup_string(render_report(report));
        if (verdict) *verdict = verdict_code(report.verdict);
        if (integrity_ok) *integrity_ok = report.trace_integrity.ok ? 1 : 0;
        return CT_OK;
    });
}

ct_rc ct_monitor_new(const ct_contract* contract, const char* const* source_names,
                     const ct_history* const* tables, size_t n_sources, int regiment_mode,
                     ct_monitor** out) {
    if (ct_rc rc = require_args(contract && out && (n_sources == 0 || (source_names && tables)));
        rc != CT_OK) {
        return rc;
    }
    SourceMap sources;
    if (ct_rc rc = build_source_map(contract, source_names, tables, n_sources, sources);
        rc != CT_OK) {
        return rc;
    }
    return guarded([&] {
        *out = new ct_monitor(contract, std::move(sources),
                              regiment_mode ? MonitorMode::Regiment : MonitorMode::Observe);
        return CT_OK;
    });
}

void ct_monitor_free(ct_monitor* monitor) {
    delete monitor;
}

ct_rc ct_monitor_feed(ct_monitor* monitor, const char* line, char** out_lines, int* violated,
                      int* blocked) {
    if (ct_rc rc = require_args(monitor && line && out_lines); rc != CT_OK) return rc;
    if (violated) *violated = 0;
    if (blocked) *blocked = 0;
    return guarded([&]() -> ct_rc {
        ++monitor->lines_fed;
        std::string text(line);
        if (monitor->lines_fed == 1 && looks_like_header(text)) {
            *out_lines = dup_string("");
            return CT_OK;
        }
        std::string emitted;
        if (monitor->value.mode() == MonitorMode::Observe) {
            Event event = parse_event_line(text, monitor->lines_fed);
            for (const auto& r : monitor->value.step_observe(event)) {
                if (r.status == Status::Violated && violated) *violated = 1;
                emitted += result_to_json(r).dump();
                emitted += '\n';
            }
        } else {
            EventDraft draft = parse_draft_line(text, monitor->lines_fed);
            auto outcome = monitor->value.step_regiment(draft);
            ojson record;
            record["decision"] = outcome.allowed ? "allow" : "block";
            record["seq"] = draft.seq;
            ojson results = ojson::array();
            for (const auto& r : outcome.results) {
                if (r.status == Status::Violated && violated) *violated = 1;
                results.push_back(result_to_json(r));
            }
            record[outcome.allowed ? "results" : "violations"] = std::move(results);
            if (!outcome.allowed && blocked) *blocked = 1;
            emitted += record.dump();
            emitted += '\n';
        }
        *out_lines = dup_string(emitted);
        return CT_OK;
    });
}

ct_rc ct_simulate(const char* config_path, const char* trace_out_path,
                  const char* history_out_path) {
    if (ct_rc rc = require_args(config_path && trace_out_path && history_out_path); rc != CT_OK) {
        return rc;
    }
    return guarded([&] {
        SimConfig config = parse_sim_config_file(config_path);
        write_trace_file(simulate(config), trace_out_path);
        write_history_csv_file(gen_history(config), history_out_path);
        return CT_OK;
    });
}

}  // extern "C"
