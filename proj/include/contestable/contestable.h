/* Copyright 2026 The contestable authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the contestable toolkit: compliance contracts, hash-chained
 * decision traces, post-hoc contests, online monitoring, and the airline
 * tier-pricing simulator.
 *
 * Conventions:
 *   - Handles are opaque; free them with the matching ct_*_free.
 *   - Functions return CT_OK (0) on success or an error code; the
 *     thread-local message from ct_last_error() describes the failure and
 *     stays valid until the next ct_ call on the same thread.
 *   - char** out-parameters receive newly allocated strings; release them
 *     with ct_string_free.
 */

#ifndef CONTESTABLE_H
#define CONTESTABLE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ct_rc {
    CT_OK = 0,
    CT_ERR_PARSE = 1,            /* contract text rejected by the grammar */
    CT_ERR_VALIDATION = 2,       /* contract has diagnostics */
    CT_ERR_FORMAT = 3,           /* malformed trace/history/report file */
    CT_ERR_INTEGRITY = 4,        /* hash chain verification failed */
    CT_ERR_CHAIN = 5,            /* streamed event does not extend the prefix */
    CT_ERR_VERSION_MISMATCH = 6, /* decision taken under another contract version */
    CT_ERR_ARG = 7,              /* bad argument (null handle, seq out of range, ...) */
    CT_ERR_IO = 8,               /* file not readable/writable */
    CT_ERR_CONFIG = 9,           /* simulator config invalid */
    CT_ERR_INTERNAL = 10
} ct_rc;

typedef struct ct_contract ct_contract;
typedef struct ct_trace ct_trace;
typedef struct ct_history ct_history;
typedef struct ct_monitor ct_monitor;

/* Library version string, e.g. "0.1.0". Static storage. */
const char* ct_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* ct_last_error(void);

void ct_string_free(char* s);

/* ---- compliance contracts ------------------------------------------- */

ct_rc ct_contract_parse(const char* text, ct_contract** out);
ct_rc ct_contract_parse_file(const char* path, ct_contract** out);
void ct_contract_free(ct_contract* contract);

/* Diagnostics as LF-separated lines ("" when clean). */
ct_rc ct_contract_validate(const ct_contract* contract, char** diagnostics, size_t* count);

/* Canonical contract text. */
ct_rc ct_contract_format(const ct_contract* contract, char** text);

/* Static until the handle is freed. */
const char* ct_contract_id(const ct_contract* contract);
int64_t ct_contract_version(const ct_contract* contract);

size_t ct_contract_source_count(const ct_contract* contract);
const char* ct_contract_source_name(const ct_contract* contract, size_t index);
const char* ct_contract_source_location(const ct_contract* contract, size_t index);

/* ---- traces ----------------------------------------------------------- */

ct_rc ct_trace_read_file(const char* path, ct_trace** out);
ct_rc ct_trace_write_file(const ct_trace* trace, const char* path);
void ct_trace_free(ct_trace* trace);

size_t ct_trace_event_count(const ct_trace* trace);

/* CT_OK when the chain verifies; CT_ERR_INTEGRITY otherwise, with the
 * smallest offending seq and the failure kind ("seq-gap", "ts-regress",
 * "chain-break", "hash-mismatch"; static storage). */
ct_rc ct_trace_verify(const ct_trace* trace, uint64_t* bad_seq, const char** kind);

/* World state reconstructed from events 0..at_seq, as a JSON document. */
ct_rc ct_trace_state_json(const ct_trace* trace, uint64_t at_seq, char** json);

/* ---- history tables ---------------------------------------------------- */

/* Load a CSV table typed by the contract's named source declaration. */
ct_rc ct_history_read_file(const ct_contract* contract, const char* source_name, const char* path,
                           ct_history** out);

/* Empty table with the declared columns (aggregates over it come out
 * Undetermined, never an error). */
ct_rc ct_history_empty(const ct_contract* contract, const char* source_name, ct_history** out);

void ct_history_free(ct_history* history);

/* ---- the contest procedure --------------------------------------------- */

/* Contest the decision recorded at decision_seq of the trace stored at
 * trace_path. source_names/tables supply one history table per declared
 * source. scope_whole_trace selects whole-trace scope instead of the
 * default scope-key scope.
 *
 * On CT_OK: *report_json is the report document, *verdict is 0 Compliant,
 * 1 NonCompliant, 2 Inconclusive, and *integrity_ok tells whether the
 * stored trace verified (an unreadable or tampered trace still yields a
 * report, marked Inconclusive, with *integrity_ok = 0).
 * CT_ERR_VERSION_MISMATCH / CT_ERR_ARG reject the request without a report. */
ct_rc ct_contest_run(const ct_contract* contract, const char* trace_path,
                     const char* const* source_names, const ct_history* const* tables,
                     size_t n_sources, uint64_t decision_seq, int scope_whole_trace,
                     char** report_json, int* verdict, int* integrity_ok);

/* ---- online monitoring --------------------------------------------------- */

/* regiment_mode: 0 = observe (log violations), 1 = regiment (block them). */
ct_rc ct_monitor_new(const ct_contract* contract, const char* const* source_names,
                     const ct_history* const* tables, size_t n_sources, int regiment_mode,
                     ct_monitor** out);
void ct_monitor_free(ct_monitor* monitor);

/* Feed one input line (a trace header line is skipped; observe mode takes
 * stored event lines, regiment mode takes proposal lines without the hash
 * fields). *out_lines receives zero or more LF-terminated JSON records:
 * one per norm instance in observe mode, one allow/block decision per
 * proposal in regiment mode. *violated reports whether this step emitted
 * a Violated instance, *blocked whether a proposal was blocked.
 * CT_ERR_FORMAT: unparseable line; CT_ERR_CHAIN: event does not chain. */
ct_rc ct_monitor_feed(ct_monitor* monitor, const char* line, char** out_lines, int* violated,
                      int* blocked);

/* ---- simulator ---------------------------------------------------------- */

/* Generate the configured scenario: a trace file and a history CSV.
 * Deterministic in the config (including its seed). */
ct_rc ct_simulate(const char* config_path, const char* trace_out_path,
                  const char* history_out_path);

#ifdef __cplusplus
}
#endif

#endif /* CONTESTABLE_H */
