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

#include "history.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "errors.hpp"

namespace contestable {

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    std::size_t i = 0;
    while (true) {
        cur.clear();
        if (i < line.size() && line[i] == '"') {
            ++i;
            while (true) {
                if (i >= line.size()) throw TraceFormatError(line_no, "unterminated quoted field");
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cur += '"';
                        i += 2;
                    } else {
                        ++i;
                        break;
                    }
                } else {
                    cur += line[i++];
                }
            }
        } else {
            while (i < line.size() && line[i] != ',') cur += line[i++];
        }
        fields.push_back(cur);
        if (i >= line.size()) break;
        if (line[i] != ',') throw TraceFormatError(line_no, "unexpected character after quoted field");
        ++i;
    }
    return fields;
}

void append_csv_field(std::string& out, const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

}  // namespace

int HistoryTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

HistoryTable empty_history(const SourceDecl& decl) {
    HistoryTable t;
    for (const auto& [name, kind] : decl.columns) {
        t.columns.push_back(name);
        t.kinds.push_back(kind);
    }
    return t;
}

HistoryTable read_history_csv(std::istream& in, const SourceDecl& decl) {
    HistoryTable table = empty_history(decl);
    std::string line;
    std::size_t line_no = 0;
    std::vector<int> field_to_column;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            auto names = split_csv_line(line, line_no);
            if (names.size() != decl.columns.size()) {
                throw TraceFormatError(line_no, "header names " + std::to_string(names.size()) +
                                                    " columns, declared " +
                                                    std::to_string(decl.columns.size()));
            }
            std::vector<bool> seen(decl.columns.size(), false);
            for (const auto& name : names) {
                int idx = table.column_index(name);
                if (idx < 0) throw TraceFormatError(line_no, "unknown column '" + name + "'");
                if (seen[static_cast<std::size_t>(idx)]) {
                    throw TraceFormatError(line_no, "duplicate column '" + name + "'");
                }
                seen[static_cast<std::size_t>(idx)] = true;
                field_to_column.push_back(idx);
            }
            continue;
        }
        if (line.empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (fields.size() != field_to_column.size()) {
            throw TraceFormatError(line_no, "row has " + std::to_string(fields.size()) +
                                                " fields, expected " +
                                                std::to_string(field_to_column.size()));
        }
        std::vector<Scalar> row(table.columns.size());
        for (std::size_t f = 0; f < fields.size(); ++f) {
            auto col = static_cast<std::size_t>(field_to_column[f]);
            const std::string& text = fields[f];
            switch (table.kinds[col]) {
                case ScalarKind::Number: {
                    double v = 0;
                    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
                    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
                        throw TraceFormatError(line_no, "column '" + table.columns[col] +
                                                            "': '" + text + "' is not a number");
                    }
                    row[col] = v;
                    break;
                }
                case ScalarKind::Date: {
                    auto d = parse_date(text);
                    if (!d) {
                        throw TraceFormatError(line_no, "column '" + table.columns[col] + "': '" +
                                                            text + "' is not a YYYY-MM-DD date");
                    }
                    row[col] = *d;
                    break;
                }
                case ScalarKind::String:
                    row[col] = text;
                    break;
                case ScalarKind::Bool:
                    row[col] = text == "true";
                    break;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

HistoryTable read_history_csv_file(const std::string& path, const SourceDecl& decl) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open history file '" + path + "'");
    }
    return read_history_csv(in, decl);
}

std::string history_to_csv(const HistoryTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        append_csv_field(out, table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            append_csv_field(out, scalar_to_display(row[c]));
        }
        out += '\n';
    }
    return out;
}

void write_history_csv_file(const HistoryTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write history file '" + path + "'");
    }
    out << history_to_csv(table);
}

Hash256 history_content_hash(const SourceMap& sources) {
    std::string bytes;
    for (const auto& [name, table] : sources) {
        bytes += name;
        bytes += '\n';
        bytes += history_to_csv(table);
    }
    return sha256(bytes);
}

}  // namespace contestable
