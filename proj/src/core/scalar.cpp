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

#include "scalar.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace contestable {

ScalarKind scalar_kind(const Scalar& s) {
    switch (s.index()) {
        case 0: return ScalarKind::Number;
        case 1: return ScalarKind::String;
        case 2: return ScalarKind::Date;
        default: return ScalarKind::Bool;
    }
}

const char* kind_name(ScalarKind k) {
    switch (k) {
        case ScalarKind::Number: return "number";
        case ScalarKind::String: return "string";
        case ScalarKind::Date: return "date";
        case ScalarKind::Bool: return "boolean";
    }
    return "?";
}

std::optional<ScalarKind> kind_from_name(std::string_view name) {
    if (name == "number") return ScalarKind::Number;
    if (name == "string") return ScalarKind::String;
    if (name == "date") return ScalarKind::Date;
    if (name == "boolean") return ScalarKind::Bool;
    return std::nullopt;
}

std::string format_number(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

constexpr int kDaysInMonth[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

}  // namespace

bool is_valid_date(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1) return false;
    int limit = kDaysInMonth[month - 1];
    if (month == 2 && is_leap(year)) limit = 29;
    return day <= limit;
}

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (text[i] < '0' || text[i] > '9') return std::nullopt;
    }
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (text[i] - '0');
        return v;
    };
    Date d{num(0, 4), num(5, 2), num(8, 2)};
    if (!is_valid_date(d.year, d.month, d.day)) return std::nullopt;
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

// Howard Hinnant's civil-from-days / days-from-civil algorithms.
std::int64_t days_from_civil(const Date& date) {
    std::int64_t y = date.year;
    unsigned m = static_cast<unsigned>(date.month);
    unsigned d = static_cast<unsigned>(date.day);
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::string format_rfc3339_micros(std::int64_t micros) {
    std::int64_t days = micros / 86400000000LL;
    std::int64_t rem = micros % 86400000000LL;
    if (rem < 0) {
        days -= 1;
        rem += 86400000000LL;
    }
    Date d = civil_from_days(days);
    int hour = static_cast<int>(rem / 3600000000LL);
    int minute = static_cast<int>((rem / 60000000LL) % 60);
    int second = static_cast<int>((rem / 1000000LL) % 60);
    int micro = static_cast<int>(rem % 1000000LL);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%06dZ", d.year, d.month, d.day,
                  hour, minute, second, micro);
    return buf;
}

std::optional<std::int64_t> parse_rfc3339_micros(std::string_view text) {
    // Exactly: YYYY-MM-DDTHH:MM:SS.ffffffZ
    if (text.size() != 27 || text[10] != 'T' || text[13] != ':' || text[16] != ':' ||
        text[19] != '.' || text[26] != 'Z') {
        return std::nullopt;
    }
    auto date = parse_date(text.substr(0, 10));
    if (!date) return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') return std::nullopt;
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };
    auto hour = digits(11, 2), minute = digits(14, 2), second = digits(17, 2), micro = digits(20, 6);
    if (!hour || !minute || !second || !micro) return std::nullopt;
    if (*hour > 23 || *minute > 59 || *second > 59) return std::nullopt;
    std::int64_t t = days_from_civil(*date) * 86400LL;
    t += *hour * 3600LL + *minute * 60LL + *second;
    return t * 1000000LL + *micro;
}

Date date_of_micros(std::int64_t micros) {
    std::int64_t days = micros / 86400000000LL;
    if (micros % 86400000000LL < 0) days -= 1;
    return civil_from_days(days);
}

void append_json_escaped(std::string& out, std::string_view text) {
    for (unsigned char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
}

void append_canonical_scalar(std::string& out, const Scalar& s) {
    switch (scalar_kind(s)) {
        case ScalarKind::Number:
            out += format_number(std::get<double>(s));
            break;
        case ScalarKind::String:
            out += '"';
            append_json_escaped(out, std::get<std::string>(s));
            out += '"';
            break;
        case ScalarKind::Date:
            out += '"';
            out += format_date(std::get<Date>(s));
            out += '"';
            break;
        case ScalarKind::Bool:
            out += std::get<bool>(s) ? "true" : "false";
            break;
    }
}

std::string scalar_to_display(const Scalar& s) {
    switch (scalar_kind(s)) {
        case ScalarKind::Number: return format_number(std::get<double>(s));
        case ScalarKind::String: return std::get<std::string>(s);
        case ScalarKind::Date: return format_date(std::get<Date>(s));
        case ScalarKind::Bool: return std::get<bool>(s) ? "true" : "false";
    }
    return {};
}

}  // namespace contestable
