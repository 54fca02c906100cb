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

#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <set>

#include "errors.hpp"

namespace contestable {

namespace {

const std::set<std::string_view> kKeywords = {
    "contract", "version", "effective", "source", "from",   "norm",    "on",
    "event",    "when",    "require",   "and",    "or",     "not",     "abs",
    "let",      "in",      "avg",       "where",  "exists", "before",  "trigger",
    "number",   "string",  "date",      "same_day", "true", "false",
};

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }
    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool digit(char c) {
    return c >= '0' && c <= '9';
}

// A date literal is exactly \d{4}-\d{2}-\d{2} not followed by an
// identifier character or another digit.
bool looks_like_date(const Cursor& c) {
    for (int i = 0; i < 10; ++i) {
        char ch = c.peek(i);
        if (i == 4 || i == 7) {
            if (ch != '-') return false;
        } else if (!digit(ch)) {
            return false;
        }
    }
    return !ident_char(c.peek(10));
}

}  // namespace

bool is_keyword(std::string_view word) {
    return kKeywords.count(word) > 0;
}

std::vector<Token> lex_contract(std::string_view text) {
    std::vector<Token> out;
    Cursor c{text};
    while (true) {
        while (!c.done()) {
            char ch = c.peek();
            if (ch == '#') {
                while (!c.done() && c.peek() != '\n') c.advance();
            } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
                c.advance();
            } else {
                break;
            }
        }
        Token t;
        t.line = c.line;
        t.col = c.col;
        t.offset = c.pos;
        if (c.done()) {
            t.kind = TokenKind::End;
            out.push_back(std::move(t));
            return out;
        }
        char ch = c.peek();
        auto single = [&](TokenKind k) {
            t.kind = k;
            t.text = ch;
            c.advance();
        };
        if (ident_start(ch)) {
            std::string word;
            while (!c.done() && ident_char(c.peek())) {
                word += c.peek();
                c.advance();
            }
            t.kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Ident;
            t.text = std::move(word);
        } else if (digit(ch)) {
            if (looks_like_date(c)) {
                std::string raw(text.substr(c.pos, 10));
                auto d = parse_date(raw);
                if (!d) {
                    throw ParseError(t.line, t.col, "invalid calendar date '" + raw + "'", {"date"});
                }
                for (int i = 0; i < 10; ++i) c.advance();
                t.kind = TokenKind::DateTok;
                t.text = std::move(raw);
                t.date = *d;
            } else {
                std::string raw;
                while (digit(c.peek())) {
                    raw += c.peek();
                    c.advance();
                }
                if (c.peek() == '.' && digit(c.peek(1))) {
                    raw += '.';
                    c.advance();
                    while (digit(c.peek())) {
                        raw += c.peek();
                        c.advance();
                    }
                }
                if ((c.peek() == 'e' || c.peek() == 'E') &&
                    (digit(c.peek(1)) ||
                     ((c.peek(1) == '+' || c.peek(1) == '-') && digit(c.peek(2))))) {
                    raw += c.peek();
                    c.advance();
                    if (c.peek() == '+' || c.peek() == '-') {
                        raw += c.peek();
                        c.advance();
                    }
                    while (digit(c.peek())) {
                        raw += c.peek();
                        c.advance();
                    }
                }
                double value = 0;
                auto res = std::from_chars(raw.data(), raw.data() + raw.size(), value);
                if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
                    throw ParseError(t.line, t.col, "malformed number '" + raw + "'", {"number"});
                }
                t.kind = TokenKind::Number;
                t.text = std::move(raw);
                t.number = value;
            }
        } else if (ch == '"') {
            c.advance();
            std::string value;
            while (true) {
                if (c.done() || c.peek() == '\n') {
                    throw ParseError(t.line, t.col, "unterminated string literal", {"'\"'"});
                }
                char s = c.peek();
                c.advance();
                if (s == '"') break;
                if (s == '\\') {
                    char esc = c.peek();
                    c.advance();
                    switch (esc) {
                        case '"': value += '"'; break;
                        case '\\': value += '\\'; break;
                        case 'n': value += '\n'; break;
                        case 't': value += '\t'; break;
                        case 'r': value += '\r'; break;
                        default:
                            throw ParseError(c.line, c.col, std::string("unknown escape '\\") + esc + "'",
                                             {"escape"});
                    }
                } else {
                    value += s;
                }
            }
            t.kind = TokenKind::String;
            t.text = std::move(value);
        } else {
            switch (ch) {
                case '{': single(TokenKind::LBrace); break;
                case '}': single(TokenKind::RBrace); break;
                case '(': single(TokenKind::LParen); break;
                case ')': single(TokenKind::RParen); break;
                case ',': single(TokenKind::Comma); break;
                case ':': single(TokenKind::Colon); break;
                case '.': single(TokenKind::Dot); break;
                case '+': single(TokenKind::Plus); break;
                case '-': single(TokenKind::Minus); break;
                case '*': single(TokenKind::Star); break;
                case '/': single(TokenKind::Slash); break;
                case '=':
                    if (c.peek(1) == '=') {
                        t.kind = TokenKind::EqEq;
                        t.text = "==";
                        c.advance();
                        c.advance();
                    } else {
                        single(TokenKind::Assign);
                    }
                    break;
                case '!':
                    if (c.peek(1) == '=') {
                        t.kind = TokenKind::NotEq;
                        t.text = "!=";
                        c.advance();
                        c.advance();
                    } else {
                        throw ParseError(t.line, t.col, "unexpected character '!'", {"'!='"});
                    }
                    break;
                case '<':
                    if (c.peek(1) == '=') {
                        t.kind = TokenKind::Le;
                        t.text = "<=";
                        c.advance();
                        c.advance();
                    } else {
                        single(TokenKind::Lt);
                    }
                    break;
                case '>':
                    if (c.peek(1) == '=') {
                        t.kind = TokenKind::Ge;
                        t.text = ">=";
                        c.advance();
                        c.advance();
                    } else {
                        single(TokenKind::Gt);
                    }
                    break;
                default:
                    throw ParseError(t.line, t.col,
                                     std::string("unexpected character '") + ch + "'", {});
            }
        }
        t.length = c.pos - t.offset;
        out.push_back(std::move(t));
    }
}

std::string token_description(const Token& t) {
    switch (t.kind) {
        case TokenKind::Ident: return "identifier '" + t.text + "'";
        case TokenKind::Keyword: return "'" + t.text + "'";
        case TokenKind::Number: return "number '" + t.text + "'";
        case TokenKind::String: return "string literal";
        case TokenKind::DateTok: return "date '" + t.text + "'";
        case TokenKind::End: return "end of input";
        default: return "'" + t.text + "'";
    }
}

}  // namespace contestable
