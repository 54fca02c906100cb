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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "scalar.hpp"

namespace contestable {

enum class TokenKind {
    Ident,
    Keyword,
    Number,
    String,
    DateTok,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Assign,  // =
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

struct Token {
    TokenKind kind;
    std::string text;      // keyword/identifier spelling, decoded string value, raw number text
    double number = 0;     // Number tokens
    Date date;             // DateTok tokens
    int line = 1;          // 1-based
    int col = 1;           // 1-based
    std::size_t offset = 0;  // byte offset of the token start in the source
    std::size_t length = 0;  // byte length of the raw token (including string quotes)
};

/// Comments run from '#' to end of line. Keywords are reserved, lowercase.
bool is_keyword(std::string_view word);

/// Tokenize contract text. Throws ParseError on lexical errors.
std::vector<Token> lex_contract(std::string_view text);

/// Token description for expected-token sets and messages ("'{'", "identifier", ...).
std::string token_description(const Token& t);

}  // namespace contestable
