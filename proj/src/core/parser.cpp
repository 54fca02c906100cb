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

//
// Grammar (comments run from '#' to end of line; keywords reserved, lowercase):
//
//   contract  = "contract" STRING "version" INT "effective" DATE "{" {source | norm} "}" ;
//   source    = "source" IDENT "(" column {"," column} ")" "from" STRING ;
//   column    = IDENT ":" ("number" | "string" | "date") ;
//   norm      = "norm" IDENT STRING "{" "on" pattern ["when" expr] "require" expr "}" ;
//   pattern   = "event" IDENT "(" [IDENT "=" IDENT {"," IDENT "=" IDENT}] ")" ;
//   expr      = orexpr ;
//   orexpr    = andexpr {"or" andexpr} ;
//   andexpr   = notexpr {"and" notexpr} ;
//   notexpr   = ["not"] cmp ;
//   cmp       = sum [("=="|"!="|"<"|"<="|">"|">=") sum] ;
//   sum       = term {("+"|"-") term} ;
//   term      = unary {("*"|"/") unary} ;
//   unary     = NUMBER | STRING | DATE | "true" | "false" | IDENT
//             | "abs" "(" expr ")"
//             | "same_day" "(" expr "," expr ")"
//             | "let" IDENT "=" expr "in" expr
//             | "avg" "(" IDENT "." IDENT "where" expr ")"
//             | "exists" pattern ["where" expr] "before" "trigger"
//             | "(" expr ")" ;
//

#include "parser.hpp"

#include "errors.hpp"
#include "lexer.hpp"

namespace contestable {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(lex_contract(text)) {}

    Contract parse() {
        Contract c;
        expect_keyword("contract");
        c.id = expect(TokenKind::String, "contract id string").text;
        expect_keyword("version");
        c.version = expect_int("version number");
        expect_keyword("effective");
        c.effective_from = expect(TokenKind::DateTok, "date").date;
        expect(TokenKind::LBrace, "'{'");
        while (!at(TokenKind::RBrace)) {
            if (at_keyword("source")) {
                c.sources.push_back(parse_source());
            } else if (at_keyword("norm")) {
                c.norms.push_back(parse_norm());
            } else {
                fail({"'source'", "'norm'", "'}'"});
            }
        }
        advance();
        expect(TokenKind::End, "end of input");
        return c;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& cur() const { return tokens_[pos_]; }
    void advance() {
        if (cur().kind != TokenKind::End) ++pos_;
    }
    bool at(TokenKind k) const { return cur().kind == k; }
    bool at_keyword(std::string_view kw) const {
        return cur().kind == TokenKind::Keyword && cur().text == kw;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = cur();
        throw ParseError(t.line, t.col, "unexpected " + token_description(t),
                         std::move(expected));
    }

    Token expect(TokenKind k, const std::string& what) {
        if (!at(k)) fail({what});
        Token t = cur();
        advance();
        return t;
    }

    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) fail({"'" + std::string(kw) + "'"});
        advance();
    }

    std::int64_t expect_int(const std::string& what) {
        if (!at(TokenKind::Number)) fail({what});
        const Token& t = cur();
        for (char ch : t.text) {
            if (ch < '0' || ch > '9') fail({what});
        }
        if (t.number > 9007199254740992.0) fail({what + " (too large)"});
        auto v = static_cast<std::int64_t>(t.number);
        advance();
        return v;
    }

    std::string expect_ident(const std::string& what) {
        return expect(TokenKind::Ident, what).text;
    }

    SourceDecl parse_source() {
        advance();  // 'source'
        SourceDecl s;
        s.name = expect_ident("source name");
        expect(TokenKind::LParen, "'('");
        while (true) {
            std::string col = expect_ident("column name");
            expect(TokenKind::Colon, "':'");
            if (!at(TokenKind::Keyword) ||
                (cur().text != "number" && cur().text != "string" && cur().text != "date")) {
                fail({"'number'", "'string'", "'date'"});
            }
            s.columns.emplace_back(std::move(col), *kind_from_name(cur().text));
            advance();
            if (at(TokenKind::Comma)) {
                advance();
                continue;
            }
            break;
        }
        expect(TokenKind::RParen, "')'");
        expect_keyword("from");
        s.location = expect(TokenKind::String, "source location string").text;
        return s;
    }

    NormDef parse_norm() {
        advance();  // 'norm'
        NormDef n;
        n.id = expect_ident("norm id");
        n.title = expect(TokenKind::String, "norm title string").text;
        expect(TokenKind::LBrace, "'{'");
        expect_keyword("on");
        n.trigger = parse_pattern();
        if (at_keyword("when")) {
            advance();
            n.when_clause = parse_expr();
        }
        expect_keyword("require");
        n.require_clause = parse_expr();
        expect(TokenKind::RBrace, "'}'");
        return n;
    }

    EventPattern parse_pattern() {
        expect_keyword("event");
        EventPattern p;
        p.event_type = expect_ident("event type");
        expect(TokenKind::LParen, "'('");
        if (!at(TokenKind::RParen)) {
            while (true) {
                std::string attr = expect_ident("attribute name");
                expect(TokenKind::Assign, "'='");
                std::string var = expect_ident("variable name");
                p.binders.emplace_back(std::move(attr), std::move(var));
                if (at(TokenKind::Comma)) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect(TokenKind::RParen, "')'");
        return p;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (at_keyword("or")) {
            advance();
            lhs = make_expr<Binary>(BinaryOp::Or, std::move(lhs), parse_and());
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_not();
        while (at_keyword("and")) {
            advance();
            lhs = make_expr<Binary>(BinaryOp::And, std::move(lhs), parse_not());
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (at_keyword("not")) {
            advance();
            return make_expr<Not>(parse_cmp());
        }
        return parse_cmp();
    }

    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_sum();
        BinaryOp op;
        switch (cur().kind) {
            case TokenKind::EqEq: op = BinaryOp::Eq; break;
            case TokenKind::NotEq: op = BinaryOp::Ne; break;
            case TokenKind::Lt: op = BinaryOp::Lt; break;
            case TokenKind::Le: op = BinaryOp::Le; break;
            case TokenKind::Gt: op = BinaryOp::Gt; break;
            case TokenKind::Ge: op = BinaryOp::Ge; break;
            default: return lhs;
        }
        advance();
        return make_expr<Binary>(op, std::move(lhs), parse_sum());
    }

    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
            BinaryOp op = at(TokenKind::Plus) ? BinaryOp::Add : BinaryOp::Sub;
            advance();
            lhs = make_expr<Binary>(op, std::move(lhs), parse_term());
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (at(TokenKind::Star) || at(TokenKind::Slash)) {
            BinaryOp op = at(TokenKind::Star) ? BinaryOp::Mul : BinaryOp::Div;
            advance();
            lhs = make_expr<Binary>(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        switch (cur().kind) {
            case TokenKind::Number: {
                double v = cur().number;
                advance();
                return make_expr<NumberLit>(v);
            }
            case TokenKind::String: {
                std::string v = cur().text;
                advance();
                return make_expr<StringLit>(std::move(v));
            }
            case TokenKind::DateTok: {
                Date d = cur().date;
                advance();
                return make_expr<DateLit>(d);
            }
            case TokenKind::Ident: {
                std::string name = cur().text;
                advance();
                return make_expr<VarRef>(std::move(name));
            }
            case TokenKind::LParen: {
                advance();
                ExprPtr inner = parse_expr();
                expect(TokenKind::RParen, "')'");
                return inner;
            }
            case TokenKind::Keyword:
                if (cur().text == "true" || cur().text == "false") {
                    bool v = cur().text == "true";
                    advance();
                    return make_expr<BoolLit>(v);
                }
                if (cur().text == "abs") {
                    advance();
                    expect(TokenKind::LParen, "'('");
                    ExprPtr inner = parse_expr();
                    expect(TokenKind::RParen, "')'");
                    return make_expr<Abs>(std::move(inner));
                }
                if (cur().text == "same_day") {
                    advance();
                    expect(TokenKind::LParen, "'('");
                    ExprPtr a = parse_expr();
                    expect(TokenKind::Comma, "','");
                    ExprPtr b = parse_expr();
                    expect(TokenKind::RParen, "')'");
                    return make_expr<SameDay>(std::move(a), std::move(b));
                }
                if (cur().text == "let") {
                    advance();
                    std::string name = expect_ident("binding name");
                    expect(TokenKind::Assign, "'='");
                    ExprPtr value = parse_expr();
                    expect_keyword("in");
                    ExprPtr body = parse_expr();
                    return make_expr<Let>(std::move(name), std::move(value), std::move(body));
                }
                if (cur().text == "avg") {
                    advance();
                    expect(TokenKind::LParen, "'('");
                    std::string source = expect_ident("source name");
                    expect(TokenKind::Dot, "'.'");
                    std::string column = expect_ident("column name");
                    expect_keyword("where");
                    ExprPtr where = parse_expr();
                    expect(TokenKind::RParen, "')'");
                    return make_expr<Aggregate>(std::move(source), std::move(column),
                                                std::move(where));
                }
                if (cur().text == "exists") {
                    advance();
                    EventPattern pattern = parse_pattern();
                    ExprPtr where;
                    if (at_keyword("where")) {
                        advance();
                        where = parse_expr();
                    }
                    expect_keyword("before");
                    expect_keyword("trigger");
                    return make_expr<ExistsBefore>(std::move(pattern), std::move(where));
                }
                [[fallthrough]];
            default:
                fail({"expression"});
        }
    }
};

}  // namespace

Contract parse_contract(std::string_view text) {
    return Parser(text).parse();
}

}  // namespace contestable
