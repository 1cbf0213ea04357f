// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/frontend/lexer.hpp>

#include <catch_amalgamated.hpp>

namespace dosscan::frontend {

TEST_CASE("tokenize guarded send statement") {
    const auto toks = tokenize("if(!lender[i].addr.send(payment)) throw;");
    // if ( ! lender [ i ] . addr . send ( payment ) ) throw ;
    REQUIRE(toks.size() == 17);
    CHECK(toks[toks.size() - 2].is_keyword("throw"));
    CHECK(toks.back().is_punct(";"));
    CHECK(toks[0].is_keyword("if"));
    CHECK(toks[3].kind == TokenKind::kIdentifier);
    CHECK(toks[3].text == "lender");
    CHECK(toks[3].span.start_col == 5);
    CHECK(toks[3].span.end_col == 10);
}

TEST_CASE("tokenize empty input") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("  \n\t // only a comment\n /* block */ ").empty());
}

TEST_CASE("unterminated block comment reports end of file") {
    try {
        (void)tokenize("/* open");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.span().begin == 7);
        CHECK(e.span().start_line == 1);
        CHECK(e.span().start_col == 8);
    }
}

TEST_CASE("unterminated string and illegal characters") {
    CHECK_THROWS_AS(tokenize("x = \"abc"), LexError);
    CHECK_THROWS_AS(tokenize("x = 'abc\n'"), LexError);
    CHECK_THROWS_AS(tokenize("a @ b"), LexError);
    CHECK_THROWS_AS(tokenize("a # b"), LexError);
    try {
        (void)tokenize("ok\n  \\");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.span().start_line == 2);
        CHECK(e.span().start_col == 3);
    }
}

TEST_CASE("longest punctuator wins") {
    const auto toks = tokenize("a<<=b>>c=>d**e");
    REQUIRE(toks.size() == 9);
    CHECK(toks[1].text == "<<=");
    CHECK(toks[3].text == ">>");
    CHECK(toks[5].text == "=>");
    CHECK(toks[7].text == "**");
}

TEST_CASE("numbers, strings and escapes") {
    const auto toks = tokenize("0xFF 1_000 1.5e3 \"a\\\"b\\n\" 'c\\x41'");
    REQUIRE(toks.size() == 5);
    CHECK(toks[0].text == "0xFF");
    CHECK(toks[1].text == "1_000");
    CHECK(toks[2].text == "1.5e3");
    CHECK(toks[3].kind == TokenKind::kString);
    CHECK(toks[3].text == "a\"b\n");
    CHECK(toks[4].text == "cA");
}

TEST_CASE("keywords versus identifiers") {
    const auto toks = tokenize("function $x _ payable msg");
    CHECK(toks[0].kind == TokenKind::kKeyword);
    CHECK(toks[1].kind == TokenKind::kIdentifier);
    CHECK(toks[2].kind == TokenKind::kIdentifier);
    CHECK(toks[3].kind == TokenKind::kKeyword);
    CHECK(toks[4].kind == TokenKind::kIdentifier);
}

TEST_CASE("spans track lines across comments") {
    const auto toks = tokenize("a // c\n/* x\n y */ b");
    REQUIRE(toks.size() == 2);
    CHECK(toks[1].span.start_line == 3);
    CHECK(toks[1].span.start_col == 7);
    CHECK(toks[1].span.begin == 18);
}

}  // namespace dosscan::frontend
