// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <dosscan/frontend/source_span.hpp>

namespace dosscan::frontend {

enum class TokenKind {
    kIdentifier,
    kKeyword,
    kNumber,
    kString,
    kPunct,
    kEnd,
};

struct Token {
    TokenKind kind{TokenKind::kEnd};
    std::string text;  // string literals hold the unescaped contents
    SourceSpan span;

    [[nodiscard]] bool is(TokenKind k, std::string_view t) const noexcept { return kind == k && text == t; }
    [[nodiscard]] bool is_punct(std::string_view t) const noexcept { return is(TokenKind::kPunct, t); }
    [[nodiscard]] bool is_keyword(std::string_view t) const noexcept { return is(TokenKind::kKeyword, t); }
};

[[nodiscard]] bool is_keyword(std::string_view word) noexcept;

//! Splits `source` into tokens, skipping whitespace and `//` / `/* */`
//! comments. The returned stream does not include an end marker.
//! Throws LexError.
[[nodiscard]] std::vector<Token> tokenize(std::string_view source, std::string_view file = "<input>");

[[nodiscard]] std::string_view to_string(TokenKind kind) noexcept;

}  // namespace dosscan::frontend
