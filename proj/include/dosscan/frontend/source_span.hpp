// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dosscan::frontend {

//! A region of a source file. Lines and columns are 1-based; the end position
//! names the last character covered (inclusive). Offsets are byte offsets into
//! the file text, half-open: [begin, end).
struct SourceSpan {
    std::string file;
    int start_line{1};
    int start_col{1};
    int end_line{1};
    int end_col{1};
    std::size_t begin{0};
    std::size_t end{0};

    //! "file:L:C-L:C"
    [[nodiscard]] std::string to_string() const;

    //! "L:C-L:C" (no file component), used in AST dumps
    [[nodiscard]] std::string position() const;

    [[nodiscard]] bool contains(const SourceSpan& inner) const noexcept {
        return begin <= inner.begin && inner.end <= end;
    }

    //! Covering span from the start of `first` to the end of `last`.
    static SourceSpan join(const SourceSpan& first, const SourceSpan& last);

    bool operator==(const SourceSpan&) const = default;
};

//! Raised on unterminated strings/comments and illegal characters.
class LexError : public std::runtime_error {
  public:
    LexError(SourceSpan span, const std::string& message)
        : std::runtime_error(span.to_string() + ": lex error: " + message), span_(std::move(span)) {}

    [[nodiscard]] const SourceSpan& span() const noexcept { return span_; }

  private:
    SourceSpan span_;
};

//! Raised on malformed constructs inside the supported subset.
class ParseError : public std::runtime_error {
  public:
    ParseError(SourceSpan span, std::string expected, std::string found)
        : std::runtime_error(span.to_string() + ": parse error: expected " + expected + ", found " + found),
          span_(std::move(span)),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    [[nodiscard]] const SourceSpan& span() const noexcept { return span_; }
    [[nodiscard]] const std::string& expected() const noexcept { return expected_; }
    [[nodiscard]] const std::string& found() const noexcept { return found_; }

  private:
    SourceSpan span_;
    std::string expected_;
    std::string found_;
};

}  // namespace dosscan::frontend
