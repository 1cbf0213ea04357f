// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include <dosscan/frontend/ast.hpp>

namespace dosscan::frontend {

//! Parses a whole `.sol` file. Constructs outside the modelled subset
//! (inline assembly, events, enums, libraries, interfaces, inheritance lists,
//! imports) become SkippedRegion / SkippedStmt nodes. Throws LexError or
//! ParseError.
[[nodiscard]] SourceUnit parse_source_unit(std::string_view source, std::string_view file = "<input>");

//! Parses exactly one expression spanning the whole input.
[[nodiscard]] Expr parse_expression(std::string_view source, std::string_view file = "<input>");

//! Parses exactly one statement spanning the whole input.
[[nodiscard]] Stmt parse_statement(std::string_view source, std::string_view file = "<input>");

}  // namespace dosscan::frontend
