// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <dosscan/frontend/ast.hpp>

namespace dosscan::frontend {

//! Renders an AST back to source text accepted by parse_source_unit.
//! Blocks are always braced, nested operators are parenthesized, and value
//! clauses use the `.value(v)` form. Skipped regions are emitted verbatim.
[[nodiscard]] std::string print_source(const SourceUnit& unit);
[[nodiscard]] std::string print_expr(const Expr& expr);
[[nodiscard]] std::string print_stmt(const Stmt& stmt);

}  // namespace dosscan::frontend
