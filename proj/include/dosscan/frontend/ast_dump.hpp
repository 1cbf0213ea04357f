// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <dosscan/frontend/ast.hpp>

namespace dosscan::frontend {

//! Line-oriented debug dump. Every node is one line of the form
//!
//!     <indent><head> <attr>... [@L:C-L:C]
//!
//! with two spaces of indentation per nesting level and children listed
//! in source order below their parent. Strings are double-quoted with
//! C-style escapes. With `spans = false` the dump captures only the tree
//! shape and payloads; two ASTs are structurally identical iff these dumps
//! match.
struct DumpOptions {
    bool spans{true};
};

[[nodiscard]] std::string dump(const SourceUnit& unit, const DumpOptions& options = {});
[[nodiscard]] std::string dump(const Expr& expr, const DumpOptions& options = {});
[[nodiscard]] std::string dump(const Stmt& stmt, const DumpOptions& options = {});

//! Double-quoted, escaped rendering of `s`.
[[nodiscard]] std::string quote(std::string_view s);

}  // namespace dosscan::frontend
