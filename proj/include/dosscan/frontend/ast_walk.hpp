// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <type_traits>

#include <dosscan/frontend/ast.hpp>

namespace dosscan::frontend {

//! Pre-order visit of `e` and all of its sub-expressions.
template <class F>
void walk_expr(const Expr& e, F&& f) {
    f(e);
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MemberAccess>) {
                walk_expr(*n.base, f);
            } else if constexpr (std::is_same_v<T, IndexAccess>) {
                walk_expr(*n.base, f);
                walk_expr(*n.index, f);
            } else if constexpr (std::is_same_v<T, Call>) {
                walk_expr(*n.callee, f);
                for (const auto& a : n.args) walk_expr(a, f);
                if (n.value) walk_expr(**n.value, f);
                if (n.gas) walk_expr(**n.gas, f);
            } else if constexpr (std::is_same_v<T, BuiltinGuard>) {
                for (const auto& a : n.args) walk_expr(a, f);
            } else if constexpr (std::is_same_v<T, Unary>) {
                walk_expr(*n.operand, f);
            } else if constexpr (std::is_same_v<T, Binary>) {
                walk_expr(*n.lhs, f);
                walk_expr(*n.rhs, f);
            } else if constexpr (std::is_same_v<T, Conditional>) {
                walk_expr(*n.condition, f);
                walk_expr(*n.if_true, f);
                walk_expr(*n.if_false, f);
            }
        },
        e.node);
}

template <class FS, class FE>
void walk_stmt(const Stmt& s, FS&& on_stmt, FE&& on_expr);

template <class FS, class FE>
void walk_block(const Block& b, FS&& on_stmt, FE&& on_expr) {
    for (const auto& s : b.statements) walk_stmt(s, on_stmt, on_expr);
}

//! Pre-order visit of `s`, nested statements and every expression they hold.
template <class FS, class FE>
void walk_stmt(const Stmt& s, FS&& on_stmt, FE&& on_expr) {
    on_stmt(s);
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Block>) {
                walk_block(n, on_stmt, on_expr);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                walk_expr(n.condition, on_expr);
                walk_block(n.then_branch, on_stmt, on_expr);
                if (n.else_branch) walk_block(*n.else_branch, on_stmt, on_expr);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                if (n.init) walk_stmt(**n.init, on_stmt, on_expr);
                if (n.condition) walk_expr(*n.condition, on_expr);
                if (n.post) walk_expr(*n.post, on_expr);
                walk_block(n.body, on_stmt, on_expr);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                walk_expr(n.condition, on_expr);
                walk_block(n.body, on_stmt, on_expr);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                walk_expr(n.expr, on_expr);
            } else if constexpr (std::is_same_v<T, VarDeclStmt>) {
                if (n.init) walk_expr(*n.init, on_expr);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                if (n.value) walk_expr(*n.value, on_expr);
            } else if constexpr (std::is_same_v<T, EmitStmt>) {
                walk_expr(n.event, on_expr);
            }
        },
        s.node);
}

//! Expressions only.
template <class FE>
void walk_exprs(const Block& b, FE&& on_expr) {
    walk_block(b, [](const Stmt&) {}, on_expr);
}

}  // namespace dosscan::frontend
