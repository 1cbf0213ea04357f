// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/detect/detector.hpp>

#include <algorithm>
#include <tuple>

#include <dosscan/frontend/ast_walk.hpp>

namespace dosscan::detect {

using namespace frontend;

std::string_view to_string(ExternalCallKind kind) noexcept {
    switch (kind) {
        case ExternalCallKind::kSend: return "Send";
        case ExternalCallKind::kTransfer: return "Transfer";
        case ExternalCallKind::kLowLevelCall: return "LowLevelCall";
    }
    return "?";
}

std::string_view to_string(PatternKind kind) noexcept {
    switch (kind) {
        case PatternKind::kIteration: return "Iteration";
        case PatternKind::kIfThrow: return "IfThrow";
        case PatternKind::kIfRevert: return "IfRevert";
        case PatternKind::kAssert: return "Assert";
        case PatternKind::kRequire: return "Require";
    }
    return "?";
}

std::optional<PatternKind> parse_pattern_kind(std::string_view text) noexcept {
    for (auto k : {PatternKind::kIteration, PatternKind::kIfThrow, PatternKind::kIfRevert, PatternKind::kAssert,
                   PatternKind::kRequire}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

std::optional<ExternalCallKind> parse_call_kind(std::string_view text) noexcept {
    for (auto k : {ExternalCallKind::kSend, ExternalCallKind::kTransfer, ExternalCallKind::kLowLevelCall}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

std::optional<ExternalCallKind> external_call_kind(const Expr& e) noexcept {
    const auto* call = e.as<Call>();
    if (!call) return std::nullopt;
    const auto* m = call->callee->as<MemberAccess>();
    if (!m) return std::nullopt;
    if (m->member == "send") return ExternalCallKind::kSend;
    if (m->member == "transfer") return ExternalCallKind::kTransfer;
    if (m->member == "call") return ExternalCallKind::kLowLevelCall;
    return std::nullopt;
}

std::string Accessibility::to_string() const {
    switch (kind) {
        case Kind::kExternallyCallable: return "ExternallyCallable";
        case Kind::kGuardedOwnerOnly: return "GuardedOwnerOnly(" + guard_name + ")";
        case Kind::kInternalOnly: return "InternalOnly";
    }
    return "?";
}

std::optional<Accessibility> parse_accessibility(std::string_view text) {
    if (text == "ExternallyCallable") return Accessibility{};
    if (text == "InternalOnly") return Accessibility{Accessibility::Kind::kInternalOnly, "", ""};
    constexpr std::string_view kPrefix{"GuardedOwnerOnly("};
    if (text.size() > kPrefix.size() + 1 && text.substr(0, kPrefix.size()) == kPrefix && text.back() == ')') {
        Accessibility a;
        a.kind = Accessibility::Kind::kGuardedOwnerOnly;
        a.guard_name = std::string{text.substr(kPrefix.size(), text.size() - kPrefix.size() - 1)};
        return a;
    }
    return std::nullopt;
}

bool contains_external_call(const Expr& e) {
    bool found = false;
    walk_expr(e, [&](const Expr& x) { found = found || external_call_kind(x).has_value(); });
    return found;
}

bool contains_external_call(const Stmt& s) {
    bool found = false;
    walk_stmt(s, [](const Stmt&) {}, [&](const Expr& x) { found = found || external_call_kind(x).has_value(); });
    return found;
}

namespace {

    bool block_contains_throw(const Block& b) {
        bool found = false;
        walk_block(b, [&](const Stmt& s) { found = found || s.as<ThrowStmt>(); }, [](const Expr&) {});
        return found;
    }

    bool block_contains_revert(const Block& b) {
        bool found = false;
        walk_exprs(b, [&](const Expr& e) {
            const auto* g = e.as<BuiltinGuard>();
            found = found || (g && g->kind == GuardKind::kRevert);
        });
        return found;
    }

    bool first_is_abort(const Block& b) {
        if (b.statements.empty()) return false;
        const Stmt& s = b.statements.front();
        if (s.as<ThrowStmt>()) return true;
        if (const auto* es = s.as<ExprStmt>()) {
            const auto* g = es->expr.as<BuiltinGuard>();
            return g && g->kind == GuardKind::kRevert;
        }
        if (const auto* inner = s.as<Block>()) return first_is_abort(*inner);
        return false;
    }

    //! `msg.sender <op> X` (either order) with X a state variable of c.
    std::optional<std::string> sender_comparison(const Expr& e, std::string_view op, const ContractDecl& c) {
        const auto* b = e.as<Binary>();
        if (!b || b->op != op) return std::nullopt;
        const Expr* other = nullptr;
        if (b->lhs->as<MsgSender>()) other = &*b->rhs;
        if (b->rhs->as<MsgSender>()) other = &*b->lhs;
        if (!other) return std::nullopt;
        const auto* id = other->as<Identifier>();
        if (!id || !c.find_state_var(id->name)) return std::nullopt;
        return id->name;
    }

    struct Context {
        const Stmt* loop{nullptr};
        const BuiltinGuard* guard{nullptr};
        SourceSpan guard_span;
        const Stmt* if_stmt{nullptr};
        std::optional<bool> negated;  // polarity within an if condition; nullopt = not boolean-controlling
    };

    class Detector {
      public:
        Detector(const ContractDecl& c, const FunctionDecl& f, const SourceUnit& u) : c_(c), f_(f), u_(u) {}

        std::vector<PotentialFinding> run() {
            if (f_.body) block(*f_.body, Context{});
            return std::move(out_);
        }

      private:
        const ContractDecl& c_;
        const FunctionDecl& f_;
        const SourceUnit& u_;
        std::vector<PotentialFinding> out_;
        std::optional<Accessibility> access_;

        void emit(PatternKind p, ExternalCallKind k, const SourceSpan& site, const SourceSpan& call_site) {
            for (const auto& x : out_) {
                if (x.pattern == p && x.site == site) return;
            }
            if (!access_) access_ = classify_accessibility(f_, c_, &u_);
            PotentialFinding fd;
            fd.contract_name = c_.name;
            fd.function_name = f_.name;
            fd.function_signature = f_.signature();
            fd.pattern = p;
            fd.call_kind = k;
            fd.site = site;
            fd.call_site = call_site;
            fd.accessibility = *access_;
            out_.push_back(std::move(fd));
        }

        void site(const Expr& e, ExternalCallKind k, const Context& ctx) {
            // (1) the call decides an if whose failure branch aborts
            if (ctx.if_stmt && ctx.negated) {
                const auto& branch_if = std::get<IfStmt>(ctx.if_stmt->node);
                const Block* failure = *ctx.negated ? &branch_if.then_branch
                                                    : (branch_if.else_branch ? &*branch_if.else_branch : nullptr);
                if (failure && block_contains_throw(*failure)) {
                    emit(PatternKind::kIfThrow, k, ctx.if_stmt->span, e.span);
                    return;
                }
                if (failure && block_contains_revert(*failure)) {
                    emit(PatternKind::kIfRevert, k, ctx.if_stmt->span, e.span);
                    return;
                }
            }
            const bool guarded = ctx.guard && ctx.guard->kind != GuardKind::kRevert;
            // (2) an aborting call inside a loop
            if (ctx.loop && (k == ExternalCallKind::kTransfer || guarded)) {
                emit(PatternKind::kIteration, k, ctx.loop->span, e.span);
                return;
            }
            // (3) the call is an argument of require/assert
            if (guarded) {
                emit(ctx.guard->kind == GuardKind::kAssert ? PatternKind::kAssert : PatternKind::kRequire, k,
                     ctx.guard_span, e.span);
            }
        }

        void expr(const Expr& e, const Context& ctx) {
            if (const auto k = external_call_kind(e)) site(e, *k, ctx);

            Context opaque = ctx;
            opaque.negated.reset();
            std::visit(
                [&](const auto& n) {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, Unary>) {
                        Context inner = ctx;
                        if (n.op == "!" && ctx.negated) {
                            inner.negated = !*ctx.negated;
                        } else {
                            inner.negated.reset();
                        }
                        expr(*n.operand, inner);
                    } else if constexpr (std::is_same_v<T, Binary>) {
                        if (n.op == "&&" || n.op == "||") {
                            expr(*n.lhs, ctx);
                            expr(*n.rhs, ctx);
                        } else if ((n.op == "==" || n.op == "!=") && ctx.negated &&
                                   (bool_literal(*n.lhs) || bool_literal(*n.rhs))) {
                            const bool lit = bool_literal(*n.lhs) ? *bool_literal(*n.lhs) : *bool_literal(*n.rhs);
                            // `x == false` and `x != true` invert
                            const bool flip = (n.op == "==") != lit;
                            Context inner = ctx;
                            inner.negated = flip ? !*ctx.negated : *ctx.negated;
                            expr(*n.lhs, inner);
                            expr(*n.rhs, inner);
                        } else {
                            expr(*n.lhs, opaque);
                            expr(*n.rhs, opaque);
                        }
                    } else if constexpr (std::is_same_v<T, BuiltinGuard>) {
                        Context inner = opaque;
                        inner.guard = &n;
                        inner.guard_span = e.span;
                        for (const auto& a : n.args) expr(a, inner);
                    } else if constexpr (std::is_same_v<T, MemberAccess>) {
                        expr(*n.base, opaque);
                    } else if constexpr (std::is_same_v<T, IndexAccess>) {
                        expr(*n.base, opaque);
                        expr(*n.index, opaque);
                    } else if constexpr (std::is_same_v<T, Call>) {
                        expr(*n.callee, opaque);
                        for (const auto& a : n.args) expr(a, opaque);
                        if (n.value) expr(**n.value, opaque);
                        if (n.gas) expr(**n.gas, opaque);
                    } else if constexpr (std::is_same_v<T, Conditional>) {
                        expr(*n.condition, opaque);
                        expr(*n.if_true, opaque);
                        expr(*n.if_false, opaque);
                    }
                },
                e.node);
        }

        static std::optional<bool> bool_literal(const Expr& e) {
            const auto* lit = e.as<Literal>();
            if (!lit || lit->kind != Literal::Kind::kBool) return std::nullopt;
            return lit->text == "true";
        }

        void block(const Block& b, const Context& ctx) {
            for (const auto& s : b.statements) stmt(s, ctx);
        }

        void stmt(const Stmt& s, const Context& outer) {
            Context ctx;
            ctx.loop = outer.loop;
            std::visit(
                [&](const auto& n) {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, Block>) {
                        block(n, ctx);
                    } else if constexpr (std::is_same_v<T, IfStmt>) {
                        Context cond = ctx;
                        cond.if_stmt = &s;
                        cond.negated = false;
                        expr(n.condition, cond);
                        block(n.then_branch, ctx);
                        if (n.else_branch) block(*n.else_branch, ctx);
                    } else if constexpr (std::is_same_v<T, ForStmt>) {
                        Context loop = ctx;
                        loop.loop = &s;
                        if (n.init) stmt(**n.init, loop);
                        if (n.condition) expr(*n.condition, loop);
                        if (n.post) expr(*n.post, loop);
                        block(n.body, loop);
                    } else if constexpr (std::is_same_v<T, WhileStmt>) {
                        Context loop = ctx;
                        loop.loop = &s;
                        expr(n.condition, loop);
                        block(n.body, loop);
                    } else if constexpr (std::is_same_v<T, ExprStmt>) {
                        expr(n.expr, ctx);
                    } else if constexpr (std::is_same_v<T, VarDeclStmt>) {
                        if (n.init) expr(*n.init, ctx);
                    } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                        if (n.value) expr(*n.value, ctx);
                    } else if constexpr (std::is_same_v<T, EmitStmt>) {
                        expr(n.event, ctx);
                    }
                },
                s.node);
        }
    };

    const ModifierDecl* resolve_modifier(std::string_view name, const ContractDecl& c, const SourceUnit* unit) {
        if (const auto* m = c.find_modifier(name)) return m;
        if (unit) {
            for (const auto& other : unit->contracts) {
                if (const auto* m = other.find_modifier(name)) return m;
            }
        }
        return nullptr;
    }

}  // namespace

std::optional<std::string> sender_guard_var(const Stmt& s, const ContractDecl& c) {
    if (const auto* es = s.as<ExprStmt>()) {
        const auto* g = es->expr.as<BuiltinGuard>();
        if (!g || g->kind == GuardKind::kRevert || g->args.empty()) return std::nullopt;
        return sender_comparison(g->args.front(), "==", c);
    }
    if (const auto* i = s.as<IfStmt>()) {
        if (i->else_branch || !first_is_abort(i->then_branch)) return std::nullopt;
        return sender_comparison(i->condition, "!=", c);
    }
    return std::nullopt;
}

Accessibility classify_accessibility(const FunctionDecl& f, const ContractDecl& c, const SourceUnit* unit) {
    Accessibility a;
    if (f.visibility == Visibility::kInternal || f.visibility == Visibility::kPrivate) {
        a.kind = Accessibility::Kind::kInternalOnly;
        return a;
    }
    for (const auto& use : f.modifiers) {
        const auto* m = resolve_modifier(use.name, c, unit);
        if (!m) continue;
        for (const auto& s : m->body.statements) {
            if (s.as<PlaceholderStmt>()) break;
            if (auto var = sender_guard_var(s, c)) {
                return Accessibility{Accessibility::Kind::kGuardedOwnerOnly, use.name, *var};
            }
        }
    }
    if (f.body) {
        for (const auto& s : f.body->statements) {
            if (auto var = sender_guard_var(s, c)) {
                return Accessibility{Accessibility::Kind::kGuardedOwnerOnly, "inline", *var};
            }
            if (contains_external_call(s)) {
                // `if (msg.sender == X) { ... }` wrapping the call
                const auto* i = s.as<IfStmt>();
                if (i && !i->else_branch && !contains_external_call(i->condition)) {
                    if (auto var = sender_comparison(i->condition, "==", c)) {
                        return Accessibility{Accessibility::Kind::kGuardedOwnerOnly, "inline", *var};
                    }
                }
                break;
            }
        }
    }
    return a;
}

std::vector<PotentialFinding> detect(const SourceUnit& unit) {
    std::vector<PotentialFinding> out;
    for (const auto& c : unit.contracts) {
        std::vector<PotentialFinding> per_contract;
        for (const auto& f : c.functions) {
            if (f.kind == FunctionKind::kConstructor) continue;
            auto found = Detector{c, f, unit}.run();
            per_contract.insert(per_contract.end(), found.begin(), found.end());
        }
        std::stable_sort(per_contract.begin(), per_contract.end(), [](const auto& a, const auto& b) {
            return std::tie(a.site.begin, a.call_site.begin) < std::tie(b.site.begin, b.call_site.begin);
        });
        out.insert(out.end(), per_contract.begin(), per_contract.end());
    }
    return out;
}

std::string export_signatures(const std::vector<PotentialFinding>& findings) {
    std::string out;
    for (const auto& f : findings) {
        out += f.qualified_signature();
        out += '\t';
        out += to_string(f.pattern);
        out += '\t';
        out += f.accessibility.to_string();
        out += '\n';
    }
    return out;
}

const FunctionDecl* find_function(const ContractDecl& c, std::string_view signature) noexcept {
    for (const auto& f : c.functions) {
        if (f.kind == FunctionKind::kConstructor) continue;
        if (f.signature() == signature) return &f;
    }
    return nullptr;
}

}  // namespace dosscan::detect
