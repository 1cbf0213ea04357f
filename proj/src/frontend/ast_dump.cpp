// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/frontend/ast_dump.hpp>

#include <cstdio>

namespace dosscan::frontend {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            case '\0': out += "\\0"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned char>(c));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

namespace {

    const char* yes_no(bool b) { return b ? "yes" : "no"; }

    class Dumper {
      public:
        explicit Dumper(const DumpOptions& options) : options_(options) {}

        std::string take() { return std::move(out_); }

        void unit(const SourceUnit& u) {
            line("unit", u.span);
            ++depth_;
            if (u.pragma) line("pragma " + quote(*u.pragma));
            for (const auto& s : u.skipped) skipped(s);
            for (const auto& c : u.contracts) contract(c);
            --depth_;
        }

        void expr(const Expr& e) {
            std::visit([&](const auto& n) { expr_node(e, n); }, e.node);
        }

        void stmt(const Stmt& s) {
            std::visit([&](const auto& n) { stmt_node(s, n); }, s.node);
        }

      private:
        const DumpOptions& options_;
        std::string out_;
        int depth_{0};

        void line(const std::string& text) {
            out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
            out_ += text;
            out_ += '\n';
        }

        void line(const std::string& text, const SourceSpan& span) {
            if (options_.spans) {
                line(text + " @" + span.position());
            } else {
                line(text);
            }
        }

        template <class F>
        void nested(F&& f) {
            ++depth_;
            f();
            --depth_;
        }

        void skipped(const SkippedRegion& s) { line("skipped " + s.what + " " + quote(s.text), s.span); }

        void params(const char* head, const std::vector<Parameter>& ps) {
            for (const auto& p : ps) {
                std::string text = std::string{head} + " " + quote(p.type.text());
                if (!p.location.empty()) text += " " + p.location;
                if (!p.name.empty()) text += " " + p.name;
                line(text, p.span);
            }
        }

        void contract(const ContractDecl& c) {
            line("contract " + c.name, c.span);
            nested([&] {
                if (c.inheritance) line("inherits " + quote(*c.inheritance));
                for (const auto& s : c.skipped) skipped(s);
                for (const auto& s : c.structs) {
                    line("struct " + s.name, s.span);
                    nested([&] { params("field", s.fields); });
                }
                for (const auto& v : c.state_vars) {
                    std::string text = "state-var " + v.name + " " + quote(v.type.text()) + " " +
                                       std::string{to_string(v.visibility)};
                    if (v.constant) text += " constant";
                    line(text, v.span);
                    if (v.init) nested([&] { expr(*v.init); });
                }
                for (const auto& m : c.modifiers) {
                    line("modifier " + m.name, m.span);
                    nested([&] {
                        params("param", m.params);
                        block(m.body, m.body_span);
                    });
                }
                for (const auto& f : c.functions) function(f);
            });
        }

        void function(const FunctionDecl& f) {
            std::string text;
            switch (f.kind) {
                case FunctionKind::kRegular: text = "function " + f.name; break;
                case FunctionKind::kConstructor: text = "constructor"; break;
                case FunctionKind::kFallback: text = "fallback"; break;
            }
            text += " " + std::string{to_string(f.visibility)};
            if (f.is_payable) text += " payable";
            if (!f.mutability.empty()) text += " " + f.mutability;
            if (!f.body) text += " no-body";
            line(text, f.span);
            nested([&] {
                params("param", f.params);
                params("returns", f.returns);
                for (const auto& m : f.modifiers) {
                    line("modifier-use " + m.name + " args=" + std::to_string(m.args.size()), m.span);
                    nested([&] {
                        for (const auto& a : m.args) expr(a);
                    });
                }
                if (f.body) block(*f.body, f.body_span);
            });
        }

        void block(const Block& b, const SourceSpan& span) {
            line("block " + std::to_string(b.statements.size()), span);
            nested([&] {
                for (const auto& s : b.statements) stmt(s);
            });
        }

        // Blocks nested in statements carry no span of their own; they are
        // listed under their parent's span.
        void inner_block(const char* head, const Block& b) {
            line(std::string{head} + " " + std::to_string(b.statements.size()));
            nested([&] {
                for (const auto& s : b.statements) stmt(s);
            });
        }

        // ---- expressions ---------------------------------------------------

        void expr_node(const Expr& e, const Identifier& n) { line("ident " + n.name, e.span); }

        void expr_node(const Expr& e, const MemberAccess& n) {
            line("member " + n.member, e.span);
            nested([&] { expr(*n.base); });
        }

        void expr_node(const Expr& e, const IndexAccess& n) {
            line("index", e.span);
            nested([&] {
                expr(*n.base);
                expr(*n.index);
            });
        }

        void expr_node(const Expr& e, const Call& n) {
            line("call args=" + std::to_string(n.args.size()) + " value=" + yes_no(n.value.has_value()) +
                     " gas=" + yes_no(n.gas.has_value()),
                 e.span);
            nested([&] {
                expr(*n.callee);
                for (const auto& a : n.args) expr(a);
                if (n.value) expr(**n.value);
                if (n.gas) expr(**n.gas);
            });
        }

        void expr_node(const Expr& e, const BuiltinGuard& n) {
            line("guard " + std::string{to_string(n.kind)} + " args=" + std::to_string(n.args.size()), e.span);
            nested([&] {
                for (const auto& a : n.args) expr(a);
            });
        }

        void expr_node(const Expr& e, const Unary& n) {
            line("unary " + n.op + (n.postfix ? " postfix" : " prefix"), e.span);
            nested([&] { expr(*n.operand); });
        }

        void expr_node(const Expr& e, const Binary& n) {
            line("binary " + n.op, e.span);
            nested([&] {
                expr(*n.lhs);
                expr(*n.rhs);
            });
        }

        void expr_node(const Expr& e, const Conditional& n) {
            line("conditional", e.span);
            nested([&] {
                expr(*n.condition);
                expr(*n.if_true);
                expr(*n.if_false);
            });
        }

        void expr_node(const Expr& e, const Literal& n) {
            switch (n.kind) {
                case Literal::Kind::kNumber:
                    line("number " + n.text + (n.unit.empty() ? "" : " " + n.unit), e.span);
                    break;
                case Literal::Kind::kString: line("string " + quote(n.text), e.span); break;
                case Literal::Kind::kBool: line("bool " + n.text, e.span); break;
            }
        }

        void expr_node(const Expr& e, const MsgSender&) { line("msg.sender", e.span); }
        void expr_node(const Expr& e, const MsgValue&) { line("msg.value", e.span); }
        void expr_node(const Expr& e, const NewExpr& n) { line("new " + quote(n.type.text()), e.span); }

        // ---- statements ----------------------------------------------------

        void stmt_node(const Stmt& s, const Block& n) { block(n, s.span); }

        void stmt_node(const Stmt& s, const IfStmt& n) {
            line(std::string{"if else="} + yes_no(n.else_branch.has_value()), s.span);
            nested([&] {
                expr(n.condition);
                inner_block("then", n.then_branch);
                if (n.else_branch) inner_block("else", *n.else_branch);
            });
        }

        void stmt_node(const Stmt& s, const ForStmt& n) {
            line(std::string{"for init="} + yes_no(n.init.has_value()) + " cond=" + yes_no(n.condition.has_value()) +
                     " post=" + yes_no(n.post.has_value()),
                 s.span);
            nested([&] {
                if (n.init) stmt(**n.init);
                if (n.condition) expr(*n.condition);
                if (n.post) expr(*n.post);
                inner_block("body", n.body);
            });
        }

        void stmt_node(const Stmt& s, const WhileStmt& n) {
            line(n.do_while ? "do-while" : "while", s.span);
            nested([&] {
                expr(n.condition);
                inner_block("body", n.body);
            });
        }

        void stmt_node(const Stmt& s, const ExprStmt& n) {
            line("expr-stmt", s.span);
            nested([&] { expr(n.expr); });
        }

        void stmt_node(const Stmt& s, const ThrowStmt&) { line("throw", s.span); }

        void stmt_node(const Stmt& s, const VarDeclStmt& n) {
            std::string text = "var-decl " + n.name + " " + (n.type ? quote(n.type->text()) : std::string{"var"});
            if (!n.location.empty()) text += " " + n.location;
            text += std::string{" init="} + yes_no(n.init.has_value());
            line(text, s.span);
            if (n.init) nested([&] { expr(*n.init); });
        }

        void stmt_node(const Stmt& s, const ReturnStmt& n) {
            line(std::string{"return value="} + yes_no(n.value.has_value()), s.span);
            if (n.value) nested([&] { expr(*n.value); });
        }

        void stmt_node(const Stmt& s, const PlaceholderStmt&) { line("placeholder", s.span); }

        void stmt_node(const Stmt& s, const EmitStmt& n) {
            line("emit", s.span);
            nested([&] { expr(n.event); });
        }

        void stmt_node(const Stmt& s, const BreakStmt&) { line("break", s.span); }
        void stmt_node(const Stmt& s, const ContinueStmt&) { line("continue", s.span); }

        void stmt_node(const Stmt& s, const SkippedStmt& n) { line("skipped " + n.what + " " + quote(n.text), s.span); }
    };

}  // namespace

std::string dump(const SourceUnit& unit, const DumpOptions& options) {
    Dumper d{options};
    d.unit(unit);
    return d.take();
}

std::string dump(const Expr& expr, const DumpOptions& options) {
    Dumper d{options};
    d.expr(expr);
    return d.take();
}

std::string dump(const Stmt& stmt, const DumpOptions& options) {
    Dumper d{options};
    d.stmt(stmt);
    return d.take();
}

}  // namespace dosscan::frontend
