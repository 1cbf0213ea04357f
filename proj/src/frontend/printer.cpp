// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/frontend/printer.hpp>

#include <dosscan/frontend/ast_dump.hpp>

namespace dosscan::frontend {

namespace {

    bool needs_parens(const Expr& e) {
        return e.as<Binary>() || e.as<Unary>() || e.as<Conditional>();
    }

    std::string operand(const Expr& e) {
        const std::string s = print_expr(e);
        return needs_parens(e) ? "(" + s + ")" : s;
    }

    std::string args_text(const std::vector<Expr>& args) {
        std::string out = "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ", ";
            out += print_expr(args[i]);
        }
        return out + ")";
    }

    std::string params_text(const std::vector<Parameter>& ps) {
        std::string out = "(";
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (i) out += ", ";
            out += ps[i].type.text();
            if (!ps[i].location.empty()) out += " " + ps[i].location;
            if (!ps[i].name.empty()) out += " " + ps[i].name;
        }
        return out + ")";
    }

    class Printer {
      public:
        std::string take() { return std::move(out_); }

        void unit(const SourceUnit& u) {
            if (u.pragma) line("pragma " + *u.pragma + ";");
            for (const auto& s : u.skipped) line(s.text);
            for (const auto& c : u.contracts) contract(c);
        }

        void stmt(const Stmt& s) {
            std::visit([&](const auto& n) { stmt_node(n); }, s.node);
        }

      private:
        std::string out_;
        int depth_{0};

        void line(const std::string& text) {
            out_.append(static_cast<std::size_t>(depth_) * 4, ' ');
            out_ += text;
            out_ += '\n';
        }

        void contract(const ContractDecl& c) {
            line("contract " + c.name + (c.inheritance ? " is " + *c.inheritance : "") + " {");
            ++depth_;
            for (const auto& s : c.skipped) line(s.text);
            for (const auto& s : c.structs) {
                line("struct " + s.name + " {");
                ++depth_;
                for (const auto& f : s.fields) line(f.type.text() + " " + f.name + ";");
                --depth_;
                line("}");
            }
            for (const auto& v : c.state_vars) {
                std::string text = v.type.text();
                if (v.visibility != Visibility::kDefault) text += " " + std::string{to_string(v.visibility)};
                if (v.constant) text += " constant";
                text += " " + v.name;
                if (v.init) text += " = " + print_expr(*v.init);
                line(text + ";");
            }
            for (const auto& m : c.modifiers) {
                line("modifier " + m.name + params_text(m.params) + " {");
                body(m.body);
                line("}");
            }
            for (const auto& f : c.functions) function(f);
            --depth_;
            line("}");
        }

        void function(const FunctionDecl& f) {
            std::string text;
            switch (f.kind) {
                case FunctionKind::kRegular: text = "function " + f.name; break;
                case FunctionKind::kConstructor: text = "constructor"; break;
                case FunctionKind::kFallback: text = "function"; break;
            }
            text += params_text(f.params);
            if (f.visibility != Visibility::kDefault) text += " " + std::string{to_string(f.visibility)};
            if (f.is_payable) text += " payable";
            if (!f.mutability.empty()) text += " " + f.mutability;
            for (const auto& m : f.modifiers) {
                text += " " + m.name;
                if (!m.args.empty()) text += args_text(m.args);
            }
            if (!f.returns.empty()) text += " returns " + params_text(f.returns);
            if (!f.body) {
                line(text + ";");
                return;
            }
            line(text + " {");
            body(*f.body);
            line("}");
        }

        void body(const Block& b) {
            ++depth_;
            for (const auto& s : b.statements) stmt(s);
            --depth_;
        }

        void stmt_node(const Block& n) {
            line("{");
            body(n);
            line("}");
        }

        void stmt_node(const IfStmt& n) {
            line("if (" + print_expr(n.condition) + ") {");
            body(n.then_branch);
            if (n.else_branch) {
                line("} else {");
                body(*n.else_branch);
            }
            line("}");
        }

        void stmt_node(const ForStmt& n) {
            std::string head = "for (";
            if (n.init) {
                std::string init = print_stmt(**n.init);
                while (!init.empty() && init.back() == '\n') init.pop_back();
                head += init;
            } else {
                head += ";";
            }
            head += " ";
            if (n.condition) head += print_expr(*n.condition);
            head += "; ";
            if (n.post) head += print_expr(*n.post);
            line(head + ") {");
            body(n.body);
            line("}");
        }

        void stmt_node(const WhileStmt& n) {
            if (n.do_while) {
                line("do {");
                body(n.body);
                line("} while (" + print_expr(n.condition) + ");");
                return;
            }
            line("while (" + print_expr(n.condition) + ") {");
            body(n.body);
            line("}");
        }

        void stmt_node(const ExprStmt& n) { line(print_expr(n.expr) + ";"); }
        void stmt_node(const ThrowStmt&) { line("throw;"); }

        void stmt_node(const VarDeclStmt& n) {
            std::string text = n.type ? n.type->text() : "var";
            if (!n.location.empty()) text += " " + n.location;
            text += " " + n.name;
            if (n.init) text += " = " + print_expr(*n.init);
            line(text + ";");
        }

        void stmt_node(const ReturnStmt& n) { line(n.value ? "return " + print_expr(*n.value) + ";" : "return;"); }
        void stmt_node(const PlaceholderStmt&) { line("_;"); }
        void stmt_node(const EmitStmt& n) { line("emit " + print_expr(n.event) + ";"); }
        void stmt_node(const BreakStmt&) { line("break;"); }
        void stmt_node(const ContinueStmt&) { line("continue;"); }
        void stmt_node(const SkippedStmt& n) { line(n.text); }
    };

    std::string expr_text(const Identifier& n) { return n.name; }

    std::string expr_text(const MemberAccess& n) { return operand(*n.base) + "." + n.member; }

    std::string expr_text(const IndexAccess& n) { return operand(*n.base) + "[" + print_expr(*n.index) + "]"; }

    std::string expr_text(const Call& n) {
        std::string out = n.callee->as<NewExpr>() ? print_expr(*n.callee) : operand(*n.callee);
        if (n.value) out += ".value(" + print_expr(**n.value) + ")";
        if (n.gas) out += ".gas(" + print_expr(**n.gas) + ")";
        return out + args_text(n.args);
    }

    std::string expr_text(const BuiltinGuard& n) { return std::string{to_string(n.kind)} + args_text(n.args); }

    std::string expr_text(const Unary& n) {
        if (n.postfix) return operand(*n.operand) + n.op;
        // `delete` needs a separating space; `- -x` must not fuse into `--x`.
        if (n.op == "delete") return "delete " + operand(*n.operand);
        return n.op + operand(*n.operand);
    }

    std::string expr_text(const Binary& n) { return operand(*n.lhs) + " " + n.op + " " + operand(*n.rhs); }

    std::string expr_text(const Conditional& n) {
        return operand(*n.condition) + " ? " + operand(*n.if_true) + " : " + operand(*n.if_false);
    }

    std::string expr_text(const Literal& n) {
        switch (n.kind) {
            case Literal::Kind::kNumber: return n.unit.empty() ? n.text : n.text + " " + n.unit;
            case Literal::Kind::kString: return quote(n.text);
            case Literal::Kind::kBool: return n.text;
        }
        return n.text;
    }

    std::string expr_text(const MsgSender&) { return "msg.sender"; }
    std::string expr_text(const MsgValue&) { return "msg.value"; }
    std::string expr_text(const NewExpr& n) { return "new " + n.type.text(); }

}  // namespace

std::string print_expr(const Expr& expr) {
    return std::visit([](const auto& n) { return expr_text(n); }, expr.node);
}

std::string print_stmt(const Stmt& stmt) {
    Printer p;
    p.stmt(stmt);
    return p.take();
}

std::string print_source(const SourceUnit& unit) {
    Printer p;
    p.unit(unit);
    return p.take();
}

}  // namespace dosscan::frontend
