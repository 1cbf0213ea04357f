// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/frontend/parser.hpp>

#include <algorithm>
#include <array>

#include <dosscan/frontend/lexer.hpp>

namespace dosscan::frontend {

namespace {

    constexpr std::array kUnits{"wei",   "gwei",    "szabo", "finney", "ether", "seconds",
                                "minutes", "hours", "days",  "weeks",  "years"};

    constexpr std::array kAssignOps{"=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>="};

    int binary_precedence(const Token& t) {
        if (t.kind != TokenKind::kPunct) return -1;
        const std::string& op = t.text;
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "==" || op == "!=") return 3;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
        if (op == "|") return 5;
        if (op == "^") return 6;
        if (op == "&") return 7;
        if (op == "<<" || op == ">>") return 8;
        if (op == "+" || op == "-") return 9;
        if (op == "*" || op == "/" || op == "%") return 10;
        if (op == "**") return 11;
        return -1;
    }

    std::size_t count_placeholders(const Block& block);

    std::size_t count_placeholders(const Stmt& s) {
        return std::visit(
            [](const auto& n) -> std::size_t {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, PlaceholderStmt>) {
                    return 1;
                } else if constexpr (std::is_same_v<T, Block>) {
                    return count_placeholders(n);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    return count_placeholders(n.then_branch) + (n.else_branch ? count_placeholders(*n.else_branch) : 0);
                } else if constexpr (std::is_same_v<T, ForStmt> || std::is_same_v<T, WhileStmt>) {
                    return count_placeholders(n.body);
                } else {
                    return 0;
                }
            },
            s.node);
    }

    std::size_t count_placeholders(const Block& block) {
        std::size_t n = 0;
        for (const auto& s : block.statements) n += count_placeholders(s);
        return n;
    }

    class Parser {
      public:
        Parser(std::string_view src, std::string_view file) : src_(src), file_(file), toks_(tokenize(src, file)) {
            Token end;
            end.kind = TokenKind::kEnd;
            end.span.file = file_;
            // Position just past the last character.
            int line = 1;
            int col = 1;
            for (char c : src_) {
                if (c == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            end.span.start_line = end.span.end_line = line;
            end.span.start_col = end.span.end_col = col;
            end.span.begin = end.span.end = src_.size();
            toks_.push_back(std::move(end));
        }

        SourceUnit unit() {
            SourceUnit u;
            u.file = file_;
            u.span = toks_.back().span;
            u.span.start_line = u.span.start_col = 1;
            u.span.begin = 0;
            while (!at_end()) {
                const Token& t = peek();
                if (t.is_keyword("pragma")) {
                    const SourceSpan start = advance().span;
                    const std::size_t text_begin = peek().span.begin;
                    while (!check(";")) {
                        if (at_end()) fail("';'");
                        advance();
                    }
                    std::string text{trim(src_.substr(text_begin, peek().span.begin - text_begin))};
                    advance();
                    if (!u.pragma && text.rfind("solidity", 0) == 0) {
                        u.pragma = std::move(text);
                    } else {
                        u.skipped.push_back(region("pragma", start));
                    }
                } else if (t.is_keyword("import")) {
                    const SourceSpan start = advance().span;
                    skip_to_semicolon();
                    u.skipped.push_back(region("import", start));
                } else if (t.is_keyword("contract")) {
                    advance();
                    add_contract(u, contract(t.span));
                } else if (t.is(TokenKind::kIdentifier, "abstract") && peek(1).is_keyword("contract")) {
                    const SourceSpan start = advance().span;
                    advance();
                    add_contract(u, contract(start));
                } else if (t.is_keyword("library") || t.is_keyword("interface")) {
                    const std::string what = t.text;
                    const SourceSpan start = advance().span;
                    while (!check("{")) {
                        if (at_end()) fail("'{'");
                        advance();
                    }
                    skip_balanced();
                    u.skipped.push_back(region(what, start));
                } else {
                    fail("'contract', 'library', 'interface', 'pragma' or 'import'");
                }
            }
            return u;
        }

        Expr expression_only() {
            Expr e = expression();
            if (!at_end()) fail("end of expression");
            return e;
        }

        Stmt statement_only() {
            Stmt s = statement();
            if (!at_end()) fail("end of statement");
            return s;
        }

      private:
        std::string_view src_;
        std::string file_;
        std::vector<Token> toks_;
        std::size_t pos_{0};

        // ---- token helpers -------------------------------------------------

        [[nodiscard]] const Token& peek(std::size_t k = 0) const {
            return toks_[std::min(pos_ + k, toks_.size() - 1)];
        }
        [[nodiscard]] bool at_end() const { return peek().kind == TokenKind::kEnd; }
        const Token& advance() {
            const Token& t = toks_[pos_];
            if (pos_ + 1 < toks_.size()) ++pos_;
            return t;
        }
        [[nodiscard]] const Token& previous() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
        [[nodiscard]] bool check(std::string_view punct) const { return peek().is_punct(punct); }
        bool match(std::string_view punct) {
            if (!check(punct)) return false;
            advance();
            return true;
        }

        static std::string describe(const Token& t) {
            if (t.kind == TokenKind::kEnd) return "end of file";
            if (t.kind == TokenKind::kString) return "string literal";
            return "'" + t.text + "'";
        }

        [[noreturn]] void fail(const std::string& expected) const {
            throw ParseError(peek().span, expected, describe(peek()));
        }

        const Token& expect(std::string_view punct) {
            if (!check(punct)) fail("'" + std::string{punct} + "'");
            return advance();
        }

        std::string identifier(const std::string& what) {
            if (peek().kind != TokenKind::kIdentifier) fail(what);
            return advance().text;
        }

        [[nodiscard]] SourceSpan span_from(const SourceSpan& start) const {
            return SourceSpan::join(start, previous().span);
        }

        static std::string_view trim(std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        }

        [[nodiscard]] SkippedRegion region(std::string what, const SourceSpan& start) const {
            const SourceSpan span = span_from(start);
            return SkippedRegion{std::move(what), std::string{src_.substr(span.begin, span.end - span.begin)}, span};
        }

        // Consumes a balanced {...} group starting at the current '{'.
        void skip_balanced() {
            int depth = 0;
            do {
                if (at_end()) fail("'}'");
                const Token& t = advance();
                if (t.is_punct("{")) ++depth;
                if (t.is_punct("}")) --depth;
            } while (depth > 0);
        }

        // Consumes through the next ';' at nesting depth zero.
        void skip_to_semicolon() {
            int depth = 0;
            while (true) {
                if (at_end()) fail("';'");
                const Token& t = advance();
                if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{")) ++depth;
                if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}")) --depth;
                if (depth <= 0 && t.is_punct(";")) return;
            }
        }

        static void add_contract(SourceUnit& u, ContractDecl c) {
            if (u.find_contract(c.name)) {
                throw ParseError(c.span, "unique contract name", "duplicate contract '" + c.name + "'");
            }
            u.contracts.push_back(std::move(c));
        }

        // ---- declarations --------------------------------------------------

        ContractDecl contract(const SourceSpan& start) {
            ContractDecl c;
            c.name = identifier("contract name");
            if (peek().is_keyword("is")) {
                advance();
                const std::size_t b = peek().span.begin;
                while (!check("{")) {
                    if (at_end()) fail("'{'");
                    advance();
                }
                c.inheritance = std::string{trim(src_.substr(b, peek().span.begin - b))};
            }
            expect("{");
            while (!check("}")) {
                if (at_end()) fail("'}'");
                member(c);
            }
            advance();
            c.span = span_from(start);
            return c;
        }

        void member(ContractDecl& c) {
            const Token& t = peek();
            if (t.is_keyword("function") || t.is_keyword("constructor") || t.is_keyword("fallback") ||
                t.is_keyword("receive")) {
                FunctionDecl f = function(c.name);
                if (f.is_fallback() && find_fallback(c)) {
                    throw ParseError(f.span, "at most one fallback function", "second fallback function");
                }
                c.functions.push_back(std::move(f));
            } else if (t.is_keyword("modifier")) {
                c.modifiers.push_back(modifier());
            } else if (t.is_keyword("struct")) {
                c.structs.push_back(struct_decl());
            } else if (t.is_keyword("event") || t.is_keyword("using")) {
                const std::string what = t.text;
                const SourceSpan start = advance().span;
                skip_to_semicolon();
                c.skipped.push_back(region(what, start));
            } else if (t.is_keyword("enum")) {
                const SourceSpan start = advance().span;
                while (!check("{")) {
                    if (at_end()) fail("'{'");
                    advance();
                }
                skip_balanced();
                c.skipped.push_back(region("enum", start));
            } else if (t.is(TokenKind::kIdentifier, "error") && peek(1).kind == TokenKind::kIdentifier &&
                       peek(2).is_punct("(")) {
                const SourceSpan start = advance().span;
                skip_to_semicolon();
                c.skipped.push_back(region("error", start));
            } else {
                c.state_vars.push_back(state_var());
            }
        }

        StateVarDecl state_var() {
            StateVarDecl v;
            const SourceSpan start = peek().span;
            v.type = *type_name(true);
            while (true) {
                const Token& t = peek();
                if (t.is_keyword("public")) {
                    v.visibility = Visibility::kPublic;
                } else if (t.is_keyword("private")) {
                    v.visibility = Visibility::kPrivate;
                } else if (t.is_keyword("internal")) {
                    v.visibility = Visibility::kInternal;
                } else if (t.is_keyword("constant") || t.is_keyword("immutable")) {
                    v.constant = true;
                } else if (t.is_keyword("override")) {
                } else {
                    break;
                }
                advance();
            }
            v.name = identifier("state variable name");
            if (match("=")) v.init = expression();
            expect(";");
            v.span = span_from(start);
            return v;
        }

        StructDecl struct_decl() {
            StructDecl s;
            const SourceSpan start = advance().span;
            s.name = identifier("struct name");
            expect("{");
            while (!check("}")) {
                if (at_end()) fail("'}'");
                Parameter p;
                const SourceSpan pstart = peek().span;
                p.type = *type_name(true);
                p.name = identifier("struct member name");
                expect(";");
                p.span = span_from(pstart);
                s.fields.push_back(std::move(p));
            }
            advance();
            s.span = span_from(start);
            return s;
        }

        ModifierDecl modifier() {
            ModifierDecl m;
            const SourceSpan start = advance().span;
            m.name = identifier("modifier name");
            if (check("(")) m.params = parameter_list();
            while (peek().is_keyword("virtual") || peek().is_keyword("override")) advance();
            if (!check("{")) fail("'{'");
            const SourceSpan body_start = peek().span;
            m.body = block();
            m.body_span = span_from(body_start);
            const std::size_t n = count_placeholders(m.body);
            if (n != 1) {
                throw ParseError(span_from(start), "exactly one '_' placeholder in modifier body",
                                 std::to_string(n) + " placeholders");
            }
            m.span = span_from(start);
            return m;
        }

        std::vector<Parameter> parameter_list() {
            std::vector<Parameter> out;
            expect("(");
            if (match(")")) return out;
            while (true) {
                Parameter p;
                const SourceSpan start = peek().span;
                p.type = *type_name(true);
                if (peek().is_keyword("memory") || peek().is_keyword("storage") || peek().is_keyword("calldata")) {
                    p.location = advance().text;
                }
                if (peek().kind == TokenKind::kIdentifier) p.name = advance().text;
                p.span = span_from(start);
                out.push_back(std::move(p));
                if (match(")")) break;
                expect(",");
            }
            return out;
        }

        FunctionDecl function(const std::string& contract_name) {
            FunctionDecl f;
            const Token& head = advance();
            f.span = head.span;
            if (head.is_keyword("constructor")) {
                f.kind = FunctionKind::kConstructor;
            } else if (head.is_keyword("fallback") || head.is_keyword("receive")) {
                f.kind = FunctionKind::kFallback;
            } else if (check("(")) {
                f.kind = FunctionKind::kFallback;
            } else {
                const Token& n = peek();
                if (n.kind != TokenKind::kIdentifier && n.kind != TokenKind::kKeyword) fail("function name");
                f.name = advance().text;
                if (f.name == contract_name) {
                    f.kind = FunctionKind::kConstructor;
                    f.name.clear();
                }
            }
            f.params = parameter_list();
            if (f.is_fallback() && !f.params.empty()) {
                throw ParseError(span_from(f.span), "fallback without parameters", "parameter list");
            }
            while (!check("{") && !check(";")) {
                const Token& t = peek();
                if (t.is_keyword("public")) {
                    f.visibility = Visibility::kPublic;
                    advance();
                } else if (t.is_keyword("external")) {
                    f.visibility = Visibility::kExternal;
                    advance();
                } else if (t.is_keyword("internal")) {
                    f.visibility = Visibility::kInternal;
                    advance();
                } else if (t.is_keyword("private")) {
                    f.visibility = Visibility::kPrivate;
                    advance();
                } else if (t.is_keyword("payable")) {
                    f.is_payable = true;
                    advance();
                } else if (t.is_keyword("view") || t.is_keyword("pure") || t.is_keyword("constant")) {
                    f.mutability = advance().text;
                } else if (t.is_keyword("virtual")) {
                    advance();
                } else if (t.is_keyword("override")) {
                    advance();
                    if (check("(")) {
                        while (!match(")")) {
                            if (at_end()) fail("')'");
                            advance();
                        }
                    }
                } else if (t.is_keyword("returns")) {
                    advance();
                    f.returns = parameter_list();
                } else if (t.kind == TokenKind::kIdentifier) {
                    ModifierInvocation m;
                    const SourceSpan start = peek().span;
                    m.name = advance().text;
                    if (check("(")) m.args = arguments();
                    m.span = span_from(start);
                    f.modifiers.push_back(std::move(m));
                } else {
                    fail("function body or ';'");
                }
            }
            if (match(";")) {
                f.span = span_from(f.span);
                return f;
            }
            const SourceSpan body_start = peek().span;
            f.body = block();
            f.body_span = span_from(body_start);
            f.span = span_from(f.span);
            return f;
        }

        // ---- types ---------------------------------------------------------

        // In non-strict mode returns nullopt (with the cursor restored) instead of throwing.
        std::optional<TypeName> type_name(bool strict) {
            const std::size_t save = pos_;
            auto bail = [&](const std::string& expected) -> std::optional<TypeName> {
                if (strict) fail(expected);
                pos_ = save;
                return std::nullopt;
            };
            TypeName t;
            const Token& first = peek();
            if (first.is_keyword("mapping")) {
                advance();
                if (!check("(")) return bail("'('");
                advance();
                auto key = type_name(strict);
                if (!key) return bail("mapping key type");
                if (!check("=>")) return bail("'=>'");
                advance();
                auto value = type_name(strict);
                if (!value) return bail("mapping value type");
                if (!check(")")) return bail("')'");
                advance();
                t.kind = TypeName::Kind::kMapping;
                t.args.push_back(std::move(*key));
                t.args.push_back(std::move(*value));
            } else if (first.kind == TokenKind::kIdentifier) {
                t.name = advance().text;
                if (is_elementary_type_name(t.name)) {
                    t.kind = TypeName::Kind::kElementary;
                    if (t.name == "address" && peek().is_keyword("payable")) {
                        advance();
                        t.payable = true;
                    }
                } else {
                    t.kind = TypeName::Kind::kUser;
                    while (check(".") && peek(1).kind == TokenKind::kIdentifier) {
                        advance();
                        t.name += "." + advance().text;
                    }
                }
            } else {
                return bail("type name");
            }
            while (check("[")) {
                if (peek(1).is_punct("]")) {
                    advance();
                    advance();
                    TypeName arr;
                    arr.kind = TypeName::Kind::kArray;
                    arr.args.push_back(std::move(t));
                    t = std::move(arr);
                } else if (peek(1).kind == TokenKind::kNumber && peek(2).is_punct("]")) {
                    advance();
                    std::string len = advance().text;
                    advance();
                    TypeName arr;
                    arr.kind = TypeName::Kind::kArray;
                    arr.array_length = std::move(len);
                    arr.args.push_back(std::move(t));
                    t = std::move(arr);
                } else {
                    return bail("array type suffix");
                }
            }
            return t;
        }

        // ---- statements ----------------------------------------------------

        Block block() {
            expect("{");
            Block b;
            b.braced = true;
            while (!check("}")) {
                if (at_end()) fail("'}'");
                b.statements.push_back(statement());
            }
            advance();
            return b;
        }

        Stmt block_stmt() {
            const SourceSpan start = peek().span;
            Block b = block();
            return Stmt{span_from(start), std::move(b)};
        }

        // A branch or loop body: a braced block, or one statement wrapped in an unbraced block.
        Block body() {
            if (check("{")) return block();
            Block b;
            b.braced = false;
            b.statements.push_back(statement());
            return b;
        }

        bool looks_like_var_decl() {
            if (peek().is_keyword("var")) return true;
            const std::size_t save = pos_;
            const auto t = type_name(false);
            if (!t) return false;
            if (peek().is_keyword("memory") || peek().is_keyword("storage") || peek().is_keyword("calldata")) {
                advance();
            }
            const bool ok = peek().kind == TokenKind::kIdentifier;
            pos_ = save;
            return ok;
        }

        bool tuple_ahead() const {
            int depth = 0;
            for (std::size_t i = pos_; i < toks_.size(); ++i) {
                const Token& t = toks_[i];
                if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{")) ++depth;
                if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}")) {
                    if (--depth == 0) return false;
                }
                if (depth == 1 && t.is_punct(",")) return true;
                if (t.kind == TokenKind::kEnd) return false;
            }
            return false;
        }

        Stmt skipped_until_semicolon(const std::string& what) {
            const SourceSpan start = peek().span;
            skip_to_semicolon();
            const SourceSpan span = span_from(start);
            return Stmt{span, SkippedStmt{what, std::string{src_.substr(span.begin, span.end - span.begin)}}};
        }

        Stmt statement() {
            const Token& t = peek();
            const SourceSpan start = t.span;
            if (t.is_punct("{")) return block_stmt();
            if (t.is_keyword("if")) {
                advance();
                expect("(");
                Expr cond = expression();
                expect(")");
                Block then_branch = body();
                std::optional<Block> else_branch;
                if (peek().is_keyword("else")) {
                    advance();
                    else_branch = body();
                }
                return Stmt{span_from(start), IfStmt{std::move(cond), std::move(then_branch), std::move(else_branch)}};
            }
            if (t.is_keyword("for")) {
                advance();
                expect("(");
                ForStmt f;
                if (!match(";")) {
                    if (looks_like_var_decl()) {
                        f.init = var_decl();
                    } else {
                        const SourceSpan istart = peek().span;
                        Expr e = expression();
                        expect(";");
                        f.init = Stmt{span_from(istart), ExprStmt{std::move(e)}};
                    }
                }
                if (!check(";")) f.condition = expression();
                expect(";");
                if (!check(")")) f.post = expression();
                expect(")");
                f.body = body();
                return Stmt{span_from(start), std::move(f)};
            }
            if (t.is_keyword("while")) {
                advance();
                expect("(");
                Expr cond = expression();
                expect(")");
                Block b = body();
                return Stmt{span_from(start), WhileStmt{std::move(cond), std::move(b), false}};
            }
            if (t.is_keyword("do")) {
                advance();
                Block b = body();
                if (!peek().is_keyword("while")) fail("'while'");
                advance();
                expect("(");
                Expr cond = expression();
                expect(")");
                expect(";");
                return Stmt{span_from(start), WhileStmt{std::move(cond), std::move(b), true}};
            }
            if (t.is_keyword("return")) {
                advance();
                ReturnStmt r;
                if (!check(";")) r.value = expression();
                expect(";");
                return Stmt{span_from(start), std::move(r)};
            }
            if (t.is_keyword("throw")) {
                advance();
                expect(";");
                return Stmt{span_from(start), ThrowStmt{}};
            }
            if (t.is_keyword("break")) {
                advance();
                expect(";");
                return Stmt{span_from(start), BreakStmt{}};
            }
            if (t.is_keyword("continue")) {
                advance();
                expect(";");
                return Stmt{span_from(start), ContinueStmt{}};
            }
            if (t.is_keyword("emit")) {
                advance();
                Expr e = expression();
                expect(";");
                return Stmt{span_from(start), EmitStmt{std::move(e)}};
            }
            if (t.is_keyword("unchecked") && peek(1).is_punct("{")) {
                advance();
                return block_stmt();
            }
            if (t.is_keyword("assembly")) {
                advance();
                if (peek().kind == TokenKind::kString) advance();
                if (!check("{")) fail("'{'");
                skip_balanced();
                const SourceSpan span = span_from(start);
                return Stmt{span, SkippedStmt{"assembly", std::string{src_.substr(span.begin, span.end - span.begin)}}};
            }
            if (t.is_keyword("try")) {
                advance();
                while (!check("{")) {
                    if (at_end()) fail("'{'");
                    advance();
                }
                skip_balanced();
                while (peek().is_keyword("catch")) {
                    while (!check("{")) {
                        if (at_end()) fail("'{'");
                        advance();
                    }
                    skip_balanced();
                }
                const SourceSpan span = span_from(start);
                return Stmt{span, SkippedStmt{"try", std::string{src_.substr(span.begin, span.end - span.begin)}}};
            }
            if (t.is(TokenKind::kIdentifier, "_") && peek(1).is_punct(";")) {
                advance();
                advance();
                return Stmt{span_from(start), PlaceholderStmt{}};
            }
            if (t.is_punct("(") && tuple_ahead()) return skipped_until_semicolon("tuple");
            if (looks_like_var_decl()) return var_decl();
            Expr e = expression();
            expect(";");
            return Stmt{span_from(start), ExprStmt{std::move(e)}};
        }

        Stmt var_decl() {
            const SourceSpan start = peek().span;
            VarDeclStmt v;
            if (peek().is_keyword("var")) {
                advance();
            } else {
                v.type = type_name(true);
                if (peek().is_keyword("memory") || peek().is_keyword("storage") || peek().is_keyword("calldata")) {
                    v.location = advance().text;
                }
            }
            v.name = identifier("variable name");
            if (match("=")) v.init = expression();
            expect(";");
            return Stmt{span_from(start), std::move(v)};
        }

        // ---- expressions ---------------------------------------------------

        Expr expression() { return assignment(); }

        Expr assignment() {
            Expr lhs = conditional();
            const Token& t = peek();
            if (t.kind == TokenKind::kPunct &&
                std::find(kAssignOps.begin(), kAssignOps.end(), t.text) != kAssignOps.end()) {
                std::string op = advance().text;
                Expr rhs = assignment();
                SourceSpan span = SourceSpan::join(lhs.span, rhs.span);
                return Expr{span, Binary{std::move(op), std::move(lhs), std::move(rhs)}};
            }
            return lhs;
        }

        Expr conditional() {
            Expr cond = binary(1);
            if (!check("?")) return cond;
            advance();
            Expr a = assignment();
            expect(":");
            Expr b = assignment();
            SourceSpan span = SourceSpan::join(cond.span, b.span);
            return Expr{span, Conditional{std::move(cond), std::move(a), std::move(b)}};
        }

        Expr binary(int min_prec) {
            Expr lhs = unary();
            while (true) {
                const int prec = binary_precedence(peek());
                if (prec < min_prec) break;
                std::string op = advance().text;
                // ** is right associative
                Expr rhs = binary(op == "**" ? prec : prec + 1);
                SourceSpan span = SourceSpan::join(lhs.span, rhs.span);
                lhs = Expr{span, Binary{std::move(op), std::move(lhs), std::move(rhs)}};
            }
            return lhs;
        }

        Expr unary() {
            const Token& t = peek();
            if (t.is_punct("!") || t.is_punct("-") || t.is_punct("~") || t.is_punct("++") || t.is_punct("--") ||
                t.is_punct("+") || t.is_keyword("delete")) {
                const SourceSpan start = t.span;
                std::string op = advance().text;
                Expr operand = unary();
                SourceSpan span = SourceSpan::join(start, operand.span);
                return Expr{span, Unary{std::move(op), std::move(operand), false}};
            }
            return postfix();
        }

        std::vector<Expr> arguments() {
            std::vector<Expr> args;
            expect("(");
            if (match(")")) return args;
            while (true) {
                args.push_back(expression());
                if (match(")")) break;
                expect(",");
            }
            return args;
        }

        static bool is_value_or_gas_call(const Expr& e) {
            const auto* c = e.as<Call>();
            if (!c || c->args.size() != 1 || c->value || c->gas) return false;
            const auto* m = c->callee->as<MemberAccess>();
            return m && (m->member == "value" || m->member == "gas");
        }

        Expr make_call(const SourceSpan& start, Expr callee, std::vector<Expr> args, std::optional<ExprPtr> value,
                       std::optional<ExprPtr> gas) {
            const SourceSpan span = span_from(start);
            if (const auto* id = callee.as<Identifier>()) {
                std::optional<GuardKind> kind;
                if (id->name == "require") kind = GuardKind::kRequire;
                if (id->name == "assert") kind = GuardKind::kAssert;
                if (id->name == "revert") kind = GuardKind::kRevert;
                if (kind) {
                    if (*kind == GuardKind::kRevert && args.size() > 1) {
                        throw ParseError(span, "revert with at most one argument",
                                         std::to_string(args.size()) + " arguments");
                    }
                    if (*kind != GuardKind::kRevert && args.empty()) {
                        throw ParseError(span, std::string{to_string(*kind)} + " with at least one argument",
                                         "no arguments");
                    }
                    return Expr{span, BuiltinGuard{*kind, std::move(args)}};
                }
            }
            // Fold `x.value(v)` / `x.gas(g)` prefixes into call clauses.
            while (is_value_or_gas_call(callee)) {
                auto& inner = std::get<Call>(callee.node);
                auto& member = std::get<MemberAccess>(inner.callee->node);
                Expr clause = std::move(inner.args.front());
                if (member.member == "value") {
                    if (!value) value = std::move(clause);
                } else {
                    if (!gas) gas = std::move(clause);
                }
                Expr base = std::move(*member.base);
                callee = std::move(base);
            }
            return Expr{span, Call{std::move(callee), std::move(args), std::move(value), std::move(gas)}};
        }

        Expr postfix() {
            const SourceSpan start = peek().span;
            Expr e = primary();
            while (true) {
                if (check(".")) {
                    advance();
                    const Token& m = peek();
                    if (m.kind != TokenKind::kIdentifier && m.kind != TokenKind::kKeyword) fail("member name");
                    std::string member = advance().text;
                    const SourceSpan span = span_from(start);
                    const auto* id = e.as<Identifier>();
                    if (id && id->name == "msg" && member == "sender") {
                        e = Expr{span, MsgSender{}};
                    } else if (id && id->name == "msg" && member == "value") {
                        e = Expr{span, MsgValue{}};
                    } else {
                        e = Expr{span, MemberAccess{std::move(e), std::move(member)}};
                    }
                } else if (check("[")) {
                    advance();
                    Expr index = expression();
                    expect("]");
                    e = Expr{span_from(start), IndexAccess{std::move(e), std::move(index)}};
                } else if (check("(")) {
                    std::vector<Expr> args = arguments();
                    e = make_call(start, std::move(e), std::move(args), std::nullopt, std::nullopt);
                } else if (check("{") && peek(1).kind == TokenKind::kIdentifier && peek(2).is_punct(":")) {
                    advance();
                    std::optional<ExprPtr> value;
                    std::optional<ExprPtr> gas;
                    while (true) {
                        const std::string key = identifier("call option name");
                        expect(":");
                        Expr v = expression();
                        if (key == "value") {
                            value = std::move(v);
                        } else if (key == "gas") {
                            gas = std::move(v);
                        } else {
                            fail("'value' or 'gas'");
                        }
                        if (match("}")) break;
                        expect(",");
                    }
                    if (!check("(")) fail("'('");
                    std::vector<Expr> args = arguments();
                    e = make_call(start, std::move(e), std::move(args), std::move(value), std::move(gas));
                } else if (check("++") || check("--")) {
                    std::string op = advance().text;
                    e = Expr{span_from(start), Unary{std::move(op), std::move(e), true}};
                } else {
                    break;
                }
            }
            return e;
        }

        Expr primary() {
            const Token& t = peek();
            const SourceSpan start = t.span;
            switch (t.kind) {
                case TokenKind::kIdentifier:
                    advance();
                    return Expr{start, Identifier{t.text}};
                case TokenKind::kNumber: {
                    Literal lit{Literal::Kind::kNumber, advance().text, ""};
                    if (peek().kind == TokenKind::kKeyword &&
                        std::find(kUnits.begin(), kUnits.end(), peek().text) != kUnits.end()) {
                        lit.unit = advance().text;
                    }
                    return Expr{span_from(start), std::move(lit)};
                }
                case TokenKind::kString: {
                    std::string text = advance().text;
                    while (peek().kind == TokenKind::kString) text += advance().text;
                    return Expr{span_from(start), Literal{Literal::Kind::kString, std::move(text), ""}};
                }
                case TokenKind::kKeyword:
                    if (t.text == "true" || t.text == "false") {
                        advance();
                        return Expr{start, Literal{Literal::Kind::kBool, t.text, ""}};
                    }
                    if (t.text == "payable") {
                        advance();
                        return Expr{start, Identifier{"payable"}};
                    }
                    if (t.text == "new") {
                        advance();
                        TypeName ty = *type_name(true);
                        return Expr{span_from(start), NewExpr{std::move(ty)}};
                    }
                    break;
                case TokenKind::kPunct:
                    if (t.text == "(") {
                        advance();
                        Expr inner = expression();
                        if (check(",")) fail("')' (tuples are not supported)");
                        expect(")");
                        inner.span = span_from(start);
                        return inner;
                    }
                    break;
                case TokenKind::kEnd:
                    break;
            }
            fail("expression");
        }
    };

}  // namespace

SourceUnit parse_source_unit(std::string_view source, std::string_view file) {
    return Parser{source, file}.unit();
}

Expr parse_expression(std::string_view source, std::string_view file) {
    return Parser{source, file}.expression_only();
}

Stmt parse_statement(std::string_view source, std::string_view file) {
    return Parser{source, file}.statement_only();
}

}  // namespace dosscan::frontend
