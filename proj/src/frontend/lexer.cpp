// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/frontend/lexer.hpp>

#include <algorithm>
#include <array>
#include <cctype>

namespace dosscan::frontend {

std::string SourceSpan::to_string() const {
    return file + ":" + position();
}

std::string SourceSpan::position() const {
    return std::to_string(start_line) + ":" + std::to_string(start_col) + "-" + std::to_string(end_line) + ":" +
           std::to_string(end_col);
}

SourceSpan SourceSpan::join(const SourceSpan& first, const SourceSpan& last) {
    SourceSpan s{first};
    s.end_line = last.end_line;
    s.end_col = last.end_col;
    s.end = last.end;
    return s;
}

namespace {

    constexpr std::array kKeywords{
        "anonymous", "assembly", "break",    "calldata", "catch",     "constant", "constructor", "continue",
        "contract",  "days",     "delete",   "do",       "else",      "emit",     "enum",        "ether",
        "event",     "external", "fallback", "false",    "finney",    "for",      "function",    "gwei",
        "hours",     "if",       "immutable", "import",  "indexed",   "interface", "internal",   "is",
        "library",   "mapping",  "memory",   "minutes",  "modifier",  "new",      "override",    "payable",
        "pragma",    "private",  "public",   "pure",     "receive",   "return",   "returns",     "seconds",
        "storage",   "struct",   "szabo",    "throw",    "true",      "try",      "unchecked",   "using",
        "var",       "view",     "virtual",  "weeks",    "wei",       "while",    "years",
    };

    // Longest match first.
    constexpr std::array kPuncts{
        "<<=", ">>=", "**", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=",
        "|=",  "&=",  "^=", "<<", ">>", "=>", "{",  "}",  "(",  ")",  "[",  "]",  ";",  ",",  ".",  "?",
        ":",   "=",   "<",  ">",  "+",  "-",  "*",  "/",  "%",  "!",  "~",  "&",  "|",  "^",
    };

    bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
    }

    bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
    }

    class Lexer {
      public:
        Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

        std::vector<Token> run() {
            std::vector<Token> out;
            while (true) {
                skip_trivia();
                if (pos_ >= src_.size()) break;
                out.push_back(next());
            }
            return out;
        }

      private:
        std::string_view src_;
        std::string file_;
        std::size_t pos_{0};
        int line_{1};
        int col_{1};

        [[nodiscard]] char peek(std::size_t ahead = 0) const {
            return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
        }

        void advance() {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }

        struct Mark {
            std::size_t pos;
            int line;
            int col;
        };

        [[nodiscard]] Mark mark() const { return {pos_, line_, col_}; }

        // Span from `m` through the character just before the cursor.
        [[nodiscard]] SourceSpan span_from(const Mark& m) const {
            SourceSpan s;
            s.file = file_;
            s.start_line = m.line;
            s.start_col = m.col;
            s.begin = m.pos;
            s.end = pos_;
            // Recompute end line/col of the last consumed character.
            int l = m.line;
            int c = m.col;
            for (std::size_t i = m.pos; i + 1 < pos_; ++i) {
                if (src_[i] == '\n') {
                    ++l;
                    c = 1;
                } else {
                    ++c;
                }
            }
            s.end_line = l;
            s.end_col = c;
            return s;
        }

        [[nodiscard]] SourceSpan point_span() const {
            const Mark m = mark();
            SourceSpan s;
            s.file = file_;
            s.start_line = s.end_line = m.line;
            s.start_col = s.end_col = m.col;
            s.begin = s.end = m.pos;
            return s;
        }

        void skip_trivia() {
            while (pos_ < src_.size()) {
                const char c = peek();
                if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                    advance();
                } else if (c == '/' && peek(1) == '/') {
                    while (pos_ < src_.size() && peek() != '\n') advance();
                } else if (c == '/' && peek(1) == '*') {
                    advance();
                    advance();
                    bool closed = false;
                    while (pos_ < src_.size()) {
                        if (peek() == '*' && peek(1) == '/') {
                            advance();
                            advance();
                            closed = true;
                            break;
                        }
                        advance();
                    }
                    if (!closed) throw LexError(point_span(), "unterminated block comment");
                } else {
                    break;
                }
            }
        }

        Token next() {
            const Mark m = mark();
            const char c = peek();
            if (is_ident_start(c)) {
                while (pos_ < src_.size() && is_ident_char(peek())) advance();
                std::string word{src_.substr(m.pos, pos_ - m.pos)};
                const TokenKind kind = is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier;
                return Token{kind, std::move(word), span_from(m)};
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                return number(m);
            }
            if (c == '"' || c == '\'') return string_literal(m);
            for (const std::string_view p : kPuncts) {
                if (src_.substr(pos_, p.size()) == p) {
                    for (std::size_t i = 0; i < p.size(); ++i) advance();
                    return Token{TokenKind::kPunct, std::string{p}, span_from(m)};
                }
            }
            const auto u = static_cast<unsigned char>(c);
            if (std::isprint(u)) throw LexError(point_span(), std::string("illegal character '") + c + "'");
            static constexpr char kHex[] = "0123456789abcdef";
            throw LexError(point_span(), std::string("illegal byte 0x") + kHex[u >> 4] + kHex[u & 0xf]);
        }

        Token number(const Mark& m) {
            if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
                advance();
                advance();
                while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
            } else {
                while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
                if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                    advance();
                    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
                }
                if ((peek() == 'e' || peek() == 'E') &&
                    (std::isdigit(static_cast<unsigned char>(peek(1))) ||
                     (peek(1) == '-' && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
                    advance();
                    if (peek() == '-') advance();
                    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
                }
            }
            return Token{TokenKind::kNumber, std::string{src_.substr(m.pos, pos_ - m.pos)}, span_from(m)};
        }

        Token string_literal(const Mark& m) {
            const char quote = peek();
            advance();
            std::string value;
            while (true) {
                if (pos_ >= src_.size() || peek() == '\n') {
                    throw LexError(point_span(), "unterminated string literal");
                }
                const char c = peek();
                if (c == quote) {
                    advance();
                    break;
                }
                if (c == '\\') {
                    advance();
                    if (pos_ >= src_.size()) throw LexError(point_span(), "unterminated string literal");
                    const char e = peek();
                    switch (e) {
                        case 'n': value += '\n'; break;
                        case 't': value += '\t'; break;
                        case 'r': value += '\r'; break;
                        case '0': value += '\0'; break;
                        case 'x':
                            if (std::isxdigit(static_cast<unsigned char>(peek(1))) &&
                                std::isxdigit(static_cast<unsigned char>(peek(2)))) {
                                value += static_cast<char>(std::stoi(std::string{src_.substr(pos_ + 1, 2)}, nullptr, 16));
                                advance();
                                advance();
                            } else {
                                value += e;
                            }
                            break;
                        default: value += e; break;
                    }
                    advance();
                    continue;
                }
                value += c;
                advance();
            }
            return Token{TokenKind::kString, std::move(value), span_from(m)};
        }
    };

}  // namespace

bool is_keyword(std::string_view word) noexcept {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source, std::string_view file) {
    return Lexer{source, file}.run();
}

std::string_view to_string(TokenKind kind) noexcept {
    switch (kind) {
        case TokenKind::kIdentifier: return "identifier";
        case TokenKind::kKeyword: return "keyword";
        case TokenKind::kNumber: return "number";
        case TokenKind::kString: return "string";
        case TokenKind::kPunct: return "punctuation";
        case TokenKind::kEnd: return "end of file";
    }
    return "?";
}

}  // namespace dosscan::frontend
