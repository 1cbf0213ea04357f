// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <dosscan/frontend/source_span.hpp>

namespace dosscan::frontend {

//! Owning pointer with value semantics (deep copy). Used for recursive AST
//! members so the tree stays copyable.
template <class T>
class Box {
  public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
    Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other) {
        if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;
    ~Box() = default;

    T& operator*() { return *ptr_; }
    const T& operator*() const { return *ptr_; }
    T* operator->() { return ptr_.get(); }
    const T* operator->() const { return ptr_.get(); }

  private:
    std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Types

struct TypeName {
    enum class Kind {
        kElementary,  // uint256, address, bool, ...
        kUser,        // struct / contract / enum name
        kArray,       // args[0] is the element type
        kMapping,     // args[0] key, args[1] value
    };

    Kind kind{Kind::kElementary};
    std::string name;                         // elementary / user name
    bool payable{false};                      // `address payable`
    std::vector<TypeName> args;               // see Kind
    std::optional<std::string> array_length;  // fixed-size arrays only

    //! Source-like rendering, e.g. "address payable", "Lender[]", "mapping(address => uint)".
    [[nodiscard]] std::string text() const;

    //! ABI-style rendering used in signatures: `payable` dropped, uint -> uint256, int -> int256.
    [[nodiscard]] std::string canonical() const;

    [[nodiscard]] bool is_address() const noexcept { return kind == Kind::kElementary && name == "address"; }
    [[nodiscard]] bool is_bool() const noexcept { return kind == Kind::kElementary && name == "bool"; }
    [[nodiscard]] bool is_integer() const noexcept;
};

[[nodiscard]] bool is_elementary_type_name(std::string_view name) noexcept;

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
using ExprPtr = Box<Expr>;

struct Identifier {
    std::string name;
};

struct MemberAccess {
    ExprPtr base;
    std::string member;
};

struct IndexAccess {
    ExprPtr base;
    ExprPtr index;
};

//! A call. `addr.call.value(v)(data)` and `addr.call{value: v}(data)` both
//! produce callee = `addr.call` with value = v.
struct Call {
    ExprPtr callee;
    std::vector<Expr> args;
    std::optional<ExprPtr> value;
    std::optional<ExprPtr> gas;
};

enum class GuardKind { kRequire, kAssert, kRevert };

[[nodiscard]] std::string_view to_string(GuardKind kind) noexcept;

//! require(...), assert(...), revert(...)
struct BuiltinGuard {
    GuardKind kind{GuardKind::kRequire};
    std::vector<Expr> args;
};

struct Unary {
    std::string op;  // ! - ~ ++ -- delete
    ExprPtr operand;
    bool postfix{false};
};

//! Binary operators including assignment forms (=, +=, -=, ...).
struct Binary {
    std::string op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Conditional {
    ExprPtr condition;
    ExprPtr if_true;
    ExprPtr if_false;
};

struct Literal {
    enum class Kind { kNumber, kString, kBool };
    Kind kind{Kind::kNumber};
    std::string text;  // digits, unescaped string contents, or "true"/"false"
    std::string unit;  // ether, wei, days, ... (numbers only; may be empty)
};

struct MsgSender {};
struct MsgValue {};

//! `new T` (only meaningful as a callee)
struct NewExpr {
    TypeName type;
};

struct Expr {
    SourceSpan span;
    std::variant<Identifier, MemberAccess, IndexAccess, Call, BuiltinGuard, Unary, Binary, Conditional, Literal,
                 MsgSender, MsgValue, NewExpr>
        node;

    template <class T>
    [[nodiscard]] const T* as() const noexcept {
        return std::get_if<T>(&node);
    }
    template <class T>
    [[nodiscard]] T* as() noexcept {
        return std::get_if<T>(&node);
    }
};

// ---------------------------------------------------------------------------
// Statements

struct Stmt;

struct Block {
    std::vector<Stmt> statements;
    bool braced{true};  // false for a single statement used as a branch/loop body
};

struct IfStmt {
    Expr condition;
    Block then_branch;
    std::optional<Block> else_branch;
};

struct ForStmt {
    std::optional<Box<Stmt>> init;  // a VarDecl or ExprStmt, span includes its ';'
    std::optional<Expr> condition;
    std::optional<Expr> post;
    Block body;
};

struct WhileStmt {
    Expr condition;
    Block body;
    bool do_while{false};
};

struct ExprStmt {
    Expr expr;
};

struct ThrowStmt {};

struct VarDeclStmt {
    std::optional<TypeName> type;  // absent for `var`
    std::string name;
    std::string location;  // memory / storage / calldata / ""
    std::optional<Expr> init;
};

struct ReturnStmt {
    std::optional<Expr> value;
};

//! `_;` inside a modifier body
struct PlaceholderStmt {};

struct EmitStmt {
    Expr event;
};

struct BreakStmt {};
struct ContinueStmt {};

//! An opaque region the subset does not model (inline assembly, try/catch,
//! tuple destructuring). Holds the raw source text.
struct SkippedStmt {
    std::string what;
    std::string text;
};

struct Stmt {
    SourceSpan span;
    std::variant<Block, IfStmt, ForStmt, WhileStmt, ExprStmt, ThrowStmt, VarDeclStmt, ReturnStmt, PlaceholderStmt,
                 EmitStmt, BreakStmt, ContinueStmt, SkippedStmt>
        node;

    template <class T>
    [[nodiscard]] const T* as() const noexcept {
        return std::get_if<T>(&node);
    }
    template <class T>
    [[nodiscard]] T* as() noexcept {
        return std::get_if<T>(&node);
    }
};

// ---------------------------------------------------------------------------
// Declarations

enum class Visibility { kDefault, kPublic, kExternal, kInternal, kPrivate };

[[nodiscard]] std::string_view to_string(Visibility v) noexcept;

struct Parameter {
    TypeName type;
    std::string name;      // may be empty
    std::string location;  // memory / storage / calldata / ""
    SourceSpan span;
};

struct ModifierInvocation {
    std::string name;
    std::vector<Expr> args;
    SourceSpan span;
};

enum class FunctionKind { kRegular, kConstructor, kFallback };

struct FunctionDecl {
    FunctionKind kind{FunctionKind::kRegular};
    std::string name;  // empty for constructors and the fallback
    std::vector<Parameter> params;
    std::vector<Parameter> returns;
    Visibility visibility{Visibility::kDefault};
    bool is_payable{false};
    std::string mutability;  // view / pure / constant / ""
    std::vector<ModifierInvocation> modifiers;
    std::optional<Block> body;  // absent for declarations ending in ';'
    SourceSpan span;
    SourceSpan body_span;

    [[nodiscard]] bool is_fallback() const noexcept { return kind == FunctionKind::kFallback; }

    //! default and public/external visibility
    [[nodiscard]] bool externally_visible() const noexcept {
        return visibility == Visibility::kDefault || visibility == Visibility::kPublic ||
               visibility == Visibility::kExternal;
    }

    //! name(type,type) with canonical parameter types
    [[nodiscard]] std::string signature() const;
};

struct ModifierDecl {
    std::string name;
    std::vector<Parameter> params;
    Block body;
    SourceSpan span;
    SourceSpan body_span;
};

struct StateVarDecl {
    TypeName type;
    std::string name;
    Visibility visibility{Visibility::kDefault};
    bool constant{false};
    std::optional<Expr> init;
    SourceSpan span;
};

struct StructDecl {
    std::string name;
    std::vector<Parameter> fields;
    SourceSpan span;
};

//! Declaration-level region kept as raw text (events, enums, using-for,
//! inheritance lists, imports, libraries, interfaces).
struct SkippedRegion {
    std::string what;
    std::string text;
    SourceSpan span;
};

struct ContractDecl {
    std::string name;
    std::vector<StateVarDecl> state_vars;
    std::vector<StructDecl> structs;
    std::vector<ModifierDecl> modifiers;
    std::vector<FunctionDecl> functions;
    std::vector<SkippedRegion> skipped;
    std::optional<std::string> inheritance;  // raw `is A, B` text, unmodelled
    SourceSpan span;

    [[nodiscard]] const StateVarDecl* find_state_var(std::string_view n) const noexcept;
    [[nodiscard]] const StructDecl* find_struct(std::string_view n) const noexcept;
    [[nodiscard]] const ModifierDecl* find_modifier(std::string_view n) const noexcept;
    [[nodiscard]] const FunctionDecl* find_constructor() const noexcept;

    //! All regular functions with the given name.
    [[nodiscard]] std::vector<const FunctionDecl*> find_functions(std::string_view n) const;
};

struct SourceUnit {
    std::string file;
    std::optional<std::string> pragma;
    std::vector<ContractDecl> contracts;
    std::vector<SkippedRegion> skipped;
    SourceSpan span;

    [[nodiscard]] const ContractDecl* find_contract(std::string_view n) const noexcept;
};

//! The unnamed fallback function of `contract`, if any.
[[nodiscard]] const FunctionDecl* find_fallback(const ContractDecl& contract) noexcept;

}  // namespace dosscan::frontend
