// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <dosscan/frontend/ast.hpp>

namespace dosscan::detect {

enum class ExternalCallKind { kSend, kTransfer, kLowLevelCall };

enum class PatternKind { kIteration, kIfThrow, kIfRevert, kAssert, kRequire };

[[nodiscard]] std::string_view to_string(ExternalCallKind kind) noexcept;
[[nodiscard]] std::string_view to_string(PatternKind kind) noexcept;
[[nodiscard]] std::optional<PatternKind> parse_pattern_kind(std::string_view text) noexcept;
[[nodiscard]] std::optional<ExternalCallKind> parse_call_kind(std::string_view text) noexcept;

//! send / transfer / call member name to call kind; nullopt for anything else.
[[nodiscard]] std::optional<ExternalCallKind> external_call_kind(const frontend::Expr& e) noexcept;

struct Accessibility {
    enum class Kind { kExternallyCallable, kGuardedOwnerOnly, kInternalOnly };

    Kind kind{Kind::kExternallyCallable};
    std::string guard_name;  // modifier name, or "inline" for a guard in the body
    std::string owner_var;   // state variable compared against msg.sender

    //! "ExternallyCallable", "GuardedOwnerOnly(onlyOwner)", "InternalOnly"
    [[nodiscard]] std::string to_string() const;

    bool operator==(const Accessibility&) const = default;
};

//! Parses the to_string() form back.
[[nodiscard]] std::optional<Accessibility> parse_accessibility(std::string_view text);

struct PotentialFinding {
    std::string contract_name;
    std::string function_name;       // empty for the fallback
    std::string function_signature;  // name(canonical,param,types)
    PatternKind pattern{PatternKind::kRequire};
    ExternalCallKind call_kind{ExternalCallKind::kSend};
    frontend::SourceSpan site;       // If / loop / guard node that matched
    frontend::SourceSpan call_site;  // the send/transfer/call expression
    Accessibility accessibility;

    //! "Contract.signature"
    [[nodiscard]] std::string qualified_signature() const { return contract_name + "." + function_signature; }

    bool operator==(const PotentialFinding&) const = default;
};

//! Applies the five pattern rules to every function body (constructors
//! excluded). Findings are ordered by contract, then site position.
[[nodiscard]] std::vector<PotentialFinding> detect(const frontend::SourceUnit& unit);

//! `unit` is used to resolve modifiers declared in other contracts of the file.
[[nodiscard]] Accessibility classify_accessibility(const frontend::FunctionDecl& f, const frontend::ContractDecl& c,
                                                   const frontend::SourceUnit* unit = nullptr);

//! One `Contract.sig<TAB>Pattern<TAB>Accessibility` line per finding, LF-terminated.
[[nodiscard]] std::string export_signatures(const std::vector<PotentialFinding>& findings);

//! The function a finding refers to, or nullptr.
[[nodiscard]] const frontend::FunctionDecl* find_function(const frontend::ContractDecl& c,
                                                          std::string_view signature) noexcept;

//! Signature used for the fallback function.
inline constexpr std::string_view kFallbackSignature{"()"};

//! The state variable `X` when `s` is a sender guard of one of the forms
//! `if (msg.sender != X) throw/revert`, `require(msg.sender == X)` or
//! `assert(msg.sender == X)` with X a state variable of `c`.
[[nodiscard]] std::optional<std::string> sender_guard_var(const frontend::Stmt& s, const frontend::ContractDecl& c);

//! True if any expression within `s` is a send/transfer/call member call.
[[nodiscard]] bool contains_external_call(const frontend::Stmt& s);
[[nodiscard]] bool contains_external_call(const frontend::Expr& e);

}  // namespace dosscan::detect
