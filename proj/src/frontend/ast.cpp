// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/frontend/ast.hpp>

#include <algorithm>
#include <cctype>

namespace dosscan::frontend {

namespace {

    bool all_digits(std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    bool sized_elementary(std::string_view name, std::string_view prefix) {
        if (name.substr(0, prefix.size()) != prefix) return false;
        const auto rest = name.substr(prefix.size());
        return rest.empty() || all_digits(rest);
    }

}  // namespace

bool is_elementary_type_name(std::string_view name) noexcept {
    if (name == "address" || name == "bool" || name == "string" || name == "byte") return true;
    return sized_elementary(name, "uint") || sized_elementary(name, "int") || sized_elementary(name, "bytes") ||
           sized_elementary(name, "ufixed") || sized_elementary(name, "fixed");
}

bool TypeName::is_integer() const noexcept {
    return kind == Kind::kElementary && (sized_elementary(name, "uint") || sized_elementary(name, "int"));
}

std::string TypeName::text() const {
    switch (kind) {
        case Kind::kElementary:
            return payable ? name + " payable" : name;
        case Kind::kUser:
            return name;
        case Kind::kArray:
            return args.at(0).text() + "[" + array_length.value_or("") + "]";
        case Kind::kMapping:
            return "mapping(" + args.at(0).text() + " => " + args.at(1).text() + ")";
    }
    return name;
}

std::string TypeName::canonical() const {
    switch (kind) {
        case Kind::kElementary:
            if (name == "uint") return "uint256";
            if (name == "int") return "int256";
            if (name == "byte") return "bytes1";
            return name;
        case Kind::kUser:
            return name;
        case Kind::kArray:
            return args.at(0).canonical() + "[" + array_length.value_or("") + "]";
        case Kind::kMapping:
            return "mapping(" + args.at(0).canonical() + "=>" + args.at(1).canonical() + ")";
    }
    return name;
}

std::string_view to_string(GuardKind kind) noexcept {
    switch (kind) {
        case GuardKind::kRequire: return "require";
        case GuardKind::kAssert: return "assert";
        case GuardKind::kRevert: return "revert";
    }
    return "?";
}

std::string_view to_string(Visibility v) noexcept {
    switch (v) {
        case Visibility::kDefault: return "default";
        case Visibility::kPublic: return "public";
        case Visibility::kExternal: return "external";
        case Visibility::kInternal: return "internal";
        case Visibility::kPrivate: return "private";
    }
    return "?";
}

std::string FunctionDecl::signature() const {
    std::string out = name;
    out += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ',';
        out += params[i].type.canonical();
    }
    out += ')';
    return out;
}

const StateVarDecl* ContractDecl::find_state_var(std::string_view n) const noexcept {
    for (const auto& v : state_vars) {
        if (v.name == n) return &v;
    }
    return nullptr;
}

const StructDecl* ContractDecl::find_struct(std::string_view n) const noexcept {
    for (const auto& s : structs) {
        if (s.name == n) return &s;
    }
    return nullptr;
}

const ModifierDecl* ContractDecl::find_modifier(std::string_view n) const noexcept {
    for (const auto& m : modifiers) {
        if (m.name == n) return &m;
    }
    return nullptr;
}

const FunctionDecl* ContractDecl::find_constructor() const noexcept {
    for (const auto& f : functions) {
        if (f.kind == FunctionKind::kConstructor) return &f;
    }
    return nullptr;
}

std::vector<const FunctionDecl*> ContractDecl::find_functions(std::string_view n) const {
    std::vector<const FunctionDecl*> out;
    for (const auto& f : functions) {
        if (f.kind == FunctionKind::kRegular && f.name == n) out.push_back(&f);
    }
    return out;
}

const ContractDecl* SourceUnit::find_contract(std::string_view n) const noexcept {
    for (const auto& c : contracts) {
        if (c.name == n) return &c;
    }
    return nullptr;
}

const FunctionDecl* find_fallback(const ContractDecl& contract) noexcept {
    for (const auto& f : contract.functions) {
        if (f.is_fallback()) return &f;
    }
    return nullptr;
}

}  // namespace dosscan::frontend
