// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <dosscan/frontend/ast.hpp>

namespace dosscan::sim {

//! Unbounded signed integer; wei amounts and all Solidity integer types.
using Int = boost::multiprecision::cpp_int;

//! Account identity. 0x00 is the external user.
struct Address {
    std::uint32_t id{0};

    //! "0xNN"
    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const Address&) const = default;
};

inline constexpr Address kUserAddress{0};

//! wei per unit for ether denominations; 1 for time units in seconds.
[[nodiscard]] Int unit_multiplier(std::string_view unit);

//! Value of a number literal (decimal, hex, fraction, exponent) times its unit.
[[nodiscard]] Int parse_number(std::string_view text, std::string_view unit = "");

[[nodiscard]] inline Int ether(unsigned long long n) { return Int{n} * unit_multiplier("ether"); }

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

//! Mapping key; integers, addresses, booleans and strings.
using MapKey = std::variant<Int, Address, bool, std::string>;

struct ArrayValue {
    std::vector<Value> items;
    ValuePtr element_default;
    bool fixed{false};
};

struct MappingValue {
    std::vector<std::pair<MapKey, Value>> entries;  // sorted by key
    ValuePtr value_default;

    [[nodiscard]] const Value* find(const MapKey& key) const;
    Value& at_or_insert(const MapKey& key);
};

struct StructValue {
    std::string type_name;
    std::vector<std::pair<std::string, Value>> fields;

    [[nodiscard]] const Value* field(std::string_view name) const;
    Value* field(std::string_view name);
};

struct MemberStep {
    std::string name;
    bool operator==(const MemberStep&) const = default;
};

using PathStep = std::variant<MapKey, MemberStep>;

//! A reference into contract storage (`T storage x = ...`).
struct StorageRef {
    Address account;
    std::string var;
    std::vector<PathStep> steps;
    bool operator==(const StorageRef&) const = default;
};

struct Value {
    std::variant<std::monostate, Int, bool, Address, std::string, ArrayValue, MappingValue, StructValue, StorageRef> v;

    Value() = default;
    Value(Int i) : v(std::move(i)) {}                   // NOLINT(google-explicit-constructor)
    Value(int i) : v(Int{i}) {}                         // NOLINT(google-explicit-constructor)
    Value(bool b) : v(b) {}                             // NOLINT(google-explicit-constructor)
    Value(Address a) : v(a) {}                          // NOLINT(google-explicit-constructor)
    Value(std::string s) : v(std::move(s)) {}           // NOLINT(google-explicit-constructor)
    Value(const char* s) : v(std::string{s}) {}         // NOLINT(google-explicit-constructor)
    Value(ArrayValue a) : v(std::move(a)) {}            // NOLINT(google-explicit-constructor)
    Value(MappingValue m) : v(std::move(m)) {}          // NOLINT(google-explicit-constructor)
    Value(StructValue s) : v(std::move(s)) {}           // NOLINT(google-explicit-constructor)
    Value(StorageRef r) : v(std::move(r)) {}            // NOLINT(google-explicit-constructor)

    template <class T>
    [[nodiscard]] const T* as() const noexcept {
        return std::get_if<T>(&v);
    }
    template <class T>
    [[nodiscard]] T* as() noexcept {
        return std::get_if<T>(&v);
    }

    [[nodiscard]] bool is_unit() const noexcept { return std::holds_alternative<std::monostate>(v); }

    //! Compact deterministic rendering used in traces and reports.
    [[nodiscard]] std::string to_string() const;
};

bool operator==(const Value& a, const Value& b);
bool operator==(const ArrayValue& a, const ArrayValue& b);
bool operator==(const MappingValue& a, const MappingValue& b);
bool operator==(const StructValue& a, const StructValue& b);

[[nodiscard]] std::string to_string(const MapKey& key);

//! Resets `v` in place the way `delete` does (mappings are left alone).
void reset_value(Value& v);

//! Looks up struct declarations by name: first in `contract`, then in the whole unit.
[[nodiscard]] const frontend::StructDecl* find_struct(std::string_view name, const frontend::ContractDecl& contract,
                                                      const frontend::SourceUnit& unit);

//! Zero value of a declared type: 0, false, 0x00, "", empty array, etc.
//! Unknown user types (contracts, interfaces) default to an address.
[[nodiscard]] Value default_value(const frontend::TypeName& type, const frontend::ContractDecl& contract,
                                  const frontend::SourceUnit& unit);

//! Converts between integers and addresses where `type` asks for it.
[[nodiscard]] Value coerce(Value v, const frontend::TypeName& type);

}  // namespace dosscan::sim
