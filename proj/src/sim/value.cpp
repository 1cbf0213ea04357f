// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/sim/value.hpp>

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace dosscan::sim {

using namespace frontend;

std::string Address::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%02x", id);
    return buf;
}

Int unit_multiplier(std::string_view unit) {
    if (unit.empty() || unit == "wei" || unit == "seconds") return 1;
    if (unit == "gwei") return Int{1000000000};
    if (unit == "szabo") return Int{1000000000000ULL};
    if (unit == "finney") return Int{1000000000000000ULL};
    if (unit == "ether") return Int{1000000000000000000ULL};
    if (unit == "minutes") return 60;
    if (unit == "hours") return 3600;
    if (unit == "days") return 86400;
    if (unit == "weeks") return 604800;
    if (unit == "years") return 31536000;
    throw std::invalid_argument("unknown unit " + std::string{unit});
}

Int parse_number(std::string_view text, std::string_view unit) {
    std::string t;
    for (char c : text) {
        if (c != '_') t += c;
    }
    const Int mult = unit_multiplier(unit);
    if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
        Int v = 0;
        for (std::size_t i = 2; i < t.size(); ++i) {
            const char c = t[i];
            const int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(c) - 'a' + 10);
            v = v * 16 + d;
        }
        return v * mult;
    }
    std::string mantissa = t;
    long exponent = 0;
    if (const auto e = t.find_first_of("eE"); e != std::string::npos) {
        mantissa = t.substr(0, e);
        exponent = std::stol(t.substr(e + 1));
    }
    if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
        exponent -= static_cast<long>(mantissa.size() - dot - 1);
        mantissa.erase(dot, 1);
    }
    Int v{mantissa.empty() ? std::string{"0"} : mantissa};
    v *= mult;
    if (exponent >= 0) {
        v *= boost::multiprecision::pow(Int{10}, static_cast<unsigned>(exponent));
    } else {
        v /= boost::multiprecision::pow(Int{10}, static_cast<unsigned>(-exponent));
    }
    return v;
}

// ---- containers -------------------------------------------------------------

namespace {

    struct KeyLess {
        bool operator()(const std::pair<MapKey, Value>& a, const MapKey& b) const { return a.first < b; }
    };

}  // namespace

const Value* MappingValue::find(const MapKey& key) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), key, KeyLess{});
    if (it == entries.end() || !(it->first == key)) return nullptr;
    return &it->second;
}

Value& MappingValue::at_or_insert(const MapKey& key) {
    auto it = std::lower_bound(entries.begin(), entries.end(), key, KeyLess{});
    if (it != entries.end() && it->first == key) return it->second;
    it = entries.insert(it, {key, value_default ? *value_default : Value{}});
    return it->second;
}

const Value* StructValue::field(std::string_view name) const {
    for (const auto& [n, v] : fields) {
        if (n == name) return &v;
    }
    return nullptr;
}

Value* StructValue::field(std::string_view name) {
    for (auto& [n, v] : fields) {
        if (n == name) return &v;
    }
    return nullptr;
}

// ---- equality -----------------------------------------------------------------

namespace {

    bool same_default(const ValuePtr& a, const ValuePtr& b) {
        if (a == b) return true;
        if (!a || !b) return false;
        return *a == *b;
    }

}  // namespace

bool operator==(const ArrayValue& a, const ArrayValue& b) {
    return a.fixed == b.fixed && a.items == b.items && same_default(a.element_default, b.element_default);
}

bool operator==(const MappingValue& a, const MappingValue& b) {
    return a.entries == b.entries && same_default(a.value_default, b.value_default);
}

bool operator==(const StructValue& a, const StructValue& b) {
    return a.type_name == b.type_name && a.fields == b.fields;
}

bool operator==(const Value& a, const Value& b) { return a.v == b.v; }

// ---- rendering ------------------------------------------------------------------

std::string to_string(const MapKey& key) {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Int>) {
                return k.str();
            } else if constexpr (std::is_same_v<T, Address>) {
                return k.to_string();
            } else if constexpr (std::is_same_v<T, bool>) {
                return k ? "true" : "false";
            } else {
                return "\"" + k + "\"";
            }
        },
        key);
}

std::string Value::to_string() const {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "()";
            } else if constexpr (std::is_same_v<T, Int>) {
                return x.str();
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, Address>) {
                return x.to_string();
            } else if constexpr (std::is_same_v<T, std::string>) {
                return "\"" + x + "\"";
            } else if constexpr (std::is_same_v<T, ArrayValue>) {
                std::string out = "[";
                for (std::size_t i = 0; i < x.items.size(); ++i) {
                    if (i) out += ",";
                    out += x.items[i].to_string();
                }
                return out + "]";
            } else if constexpr (std::is_same_v<T, MappingValue>) {
                std::string out = "{";
                for (std::size_t i = 0; i < x.entries.size(); ++i) {
                    if (i) out += ",";
                    out += sim::to_string(x.entries[i].first) + ":" + x.entries[i].second.to_string();
                }
                return out + "}";
            } else if constexpr (std::is_same_v<T, StructValue>) {
                std::string out = x.type_name + "(";
                for (std::size_t i = 0; i < x.fields.size(); ++i) {
                    if (i) out += ",";
                    out += x.fields[i].second.to_string();
                }
                return out + ")";
            } else {
                return "ref(" + x.account.to_string() + "." + x.var + ")";
            }
        },
        v);
}

void reset_value(Value& value) {
    std::visit(
        [&](auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Int>) {
                x = 0;
            } else if constexpr (std::is_same_v<T, bool>) {
                x = false;
            } else if constexpr (std::is_same_v<T, Address>) {
                x = Address{};
            } else if constexpr (std::is_same_v<T, std::string>) {
                x.clear();
            } else if constexpr (std::is_same_v<T, ArrayValue>) {
                if (x.fixed) {
                    for (auto& item : x.items) reset_value(item);
                } else {
                    x.items.clear();
                }
            } else if constexpr (std::is_same_v<T, StructValue>) {
                for (auto& [name, f] : x.fields) reset_value(f);
            }
        },
        value.v);
}

// ---- types ------------------------------------------------------------------------

const StructDecl* find_struct(std::string_view name, const ContractDecl& contract, const SourceUnit& unit) {
    // `Contract.Struct` qualified names
    if (const auto dot = name.rfind('.'); dot != std::string_view::npos) name = name.substr(dot + 1);
    if (const auto* s = contract.find_struct(name)) return s;
    for (const auto& c : unit.contracts) {
        if (const auto* s = c.find_struct(name)) return s;
    }
    return nullptr;
}

namespace {

    Value default_value_depth(const TypeName& type, const ContractDecl& contract, const SourceUnit& unit, int depth) {
        if (depth > 16) throw std::runtime_error("recursive type " + type.text());
        switch (type.kind) {
            case TypeName::Kind::kElementary:
                if (type.is_address()) return Address{};
                if (type.is_bool()) return false;
                if (type.name == "string" || type.name == "bytes") return std::string{};
                return Int{0};
            case TypeName::Kind::kUser: {
                if (const auto* s = find_struct(type.name, contract, unit)) {
                    StructValue sv;
                    sv.type_name = s->name;
                    for (const auto& f : s->fields) {
                        sv.fields.emplace_back(f.name, default_value_depth(f.type, contract, unit, depth + 1));
                    }
                    return sv;
                }
                return Address{};
            }
            case TypeName::Kind::kArray: {
                ArrayValue a;
                a.element_default =
                    std::make_shared<const Value>(default_value_depth(type.args.at(0), contract, unit, depth + 1));
                if (type.array_length) {
                    a.fixed = true;
                    const auto n = static_cast<std::size_t>(parse_number(*type.array_length));
                    a.items.assign(n, *a.element_default);
                }
                return a;
            }
            case TypeName::Kind::kMapping: {
                MappingValue m;
                m.value_default =
                    std::make_shared<const Value>(default_value_depth(type.args.at(1), contract, unit, depth + 1));
                return m;
            }
        }
        return Value{};
    }

}  // namespace

Value default_value(const TypeName& type, const ContractDecl& contract, const SourceUnit& unit) {
    return default_value_depth(type, contract, unit, 0);
}

Value coerce(Value v, const TypeName& type) {
    if (type.kind != TypeName::Kind::kElementary) {
        if (type.kind == TypeName::Kind::kUser) {
            if (const auto* i = v.as<Int>()) return Address{static_cast<std::uint32_t>(*i & 0xffffffffu)};
        }
        return v;
    }
    if (type.is_address()) {
        if (const auto* i = v.as<Int>()) return Address{static_cast<std::uint32_t>(*i & 0xffffffffu)};
    } else if (type.is_integer()) {
        if (const auto* a = v.as<Address>()) return Int{a->id};
        if (const auto* b = v.as<bool>()) return Int{*b ? 1 : 0};
    }
    return v;
}

}  // namespace dosscan::sim
