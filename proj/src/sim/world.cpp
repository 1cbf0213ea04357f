// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/sim/world.hpp>

namespace dosscan::sim {

Address WorldState::create_account(const Int& balance, std::string label) {
    const Address a{next_++};
    Account acc;
    acc.balance = balance;
    acc.label = std::move(label);
    accounts_.emplace(a.id, std::move(acc));
    return a;
}

Address WorldState::add_contract(std::shared_ptr<const frontend::SourceUnit> unit,
                                 const frontend::ContractDecl& contract, std::string label) {
    const Address a = create_account(0, std::move(label));
    Account& acc = accounts_.at(a.id);
    acc.unit = std::move(unit);
    acc.contract = &contract;
    return a;
}

const Account* WorldState::find(Address a) const {
    const auto it = accounts_.find(a.id);
    return it == accounts_.end() ? nullptr : &it->second;
}

Account* WorldState::find(Address a) {
    const auto it = accounts_.find(a.id);
    return it == accounts_.end() ? nullptr : &it->second;
}

const Account& WorldState::at(Address a) const {
    const Account* acc = find(a);
    if (!acc) throw SimError("no account at " + a.to_string());
    return *acc;
}

Account& WorldState::at(Address a) {
    Account* acc = find(a);
    if (!acc) throw SimError("no account at " + a.to_string());
    return *acc;
}

Int WorldState::balance(Address a) const {
    const Account* acc = find(a);
    return acc ? acc->balance : Int{0};
}

Int WorldState::total_balance() const {
    Int total = 0;
    for (const auto& [id, acc] : accounts_) total += acc.balance;
    return total;
}

const Value* WorldState::storage(Address a, std::string_view var) const {
    const Account* acc = find(a);
    if (!acc) return nullptr;
    const auto it = acc->storage.find(std::string{var});
    return it == acc->storage.end() ? nullptr : &it->second;
}

void WorldState::set_storage(Address a, const std::string& var, Value v) { at(a).storage[var] = std::move(v); }

std::string Trace::dump() const {
    std::string out;
    for (const auto& s : steps) {
        out += std::to_string(s.depth);
        out += '|';
        out += s.account.to_string();
        out += '|';
        out += s.event;
        out += '\n';
    }
    return out;
}

}  // namespace dosscan::sim
