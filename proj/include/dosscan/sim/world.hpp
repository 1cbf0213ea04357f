// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <dosscan/frontend/ast.hpp>
#include <dosscan/sim/value.hpp>

namespace dosscan::sim {

//! A malformed request: unknown entry point, value to a non-payable
//! function, or more value than the caller holds.
class SimError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Deployment that cannot start (unknown contract, bad arguments, funds).
class DeployError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Account {
    Int balance{0};
    std::string label;
    std::shared_ptr<const frontend::SourceUnit> unit;  // null for externally owned accounts
    const frontend::ContractDecl* contract{nullptr};   // points into *unit
    std::map<std::string, Value> storage;

    [[nodiscard]] bool has_code() const noexcept { return contract != nullptr; }

    bool operator==(const Account& other) const {
        return balance == other.balance && label == other.label && unit == other.unit &&
               contract == other.contract && storage == other.storage;
    }
};

//! Every account of a simulated chain. Copies are independent snapshots.
class WorldState {
  public:
    //! An externally owned account at the next address.
    Address create_account(const Int& balance, std::string label = {});

    //! Adds a contract account; the interpreter fills in storage.
    Address add_contract(std::shared_ptr<const frontend::SourceUnit> unit, const frontend::ContractDecl& contract,
                         std::string label);

    [[nodiscard]] Address next_address() const noexcept { return Address{next_}; }

    [[nodiscard]] const Account* find(Address a) const;
    [[nodiscard]] Account* find(Address a);
    [[nodiscard]] const Account& at(Address a) const;
    [[nodiscard]] Account& at(Address a);

    [[nodiscard]] Int balance(Address a) const;
    [[nodiscard]] Int total_balance() const;

    //! State variable of a contract, or nullptr.
    [[nodiscard]] const Value* storage(Address a, std::string_view var) const;
    void set_storage(Address a, const std::string& var, Value v);

    [[nodiscard]] const std::map<std::uint32_t, Account>& accounts() const noexcept { return accounts_; }

    bool operator==(const WorldState&) const = default;

  private:
    std::map<std::uint32_t, Account> accounts_;
    std::uint32_t next_{0};
};

struct SimOptions {
    std::uint64_t max_steps{100000};
    Int block_timestamp{1600000000};
    Int block_number{10000000};
};

struct TraceStep {
    int depth{0};
    Address account;
    std::string event;

    bool operator==(const TraceStep&) const = default;
};

struct Trace {
    std::vector<TraceStep> steps;

    void add(int depth, Address account, std::string event) {
        steps.push_back(TraceStep{depth, account, std::move(event)});
    }
    void append(const Trace& other) { steps.insert(steps.end(), other.steps.begin(), other.steps.end()); }

    //! One `depth|address|event` line per step.
    [[nodiscard]] std::string dump() const;

    bool operator==(const Trace&) const = default;
};

struct TxOutcome {
    enum class Kind { kSuccess, kReverted, kStepBudgetExhausted, kUnsupported };

    Kind kind{Kind::kSuccess};
    Value return_value;  // kSuccess
    std::string reason;  // revert reason or unsupported construct

    [[nodiscard]] bool success() const noexcept { return kind == Kind::kSuccess; }
    [[nodiscard]] bool reverted() const noexcept { return kind == Kind::kReverted; }
    //! "Success", "Reverted(reason)", "StepBudgetExhausted", "Unsupported(what)"
    [[nodiscard]] std::string to_string() const;
};

struct InvokeResult {
    TxOutcome outcome;
    Trace trace;
};

struct DeployResult {
    TxOutcome outcome;
    std::optional<Address> address;  // set on success
    Trace trace;
};

//! Creates `contract_name` from `unit`: state initialisers, then the
//! constructor with `args`. `endowment` moves from `from` to the new account.
//! A reverting constructor leaves `world` unchanged.
[[nodiscard]] DeployResult deploy(WorldState& world, std::shared_ptr<const frontend::SourceUnit> unit,
                                  std::string_view contract_name, const std::vector<Value>& args, const Int& endowment,
                                  Address from, const SimOptions& options = {});

//! Runs one transaction from `caller` to `target`. `signature` is a
//! function signature ("pay(address)") or "()" for the fallback; unknown
//! signatures dispatch to the fallback when there is one. A transaction
//! that does not succeed leaves `world` unchanged.
[[nodiscard]] InvokeResult invoke(WorldState& world, Address caller, Address target, std::string_view signature,
                                  const std::vector<Value>& args, const Int& value, const SimOptions& options = {});

}  // namespace dosscan::sim
