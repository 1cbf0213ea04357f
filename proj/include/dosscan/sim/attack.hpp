// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <dosscan/frontend/ast.hpp>
#include <dosscan/sim/world.hpp>
#include <dosscan/synth/synthesizer.hpp>

namespace dosscan::sim {

struct AttackOptions {
    SimOptions sim;
    int honest_parties{2};    // honest participants besides the probe / attacker
    int post_invocations{3};  // honest invocations after the attack
    Int scut_endowment{ether(100)};
    Int user_balance{ether(1000000)};
    Int injection_stake{ether(1)};
};

enum class NotExploitableReason {
    kBaselineFails,
    kAttackHasNoEffect,
    kRegistrationImpossible,
    kSynthesisUnsupported,
};

//! "baseline-fails", "attack-has-no-effect", ...
[[nodiscard]] std::string_view to_string(NotExploitableReason r) noexcept;
[[nodiscard]] std::optional<NotExploitableReason> parse_not_exploitable_reason(std::string_view text) noexcept;

struct DoSVerdict {
    bool confirmed{false};
    synth::EntryRoute route;
    NotExploitableReason reason{NotExploitableReason::kAttackHasNoEffect};  // when not confirmed
    bool injected_state{false};      // participants were written into storage directly
    bool owner_impersonated{false};  // the owner variable was pointed at participants
    std::string detail;
    Trace trace;

    //! "Confirmed(DirectExternal)" or "NotExploitable(baseline-fails)"
    [[nodiscard]] std::string to_string() const;
};

//! Baseline with honest participants only, then the same world with the
//! attacker in the probe's place: the attack and `post_invocations` honest
//! invocations must all revert, and honest payees must receive nothing.
[[nodiscard]] DoSVerdict run_attack(const synth::AttackPlan& plan, std::shared_ptr<const frontend::SourceUnit> unit,
                                    const AttackOptions& options = {});

//! Writes `participant` into `slot` of the contract at `target`.
void inject(WorldState& world, Address target, const synth::InjectionSlot& slot, Address participant,
            const Int& stake);

//! Concrete values for default arguments; addresses become `self`.
[[nodiscard]] std::vector<Value> concrete_args(const std::vector<synth::ArgKind>& args, Address self);

//! A contract with payees, for the exhaustive fallback-assignment oracle.
struct OracleInstance {
    std::shared_ptr<const frontend::SourceUnit> unit;
    std::string contract;
    std::string target_signature;  // invoked with no arguments
    int payees{0};                 // at most 4
    Int endowment{ether(100)};
    Int payee_funds{ether(1)};
    //! Makes `payee` a payee of `scut`; returns false if that failed.
    std::function<bool(WorldState&, Address scut, Address payee)> enroll;
};

//! Enrollment that replays the plan's registration from the payee, or
//! injects it into the plan's slots when there is no registration.
[[nodiscard]] std::function<bool(WorldState&, Address, Address)> enrollment_for(const synth::AttackPlan& plan,
                                                                                const AttackOptions& options = {});

//! Tries every accepting/reverting assignment of payee fallbacks. True iff
//! the all-accepting world succeeds and some non-empty reverting subset makes
//! every honest invocation (user and accepting payees) revert.
[[nodiscard]] bool brute_force_oracle(const OracleInstance& instance, const SimOptions& options = {});

}  // namespace dosscan::sim
