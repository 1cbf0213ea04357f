// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/sim/attack.hpp>

#include <dosscan/frontend/parser.hpp>
#include <dosscan/frontend/source_span.hpp>

namespace dosscan::sim {

using namespace frontend;
using synth::ArgKind;
using synth::AttackPlan;
using synth::EntryRoute;
using synth::InjectionSlot;

std::string_view to_string(NotExploitableReason r) noexcept {
    switch (r) {
        case NotExploitableReason::kBaselineFails:
            return "baseline-fails";
        case NotExploitableReason::kAttackHasNoEffect:
            return "attack-has-no-effect";
        case NotExploitableReason::kRegistrationImpossible:
            return "registration-impossible";
        case NotExploitableReason::kSynthesisUnsupported:
            return "synthesis-unsupported";
    }
    return "?";
}

std::optional<NotExploitableReason> parse_not_exploitable_reason(std::string_view text) noexcept {
    for (auto r : {NotExploitableReason::kBaselineFails, NotExploitableReason::kAttackHasNoEffect,
                   NotExploitableReason::kRegistrationImpossible, NotExploitableReason::kSynthesisUnsupported}) {
        if (to_string(r) == text) return r;
    }
    return std::nullopt;
}

std::string DoSVerdict::to_string() const {
    if (confirmed) return "Confirmed(" + std::string{route.variant_name()} + ")";
    return "NotExploitable(" + std::string{sim::to_string(reason)} + ")";
}

std::vector<Value> concrete_args(const std::vector<ArgKind>& args, Address self) {
    std::vector<Value> out;
    for (const auto a : args) {
        switch (a) {
            case ArgKind::kAttackerAddress:
                out.emplace_back(self);
                break;
            case ArgKind::kInteger:
                out.emplace_back(1);
                break;
            case ArgKind::kBool:
                out.emplace_back(true);
                break;
        }
    }
    return out;
}

namespace {

    void fill_participant(Value& v, Address participant, const Int& stake) {
        if (v.as<Address>()) {
            v = participant;
        } else if (v.as<Int>()) {
            v = stake;
        } else if (v.as<bool>()) {
            v = true;
        } else if (auto* s = v.as<StructValue>()) {
            for (auto& [name, f] : s->fields) {
                if (f.as<Address>() || f.as<Int>() || f.as<bool>()) fill_participant(f, participant, stake);
            }
        }
    }

}  // namespace

void inject(WorldState& world, Address target, const InjectionSlot& slot, Address participant, const Int& stake) {
    Account& acc = world.at(target);
    auto it = acc.storage.find(slot.var);
    if (it == acc.storage.end()) throw SimError("no state variable " + slot.var);
    Value& var = it->second;
    switch (slot.kind) {
        case InjectionSlot::Kind::kAddressArray:
        case InjectionSlot::Kind::kStructArray: {
            auto* arr = var.as<ArrayValue>();
            if (!arr) throw SimError(slot.var + " is not an array");
            Value item = *arr->element_default;
            fill_participant(item, participant, stake);
            arr->items.push_back(std::move(item));
            break;
        }
        case InjectionSlot::Kind::kAddressMapping: {
            auto* m = var.as<MappingValue>();
            if (!m) throw SimError(slot.var + " is not a mapping");
            fill_participant(m->at_or_insert(MapKey{participant}), participant, stake);
            break;
        }
    }
}

namespace {

    struct Failure {
        NotExploitableReason reason;
        std::string detail;
    };

    struct Setup {
        WorldState world;
        Address scut;
        std::vector<Address> honest;
        Address probe;
    };

    std::shared_ptr<const SourceUnit> with_harness(const std::shared_ptr<const SourceUnit>& unit,
                                                   const AttackPlan& plan) {
        if (!plan.harness_source) return unit;
        auto copy = std::make_shared<SourceUnit>(*unit);
        ContractDecl* target = nullptr;
        for (auto& c : copy->contracts) {
            if (c.name == plan.target_contract) target = &c;
        }
        if (!target) throw SimError("unknown contract " + plan.target_contract);
        SourceUnit harness = parse_source_unit("contract __Harness {\n" + *plan.harness_source + "}\n", "<harness>");
        target->functions.push_back(std::move(harness.contracts.at(0).functions.at(0)));
        return copy;
    }

    std::vector<Value> constructor_args(const ContractDecl& c) {
        std::vector<Value> out;
        if (const FunctionDecl* ctor = c.find_constructor()) {
            for (const auto& p : ctor->params) {
                if (p.type.is_address()) {
                    out.emplace_back(kUserAddress);
                } else if (p.type.is_integer()) {
                    out.emplace_back(1);
                } else if (p.type.is_bool()) {
                    out.emplace_back(true);
                } else {
                    throw synth::SynthesisError("cannot populate constructor parameter of type " + p.type.text());
                }
            }
        }
        return out;
    }

    class Runner {
      public:
        Runner(const AttackPlan& plan, std::shared_ptr<const SourceUnit> unit, const AttackOptions& options)
            : plan_(plan), scut_unit_(with_harness(unit, plan)), options_(options) {
            attacker_unit_ = std::make_shared<const SourceUnit>(parse_source_unit(plan.attacker_source, "<attacker>"));
            honest_unit_ = std::make_shared<const SourceUnit>(parse_source_unit(plan.honest_source, "<honest>"));
            for (const auto& step : plan.registration) registration_value_ += step.attached_value;
            inject_ = plan.registration.empty();
        }

        std::variant<Setup, Failure> build(bool attack, Trace& trace) {
            Setup s;
            s.world.create_account(options_.user_balance, "user");
            const ContractDecl* c = scut_unit_->find_contract(plan_.target_contract);
            if (!c) return Failure{NotExploitableReason::kSynthesisUnsupported, "unknown contract"};
            auto d = deploy(s.world, scut_unit_, c->name, constructor_args(*c), options_.scut_endowment, kUserAddress,
                            options_.sim);
            trace.append(d.trace);
            if (!d.outcome.success()) {
                return Failure{NotExploitableReason::kBaselineFails, "target deployment " + d.outcome.to_string()};
            }
            s.scut = *d.address;
            const int parties = std::max(0, options_.honest_parties);
            for (int j = 0; j <= parties; ++j) {
                const bool is_probe = j == parties;
                const bool reverting = is_probe && attack;
                if (plan_.route.kind == EntryRoute::Kind::kViaOwner) {
                    s.world.set_storage(s.scut, plan_.route.owner_var, s.world.next_address());
                }
                auto p = deploy(s.world, reverting ? attacker_unit_ : honest_unit_,
                                reverting ? plan_.attacker_name : plan_.honest_name, {*d.address}, registration_value_,
                                kUserAddress, options_.sim);
                trace.append(p.trace);
                if (!p.outcome.success()) {
                    if (reverting) {
                        return Failure{NotExploitableReason::kRegistrationImpossible,
                                       "attacker registration " + p.outcome.to_string()};
                    }
                    return Failure{NotExploitableReason::kBaselineFails,
                                   "honest registration " + p.outcome.to_string()};
                }
                if (inject_) {
                    for (const auto& slot : plan_.injection_slots) {
                        inject(s.world, s.scut, slot, *p.address, options_.injection_stake);
                        trace.add(0, *p.address, "inject " + slot.var);
                    }
                }
                if (is_probe) {
                    s.probe = *p.address;
                } else {
                    s.honest.push_back(*p.address);
                }
            }
            return s;
        }

        DoSVerdict run() {
            DoSVerdict v;
            v.route = plan_.route;
            v.owner_impersonated = plan_.route.kind == EntryRoute::Kind::kViaOwner;
            v.injected_state = inject_ && !plan_.injection_slots.empty();
            auto fail = [&](Failure f) {
                v.confirmed = false;
                v.reason = f.reason;
                v.detail = std::move(f.detail);
                return v;
            };
            if (inject_ && plan_.injection_slots.empty() && !plan_.payee_from_caller) {
                return fail({NotExploitableReason::kRegistrationImpossible,
                             "no registration function and no injectable state read by the site"});
            }

            // baseline
            v.trace.add(0, kUserAddress, "phase baseline");
            auto built = build(false, v.trace);
            if (auto* f = std::get_if<Failure>(&built)) return fail(*f);
            Setup& base = std::get<Setup>(built);
            const auto b = invoke(base.world, kUserAddress, base.probe, "attack()", {}, 0, options_.sim);
            v.trace.append(b.trace);
            if (!b.outcome.success()) {
                return fail({NotExploitableReason::kBaselineFails, "honest invocation " + b.outcome.to_string()});
            }

            // attack
            v.trace.add(0, kUserAddress, "phase attack");
            built = build(true, v.trace);
            if (auto* f = std::get_if<Failure>(&built)) return fail(*f);
            Setup& world = std::get<Setup>(built);
            std::vector<Int> before;
            for (const auto h : world.honest) before.push_back(world.world.balance(h));

            const auto a = invoke(world.world, kUserAddress, world.probe, "attack()", {}, 0, options_.sim);
            v.trace.append(a.trace);
            if (!a.outcome.reverted()) {
                return fail({NotExploitableReason::kAttackHasNoEffect, "attack invocation " + a.outcome.to_string()});
            }

            v.trace.add(0, kUserAddress, "phase post-attack");
            std::vector<Address> callers = world.honest;
            callers.push_back(kUserAddress);
            const auto args = concrete_args(plan_.entry_args, world.probe);
            for (int i = 0; i < options_.post_invocations; ++i) {
                Address caller = callers[static_cast<std::size_t>(i) % callers.size()];
                if (plan_.route.kind == EntryRoute::Kind::kViaOwner) {
                    const Value* owner = world.world.storage(world.scut, plan_.route.owner_var);
                    if (owner && owner->as<Address>()) caller = *owner->as<Address>();
                }
                const auto r = invoke(world.world, caller, world.scut, plan_.entry_signature, args, 0, options_.sim);
                v.trace.append(r.trace);
                if (!r.outcome.reverted()) {
                    return fail({NotExploitableReason::kAttackHasNoEffect,
                                 "honest invocation " + std::to_string(i + 1) + " " + r.outcome.to_string()});
                }
            }
            for (std::size_t i = 0; i < world.honest.size(); ++i) {
                if (world.world.balance(world.honest[i]) != before[i]) {
                    return fail({NotExploitableReason::kAttackHasNoEffect, "honest payee received wei"});
                }
            }
            v.confirmed = true;
            v.detail = "attack and " + std::to_string(options_.post_invocations) + " honest invocations reverted";
            return v;
        }

      private:
        const AttackPlan& plan_;
        std::shared_ptr<const SourceUnit> scut_unit_;
        std::shared_ptr<const SourceUnit> attacker_unit_;
        std::shared_ptr<const SourceUnit> honest_unit_;
        const AttackOptions& options_;
        Int registration_value_{0};
        bool inject_{false};
    };

}  // namespace

DoSVerdict run_attack(const AttackPlan& plan, std::shared_ptr<const SourceUnit> unit, const AttackOptions& options) {
    try {
        Runner runner(plan, std::move(unit), options);
        return runner.run();
    } catch (const std::exception& e) {
        // synthesis errors, deploy errors, malformed entry points, attacker sources outside the subset
        DoSVerdict v;
        v.route = plan.route;
        v.reason = NotExploitableReason::kSynthesisUnsupported;
        v.detail = e.what();
        return v;
    }
}

// ---- exhaustive oracle -----------------------------------------------------------

namespace {

    constexpr const char* kPayeeSource = R"(
contract AcceptingPayee {
    function() external payable {}
}
contract RevertingPayee {
    function() external payable { revert(); }
}
)";

}  // namespace

std::function<bool(WorldState&, Address, Address)> enrollment_for(const AttackPlan& plan,
                                                                 const AttackOptions& options) {
    return [plan, options](WorldState& world, Address scut, Address payee) {
        if (plan.registration.empty()) {
            if (plan.injection_slots.empty()) return false;
            for (const auto& slot : plan.injection_slots) inject(world, scut, slot, payee, options.injection_stake);
            return true;
        }
        for (const auto& step : plan.registration) {
            const auto r = invoke(world, payee, scut, step.function_signature, concrete_args(step.args, payee),
                                  step.attached_value, options.sim);
            if (!r.outcome.success()) return false;
        }
        return true;
    };
}

bool brute_force_oracle(const OracleInstance& inst, const SimOptions& options) {
    if (inst.payees <= 0) return false;
    if (inst.payees > 4) throw SimError("oracle instances are limited to 4 payees");
    static const auto payee_unit = std::make_shared<const SourceUnit>(parse_source_unit(kPayeeSource, "<payees>"));
    const unsigned k = static_cast<unsigned>(inst.payees);

    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        WorldState world;
        world.create_account(ether(1000000), "user");
        const ContractDecl* c = inst.unit->find_contract(inst.contract);
        if (!c) throw SimError("unknown contract " + inst.contract);
        const auto d = deploy(world, inst.unit, inst.contract, {}, inst.endowment, kUserAddress, options);
        if (!d.outcome.success()) return false;
        std::vector<Address> accepting;
        for (unsigned j = 0; j < k; ++j) {
            const bool reverting = (mask >> j) & 1u;
            const auto p = deploy(world, payee_unit, reverting ? "RevertingPayee" : "AcceptingPayee", {},
                                  inst.payee_funds, kUserAddress, options);
            if (!p.outcome.success() || !inst.enroll(world, *d.address, *p.address)) return false;
            if (!reverting) accepting.push_back(*p.address);
        }
        if (mask == 0) {
            if (!invoke(world, kUserAddress, *d.address, inst.target_signature, {}, 0, options).outcome.success()) {
                return false;
            }
            continue;
        }
        bool all_revert = true;
        std::vector<Address> callers{kUserAddress};
        callers.insert(callers.end(), accepting.begin(), accepting.end());
        for (const auto caller : callers) {
            if (!invoke(world, caller, *d.address, inst.target_signature, {}, 0, options).outcome.reverted()) {
                all_revert = false;
                break;
            }
        }
        if (all_revert) return true;
    }
    return false;
}

}  // namespace dosscan::sim
