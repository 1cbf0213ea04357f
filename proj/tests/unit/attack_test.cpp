// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <dosscan/detect/detector.hpp>
#include <dosscan/frontend/parser.hpp>
#include <dosscan/sim/attack.hpp>
#include <dosscan/synth/synthesizer.hpp>

#include "random_payout.hpp"
#include "test_util.hpp"

using namespace dosscan;
using namespace dosscan::sim;
using frontend::SourceUnit;

namespace {

struct Target {
    std::shared_ptr<const SourceUnit> unit;
    synth::AttackPlan plan;
};

Target target_from_text(const std::string& source, const std::string& function) {
    auto unit = std::make_shared<const SourceUnit>(frontend::parse_source_unit(source));
    for (const auto& f : detect::detect(*unit)) {
        if (f.function_name == function) return {unit, synth::synthesize_attacker(f, *unit)};
    }
    throw std::runtime_error("no finding in " + function);
}

Target target(const std::string& relative, const std::string& function) {
    return target_from_text(test::read_source(relative), function);
}

std::shared_ptr<const SourceUnit> parse_shared(const std::string& source) {
    return std::make_shared<const SourceUnit>(frontend::parse_source_unit(source));
}

}  // namespace

TEST_CASE("lender loop: honest round pays, one reverting lender blocks everyone", "[attack]") {
    const auto t = target("corpus/evaluation/fixture_HYIP.sol", "sendPayment");
    const auto honest = parse_shared(t.plan.honest_source);
    const auto attacker = parse_shared(t.plan.attacker_source);

    WorldState w;
    w.create_account(ether(1000000), "user");
    const auto scut = deploy(w, t.unit, "HYIP", {}, ether(100), kUserAddress).address.value();
    std::vector<Address> lenders;
    for (int i = 0; i < 2; ++i) {
        const auto d = deploy(w, honest, "Honest_HYIP", {scut}, ether(1), kUserAddress);
        REQUIRE(d.outcome.success());
        lenders.push_back(*d.address);
    }
    // each lend() moved 1 ether into the contract
    CHECK(w.balance(scut) == ether(102));
    CHECK(w.balance(lenders[0]) == 0);

    const Int payment = ether(1) / 1000;
    const auto baseline = invoke(w, kUserAddress, scut, "sendPayment()", {}, 0);
    REQUIRE(baseline.outcome.success());
    CHECK(w.balance(lenders[0]) == payment);
    CHECK(w.balance(lenders[1]) == payment);
    CHECK(w.balance(scut) == ether(102) - 2 * payment);

    const auto a = deploy(w, attacker, "Attacker_HYIP", {scut}, ether(1), kUserAddress);
    REQUIRE(a.outcome.success());
    const WorldState before = w;
    const auto r = invoke(w, kUserAddress, scut, "sendPayment()", {}, 0);
    CHECK(r.outcome.kind == TxOutcome::Kind::kReverted);
    CHECK(r.outcome.reason == "throw");
    CHECK(w == before);

    const auto v = run_attack(t.plan, t.unit);
    CHECK(v.to_string() == "Confirmed(DirectExternal)");
    CHECK_FALSE(v.injected_state);
}

TEST_CASE("payout system: injected attacker starves honest payees", "[attack]") {
    const auto t = target("corpus/scenarios/payout_system.sol", "payAll");
    AttackOptions options;
    const auto v = run_attack(t.plan, t.unit, options);
    CHECK(v.to_string() == "Confirmed(DirectExternal)");
    CHECK(v.injected_state);

    // the same world by hand: 3 payees, one of them the attacker
    const auto honest = parse_shared(t.plan.honest_source);
    const auto attacker = parse_shared(t.plan.attacker_source);
    WorldState w;
    w.create_account(ether(1000000), "user");
    const auto scut = deploy(w, t.unit, "PayoutSystem", {}, ether(100), kUserAddress).address.value();
    std::vector<Address> payees;
    for (int i = 0; i < 2; ++i) {
        payees.push_back(deploy(w, honest, "Honest_PayoutSystem", {scut}, 0, kUserAddress).address.value());
    }
    const Address bad = deploy(w, attacker, "Attacker_PayoutSystem", {scut}, 0, kUserAddress).address.value();
    for (const auto p : {payees[0], payees[1], bad}) {
        for (const auto& slot : t.plan.injection_slots) inject(w, scut, slot, p, ether(1));
    }
    const Int honest_before = w.balance(payees[0]) + w.balance(payees[1]);
    const std::vector<Address> callers{payees[0], payees[1], kUserAddress};
    for (int i = 0; i < 3; ++i) {
        const auto r = invoke(w, callers[i], scut, "payAll()", {}, 0);
        CHECK(r.outcome.reverted());
    }
    CHECK(w.balance(payees[0]) + w.balance(payees[1]) == honest_before);

    // without the attacker the round delivers 1 ether to each honest payee
    WorldState clean;
    clean.create_account(ether(1000000), "user");
    const auto scut2 = deploy(clean, t.unit, "PayoutSystem", {}, ether(100), kUserAddress).address.value();
    const auto p = deploy(clean, honest, "Honest_PayoutSystem", {scut2}, 0, kUserAddress).address.value();
    for (const auto& slot : t.plan.injection_slots) inject(clean, scut2, slot, p, ether(1));
    REQUIRE(invoke(clean, kUserAddress, scut2, "payAll()", {}, 0).outcome.success());
    CHECK(clean.balance(p) == ether(1));
}

TEST_CASE("not exploitable reasons", "[attack]") {
    SECTION("caller pays itself") {
        const auto t = target("corpus/extras/potential_SelfWithdraw.sol", "withdraw");
        CHECK(run_attack(t.plan, t.unit).to_string() == "NotExploitable(attack-has-no-effect)");
    }
    SECTION("members collect their own share") {
        const auto t = target("corpus/extras/potential_SplitWithdraw.sol", "withdrawShare");
        CHECK(run_attack(t.plan, t.unit).to_string() == "NotExploitable(attack-has-no-effect)");
    }
    SECTION("fixed payee") {
        const auto t = target("corpus/extras/potential_FixedBeneficiary.sol", "release");
        CHECK(run_attack(t.plan, t.unit).to_string() == "NotExploitable(registration-impossible)");
    }
    SECTION("time lock") {
        const auto t = target("corpus/extras/potential_LockedVault.sol", "payInterest");
        const auto v = run_attack(t.plan, t.unit);
        CHECK(v.to_string() == "NotExploitable(baseline-fails)");
        CHECK(v.detail == "honest invocation Reverted(require)");
    }
    SECTION("interpreter gives up") {
        const auto t = target_from_text(R"(
contract Asm {
    address payable[] ps;
    function join() public payable { ps.push(msg.sender); }
    function pay() public {
        for (uint i = 0; i < ps.length; i++) { require(ps[i].send(1)); }
        assembly { let x := 1 }
    }
})",
                                        "pay");
        CHECK(run_attack(t.plan, t.unit).to_string() == "NotExploitable(baseline-fails)");
    }
    SECTION("step budget") {
        const auto t = target("corpus/evaluation/fixture_HYIP.sol", "sendPayment");
        AttackOptions options;
        options.sim.max_steps = 4;
        CHECK(run_attack(t.plan, t.unit, options).to_string() == "NotExploitable(baseline-fails)");
    }
    SECTION("budget runs out only under attack") {
        const auto t = target_from_text(R"(
contract Spin {
    address payable[] ps;
    function join() public payable { ps.push(msg.sender); }
    function pay() public {
        for (uint i = 0; i < ps.length; i++) {
            if (!ps[i].send(1)) {
                uint j = 0;
                while (j < 1000000) { j++; }
                revert();
            }
        }
    }
})",
                                        "pay");
        const auto v = run_attack(t.plan, t.unit);
        CHECK(v.to_string() == "NotExploitable(attack-has-no-effect)");
        CHECK(v.detail == "attack invocation StepBudgetExhausted");
    }
    SECTION("plan that cannot be simulated") {
        auto t = target("corpus/evaluation/fixture_HYIP.sol", "sendPayment");
        t.plan.attacker_source = "contract Broken {";
        CHECK(run_attack(t.plan, t.unit).to_string() == "NotExploitable(synthesis-unsupported)");
    }
}

TEST_CASE("owner routes impersonate the owner", "[attack]") {
    const auto t = target("corpus/evaluation/fixture_GramChain.sol", "payout");
    const auto v = run_attack(t.plan, t.unit);
    CHECK(v.to_string() == "Confirmed(ViaOwner)");
    CHECK(v.owner_impersonated);
}

TEST_CASE("internal routes", "[attack]") {
    const auto wrapper = target("corpus/evaluation/fixture_Unipool.sol", "sendValue");
    CHECK(run_attack(wrapper.plan, wrapper.unit).to_string() == "Confirmed(InternalHarness)");
    const auto caller = target("corpus/evaluation/fixture_Xank.sol", "_payTop");
    CHECK(run_attack(caller.plan, caller.unit).to_string() == "Confirmed(InternalHarness)");
    // the harness never leaks into the shared unit
    for (const auto& f : wrapper.unit->contracts[0].functions) CHECK(f.name.rfind("__harness_", 0) != 0);
}

TEST_CASE("honest parties count", "[attack]") {
    const auto t = target("corpus/evaluation/fixture_HYIP.sol", "sendPayment");
    for (int h : {0, 1, 4}) {
        AttackOptions options;
        options.honest_parties = h;
        CHECK(run_attack(t.plan, t.unit, options).confirmed);
    }
}

TEST_CASE("run_attack is deterministic", "[attack][property]") {
    for (const auto& [file, fn] : std::vector<std::pair<std::string, std::string>>{
             {"corpus/evaluation/fixture_HYIP.sol", "sendPayment"},
             {"corpus/evaluation/fixture_Tip.sol", "refundTips"},
             {"corpus/extras/potential_SelfWithdraw.sol", "withdraw"}}) {
        const auto t = target(file, fn);
        const auto a = run_attack(t.plan, t.unit);
        const auto b = run_attack(t.plan, t.unit);
        CHECK(a.to_string() == b.to_string());
        CHECK(a.detail == b.detail);
        CHECK(a.trace == b.trace);
        CHECK(a.trace.dump() == b.trace.dump());
    }
}

TEST_CASE("verdict reasons parse back", "[attack]") {
    for (auto r : {NotExploitableReason::kBaselineFails, NotExploitableReason::kAttackHasNoEffect,
                   NotExploitableReason::kRegistrationImpossible, NotExploitableReason::kSynthesisUnsupported}) {
        CHECK(parse_not_exploitable_reason(to_string(r)) == r);
    }
    CHECK_FALSE(parse_not_exploitable_reason("nope"));
}

// ---- oracle ---------------------------------------------------------------------

TEST_CASE("oracle on the payout system, three payees", "[oracle]") {
    const auto t = target("corpus/scenarios/payout_system.sol", "payAll");
    OracleInstance inst;
    inst.unit = t.unit;
    inst.contract = "PayoutSystem";
    inst.target_signature = "payAll()";
    inst.payees = 3;
    inst.enroll = enrollment_for(t.plan);
    CHECK(brute_force_oracle(inst));
}

TEST_CASE("oracle on pull payments, three payees", "[oracle]") {
    const auto unit = parse_shared(R"(
contract Pull {
    address payable[] members;
    mapping(address => uint) credit;
    function pay() public {
        uint amount = credit[msg.sender];
        credit[msg.sender] = 0;
        require(msg.sender.send(amount));
    }
})");
    OracleInstance inst;
    inst.unit = unit;
    inst.contract = "Pull";
    inst.target_signature = "pay()";
    inst.payees = 3;
    inst.enroll = [](WorldState& w, Address scut, Address payee) {
        inject(w, scut, {synth::InjectionSlot::Kind::kAddressArray, "members"}, payee, 0);
        inject(w, scut, {synth::InjectionSlot::Kind::kAddressMapping, "credit"}, payee, ether(1));
        return true;
    };
    CHECK_FALSE(brute_force_oracle(inst));
}

TEST_CASE("oracle without payees", "[oracle]") {
    const auto t = target("corpus/scenarios/payout_system.sol", "payAll");
    OracleInstance inst;
    inst.unit = t.unit;
    inst.contract = "PayoutSystem";
    inst.target_signature = "payAll()";
    inst.payees = 0;
    inst.enroll = enrollment_for(t.plan);
    CHECK_FALSE(brute_force_oracle(inst));
    inst.payees = 5;
    CHECK_THROWS_AS(brute_force_oracle(inst), SimError);
}

TEST_CASE("oracle: failing enrollment or baseline is false", "[oracle]") {
    const auto t = target("corpus/scenarios/payout_system.sol", "payAll");
    OracleInstance inst;
    inst.unit = t.unit;
    inst.contract = "PayoutSystem";
    inst.target_signature = "payAll()";
    inst.payees = 2;
    inst.enroll = [](WorldState&, Address, Address) { return false; };
    CHECK_FALSE(brute_force_oracle(inst));

    const auto locked = target("corpus/extras/potential_LockedVault.sol", "payInterest");
    inst.unit = locked.unit;
    inst.contract = "LockedVault";
    inst.target_signature = "payInterest()";
    inst.enroll = enrollment_for(locked.plan);
    CHECK_FALSE(brute_force_oracle(inst));
}

TEST_CASE("run_attack agrees with the oracle on corpus payouts", "[oracle][property]") {
    // DirectExternal findings whose function takes no arguments
    const std::vector<std::pair<std::string, std::string>> cases{
        {"corpus/evaluation/fixture_HYIP.sol", "sendPayment"},
        {"corpus/evaluation/fixture_AZBICore.sol", "distributeDividends"},
        {"corpus/evaluation/fixture_AZR.sol", "claimPrize"},
        {"corpus/evaluation/fixture_BetDeEx.sol", "collectPlatformFee"},
        {"corpus/evaluation/fixture_BIOXE.sol", "payBonus"},
        {"corpus/evaluation/fixture_BoothRenting.sol", "returnDeposit"},
        {"corpus/evaluation/fixture_CREDIT.sol", "repay"},
        {"corpus/evaluation/fixture_CryBet.sol", "settleRound"},
        {"corpus/evaluation/fixture_ETGF.sol", "distribute"},
        {"corpus/evaluation/fixture_FlashLoanAve.sol", "disburse"},
        {"corpus/evaluation/fixture_LitionPool.sol", "payRewards"},
        {"corpus/evaluation/fixture_LoadCoin.sol", "airdropAll"},
        {"corpus/evaluation/fixture_RICH.sol", "payRichest"},
        {"corpus/evaluation/fixture_Syndicate.sol", "payMembers"},
        {"corpus/evaluation/fixture_Tip.sol", "refundTips"},
        {"corpus/scenarios/payout_system.sol", "payAll"},
        {"corpus/extras/potential_SelfWithdraw.sol", "withdraw"},
        {"corpus/extras/potential_SplitWithdraw.sol", "withdrawShare"},
        {"corpus/extras/potential_FixedBeneficiary.sol", "release"},
        {"corpus/extras/potential_LockedVault.sol", "payInterest"},
    };
    for (const auto& [file, fn] : cases) {
        const auto t = target(file, fn);
        for (int k = 1; k <= 4; ++k) {
            INFO(file << " k=" << k);
            AttackOptions options;
            options.honest_parties = k - 1;
            OracleInstance inst;
            inst.unit = t.unit;
            inst.contract = t.plan.target_contract;
            inst.target_signature = t.plan.entry_signature;
            inst.payees = k;
            inst.enroll = enrollment_for(t.plan, options);
            CHECK(run_attack(t.plan, t.unit, options).confirmed == brute_force_oracle(inst, options.sim));
        }
    }
}

TEST_CASE("run_attack agrees with the oracle on random payouts", "[oracle][property]") {
    std::mt19937 rng{20260417};
    int confirmed = 0;
    int shapes_seen = 0;
    std::vector<bool> seen(test::kPayoutShapes, false);
    for (int i = 0; i < 40; ++i) {
        const auto c = test::random_payout(rng, i);
        INFO(c.source);
        const auto a = test::compare_with_oracle(c);
        CHECK(a.attack_confirmed == a.oracle);
        if (a.attack_confirmed) ++confirmed;
        if (!seen[c.shape]) ++shapes_seen;
        seen[c.shape] = true;
    }
    // both outcomes occur
    CHECK(confirmed > 0);
    CHECK(confirmed < 40);
    CHECK(shapes_seen >= 6);
}
