// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <random>
#include <stdexcept>
#include <string>

#include <dosscan/detect/detector.hpp>
#include <dosscan/frontend/parser.hpp>
#include <dosscan/sim/attack.hpp>
#include <dosscan/synth/synthesizer.hpp>

namespace dosscan::test {

//! A small generated payout contract; every shape is flagged by the detector.
struct PayoutCase {
    std::string source;
    std::string contract;
    std::string target;  // name of the flagged function, no parameters
    int payees{1};       // 1..4
    int shape{0};
};

inline constexpr int kPayoutShapes = 8;

inline PayoutCase random_payout(std::mt19937& rng, int id) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>{lo, hi}(rng); };
    PayoutCase c;
    c.contract = "Payout" + std::to_string(id);
    c.target = "pay";
    c.payees = pick(1, 4);
    c.shape = pick(0, kPayoutShapes - 1);
    const bool structs = pick(0, 1) == 1;
    const bool joinable = pick(0, 9) < 7;
    const std::string amount = std::to_string(pick(1, 1000000)) + " szabo";

    std::string s = "pragma solidity ^0.5.0;\n\ncontract " + c.contract + " {\n";
    if (structs) {
        s += "    struct Member { address payable who; uint stake; }\n    Member[] members;\n";
    } else {
        s += "    address payable[] members;\n";
    }
    s += "    uint public unlock;\n    uint public rounds;\n\n";
    s += "    constructor() public { unlock = now + " + std::string{c.shape == 7 ? "1 days" : "0"} + "; }\n\n";
    const std::string push = structs ? "members.push(Member(msg.sender, msg.value));" : "members.push(msg.sender);";
    if (joinable) {
        s += "    function join() public payable { " + push + " }\n\n";
    } else {
        s += "    function join(string memory tag) public payable { " + push + " }\n\n";
    }

    const std::string who = structs ? "members[i].who" : "members[i]";
    const std::string last = structs ? "members[members.length - 1].who" : "members[members.length - 1]";
    s += "    function pay() public {\n";
    switch (c.shape) {
        case 0:
            s += "        for (uint i = 0; i < members.length; i++) { " + who + ".transfer(" + amount + "); }\n";
            break;
        case 1:
            s += "        for (uint i = 0; i < members.length; i++) { require(" + who + ".send(" + amount + ")); }\n";
            break;
        case 2:
            s += "        for (uint i = 0; i < members.length; i++) { if (!" + who + ".send(" + amount +
                 ")) throw; }\n";
            break;
        case 3:
            s += "        for (uint i = 0; i < members.length; i++) {\n            if (!" + who + ".call.value(" +
                 amount + ")(\"\")) { revert(); }\n        }\n";
            break;
        case 4:
            s += "        uint i = 0;\n        while (i < members.length) { assert(" + who + ".send(" + amount +
                 ")); i++; }\n";
            break;
        case 5:
            s += "        require(" + last + ".send(" + amount + "));\n";
            break;
        case 6:
            s += "        for (uint i = 0; i < members.length; i++) {\n            if (" + who +
                 " == msg.sender) { require(" + who + ".send(" + amount + ")); }\n        }\n";
            break;
        case 7:
            s += "        require(now >= unlock + 1);\n        for (uint i = 0; i < members.length; i++) { " + who +
                 ".transfer(" + amount + "); }\n";
            break;
        default:
            throw std::logic_error("shape");
    }
    s += "        rounds += 1;\n    }\n}\n";
    c.source = std::move(s);
    return c;
}

struct Agreement {
    bool attack_confirmed{false};
    bool oracle{false};
    std::string verdict;
};

//! run_attack with `payees - 1` honest parties against the exhaustive oracle
//! over `payees` payees enrolled the same way.
inline Agreement compare_with_oracle(const PayoutCase& c) {
    auto unit = std::make_shared<const frontend::SourceUnit>(frontend::parse_source_unit(c.source));
    const auto findings = detect::detect(*unit);
    const detect::PotentialFinding* finding = nullptr;
    for (const auto& f : findings) {
        if (f.function_name == c.target) finding = &f;
    }
    if (!finding) throw std::logic_error("generated contract not flagged:\n" + c.source);
    const auto plan = synth::synthesize_attacker(*finding, *unit);

    sim::AttackOptions options;
    options.honest_parties = c.payees - 1;
    const auto verdict = sim::run_attack(plan, unit, options);

    sim::OracleInstance inst;
    inst.unit = unit;
    inst.contract = c.contract;
    inst.target_signature = finding->function_signature;
    inst.payees = c.payees;
    inst.endowment = options.scut_endowment;
    inst.enroll = sim::enrollment_for(plan, options);
    return {verdict.confirmed, sim::brute_force_oracle(inst, options.sim), verdict.to_string()};
}

}  // namespace dosscan::test
