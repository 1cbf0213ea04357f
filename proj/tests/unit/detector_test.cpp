// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/detect/detector.hpp>

#include <catch_amalgamated.hpp>

#include <dosscan/frontend/ast_walk.hpp>
#include <dosscan/frontend/parser.hpp>

#include "corpus_files.hpp"
#include "test_util.hpp"

namespace dosscan::detect {

using frontend::parse_source_unit;

namespace {

    std::vector<PotentialFinding> detect_source(const std::string& src) { return detect(parse_source_unit(src)); }

    std::vector<PotentialFinding> detect_file(const std::string& file) {
        return detect(parse_source_unit(test::read_source(file), file));
    }

    std::string wrap(const std::string& body, const std::string& extra = "") {
        return "contract C {\n address owner;\n address[] xs;\n" + extra + " function f(address a, uint v) public {\n" +
               body + "\n }\n}\n";
    }

}  // namespace

TEST_CASE("HYIP sendPayment is IfThrow over send") {
    const auto fs = detect_file("corpus/scenarios/hyip_lenders.sol");
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].contract_name == "HYIP");
    CHECK(fs[0].function_signature == "sendPayment()");
    CHECK(fs[0].pattern == PatternKind::kIfThrow);
    CHECK(fs[0].call_kind == ExternalCallKind::kSend);
    CHECK(fs[0].accessibility.kind == Accessibility::Kind::kExternallyCallable);
    CHECK(export_signatures(fs) == "HYIP.sendPayment()\tIfThrow\tExternallyCallable\n");
}

TEST_CASE("payout system payAll is Iteration over send") {
    const auto fs = detect_file("corpus/scenarios/payout_system.sol");
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].function_signature == "payAll()");
    CHECK(fs[0].pattern == PatternKind::kIteration);
    CHECK(fs[0].call_kind == ExternalCallKind::kSend);
    CHECK(fs[0].accessibility.kind == Accessibility::Kind::kExternallyCallable);
}

TEST_CASE("Unipool sendValue is IfThrow over call, internal") {
    const auto fs = detect_file("corpus/scenarios/unipool_send_value.sol");
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].function_signature == "sendValue(address,uint256)");
    CHECK(fs[0].pattern == PatternKind::kIfThrow);
    CHECK(fs[0].call_kind == ExternalCallKind::kLowLevelCall);
    CHECK(fs[0].accessibility.kind == Accessibility::Kind::kInternalOnly);
    CHECK(export_signatures(fs) == "Unipool.sendValue(address,uint256)\tIfThrow\tInternalOnly\n");
}

TEST_CASE("handled send result fires no rule") {
    CHECK(detect_source(wrap("bool ok = a.send(v); if(!ok){ v = 0; }")).empty());
    CHECK(detect_source(wrap("a.send(v);")).empty());
    CHECK(detect_source(wrap("for (uint i = 0; i < xs.length; i++) { xs[i].send(v); }")).empty());
    CHECK(detect_source(wrap("if (!a.send(v)) { v = 0; }")).empty());
    CHECK(detect_source(wrap("if (a.send(v)) { throw; }")).empty());
}

TEST_CASE("each rule in isolation") {
    auto one = [](const std::string& body) {
        const auto fs = detect_source(wrap(body));
        REQUIRE(fs.size() == 1);
        return fs[0];
    };
    CHECK(one("if (!a.send(v)) throw;").pattern == PatternKind::kIfThrow);
    CHECK(one("if (a.send(v) == false) { throw; }").pattern == PatternKind::kIfThrow);
    CHECK(one("if (a.send(v) != true) { throw; }").pattern == PatternKind::kIfThrow);
    CHECK(one("if (a.send(v)) { v = 1; } else { throw; }").pattern == PatternKind::kIfThrow);
    CHECK(one("if (v > 0 && !a.send(v)) { revert(); }").pattern == PatternKind::kIfRevert);
    CHECK(one("if (!a.call.value(v)(\"\")) { revert(\"x\"); }").call_kind == ExternalCallKind::kLowLevelCall);
    CHECK(one("require(a.send(v));").pattern == PatternKind::kRequire);
    CHECK(one("assert(a.send(v));").pattern == PatternKind::kAssert);
    CHECK(one("require(a.call{value: v}(\"\"), \"m\");").call_kind == ExternalCallKind::kLowLevelCall);
    CHECK(one("for (uint i = 0; i < xs.length; i++) { xs[i].transfer(v); }").pattern == PatternKind::kIteration);
    CHECK(one("uint i = 0; while (i < xs.length) { require(xs[i].send(v)); i++; }").pattern ==
          PatternKind::kIteration);
    CHECK(one("for (uint i = 0; i < xs.length; i++) { assert(xs[i].send(v)); }").call_kind ==
          ExternalCallKind::kSend);
    const auto in_loop = one("for (uint i = 0; i < xs.length; i++) { if (!xs[i].send(v)) throw; }");
    CHECK(in_loop.pattern == PatternKind::kIfThrow);
}

TEST_CASE("bare transfer outside a loop is not a finding") {
    CHECK(detect_source(wrap("a.transfer(v);")).empty());
    CHECK(detect_source(wrap("msg.sender.transfer(v);")).empty());
}

TEST_CASE("constructors are excluded, fallbacks included") {
    CHECK(detect_source("contract C { constructor(address a) public { require(a.send(1)); } }").empty());
    const auto fs = detect_source("contract C { address a; function() external payable { require(a.send(1)); } }");
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].function_signature == kFallbackSignature);
}

TEST_CASE("multiple sites in one function and ordering") {
    const auto fs = detect_source(
        "contract B { function g(address a) public { assert(a.send(1)); } }\n" +
        wrap("require(a.send(v));\n if (!a.send(v)) throw;"));
    REQUIRE(fs.size() == 3);
    CHECK(fs[0].contract_name == "B");
    CHECK(fs[1].pattern == PatternKind::kRequire);
    CHECK(fs[2].pattern == PatternKind::kIfThrow);
    CHECK(fs[1].site.begin < fs[2].site.begin);
}

TEST_CASE("accessibility classification") {
    const auto unit = parse_source_unit(R"(
        contract C {
            address owner;
            address admin;
            modifier onlyOwner() { require(msg.sender == owner); _; }
            modifier onlyAdmin() { if (msg.sender != admin) throw; _; }
            modifier logged() { _; }
            function a() public onlyOwner {}
            function b() onlyAdmin {}
            function c() internal {}
            function d() private {}
            function e() public logged {}
            function f(address x) public { assert(owner == msg.sender); x.transfer(1); }
            function g(address x) public { x.transfer(1); require(msg.sender == owner); }
            function h() external { require(msg.sender == tx.origin); }
            function i(address x) public { if (msg.sender == owner) { x.transfer(1); } }
            function j() public { if (msg.sender != admin) { revert(); } }
        }
    )");
    const auto& c = unit.contracts[0];
    auto cls = [&](std::string_view sig) { return classify_accessibility(*find_function(c, sig), c, &unit); };
    CHECK(cls("a()") == Accessibility{Accessibility::Kind::kGuardedOwnerOnly, "onlyOwner", "owner"});
    CHECK(cls("b()") == Accessibility{Accessibility::Kind::kGuardedOwnerOnly, "onlyAdmin", "admin"});
    CHECK(cls("c()").kind == Accessibility::Kind::kInternalOnly);
    CHECK(cls("d()").kind == Accessibility::Kind::kInternalOnly);
    CHECK(cls("e()").kind == Accessibility::Kind::kExternallyCallable);
    CHECK(cls("f(address)") == Accessibility{Accessibility::Kind::kGuardedOwnerOnly, "inline", "owner"});
    CHECK(cls("g(address)").kind == Accessibility::Kind::kExternallyCallable);
    CHECK(cls("h()").kind == Accessibility::Kind::kExternallyCallable);
    CHECK(cls("i(address)") == Accessibility{Accessibility::Kind::kGuardedOwnerOnly, "inline", "owner"});
    CHECK(cls("j()") == Accessibility{Accessibility::Kind::kGuardedOwnerOnly, "inline", "admin"});
    CHECK(cls("a()").to_string() == "GuardedOwnerOnly(onlyOwner)");
    CHECK(parse_accessibility("GuardedOwnerOnly(onlyOwner)")->guard_name == "onlyOwner");
    CHECK(parse_accessibility("InternalOnly")->kind == Accessibility::Kind::kInternalOnly);
    CHECK_FALSE(parse_accessibility("Bogus"));
}

TEST_CASE("modifier declared in another contract of the file") {
    const auto unit = parse_source_unit(R"(
        contract Owned { address owner; modifier onlyOwner { require(msg.sender == owner); _; } }
        contract C is Owned { address owner; function a(address x) public onlyOwner { require(x.send(1)); } }
    )");
    const auto fs = detect(unit);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].accessibility.kind == Accessibility::Kind::kGuardedOwnerOnly);
}

TEST_CASE("export of empty findings is empty") { CHECK(export_signatures({}).empty()); }

TEST_CASE("corpus: every finding site holds an external call inside its function body") {
    for (const auto& file : test::corpus_files()) {
        INFO(file);
        const auto src = test::read_source(file);
        const auto unit = parse_source_unit(src, file);
        for (const auto& fd : detect(unit)) {
            const auto* c = unit.find_contract(fd.contract_name);
            REQUIRE(c);
            const auto* f = find_function(*c, fd.function_signature);
            REQUIRE(f);
            CHECK(f->body_span.contains(fd.site));
            CHECK(fd.site.contains(fd.call_site));
            // re-walk the site subtree
            const auto slice = src.substr(fd.site.begin, fd.site.end - fd.site.begin);
            bool has_call = false;
            try {
                has_call = contains_external_call(frontend::parse_statement(slice));
            } catch (const frontend::ParseError&) {
                has_call = contains_external_call(frontend::parse_expression(slice));
            }
            CHECK(has_call);
        }
    }
}

TEST_CASE("corpus: no external call means no finding") {
    for (const auto& file : test::corpus_files()) {
        const auto unit = parse_source_unit(test::read_source(file), file);
        bool any_call = false;
        for (const auto& c : unit.contracts) {
            for (const auto& f : c.functions) {
                if (!f.body) continue;
                frontend::walk_exprs(*f.body, [&](const frontend::Expr& e) {
                    any_call = any_call || external_call_kind(e).has_value();
                });
            }
        }
        if (!any_call) CHECK(detect(unit).empty());
    }
}

TEST_CASE("corpus: alpha renaming leaves findings unchanged") {
    for (const auto& file : test::corpus_files()) {
        INFO(file);
        const auto src = test::read_source(file);
        const auto a = detect(parse_source_unit(src, file));
        const auto b = detect(parse_source_unit(test::alpha_rename(src), file));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].pattern == b[i].pattern);
            CHECK(a[i].call_kind == b[i].call_kind);
            CHECK(a[i].accessibility.kind == b[i].accessibility.kind);
            CHECK("r_" + a[i].contract_name == b[i].contract_name);
        }
    }
}

TEST_CASE("corpus: guard monotonicity") {
    // Prefixing a flagged, externally callable function body with a sender
    // guard changes its accessibility and nothing else.
    for (const auto& file : test::corpus_files()) {
        INFO(file);
        const auto src = test::read_source(file);
        const auto unit = parse_source_unit(src, file);
        const auto before = detect(unit);
        for (const auto& fd : before) {
            if (fd.accessibility.kind != Accessibility::Kind::kExternallyCallable) continue;
            const auto* c = unit.find_contract(fd.contract_name);
            const auto* f = find_function(*c, fd.function_signature);
            for (const std::string guard : {"require(msg.sender == zz_guard);", "if (msg.sender != zz_guard) { throw; }",
                                            "assert(zz_guard == msg.sender);"}) {
                std::string mutated = src;
                mutated.insert(c->span.end - 1, " address zz_guard; ");
                mutated.insert(f->body_span.begin + 1, " " + guard + " ");
                const auto after = detect(parse_source_unit(mutated, file));
                REQUIRE(after.size() == before.size());
                for (std::size_t i = 0; i < after.size(); ++i) {
                    CHECK(after[i].pattern == before[i].pattern);
                    CHECK(after[i].call_kind == before[i].call_kind);
                    CHECK(after[i].function_signature == before[i].function_signature);
                    if (after[i].function_signature == fd.function_signature &&
                        after[i].contract_name == fd.contract_name) {
                        CHECK(after[i].accessibility.kind == Accessibility::Kind::kGuardedOwnerOnly);
                        CHECK(after[i].accessibility.owner_var == "zz_guard");
                    } else {
                        CHECK(after[i].accessibility == before[i].accessibility);
                    }
                }
            }
        }
    }
}

TEST_CASE("detect is deterministic") {
    for (const auto& file : test::corpus_files()) {
        const auto src = test::read_source(file);
        CHECK(detect(parse_source_unit(src, file)) == detect(parse_source_unit(src, file)));
    }
}

}  // namespace dosscan::detect
