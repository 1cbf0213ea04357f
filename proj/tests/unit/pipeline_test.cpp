// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <unistd.h>

#include <atomic>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include <dosscan/pipeline/corpus.hpp>
#include <dosscan/pipeline/scan.hpp>

#include "corpus_files.hpp"
#include "test_util.hpp"

using namespace dosscan;
using namespace dosscan::pipeline;
namespace fs = std::filesystem;

namespace {

ScanOptions confirming() {
    ScanOptions o;
    o.confirm = true;
    return o;
}

class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() /
                ("dosscan_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const fs::path& path() const { return path_; }

    fs::path write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream{p, std::ios::binary} << text;
        return p;
    }

  private:
    fs::path path_;
};

const ContractEntry& only_entry(const ScanReport& r) {
    REQUIRE(r.entries.size() == 1);
    return r.entries[0];
}

}  // namespace

TEST_CASE("scan the lender loop with confirmation", "[pipeline]") {
    const auto r = scan(test::source_path("corpus/evaluation/fixture_HYIP.sol"), confirming());
    const auto& e = only_entry(r);
    CHECK(e.status == ScanStatus::kConfirmedExternal);
    REQUIRE(e.findings.size() == 1);
    CHECK(e.findings[0].pattern == detect::PatternKind::kIfThrow);
    REQUIRE(e.verdicts.size() == 1);
    CHECK(e.verdicts[0].finding_index == 0);
    CHECK(e.trace_refs == std::vector<std::string>{"Attacker_HYIP_sendPayment.sol"});
    CHECK(render_text(r).find("HYIP.sendPayment()  IfThrow  Send  ExternallyCallable  Confirmed") !=
          std::string::npos);
    CHECK(exit_code(r) == 1);
}

TEST_CASE("static stage never goes beyond Potential", "[pipeline]") {
    const auto r = scan(test::source_path("corpus/evaluation/fixture_HYIP.sol"), {});
    const auto& e = only_entry(r);
    CHECK(e.status == ScanStatus::kPotential);
    CHECK(e.verdicts.empty());
    CHECK(render_text(r).find("HYIP.sendPayment()  IfThrow  Send  ExternallyCallable  Potential") !=
          std::string::npos);
}

TEST_CASE("pull payment passes", "[pipeline]") {
    const auto r = scan(test::source_path("corpus/patterns/clean_pull_payment.sol"), confirming());
    CHECK(only_entry(r).status == ScanStatus::kPassed);
    CHECK(exit_code(r) == 0);
}

TEST_CASE("internal-only send helper is confirmed internally", "[pipeline]") {
    const auto r = scan(test::source_path("corpus/evaluation/fixture_Unipool.sol"), confirming());
    const auto& e = only_entry(r);
    CHECK(e.status == ScanStatus::kConfirmedInternal);
    REQUIRE(e.verdicts.size() == 1);
    CHECK(e.verdicts[0].verdict.route.kind == synth::EntryRoute::Kind::kInternalHarness);
    CHECK(r.totals.confirmed_internal == 1);
}

TEST_CASE("injected confirmations are marked", "[pipeline]") {
    const auto r = scan(test::source_path("corpus/evaluation/fixture_Tip.sol"), confirming());
    CHECK(only_entry(r).injected_state);
    CHECK(render_text(r).find("injected-state") != std::string::npos);
}

TEST_CASE("empty directory", "[pipeline]") {
    TempDir dir;
    const auto r = scan(dir.path(), confirming());
    CHECK(r.entries.empty());
    CHECK(r.errors.empty());
    CHECK(r.totals == Totals{});
    CHECK(exit_code(r) == 0);
}

TEST_CASE("file errors are collected without stopping the batch", "[pipeline]") {
    TempDir dir;
    dir.write("a_good.sol", "contract A { function f() public {} }");
    dir.write("b_bad.sol", "contract B { function ( }");
    dir.write("c_lex.sol", "contract C { string s = \"open; }");
    dir.write("notes.txt", "ignored");
    const auto r = scan(dir.path(), confirming());
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].contract == "A");
    REQUIRE(r.errors.size() == 2);
    CHECK(r.errors[0].file.find("b_bad.sol") != std::string::npos);
    CHECK(r.errors[0].message.find("parse error") != std::string::npos);
    CHECK(r.errors[1].message.find("lex error") != std::string::npos);
    CHECK(exit_code(r) == 2);

    CHECK(exit_code(scan(dir.path() / "missing.sol", {})) == 2);
    CHECK(exit_code(scan(dir.path() / "notes.txt", {})) == 2);
}

TEST_CASE("emitted attacker sources", "[pipeline]") {
    TempDir dir;
    ScanOptions o;
    o.emit_attacker_dir = dir.path() / "out";
    const auto r = scan(test::source_path("corpus/evaluation/fixture_BetDeEx.sol"), o);
    CHECK(only_entry(r).status == ScanStatus::kPotential);
    const auto emitted = dir.path() / "out" / "Attacker_BetDeEx_collectPlatformFee.sol";
    REQUIRE(fs::exists(emitted));
    std::ifstream in{emitted};
    std::string text{std::istreambuf_iterator<char>{in}, {}};
    CHECK(text.find("BetDeEx(_vulnerableAddr).collectPlatformFee();") != std::string::npos);
}

TEST_CASE("status derivation", "[pipeline]") {
    sim::DoSVerdict ext;
    ext.confirmed = true;
    sim::DoSVerdict owner = ext;
    owner.route.kind = synth::EntryRoute::Kind::kViaOwner;
    sim::DoSVerdict no;
    CHECK(derive_status(0, {}) == ScanStatus::kPassed);
    CHECK(derive_status(2, {}) == ScanStatus::kPotential);
    CHECK(derive_status(1, {no}) == ScanStatus::kPotential);
    CHECK(derive_status(2, {owner, no}) == ScanStatus::kConfirmedInternal);
    CHECK(derive_status(2, {owner, ext}) == ScanStatus::kConfirmedExternal);
    for (auto s : {ScanStatus::kPassed, ScanStatus::kPotential, ScanStatus::kConfirmedExternal,
                   ScanStatus::kConfirmedInternal}) {
        CHECK(parse_scan_status(to_string(s)) == s);
    }
    CHECK_FALSE(parse_scan_status("Confirmed"));
}

TEST_CASE("corpus: status lattice, totals and verdict indexes", "[pipeline][property]") {
    const auto root = test::source_path("corpus");
    const auto plain = scan(root, {});
    const auto confirmed = scan(root, confirming());
    REQUIRE(plain.errors.empty());
    REQUIRE(plain.entries.size() == confirmed.entries.size());
    for (std::size_t i = 0; i < plain.entries.size(); ++i) {
        const auto& a = plain.entries[i];
        const auto& b = confirmed.entries[i];
        INFO(a.file << " " << a.contract);
        REQUIRE(a.contract == b.contract);
        CHECK(a.findings == b.findings);
        CHECK(a.status != ScanStatus::kConfirmedExternal);
        CHECK(a.status != ScanStatus::kConfirmedInternal);
        if (a.status == ScanStatus::kPassed) CHECK(b.status == ScanStatus::kPassed);
        if (a.status == ScanStatus::kPotential) CHECK(b.status != ScanStatus::kPassed);
        CHECK(b.verdicts.size() == b.findings.size());
        for (const auto& v : b.verdicts) CHECK(v.finding_index < b.findings.size());
    }
    for (const auto* r : {&plain, &confirmed}) {
        ScanReport copy = *r;
        copy.tally();
        CHECK(copy.totals == r->totals);
        CHECK(r->totals.passed + r->totals.potential + r->totals.confirmed ==
              static_cast<int>(r->entries.size()));
        CHECK(r->totals.confirmed == r->totals.confirmed_external + r->totals.confirmed_internal);
        CHECK(exit_code(*r) == (r->totals.potential + r->totals.confirmed > 0 ? 1 : 0));
    }
}

TEST_CASE("json is deterministic and round-trips", "[pipeline][property]") {
    const auto root = test::source_path("corpus");
    for (const auto& options : {ScanOptions{}, confirming()}) {
        const auto a = scan(root, options);
        const auto b = scan(root, options);
        CHECK(render_json(a) == render_json(b));
        const auto back = report_from_json(nlohmann::json::parse(render_json(a)));
        CHECK(back == a);
        CHECK(render_json(back) == render_json(a));
    }
}

TEST_CASE("json round-trip of hand-built report", "[pipeline]") {
    ScanReport r;
    ContractEntry e;
    e.file = "x.sol";
    e.contract = "X";
    e.status = ScanStatus::kConfirmedInternal;
    detect::PotentialFinding f;
    f.contract_name = "X";
    f.function_name = "";
    f.function_signature = "()";
    f.accessibility.kind = detect::Accessibility::Kind::kGuardedOwnerOnly;
    f.accessibility.guard_name = "inline";
    f.accessibility.owner_var = "boss";
    f.site.file = "x.sol";
    f.site.begin = 3;
    f.site.end = 40;
    e.findings.push_back(f);
    VerdictEntry v;
    v.verdict.confirmed = true;
    v.verdict.route.kind = synth::EntryRoute::Kind::kInternalHarness;
    v.verdict.route.public_caller = "run(uint256)";
    v.verdict.detail = "a|b \"quoted\"";
    v.verdict.trace.add(3, sim::Address{255}, "event with | pipes");
    e.verdicts.push_back(v);
    e.trace_refs = {"Attacker_X_fallback.sol"};
    r.entries.push_back(e);
    r.errors.push_back({"y.sol", "boom"});
    r.tally();
    CHECK(report_from_json(to_json(r)) == r);

    auto j = to_json(r);
    j["entries"][0]["verdicts"][0]["finding"] = 7;
    CHECK_THROWS(report_from_json(j));
    j = to_json(r);
    j["entries"][0]["status"] = "Maybe";
    CHECK_THROWS(report_from_json(j));
}

// ---- corpus ---------------------------------------------------------------------

TEST_CASE("manifest parsing", "[corpus]") {
    TempDir dir;
    dir.write("a.sol", "contract A {}");
    const auto m = parse_manifest(
        "# comment\n\na.sol\tA\tPassed\t-\t-\tclean one\n"
        "a.sol\tA\tConfirmedExternal\tRequire\tDirectExternal\n",
        dir.path());
    REQUIRE(m.records.size() == 2);
    CHECK(m.records[0].note == "clean one");
    CHECK_FALSE(m.records[0].expected_pattern);
    CHECK(m.records[1].expected_pattern == detect::PatternKind::kRequire);
    CHECK(m.records[1].expected_route == synth::EntryRoute::Kind::kDirectExternal);

    CHECK_THROWS_AS(parse_manifest("missing.sol\tA\tPassed\t-\t-\n", dir.path()), ManifestError);
    CHECK_THROWS_AS(parse_manifest("a.sol\tA\tFine\t-\t-\n", dir.path()), ManifestError);
    CHECK_THROWS_AS(parse_manifest("a.sol\tA\tPassed\tRequire\t-\n", dir.path()), ManifestError);
    CHECK_THROWS_AS(parse_manifest("a.sol\tA\tPotential\t-\t-\n", dir.path()), ManifestError);
    CHECK_THROWS_AS(parse_manifest("a.sol\tA\tPotential\tLoop\t-\n", dir.path()), ManifestError);
    CHECK_THROWS_AS(parse_manifest("a.sol\tA\tPotential\tRequire\tViaOwner\n", dir.path()), ManifestError);
    CHECK_THROWS_AS(parse_manifest("a.sol\tA\tPassed\n", dir.path()), ManifestError);
    CHECK_THROWS_AS(load_manifest(dir.path() / "nope.manifest"), ManifestError);
}

TEST_CASE("shipped corpus reproduces the split", "[corpus]") {
    const auto m = load_manifest(test::source_path("corpus/evaluation.manifest"));
    REQUIRE(m.records.size() == 30);
    const auto r = run_corpus(m, confirming());
    CHECK(r.mismatches == 0);
    CHECK(r.report.totals.confirmed == 28);
    CHECK(r.report.totals.confirmed_external == 18);
    CHECK(r.report.totals.confirmed_internal == 10);
    CHECK(r.report.totals.passed == 2);
    CHECK(r.false_positives == 0);
    CHECK(r.false_negatives == 0);
    CHECK(r.missed_patterns == 0);
    CHECK(r.precision() == 1.0);
    CHECK(r.recall() == 1.0);
    CHECK(corpus_exit_code(r) == 0);
    CHECK(render_corpus(r).find("precision 1.000  recall 1.000") != std::string::npos);
}

TEST_CASE("other shipped manifests match", "[corpus]") {
    for (const char* name : {"corpus/extras.manifest", "corpus/patterns.manifest"}) {
        INFO(name);
        const auto m = load_manifest(test::source_path(name));
        CHECK(run_corpus(m, confirming()).mismatches == 0);
        CHECK(run_corpus(m, {}).mismatches == 0);
    }
}

TEST_CASE("static corpus run compares confirmations as Potential", "[corpus]") {
    const auto r = run_corpus(load_manifest(test::source_path("corpus/evaluation.manifest")), {});
    CHECK(r.mismatches == 0);
    CHECK(r.report.totals.potential == 28);
    CHECK(r.true_positives == 28);
}

TEST_CASE("single passing fixture", "[corpus]") {
    TempDir dir;
    fs::copy_file(test::source_path("corpus/patterns/clean_pull_payment.sol"), dir.path() / "pull.sol");
    const auto m = parse_manifest("pull.sol\tPullPayment\tPassed\t-\t-\n", dir.path());
    const auto r = run_corpus(m, confirming());
    CHECK(corpus_exit_code(r) == 0);
    CHECK_FALSE(r.precision());
    CHECK_FALSE(r.recall());
}

TEST_CASE("removing a guard is reported as a mismatch", "[corpus]") {
    TempDir dir;
    std::string text = test::read_source("corpus/evaluation/fixture_GramChain.sol");
    const std::string guarded = "function payout() public onlyOwner {";
    const auto at = text.find(guarded);
    REQUIRE(at != std::string::npos);
    text.replace(at, guarded.size(), "function payout() public {");
    dir.write("fixture_GramChain.sol", text);
    const auto m = parse_manifest("fixture_GramChain.sol\tGramChain\tConfirmedInternal\tIfRevert\tViaOwner\n",
                                  dir.path());
    const auto r = run_corpus(m, confirming());
    REQUIRE(r.outcomes.size() == 1);
    CHECK(r.outcomes[0].actual_status == ScanStatus::kConfirmedExternal);
    CHECK_FALSE(r.outcomes[0].route_found);
    CHECK(r.mismatches == 1);
    CHECK(corpus_exit_code(r) != 0);
    CHECK(render_corpus(r).find("MISMATCH") != std::string::npos);
}

TEST_CASE("missing contract in a fixture", "[corpus]") {
    TempDir dir;
    dir.write("a.sol", "contract A {}");
    const auto r = run_corpus(parse_manifest("a.sol\tB\tPassed\t-\t-\n", dir.path()), {});
    CHECK(r.mismatches == 1);
    CHECK(r.outcomes[0].error == "contract B not found");
}
