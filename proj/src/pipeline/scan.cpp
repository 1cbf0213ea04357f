// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/pipeline/scan.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <dosscan/frontend/parser.hpp>
#include <dosscan/synth/synthesizer.hpp>

namespace dosscan::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(ScanStatus s) noexcept {
    switch (s) {
        case ScanStatus::kPassed:
            return "Passed";
        case ScanStatus::kPotential:
            return "Potential";
        case ScanStatus::kConfirmedExternal:
            return "ConfirmedExternal";
        case ScanStatus::kConfirmedInternal:
            return "ConfirmedInternal";
    }
    return "?";
}

std::optional<ScanStatus> parse_scan_status(std::string_view text) noexcept {
    for (auto s : {ScanStatus::kPassed, ScanStatus::kPotential, ScanStatus::kConfirmedExternal,
                   ScanStatus::kConfirmedInternal}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

ScanStatus derive_status(std::size_t findings, const std::vector<sim::DoSVerdict>& verdicts) {
    if (findings == 0) return ScanStatus::kPassed;
    bool internal = false;
    for (const auto& v : verdicts) {
        if (!v.confirmed) continue;
        if (v.route.kind == synth::EntryRoute::Kind::kDirectExternal) return ScanStatus::kConfirmedExternal;
        internal = true;
    }
    return internal ? ScanStatus::kConfirmedInternal : ScanStatus::kPotential;
}

bool VerdictEntry::operator==(const VerdictEntry& o) const {
    const auto& a = verdict;
    const auto& b = o.verdict;
    return finding_index == o.finding_index && a.confirmed == b.confirmed && a.route == b.route &&
           a.reason == b.reason && a.injected_state == b.injected_state &&
           a.owner_impersonated == b.owner_impersonated && a.detail == b.detail && a.trace == b.trace;
}

void ScanReport::tally() {
    totals = {};
    for (const auto& e : entries) {
        switch (e.status) {
            case ScanStatus::kPassed:
                ++totals.passed;
                break;
            case ScanStatus::kPotential:
                ++totals.potential;
                break;
            case ScanStatus::kConfirmedExternal:
                ++totals.confirmed;
                ++totals.confirmed_external;
                break;
            case ScanStatus::kConfirmedInternal:
                ++totals.confirmed;
                ++totals.confirmed_internal;
                break;
        }
    }
}

namespace {

    void write_file(const fs::path& path, const std::string& text) {
        std::ofstream out{path, std::ios::binary};
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
    }

    sim::DoSVerdict unsupported(const detect::PotentialFinding& f, const std::string& why) {
        sim::DoSVerdict v;
        v.route.kind = synth::route_kind_for(f.accessibility);
        v.reason = sim::NotExploitableReason::kSynthesisUnsupported;
        v.detail = why;
        return v;
    }

}  // namespace

std::vector<ContractEntry> scan_source(std::string_view source, const std::string& file, const ScanOptions& options) {
    auto unit = std::make_shared<const frontend::SourceUnit>(frontend::parse_source_unit(source, file));
    const auto findings = detect::detect(*unit);
    const bool synthesize = options.confirm || options.emit_attacker_dir.has_value();

    std::vector<ContractEntry> out;
    for (const auto& c : unit->contracts) {
        ContractEntry e;
        e.file = file;
        e.contract = c.name;
        std::vector<sim::DoSVerdict> verdicts;
        for (const auto& f : findings) {
            if (f.contract_name != c.name) continue;
            const std::size_t index = e.findings.size();
            e.findings.push_back(f);
            if (!synthesize) continue;

            std::optional<synth::AttackPlan> plan;
            std::string why;
            try {
                plan = synth::synthesize_attacker(f, *unit);
            } catch (const synth::SynthesisError& err) {
                why = err.what();
            }
            if (plan) {
                e.trace_refs.push_back(plan->attacker_file_name());
                if (options.emit_attacker_dir) {
                    fs::create_directories(*options.emit_attacker_dir);
                    write_file(*options.emit_attacker_dir / plan->attacker_file_name(), plan->attacker_source);
                }
            }
            if (!options.confirm) continue;
            sim::DoSVerdict v = plan ? sim::run_attack(*plan, unit, options.attack) : unsupported(f, why);
            if (v.confirmed && v.injected_state) e.injected_state = true;
            verdicts.push_back(v);
            e.verdicts.push_back({index, std::move(v)});
        }
        e.status = derive_status(e.findings.size(), verdicts);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<fs::path> collect_inputs(const fs::path& path) {
    std::vector<fs::path> out;
    if (fs::is_directory(path)) {
        for (const auto& e : fs::recursive_directory_iterator(path)) {
            if (e.is_regular_file() && e.path().extension() == ".sol") out.push_back(e.path());
        }
    } else {
        out.push_back(path);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

    struct FileResult {
        std::vector<ContractEntry> entries;
        std::optional<FileError> error;
    };

    FileResult scan_one(const fs::path& path, const ScanOptions& options) {
        FileResult r;
        const std::string name = path.generic_string();
        try {
            if (path.extension() != ".sol") throw std::runtime_error("not a .sol file");
            std::ifstream in{path, std::ios::binary};
            if (!in) throw std::runtime_error("cannot read file");
            std::ostringstream ss;
            ss << in.rdbuf();
            r.entries = scan_source(ss.str(), name, options);
        } catch (const std::exception& e) {
            r.error = FileError{name, e.what()};
        }
        return r;
    }

}  // namespace

ScanReport scan_files(const std::vector<fs::path>& files, const ScanOptions& options) {
    std::vector<fs::path> sorted = files;
    std::sort(sorted.begin(), sorted.end());

    std::vector<FileResult> results(sorted.size());
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < sorted.size(); start += workers) {
        const std::size_t stop = std::min(sorted.size(), start + workers);
        std::vector<std::future<FileResult>> batch;
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, scan_one, sorted[i], std::cref(options)));
        }
        for (std::size_t i = start; i < stop; ++i) results[i] = batch[i - start].get();
    }

    ScanReport report;
    for (auto& r : results) {
        if (r.error) report.errors.push_back(std::move(*r.error));
        for (auto& e : r.entries) report.entries.push_back(std::move(e));
    }
    report.tally();
    return report;
}

ScanReport scan(const fs::path& path, const ScanOptions& options) {
    if (!fs::exists(path)) {
        ScanReport r;
        r.errors.push_back({path.generic_string(), "no such file or directory"});
        return r;
    }
    return scan_files(collect_inputs(path), options);
}

int exit_code(const ScanReport& report) noexcept {
    if (!report.errors.empty()) return 2;
    for (const auto& e : report.entries) {
        if (e.status != ScanStatus::kPassed) return 1;
    }
    return 0;
}

// ---- text ------------------------------------------------------------------------

std::string render_text(const ScanReport& report) {
    std::string out;
    for (const auto& e : report.entries) {
        out += e.contract + "  " + std::string{to_string(e.status)} + "  " + e.file;
        if (e.injected_state) out += "  injected-state";
        out += "\n";
        for (std::size_t i = 0; i < e.findings.size(); ++i) {
            const auto& f = e.findings[i];
            std::string verdict = "Potential";
            for (const auto& v : e.verdicts) {
                if (v.finding_index == i) verdict = v.verdict.to_string();
            }
            out += "  " + f.qualified_signature() + "  " + std::string{detect::to_string(f.pattern)} + "  " +
                   std::string{detect::to_string(f.call_kind)} + "  " + f.accessibility.to_string() + "  " +
                   verdict + "  " + f.site.to_string() + "\n";
        }
    }
    for (const auto& err : report.errors) out += "error  " + err.file + "  " + err.message + "\n";
    const auto& t = report.totals;
    out += "totals: passed " + std::to_string(t.passed) + ", potential " + std::to_string(t.potential) +
           ", confirmed " + std::to_string(t.confirmed) + " (external " + std::to_string(t.confirmed_external) +
           ", internal " + std::to_string(t.confirmed_internal) + "), errors " +
           std::to_string(report.errors.size()) + "\n";
    return out;
}

// ---- json ------------------------------------------------------------------------

namespace {

    json span_json(const frontend::SourceSpan& s) {
        return {{"file", s.file},       {"start_line", s.start_line}, {"start_col", s.start_col},
                {"end_line", s.end_line}, {"end_col", s.end_col},     {"begin", s.begin},
                {"end", s.end}};
    }

    frontend::SourceSpan span_from(const json& j) {
        frontend::SourceSpan s;
        s.file = j.at("file").get<std::string>();
        s.start_line = j.at("start_line").get<int>();
        s.start_col = j.at("start_col").get<int>();
        s.end_line = j.at("end_line").get<int>();
        s.end_col = j.at("end_col").get<int>();
        s.begin = j.at("begin").get<std::size_t>();
        s.end = j.at("end").get<std::size_t>();
        return s;
    }

    template <class T>
    T require_parsed(const std::optional<T>& v, const std::string& what) {
        if (!v) throw std::invalid_argument("bad " + what);
        return *v;
    }

    json finding_json(const detect::PotentialFinding& f) {
        return {{"contract", f.contract_name},
                {"function", f.function_name},
                {"signature", f.function_signature},
                {"pattern", detect::to_string(f.pattern)},
                {"call_kind", detect::to_string(f.call_kind)},
                {"accessibility", f.accessibility.to_string()},
                {"owner_var", f.accessibility.owner_var},
                {"site", span_json(f.site)},
                {"call_site", span_json(f.call_site)}};
    }

    detect::PotentialFinding finding_from(const json& j) {
        detect::PotentialFinding f;
        f.contract_name = j.at("contract").get<std::string>();
        f.function_name = j.at("function").get<std::string>();
        f.function_signature = j.at("signature").get<std::string>();
        f.pattern = require_parsed(detect::parse_pattern_kind(j.at("pattern").get<std::string>()), "pattern");
        f.call_kind = require_parsed(detect::parse_call_kind(j.at("call_kind").get<std::string>()), "call kind");
        f.accessibility =
            require_parsed(detect::parse_accessibility(j.at("accessibility").get<std::string>()), "accessibility");
        f.accessibility.owner_var = j.at("owner_var").get<std::string>();
        f.site = span_from(j.at("site"));
        f.call_site = span_from(j.at("call_site"));
        return f;
    }

    json route_json(const synth::EntryRoute& r) {
        json j{{"kind", r.variant_name()}, {"owner_var", r.owner_var}};
        j["public_caller"] = r.public_caller ? json(*r.public_caller) : json(nullptr);
        return j;
    }

    synth::EntryRoute route_from(const json& j) {
        synth::EntryRoute r;
        r.kind = require_parsed(synth::parse_route_kind(j.at("kind").get<std::string>()), "route");
        r.owner_var = j.at("owner_var").get<std::string>();
        if (!j.at("public_caller").is_null()) r.public_caller = j.at("public_caller").get<std::string>();
        return r;
    }

    sim::TraceStep step_from(const std::string& line) {
        const auto a = line.find('|');
        const auto b = a == std::string::npos ? a : line.find('|', a + 1);
        if (b == std::string::npos || line.compare(a + 1, 2, "0x") != 0) {
            throw std::invalid_argument("bad trace line: " + line);
        }
        sim::TraceStep s;
        const auto r1 = std::from_chars(line.data(), line.data() + a, s.depth);
        const auto r2 = std::from_chars(line.data() + a + 3, line.data() + b, s.account.id, 16);
        if (r1.ec != std::errc{} || r2.ec != std::errc{}) throw std::invalid_argument("bad trace line: " + line);
        s.event = line.substr(b + 1);
        return s;
    }

    json verdict_json(const VerdictEntry& e) {
        const auto& v = e.verdict;
        json trace = json::array();
        for (const auto& s : v.trace.steps) {
            trace.push_back(std::to_string(s.depth) + "|" + s.account.to_string() + "|" + s.event);
        }
        json j{{"finding", e.finding_index},
               {"verdict", v.to_string()},
               {"confirmed", v.confirmed},
               {"route", route_json(v.route)},
               {"injected_state", v.injected_state},
               {"owner_impersonated", v.owner_impersonated},
               {"detail", v.detail},
               {"trace", std::move(trace)}};
        j["reason"] = v.confirmed ? json(nullptr) : json(sim::to_string(v.reason));
        return j;
    }

    VerdictEntry verdict_from(const json& j) {
        VerdictEntry e;
        e.finding_index = j.at("finding").get<std::size_t>();
        auto& v = e.verdict;
        v.confirmed = j.at("confirmed").get<bool>();
        v.route = route_from(j.at("route"));
        if (!j.at("reason").is_null()) {
            v.reason = require_parsed(sim::parse_not_exploitable_reason(j.at("reason").get<std::string>()), "reason");
        }
        v.injected_state = j.at("injected_state").get<bool>();
        v.owner_impersonated = j.at("owner_impersonated").get<bool>();
        v.detail = j.at("detail").get<std::string>();
        for (const auto& line : j.at("trace")) v.trace.steps.push_back(step_from(line.get<std::string>()));
        return e;
    }

}  // namespace

json to_json(const ScanReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json findings = json::array();
        for (const auto& f : e.findings) findings.push_back(finding_json(f));
        json verdicts = json::array();
        for (const auto& v : e.verdicts) verdicts.push_back(verdict_json(v));
        entries.push_back({{"file", e.file},
                           {"contract", e.contract},
                           {"status", to_string(e.status)},
                           {"findings", std::move(findings)},
                           {"verdicts", std::move(verdicts)},
                           {"injected_state", e.injected_state},
                           {"trace_refs", e.trace_refs}});
    }
    json errors = json::array();
    for (const auto& err : report.errors) errors.push_back({{"file", err.file}, {"message", err.message}});
    const auto& t = report.totals;
    return {{"entries", std::move(entries)},
            {"errors", std::move(errors)},
            {"totals",
             {{"passed", t.passed},
              {"potential", t.potential},
              {"confirmed", t.confirmed},
              {"confirmed_external", t.confirmed_external},
              {"confirmed_internal", t.confirmed_internal}}}};
}

ScanReport report_from_json(const json& j) {
    ScanReport r;
    for (const auto& je : j.at("entries")) {
        ContractEntry e;
        e.file = je.at("file").get<std::string>();
        e.contract = je.at("contract").get<std::string>();
        e.status = require_parsed(parse_scan_status(je.at("status").get<std::string>()), "status");
        for (const auto& f : je.at("findings")) e.findings.push_back(finding_from(f));
        for (const auto& v : je.at("verdicts")) {
            e.verdicts.push_back(verdict_from(v));
            if (e.verdicts.back().finding_index >= e.findings.size()) {
                throw std::invalid_argument("verdict refers to a missing finding");
            }
        }
        e.injected_state = je.at("injected_state").get<bool>();
        e.trace_refs = je.at("trace_refs").get<std::vector<std::string>>();
        r.entries.push_back(std::move(e));
    }
    for (const auto& je : j.at("errors")) {
        r.errors.push_back({je.at("file").get<std::string>(), je.at("message").get<std::string>()});
    }
    const auto& t = j.at("totals");
    r.totals.passed = t.at("passed").get<int>();
    r.totals.potential = t.at("potential").get<int>();
    r.totals.confirmed = t.at("confirmed").get<int>();
    r.totals.confirmed_external = t.at("confirmed_external").get<int>();
    r.totals.confirmed_internal = t.at("confirmed_internal").get<int>();
    return r;
}

std::string render_json(const ScanReport& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace dosscan::pipeline
