// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/pipeline/corpus.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace dosscan::pipeline {

namespace fs = std::filesystem;

namespace {

    std::vector<std::string> split_tabs(const std::string& line) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            const auto tab = line.find('\t', start);
            out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        return out;
    }

    bool empty_field(const std::string& s) { return s.empty() || s == "-"; }

}  // namespace

CorpusManifest parse_manifest(const std::string& text, const fs::path& base_dir) {
    CorpusManifest m;
    std::istringstream in{text};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto where = "manifest line " + std::to_string(lineno) + ": ";
        auto fields = split_tabs(line);
        if (fields.size() < 5 || fields.size() > 6) throw ManifestError(where + "expected 5 or 6 tab-separated fields");
        fields.resize(6);

        FixtureRecord r;
        r.file = base_dir / fields[0];
        if (!fs::is_regular_file(r.file)) throw ManifestError(where + "no such fixture " + r.file.generic_string());
        r.contract = fields[1];
        if (r.contract.empty()) throw ManifestError(where + "empty contract");
        const auto status = parse_scan_status(fields[2]);
        if (!status) throw ManifestError(where + "bad status " + fields[2]);
        r.expected_status = *status;
        if (!empty_field(fields[3])) {
            r.expected_pattern = detect::parse_pattern_kind(fields[3]);
            if (!r.expected_pattern) throw ManifestError(where + "bad pattern " + fields[3]);
        }
        if (r.expected_pattern.has_value() != (r.expected_status != ScanStatus::kPassed)) {
            throw ManifestError(where + "a pattern is required exactly when the status is not Passed");
        }
        if (!empty_field(fields[4])) {
            r.expected_route = synth::parse_route_kind(fields[4]);
            if (!r.expected_route) throw ManifestError(where + "bad route " + fields[4]);
            if (!is_confirmed(r.expected_status)) throw ManifestError(where + "a route needs a Confirmed status");
        }
        r.note = fields[5];
        m.records.push_back(std::move(r));
    }
    return m;
}

CorpusManifest load_manifest(const fs::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw ManifestError("cannot read manifest " + path.generic_string());
    std::ostringstream ss;
    ss << in.rdbuf();
    CorpusManifest m = parse_manifest(ss.str(), path.parent_path());
    m.path = path;
    return m;
}

std::optional<double> CorpusResult::precision() const noexcept {
    if (true_positives + false_positives == 0) return std::nullopt;
    return static_cast<double>(true_positives) / (true_positives + false_positives);
}

std::optional<double> CorpusResult::recall() const noexcept {
    if (true_positives + false_negatives == 0) return std::nullopt;
    return static_cast<double>(true_positives) / (true_positives + false_negatives);
}

CorpusResult run_corpus(const CorpusManifest& manifest, const ScanOptions& options) {
    CorpusResult result;
    std::vector<fs::path> files;
    for (const auto& r : manifest.records) {
        if (std::find(files.begin(), files.end(), r.file) == files.end()) files.push_back(r.file);
    }
    result.report = scan_files(files, options);

    std::map<std::pair<std::string, std::string>, const ContractEntry*> by_key;
    for (const auto& e : result.report.entries) by_key[{e.file, e.contract}] = &e;
    std::map<std::string, std::string> errors;
    for (const auto& e : result.report.errors) errors[e.file] = e.message;

    auto positive = [&](ScanStatus s) { return options.confirm ? is_confirmed(s) : s != ScanStatus::kPassed; };

    for (const auto& r : manifest.records) {
        FixtureOutcome o;
        o.record = r;
        o.compared_status = r.expected_status;
        if (!options.confirm && is_confirmed(r.expected_status)) o.compared_status = ScanStatus::kPotential;

        const std::string file = r.file.generic_string();
        const auto it = by_key.find({file, r.contract});
        if (auto err = errors.find(file); err != errors.end()) {
            o.error = err->second;
        } else if (it == by_key.end()) {
            o.error = "contract " + r.contract + " not found";
        } else {
            const ContractEntry& e = *it->second;
            o.actual_status = e.status;
            if (r.expected_pattern) {
                o.pattern_found = std::any_of(e.findings.begin(), e.findings.end(), [&](const auto& f) {
                    return f.pattern == *r.expected_pattern;
                });
            }
            if (r.expected_route && options.confirm) {
                o.route_found = std::any_of(e.verdicts.begin(), e.verdicts.end(), [&](const auto& v) {
                    return v.verdict.confirmed && v.verdict.route.kind == *r.expected_route;
                });
            }
        }
        if (!o.pattern_found) ++result.missed_patterns;
        if (!o.matches()) ++result.mismatches;
        const bool expected = positive(o.compared_status);
        const bool actual = o.error.empty() && positive(o.actual_status);
        if (expected && actual) ++result.true_positives;
        if (!expected && actual) ++result.false_positives;
        if (expected && !actual) ++result.false_negatives;
        result.outcomes.push_back(std::move(o));
    }
    return result;
}

namespace {

    std::string ratio(const std::optional<double>& v) {
        if (!v) return "n/a";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", *v);
        return buf;
    }

}  // namespace

std::string render_corpus(const CorpusResult& result) {
    std::string out;
    for (const auto& o : result.outcomes) {
        out += o.matches() ? "ok        " : "MISMATCH  ";
        out += o.record.file.filename().generic_string() + "  " + o.record.contract + "  expected " +
               std::string{to_string(o.compared_status)};
        if (o.record.expected_pattern) out += "/" + std::string{detect::to_string(*o.record.expected_pattern)};
        out += "  actual ";
        if (!o.error.empty()) {
            out += "error: " + o.error;
        } else {
            out += to_string(o.actual_status);
            if (!o.pattern_found) out += "  pattern missing";
            if (!o.route_found) out += "  route differs";
        }
        out += "\n";
    }
    const auto& t = result.report.totals;
    out += "fixtures " + std::to_string(result.outcomes.size()) + ", mismatches " +
           std::to_string(result.mismatches) + "\n";
    out += "confirmed " + std::to_string(t.confirmed) + " (external " + std::to_string(t.confirmed_external) +
           ", internal " + std::to_string(t.confirmed_internal) + "), potential " + std::to_string(t.potential) +
           ", passed " + std::to_string(t.passed) + "\n";
    out += "TP " + std::to_string(result.true_positives) + "  FP " + std::to_string(result.false_positives) +
           "  FN " + std::to_string(result.false_negatives) + "  missed patterns " +
           std::to_string(result.missed_patterns) + "\n";
    out += "precision " + ratio(result.precision()) + "  recall " + ratio(result.recall()) + "\n";
    return out;
}

int corpus_exit_code(const CorpusResult& result) noexcept { return result.mismatches == 0 ? 0 : 1; }

}  // namespace dosscan::pipeline
