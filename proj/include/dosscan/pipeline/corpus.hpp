// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <dosscan/detect/detector.hpp>
#include <dosscan/pipeline/scan.hpp>
#include <dosscan/synth/synthesizer.hpp>

namespace dosscan::pipeline {

class ManifestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FixtureRecord {
    std::filesystem::path file;  // resolved against the manifest's directory
    std::string contract;
    ScanStatus expected_status{ScanStatus::kPassed};
    std::optional<detect::PatternKind> expected_pattern;
    std::optional<synth::EntryRoute::Kind> expected_route;
    std::string note;
};

struct CorpusManifest {
    std::filesystem::path path;
    std::vector<FixtureRecord> records;
};

//! `file<TAB>contract<TAB>status<TAB>pattern<TAB>route<TAB>note`; `#` starts a
//! comment line and `-` marks an empty field. Throws ManifestError.
[[nodiscard]] CorpusManifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir);
[[nodiscard]] CorpusManifest load_manifest(const std::filesystem::path& path);

struct FixtureOutcome {
    FixtureRecord record;
    ScanStatus compared_status{ScanStatus::kPassed};  // expected status as compared in this mode
    ScanStatus actual_status{ScanStatus::kPassed};
    bool pattern_found{true};
    bool route_found{true};
    std::string error;  // scan failure or missing contract

    [[nodiscard]] bool matches() const noexcept {
        return error.empty() && compared_status == actual_status && pattern_found && route_found;
    }
};

struct CorpusResult {
    std::vector<FixtureOutcome> outcomes;
    ScanReport report;
    int true_positives{0};
    int false_positives{0};
    int false_negatives{0};
    int missed_patterns{0};
    int mismatches{0};

    //! nullopt when the denominator is zero.
    [[nodiscard]] std::optional<double> precision() const noexcept;
    [[nodiscard]] std::optional<double> recall() const noexcept;
};

//! Scans every fixture and compares. Without confirm, expected Confirmed*
//! statuses are compared as Potential and positives are flagged statuses.
[[nodiscard]] CorpusResult run_corpus(const CorpusManifest& manifest, const ScanOptions& options);

[[nodiscard]] std::string render_corpus(const CorpusResult& result);

//! 0 when every fixture matches, 1 otherwise.
[[nodiscard]] int corpus_exit_code(const CorpusResult& result) noexcept;

}  // namespace dosscan::pipeline
