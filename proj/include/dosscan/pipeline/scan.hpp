// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <dosscan/detect/detector.hpp>
#include <dosscan/sim/attack.hpp>

namespace dosscan::pipeline {

enum class ScanStatus { kPassed, kPotential, kConfirmedExternal, kConfirmedInternal };

[[nodiscard]] std::string_view to_string(ScanStatus s) noexcept;
[[nodiscard]] std::optional<ScanStatus> parse_scan_status(std::string_view text) noexcept;

[[nodiscard]] inline bool is_confirmed(ScanStatus s) noexcept {
    return s == ScanStatus::kConfirmedExternal || s == ScanStatus::kConfirmedInternal;
}

//! Status implied by a contract's findings and verdicts.
[[nodiscard]] ScanStatus derive_status(std::size_t findings, const std::vector<sim::DoSVerdict>& verdicts);

struct VerdictEntry {
    std::size_t finding_index{0};
    sim::DoSVerdict verdict;

    bool operator==(const VerdictEntry& o) const;
};

struct ContractEntry {
    std::string file;
    std::string contract;
    ScanStatus status{ScanStatus::kPassed};
    std::vector<detect::PotentialFinding> findings;
    std::vector<VerdictEntry> verdicts;
    bool injected_state{false};
    std::vector<std::string> trace_refs;  // attacker sources synthesized for this contract

    bool operator==(const ContractEntry&) const = default;
};

struct FileError {
    std::string file;
    std::string message;

    bool operator==(const FileError&) const = default;
};

struct Totals {
    int passed{0};
    int potential{0};
    int confirmed{0};
    int confirmed_external{0};
    int confirmed_internal{0};

    bool operator==(const Totals&) const = default;
};

struct ScanReport {
    std::vector<ContractEntry> entries;
    std::vector<FileError> errors;
    Totals totals;

    //! Recomputes totals from entries.
    void tally();

    bool operator==(const ScanReport&) const = default;
};

struct ScanOptions {
    bool confirm{false};
    sim::AttackOptions attack;
    std::optional<std::filesystem::path> emit_attacker_dir;
};

//! Entries for one source text; throws LexError / ParseError.
[[nodiscard]] std::vector<ContractEntry> scan_source(std::string_view source, const std::string& file,
                                                     const ScanOptions& options);

//! `.sol` files under `path` (or `path` itself), sorted.
[[nodiscard]] std::vector<std::filesystem::path> collect_inputs(const std::filesystem::path& path);

//! Scans files concurrently; entries come out ordered by path. Unreadable or
//! unparsable files become FileError entries.
[[nodiscard]] ScanReport scan_files(const std::vector<std::filesystem::path>& files, const ScanOptions& options);

[[nodiscard]] ScanReport scan(const std::filesystem::path& path, const ScanOptions& options);

//! 0 all Passed, 1 any Potential / Confirmed, 2 any file error.
[[nodiscard]] int exit_code(const ScanReport& report) noexcept;

[[nodiscard]] std::string render_text(const ScanReport& report);

[[nodiscard]] nlohmann::json to_json(const ScanReport& report);
[[nodiscard]] ScanReport report_from_json(const nlohmann::json& j);

//! to_json(report).dump(2) plus a trailing newline.
[[nodiscard]] std::string render_json(const ScanReport& report);

}  // namespace dosscan::pipeline
