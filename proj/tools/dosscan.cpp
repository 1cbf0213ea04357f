// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <dosscan/frontend/ast_dump.hpp>
#include <dosscan/frontend/parser.hpp>
#include <dosscan/pipeline/corpus.hpp>
#include <dosscan/pipeline/scan.hpp>

namespace fs = std::filesystem;
using namespace dosscan;

namespace {

int dump_asts(const fs::path& path) {
    int rc = 0;
    for (const auto& file : pipeline::collect_inputs(path)) {
        std::ifstream in{file, std::ios::binary};
        std::ostringstream ss;
        ss << in.rdbuf();
        try {
            std::cout << frontend::dump(frontend::parse_source_unit(ss.str(), file.generic_string()));
        } catch (const std::exception& e) {
            std::cerr << file.generic_string() << ": " << e.what() << "\n";
            rc = 2;
        }
    }
    return rc;
}

int list_manifest(const fs::path& manifest) {
    const auto m = pipeline::load_manifest(manifest);
    for (const auto& r : m.records) {
        std::cout << r.file.filename().generic_string() << "  " << r.contract << "  "
                  << pipeline::to_string(r.expected_status);
        if (r.expected_pattern) std::cout << "  " << detect::to_string(*r.expected_pattern);
        if (r.expected_route) {
            synth::EntryRoute route;
            route.kind = *r.expected_route;
            std::cout << "  " << route.variant_name();
        }
        if (!r.note.empty()) std::cout << "  # " << r.note;
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static detection and simulated confirmation of unexpected-revert DoS in Solidity contracts"};
    app.require_subcommand(1);

    std::string scan_path;
    bool confirm = false;
    std::string format = "text";
    bool dump_ast = false;
    std::string emit_dir;
    std::size_t max_steps = sim::SimOptions{}.max_steps;
    int honest_parties = sim::AttackOptions{}.honest_parties;

    auto* scan_cmd = app.add_subcommand("scan", "Scan a .sol file or a directory of them");
    scan_cmd->add_option("path", scan_path, "file or directory")->required();
    scan_cmd->add_flag("--confirm", confirm, "synthesize attackers and simulate them");
    scan_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    scan_cmd->add_flag("--dump-ast", dump_ast, "print the parsed AST instead of scanning");
    scan_cmd->add_option("--emit-attacker", emit_dir, "write synthesized attacker sources here");
    scan_cmd->add_option("--max-steps", max_steps, "interpreter step budget per transaction")
        ->check(CLI::PositiveNumber);
    scan_cmd->add_option("--honest-parties", honest_parties, "honest participants besides the attacker")
        ->check(CLI::NonNegativeNumber);

    std::string manifest_path;
    bool corpus_confirm = false;
    auto* corpus_cmd = app.add_subcommand("corpus", "Scan the fixtures of a manifest and compare");
    corpus_cmd->add_option("manifest", manifest_path, "fixture manifest")->required();
    corpus_cmd->add_flag("--confirm", corpus_confirm, "run the dynamic stage");

    std::string list_path = std::string{DOSSCAN_SOURCE_DIR} + "/corpus/evaluation.manifest";
    auto* list_cmd = app.add_subcommand("list", "List the fixtures of a manifest (default: the shipped corpus)");
    list_cmd->add_option("manifest", list_path, "fixture manifest");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*scan_cmd) {
            if (dump_ast) return dump_asts(scan_path);
            pipeline::ScanOptions options;
            options.confirm = confirm;
            options.attack.sim.max_steps = max_steps;
            options.attack.honest_parties = honest_parties;
            if (!emit_dir.empty()) options.emit_attacker_dir = emit_dir;
            const auto report = pipeline::scan(scan_path, options);
            std::cout << (format == "json" ? pipeline::render_json(report) : pipeline::render_text(report));
            return pipeline::exit_code(report);
        }
        if (*corpus_cmd) {
            pipeline::ScanOptions options;
            options.confirm = corpus_confirm;
            const auto result = pipeline::run_corpus(pipeline::load_manifest(manifest_path), options);
            std::cout << pipeline::render_corpus(result);
            return pipeline::corpus_exit_code(result);
        }
        if (*list_cmd) return list_manifest(list_path);
    } catch (const std::exception& e) {
        std::cerr << "dosscan: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
