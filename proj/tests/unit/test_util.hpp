// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dosscan::test {

inline std::filesystem::path source_path(const std::string& relative) {
    return std::filesystem::path{DOSSCAN_SOURCE_DIR} / relative;
}

inline std::string read_source(const std::string& relative) {
    std::ifstream in{source_path(relative), std::ios::binary};
    if (!in) throw std::runtime_error("cannot open " + relative);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace dosscan::test
