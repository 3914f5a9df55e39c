// Copyright 2026 The eprbsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPRB_IO_MANIFEST_H
#define EPRB_IO_MANIFEST_H

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eprb/analysis/coincidence.h"
#include "eprb/sim/config.h"

namespace eprb::io {

inline constexpr std::string_view kSoftwareVersion = "0.1.0";

/// Everything needed to repeat a command. Settings and doubles are stored so
/// that they parse back to the same bits.
struct RunManifest {
    std::string command;
    std::string software_version{kSoftwareVersion};
    std::optional<sim::ModelConfig> model;
    std::optional<analysis::AnalysisConfig> analysis;
    bool binary = false;
    std::vector<std::string> inputs;
    /// File names relative to the output directory.
    std::vector<std::string> outputs;
    /// Time shift found by --delta auto.
    std::optional<double> estimated_delta;
    /// Flags of commands that have no model or analysis section.
    std::map<std::string, std::string> parameters;

    /// 16 hex digits of FNV-1a 64 over the canonical JSON text.
    std::string hash() const;
};

std::string fnv1a64_hex(std::string_view bytes);

/// Canonical JSON (sorted keys, two-space indent) including the hash.
std::string to_json_text(const RunManifest &manifest);
/// Throws FormatError on bad JSON or missing fields and ConfigError on
/// invalid values.
RunManifest parse_manifest(std::string_view text);

void write_manifest(const std::filesystem::path &path, const RunManifest &manifest);
RunManifest read_manifest(const std::filesystem::path &path);

}  // namespace eprb::io

#endif
