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

#include "eprb/io/settings_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "eprb/core/error.h"

namespace eprb::io {

namespace {

double number(const std::string &text, std::size_t line) {
    std::size_t b = text.find_first_not_of(" \t");
    std::size_t e = text.find_last_not_of(" \t");
    std::string t = b == std::string::npos ? std::string() : text.substr(b, e - b + 1);
    double v = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v)) {
        throw FormatError("expected a number, got '" + text + "'", line);
    }
    return v;
}

}  // namespace

StationSettings read_settings_file(std::istream &in, sim::ParticleKind kind) {
    StationSettings out;
    std::string line;
    std::size_t n = 0;
    std::size_t width = kind == sim::ParticleKind::spin ? 4 : 2;
    while (std::getline(in, line)) {
        n++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') {
            continue;
        }
        std::vector<std::string> f;
        std::istringstream s(line);
        for (std::string field; std::getline(s, field, ',');) {
            f.push_back(field);
        }
        if (f.size() != width) {
            throw FormatError("expected " + std::to_string(width) + " fields, got " + std::to_string(f.size()), n);
        }
        double station = number(f[0], n);
        if (station != 1 && station != 2) {
            throw FormatError("station must be 1 or 2", n);
        }
        auto &dst = station == 1 ? out.station1 : out.station2;
        try {
            if (kind == sim::ParticleKind::spin) {
                dst.push_back(UnitVector3::normalized(number(f[1], n), number(f[2], n), number(f[3], n)));
            } else {
                dst.push_back(doubled(PolarizationAngle(number(f[1], n))));
            }
        } catch (const ConfigError &e) {
            throw FormatError(e.what(), n);
        }
    }
    if (out.station1.empty() || out.station2.empty()) {
        throw FormatError("both stations need at least one setting", n);
    }
    return out;
}

StationSettings read_settings_file(const std::filesystem::path &path, sim::ParticleKind kind) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string(), 0);
    }
    return read_settings_file(in, kind);
}

}  // namespace eprb::io
