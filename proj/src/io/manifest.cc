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

#include "eprb/io/manifest.h"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eprb/core/error.h"

namespace eprb::io {

namespace {

using nlohmann::json;

json vector_json(const UnitVector3 &v) {
    return json::array({v.x(), v.y(), v.z()});
}

UnitVector3 vector_from(const json &j) {
    if (!j.is_array() || j.size() != 3) {
        throw FormatError("manifest: a direction needs three components", 0);
    }
    return UnitVector3::from_unit_components(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json settings_json(const std::vector<UnitVector3> &settings) {
    json out = json::array();
    for (const auto &v : settings) {
        out.push_back(vector_json(v));
    }
    return out;
}

std::vector<UnitVector3> settings_from(const json &j) {
    std::vector<UnitVector3> out;
    for (const auto &v : j) {
        out.push_back(vector_from(v));
    }
    return out;
}

json model_json(const sim::ModelConfig &m) {
    return json{
        {"kind", sim::to_string(m.kind)},
        {"case", sim::to_string(m.source_case)},
        {"fixed1", vector_json(m.fixed1)},
        {"fixed2", vector_json(m.fixed2)},
        {"magnet", sim::to_string(m.magnet)},
        {"l", m.dlm.l},
        {"u0", m.dlm.u0},
        {"dlm_scope", sim::to_string(m.dlm.scope)},
        {"d", m.d},
        {"t0", m.t0},
        {"tau", m.tau},
        {"events", m.events},
        {"settings1", settings_json(m.settings1)},
        {"settings2", settings_json(m.settings2)},
        {"seed", m.seed},
        {"stream_base", m.stream_base},
    };
}

sim::ModelConfig model_from(const json &j) {
    sim::ModelConfig m;
    m.kind = sim::parse_particle_kind(j.at("kind").get<std::string>());
    m.source_case = sim::parse_source_case(j.at("case").get<std::string>());
    m.fixed1 = vector_from(j.at("fixed1"));
    m.fixed2 = vector_from(j.at("fixed2"));
    m.magnet = sim::parse_magnet_kind(j.at("magnet").get<std::string>());
    m.dlm.l = j.at("l").get<double>();
    m.dlm.u0 = j.at("u0").get<double>();
    m.dlm.scope = sim::parse_dlm_scope(j.at("dlm_scope").get<std::string>());
    m.d = j.at("d").get<double>();
    m.t0 = j.at("t0").get<double>();
    m.tau = j.at("tau").get<double>();
    m.events = j.at("events").get<std::uint64_t>();
    m.settings1 = settings_from(j.at("settings1"));
    m.settings2 = settings_from(j.at("settings2"));
    m.seed = j.at("seed").get<std::uint64_t>();
    m.stream_base = j.at("stream_base").get<std::uint64_t>();
    m.validate();
    return m;
}

json analysis_json(const analysis::AnalysisConfig &a) {
    return json{{"tau", a.tau}, {"window", a.window}, {"delta", a.delta}, {"histogram_bin", a.histogram_bin}};
}

analysis::AnalysisConfig analysis_from(const json &j) {
    analysis::AnalysisConfig a;
    a.tau = j.at("tau").get<double>();
    a.window = j.at("window").get<double>();
    a.delta = j.at("delta").get<double>();
    a.histogram_bin = j.at("histogram_bin").get<double>();
    a.validate();
    return a;
}

json body(const RunManifest &m) {
    json j{
        {"command", m.command},
        {"software_version", m.software_version},
        {"binary", m.binary},
        {"inputs", m.inputs},
        {"outputs", m.outputs},
    };
    if (m.model) {
        j["model"] = model_json(*m.model);
    }
    if (m.analysis) {
        j["analysis"] = analysis_json(*m.analysis);
    }
    if (m.estimated_delta) {
        j["estimated_delta"] = *m.estimated_delta;
    }
    if (!m.parameters.empty()) {
        j["parameters"] = m.parameters;
    }
    return j;
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << h;
    return s.str();
}

std::string RunManifest::hash() const {
    return fnv1a64_hex(body(*this).dump());
}

std::string to_json_text(const RunManifest &manifest) {
    json j = body(manifest);
    j["hash"] = manifest.hash();
    return j.dump(2) + "\n";
}

RunManifest parse_manifest(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("manifest: ") + e.what(), 0);
    }
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.software_version = j.at("software_version").get<std::string>();
        m.binary = j.at("binary").get<bool>();
        m.inputs = j.at("inputs").get<std::vector<std::string>>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        if (j.contains("model")) {
            m.model = model_from(j["model"]);
        }
        if (j.contains("analysis")) {
            m.analysis = analysis_from(j["analysis"]);
        }
        if (j.contains("estimated_delta")) {
            m.estimated_delta = j["estimated_delta"].get<double>();
        }
        if (j.contains("parameters")) {
            m.parameters = j["parameters"].get<std::map<std::string, std::string>>();
        }
        if (j.contains("hash") && j["hash"].get<std::string>() != m.hash()) {
            throw FormatError("manifest: hash does not match its contents", 0);
        }
        return m;
    } catch (const json::exception &e) {
        throw FormatError(std::string("manifest: ") + e.what(), 0);
    }
}

void write_manifest(const std::filesystem::path &path, const RunManifest &manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << to_json_text(manifest);
}

RunManifest read_manifest(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string(), 0);
    }
    std::stringstream s;
    s << in.rdbuf();
    return parse_manifest(s.str());
}

}  // namespace eprb::io
