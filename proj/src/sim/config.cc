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

#include "eprb/sim/config.h"

#include <cmath>
#include <limits>
#include <string>

#include "eprb/core/error.h"
#include "eprb/core/rng.h"

namespace eprb::sim {

namespace {

// Random settings draw from a stream id far above any run's stream range.
constexpr std::uint64_t kSettingsStream = 0xE7B5'0000'0000'0000ull;

bool in_plane(const UnitVector3 &v) {
    return std::abs(v.z()) < 1e-12;
}

void check_settings(const std::vector<UnitVector3> &settings, ParticleKind kind, const char *name) {
    if (settings.empty()) {
        throw ConfigError(std::string(name) + ": M >= 1 required");
    }
    if (settings.size() > std::numeric_limits<std::uint16_t>::max()) {
        throw ConfigError(std::string(name) + ": at most 65535 settings per station");
    }
    if (kind == ParticleKind::photon) {
        for (const auto &s : settings) {
            if (!in_plane(s)) {
                throw ConfigError(std::string(name) + ": photon settings must be polarizer angles");
            }
        }
    }
}

}  // namespace

void ModelConfig::validate() const {
    if (!(dlm.l > 0.0 && dlm.l < 1.0)) {
        throw ConfigError("l must satisfy 0 < l < 1");
    }
    if (!std::isfinite(dlm.u0)) {
        throw ConfigError("u0 must be finite");
    }
    if (!(d >= 0.0) || !std::isfinite(d)) {
        throw ConfigError("d must satisfy d >= 0");
    }
    if (!(t0 > 0.0) || !std::isfinite(t0)) {
        throw ConfigError("T0 must be positive");
    }
    if (!(tau > 0.0 && tau < t0)) {
        throw ConfigError("tau must satisfy 0 < tau < T0");
    }
    if (events < 1) {
        throw ConfigError("N >= 1 required");
    }
    check_settings(settings1, kind, "settings1");
    check_settings(settings2, kind, "settings2");
    if (kind == ParticleKind::photon && source_case == SourceCase::fixed &&
        (!in_plane(fixed1) || !in_plane(fixed2))) {
        throw ConfigError("photon Case II polarizations must be polarizer angles");
    }
}

std::string_view to_string(ParticleKind kind) {
    return kind == ParticleKind::spin ? "spin" : "photon";
}

std::string_view to_string(SourceCase c) {
    return c == SourceCase::singlet ? "I" : "II";
}

std::string_view to_string(MagnetKind m) {
    switch (m) {
        case MagnetKind::dlm:
            return "dlm";
        case MagnetKind::pseudo_random:
            return "random";
        case MagnetKind::threshold:
            return "sign";
    }
    return "?";
}

std::string_view to_string(DlmScope s) {
    return s == DlmScope::per_station ? "station" : "setting";
}

ParticleKind parse_particle_kind(std::string_view text) {
    if (text == "spin") {
        return ParticleKind::spin;
    }
    if (text == "photon") {
        return ParticleKind::photon;
    }
    throw ConfigError("unknown particle kind '" + std::string(text) + "' (expected spin|photon)");
}

SourceCase parse_source_case(std::string_view text) {
    if (text == "I" || text == "1") {
        return SourceCase::singlet;
    }
    if (text == "II" || text == "2") {
        return SourceCase::fixed;
    }
    throw ConfigError("unknown source case '" + std::string(text) + "' (expected I|II)");
}

MagnetKind parse_magnet_kind(std::string_view text) {
    if (text == "dlm") {
        return MagnetKind::dlm;
    }
    if (text == "random") {
        return MagnetKind::pseudo_random;
    }
    if (text == "sign") {
        return MagnetKind::threshold;
    }
    throw ConfigError("unknown magnet model '" + std::string(text) + "' (expected dlm|random|sign)");
}

DlmScope parse_dlm_scope(std::string_view text) {
    if (text == "station") {
        return DlmScope::per_station;
    }
    if (text == "setting") {
        return DlmScope::per_setting;
    }
    throw ConfigError("unknown DLM scope '" + std::string(text) + "' (expected station|setting)");
}

std::vector<UnitVector3> random_settings(ParticleKind kind, std::size_t m, std::uint64_t seed, int station_id) {
    RngStream rng(seed, kSettingsStream + static_cast<std::uint64_t>(station_id));
    std::vector<UnitVector3> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; i++) {
        out.push_back(kind == ParticleKind::spin ? sample_uniform_sphere(rng) : sample_uniform_circle(rng));
    }
    return out;
}

std::vector<UnitVector3> polarizer_settings(std::span<const double> angles) {
    std::vector<UnitVector3> out;
    out.reserve(angles.size());
    for (double a : angles) {
        out.push_back(doubled(PolarizationAngle(a)));
    }
    return out;
}

}  // namespace eprb::sim
