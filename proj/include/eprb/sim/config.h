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

#ifndef EPRB_SIM_CONFIG_H
#define EPRB_SIM_CONFIG_H

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "eprb/core/unit_vector.h"
#include "eprb/sim/records.h"

namespace eprb::sim {

/// Case I: random antiparallel pairs (orthogonal polarizations for photons).
/// Case II: every pair carries the same two fixed directions.
enum class SourceCase : std::uint8_t {
    singlet,
    fixed,
};

enum class MagnetKind : std::uint8_t {
    /// Deterministic learning machine with one internal real variable.
    dlm,
    /// Outcome +1 with probability (1 + S.a)/2.
    pseudo_random,
    /// Outcome sign(S.a), ties to +1. The memoryless limit of the DLM.
    threshold,
};

/// Which events a DLM learns from.
enum class DlmScope : std::uint8_t {
    /// One machine per station, fed every particle regardless of setting.
    per_station,
    /// One machine per (station, setting) pair.
    per_setting,
};

struct DlmParams {
    double l = 0.999;
    double u0 = 0.0;
    DlmScope scope = DlmScope::per_setting;
};

/// Full description of one simulated run. Defaults reproduce the standard
/// singlet configuration except for the settings, which callers must supply
/// (see random_settings).
struct ModelConfig {
    ParticleKind kind = ParticleKind::spin;
    SourceCase source_case = SourceCase::singlet;
    /// Case II directions (doubled form for photons).
    UnitVector3 fixed1{};
    UnitVector3 fixed2{};
    MagnetKind magnet = MagnetKind::dlm;
    DlmParams dlm{};
    /// Time-delay exponent: T = t0 |S x a|^d.
    double d = 3.0;
    double t0 = 1.0;
    /// Tick length used when the run is written to disk. Not used while
    /// generating events; recorded so the run is self-describing.
    double tau = 0.001;
    std::uint64_t events = 1'000'000;
    std::vector<UnitVector3> settings1;
    std::vector<UnitVector3> settings2;
    std::uint64_t seed = 42;
    /// First stream id of this run; runs in a sweep use disjoint ranges.
    std::uint64_t stream_base = 0;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;
};

std::string_view to_string(ParticleKind kind);
std::string_view to_string(SourceCase c);
std::string_view to_string(MagnetKind m);
std::string_view to_string(DlmScope s);
ParticleKind parse_particle_kind(std::string_view text);
SourceCase parse_source_case(std::string_view text);
MagnetKind parse_magnet_kind(std::string_view text);
DlmScope parse_dlm_scope(std::string_view text);

/// M random settings for one station: uniform on the sphere (spin) or uniform
/// polarizer angles (photon, doubled form). Uses its own stream so that
/// changing M never perturbs the event streams.
std::vector<UnitVector3> random_settings(ParticleKind kind, std::size_t m, std::uint64_t seed, int station_id);

/// Doubled-form settings for a list of polarizer angles in radians.
std::vector<UnitVector3> polarizer_settings(std::span<const double> angles);

}  // namespace eprb::sim

#endif
