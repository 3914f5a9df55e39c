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

#ifndef EPRB_SIM_RECORDS_H
#define EPRB_SIM_RECORDS_H

#include <cstdint>
#include <vector>

#include "eprb/core/unit_vector.h"

namespace eprb::sim {

enum class ParticleKind : std::uint8_t {
    spin,
    photon,
};

/// One detector firing at one station.
struct DetectionEvent {
    std::uint64_t index = 0;
    /// Time tag. In continuous records this is a time in units of T0; in
    /// discretized records (StationRecord::tick_duration > 0) it holds the
    /// integer tick count.
    double time = 0.0;
    std::uint32_t setting = 0;
    std::int8_t outcome = 1;

    bool operator==(const DetectionEvent &other) const = default;
};

/// Everything one observation station writes to disk during a run.
///
/// Photon settings are stored in doubled form (see eprb::doubled); the station
/// file writer converts them back to polarizer angles.
struct StationRecord {
    int station_id = 1;
    ParticleKind kind = ParticleKind::spin;
    std::vector<UnitVector3> settings;
    /// 0 for continuous time tags, otherwise the tick length the tags were
    /// discretized with.
    double tick_duration = 0.0;
    std::vector<DetectionEvent> events;

    bool discretized() const noexcept {
        return tick_duration > 0.0;
    }

    bool operator==(const StationRecord &other) const = default;
};

}  // namespace eprb::sim

#endif
