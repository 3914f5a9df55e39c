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

#ifndef EPRB_IO_SETTINGS_FILE_H
#define EPRB_IO_SETTINGS_FILE_H

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "eprb/core/unit_vector.h"
#include "eprb/sim/records.h"

namespace eprb::io {

struct StationSettings {
    std::vector<UnitVector3> station1;
    std::vector<UnitVector3> station2;
};

/// One setting per line: "station,x,y,z" for spins (normalized on read) or
/// "station,angle" for photons (polarizer angle in radians, stored doubled).
/// Settings keep their line order within a station. Blank lines and '#'
/// comments are skipped.
StationSettings read_settings_file(std::istream &in, sim::ParticleKind kind);
StationSettings read_settings_file(const std::filesystem::path &path, sim::ParticleKind kind);

}  // namespace eprb::io

#endif
