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

#ifndef EPRB_IO_STATION_FILE_H
#define EPRB_IO_STATION_FILE_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eprb/sim/records.h"

namespace eprb::io {

/// Station file layout (text):
///
///     # eprbsim station record
///     # manifest <hash>
///     format,1
///     station,1
///     kind,spin
///     tick_duration,0.001
///     settings,2
///     setting,0,<x>,<y>,<z>              spin
///     setting,0,<angle>,<x>,<y>,<z>      photon: polarizer angle, then its doubled form
///     index,setting,outcome,ticks
///     0,1,-1,532
///     ...
///
/// With the binary body, the column line is replaced by "binary,<rows>" and
/// the rows follow as little-endian u64 index, u16 setting, i8 outcome,
/// u64 ticks.
struct StationFileOptions {
    /// Tick used to discretize continuous records; ignored for records that
    /// are already discretized.
    double tau = 0.001;
    bool binary = false;
    /// Written as a "# manifest" comment when not empty.
    std::string manifest_hash;
};

/// Streaming writer for runs too long to hold in memory. The binary body
/// needs the row count up front.
class StationWriter {
   public:
    StationWriter(std::ostream &out, int station_id, sim::ParticleKind kind, const std::vector<UnitVector3> &settings,
                  double tick_duration, std::uint64_t rows, const StationFileOptions &options);

    /// Throws ConfigError for a negative tag.
    void write(const sim::DetectionEvent &event, std::int64_t ticks);

   private:
    std::ostream &out_;
    bool binary_;
    std::string line_;
};

/// Writes the record with integer time tags. Throws ConfigError for a
/// negative tag or a tick that does not match a discretized record.
void write_station_file(std::ostream &out, const sim::StationRecord &record, const StationFileOptions &options);
void write_station_file(const std::filesystem::path &path, const sim::StationRecord &record,
                        const StationFileOptions &options);

/// Reads a station file into a discretized record (tick_duration from the
/// header, time = tick count). Throws FormatError with the offending line.
sim::StationRecord read_station_file(std::istream &in);
sim::StationRecord read_station_file(const std::filesystem::path &path);

/// The "# manifest" hash of a station file, or empty.
std::string manifest_hash_of(const std::filesystem::path &path);

/// Continuous record rounded to ticks exactly as the writer does it.
sim::StationRecord discretized_copy(const sim::StationRecord &record, double tau);

}  // namespace eprb::io

#endif
