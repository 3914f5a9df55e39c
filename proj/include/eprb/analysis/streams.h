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

#ifndef EPRB_ANALYSIS_STREAMS_H
#define EPRB_ANALYSIS_STREAMS_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eprb/analysis/coincidence.h"
#include "eprb/analysis/correlation.h"

namespace eprb::analysis {

struct DeltaEstimate {
    /// Offset of station 2 relative to station 1, t2 ~ t1 + delta.
    double delta = 0.0;
    double bin = 0.0;
    std::uint64_t peak = 0;
    double mean = 0.0;
    double peak_to_mean = 0.0;
    bool low_confidence = true;
    /// Counts per bin; bin i is centred on (i - (histogram.size() - 1) / 2) * bin.
    std::vector<std::uint64_t> histogram;
};

/// Histograms t2 - t1 over all pairs closer than search_radius and returns the
/// centre of the fullest bin. Ties go to the bin closest to zero. Both streams
/// must be sorted ascending.
DeltaEstimate match_streams(std::span<const double> tags1, std::span<const double> tags2, double histogram_bin,
                            double search_radius, double confidence_threshold = 3.0);

/// Time-ordered greedy pairing of unaligned streams: each event joins at most
/// one pair, and a pair is formed as soon as the earliest unpaired events of
/// both stations are within the window.
CoincidenceTable pair_streams(const sim::StationRecord &r1, const sim::StationRecord &r2,
                              const AnalysisConfig &cfg);

enum class PairingMode : std::uint8_t {
    aligned,
    unaligned,
};

struct SweepPoint {
    double window = 0.0;
    std::optional<double> s_max;
    std::uint64_t pairs = 0;
};

/// Full pipeline per window. Pair counts are non-decreasing in W.
std::vector<SweepPoint> window_sweep(const sim::StationRecord &r1, const sim::StationRecord &r2, double tau,
                                     std::span<const double> windows, double delta = 0.0,
                                     PairingMode mode = PairingMode::aligned);

std::vector<SweepPoint> sweep_points(std::span<const CoincidenceTable> tables);

}  // namespace eprb::analysis

#endif
