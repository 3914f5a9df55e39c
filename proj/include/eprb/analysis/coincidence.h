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

#ifndef EPRB_ANALYSIS_COINCIDENCE_H
#define EPRB_ANALYSIS_COINCIDENCE_H

#include <cstdint>
#include <vector>

#include "eprb/sim/records.h"

namespace eprb::analysis {

struct AnalysisConfig {
    /// Tick duration used to discretize continuous time tags.
    double tau = 0.001;
    /// Coincidence window W, same units as tau.
    double window = 0.001;
    /// Shift subtracted from station 2 tags before comparison.
    double delta = 0.0;
    /// Bin width for the time-difference histogram.
    double histogram_bin = 0.5;

    void validate() const;
};

/// Smallest integer k with t / tau <= k. Quotients within a few ulps of an
/// integer are snapped to it, so t = 3 * tau gives 3 and not 4.
std::int64_t discretize(double t, double tau);

/// Window in ticks, k = ceil(W / tau), never less than 1.
std::int64_t window_ticks(double window, double tau);

/// Tick counts of every event, in event order.
std::vector<std::int64_t> tick_series(const sim::StationRecord &record, double tau, double shift = 0.0);

/// Coincidence counts C_xy per (setting1, setting2) pair.
class CoincidenceTable {
   public:
    CoincidenceTable() = default;
    CoincidenceTable(std::size_t settings1, std::size_t settings2);

    std::size_t settings1() const noexcept {
        return m1_;
    }
    std::size_t settings2() const noexcept {
        return m2_;
    }

    void record_event(std::uint32_t m1, std::uint32_t m2) {
        events_[m1 * m2_ + m2]++;
    }
    void record_coincidence(std::uint32_t m1, std::uint32_t m2, int x, int y) {
        counts_[slot(m1, m2, x, y)]++;
    }

    /// Number of coincidences with outcomes (x, y).
    std::uint64_t count(std::uint32_t m1, std::uint32_t m2, int x, int y) const {
        return counts_[slot(m1, m2, x, y)];
    }
    std::uint64_t coincidences(std::uint32_t m1, std::uint32_t m2) const;
    /// Number of emitted pairs that went to this setting pair, coincident or not.
    std::uint64_t events(std::uint32_t m1, std::uint32_t m2) const {
        return events_[m1 * m2_ + m2];
    }
    std::uint64_t total_coincidences() const;
    std::uint64_t total_events() const;

    /// Swaps the role of the stations.
    CoincidenceTable transposed() const;

    CoincidenceTable &operator+=(const CoincidenceTable &other);
    bool operator==(const CoincidenceTable &other) const = default;

    double window = 0.0;
    double tau = 0.0;
    std::int64_t window_ticks = 0;
    double delta = 0.0;

   private:
    std::size_t slot(std::uint32_t m1, std::uint32_t m2, int x, int y) const {
        return (m1 * m2_ + m2) * 4 + (x > 0 ? 0 : 2) + (y > 0 ? 0 : 1);
    }

    std::size_t m1_ = 0;
    std::size_t m2_ = 0;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> events_;
};

/// Streaming coincidence counter for index-aligned event pairs. Accumulates
/// one table per window so that a full sweep costs one pass over the data.
class CoincidenceCounter {
   public:
    CoincidenceCounter(std::size_t settings1, std::size_t settings2, double tau, std::vector<double> windows,
                       double delta = 0.0);

    void add(const sim::DetectionEvent &e1, const sim::DetectionEvent &e2) {
        add_ticks(e1, discretize(e1.time, tau_), e2, discretize(e2.time - delta_, tau_));
    }
    void add_ticks(const sim::DetectionEvent &e1, std::int64_t k1, const sim::DetectionEvent &e2,
                   std::int64_t k2);

    const std::vector<CoincidenceTable> &tables() const noexcept {
        return tables_;
    }

   private:
    double tau_;
    double delta_;
    std::vector<CoincidenceTable> tables_;
};

/// Counts coincidences between index-aligned records (simulation mode).
CoincidenceTable count_coincidences(const sim::StationRecord &r1, const sim::StationRecord &r2,
                                    const AnalysisConfig &cfg);

}  // namespace eprb::analysis

#endif
