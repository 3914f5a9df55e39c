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

#include "eprb/analysis/streams.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eprb/core/error.h"

namespace eprb::analysis {

DeltaEstimate match_streams(std::span<const double> tags1, std::span<const double> tags2, double histogram_bin,
                            double search_radius, double confidence_threshold) {
    if (tags1.empty() || tags2.empty()) {
        throw AnalysisError("time-shift search needs two non-empty streams");
    }
    if (!(histogram_bin > 0) || !(search_radius > 0)) {
        throw ConfigError("histogram bin and search radius must be positive");
    }
    if (!std::is_sorted(tags1.begin(), tags1.end()) || !std::is_sorted(tags2.begin(), tags2.end())) {
        throw AnalysisError("time-shift search needs streams sorted by time");
    }
    auto half = static_cast<std::int64_t>(std::floor(search_radius / histogram_bin + 0.5));
    DeltaEstimate out;
    out.bin = histogram_bin;
    out.histogram.assign(2 * half + 1, 0);

    std::size_t lo = 0;
    for (double t1 : tags1) {
        while (lo < tags2.size() && tags2[lo] < t1 - search_radius) {
            lo++;
        }
        for (std::size_t j = lo; j < tags2.size() && tags2[j] <= t1 + search_radius; j++) {
            auto i = static_cast<std::int64_t>(std::floor((tags2[j] - t1) / histogram_bin + 0.5));
            if (i >= -half && i <= half) {
                out.histogram[i + half]++;
            }
        }
    }

    std::int64_t best = 0;
    for (std::int64_t i = -half; i <= half; i++) {
        std::uint64_t c = out.histogram[i + half];
        std::uint64_t b = out.histogram[best + half];
        if (c > b || (c == b && std::abs(i) < std::abs(best))) {
            best = i;
        }
    }
    out.delta = static_cast<double>(best) * histogram_bin;
    out.peak = out.histogram[best + half];
    std::uint64_t total = std::accumulate(out.histogram.begin(), out.histogram.end(), std::uint64_t{0});
    out.mean = static_cast<double>(total) / static_cast<double>(out.histogram.size());
    out.peak_to_mean = out.mean > 0 ? static_cast<double>(out.peak) / out.mean : 0.0;
    out.low_confidence = out.peak_to_mean < confidence_threshold;
    return out;
}

namespace {

struct TimedEvent {
    std::int64_t tick;
    const sim::DetectionEvent *event;
};

std::vector<TimedEvent> time_ordered(const sim::StationRecord &r, const std::vector<std::int64_t> &ticks) {
    std::vector<TimedEvent> out;
    out.reserve(ticks.size());
    for (std::size_t i = 0; i < ticks.size(); i++) {
        if (r.events[i].setting >= r.settings.size()) {
            throw AnalysisError("setting index out of range at row " + std::to_string(i));
        }
        out.push_back({ticks[i], &r.events[i]});
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        return a.tick != b.tick ? a.tick < b.tick : a.event->index < b.event->index;
    });
    return out;
}

}  // namespace

CoincidenceTable pair_streams(const sim::StationRecord &r1, const sim::StationRecord &r2,
                              const AnalysisConfig &cfg) {
    cfg.validate();
    auto s1 = time_ordered(r1, tick_series(r1, cfg.tau));
    auto s2 = time_ordered(r2, tick_series(r2, cfg.tau, cfg.delta));
    CoincidenceTable table(r1.settings.size(), r2.settings.size());
    table.window = cfg.window;
    table.tau = cfg.tau;
    table.window_ticks = window_ticks(cfg.window, cfg.tau);
    table.delta = cfg.delta;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < s1.size() && j < s2.size()) {
        std::int64_t gap = s1[i].tick - s2[j].tick;
        if (std::abs(gap) < table.window_ticks) {
            const auto &e1 = *s1[i].event;
            const auto &e2 = *s2[j].event;
            table.record_coincidence(e1.setting, e2.setting, e1.outcome, e2.outcome);
            i++;
            j++;
        } else if (gap < 0) {
            i++;
        } else {
            j++;
        }
    }
    return table;
}

std::vector<SweepPoint> sweep_points(std::span<const CoincidenceTable> tables) {
    std::vector<SweepPoint> out;
    for (const auto &t : tables) {
        CorrelationReport r = correlation_report(t);
        SweepPoint p;
        p.window = t.window;
        p.pairs = t.total_coincidences();
        if (r.s_max) {
            p.s_max = r.s_max->value;
        }
        out.push_back(p);
    }
    return out;
}

std::vector<SweepPoint> window_sweep(const sim::StationRecord &r1, const sim::StationRecord &r2, double tau,
                                     std::span<const double> windows, double delta, PairingMode mode) {
    for (double w : windows) {
        if (!(w > 0)) {
            throw ConfigError("window values must be positive");
        }
    }
    std::vector<CoincidenceTable> tables;
    if (mode == PairingMode::aligned) {
        if (r1.events.size() != r2.events.size()) {
            throw AnalysisError("aligned analysis needs records of equal length");
        }
        auto k1 = tick_series(r1, tau);
        auto k2 = tick_series(r2, tau, delta);
        CoincidenceCounter counter(r1.settings.size(), r2.settings.size(), tau,
                                   std::vector<double>(windows.begin(), windows.end()), delta);
        for (std::size_t n = 0; n < k1.size(); n++) {
            counter.add_ticks(r1.events[n], k1[n], r2.events[n], k2[n]);
        }
        tables = counter.tables();
    } else {
        for (double w : windows) {
            tables.push_back(pair_streams(r1, r2, AnalysisConfig{tau, w, delta, 1.0}));
        }
    }
    return sweep_points(tables);
}

}  // namespace eprb::analysis
