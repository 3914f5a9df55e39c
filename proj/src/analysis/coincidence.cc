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

#include "eprb/analysis/coincidence.h"

#include <cmath>
#include <numeric>

#include "eprb/core/error.h"

namespace eprb::analysis {

namespace {

std::int64_t snapped_ceil(double q) {
    double r = std::nearbyint(q);
    if (std::abs(q - r) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(q))) {
        return static_cast<std::int64_t>(r);
    }
    return static_cast<std::int64_t>(std::ceil(q));
}

}  // namespace

void AnalysisConfig::validate() const {
    if (!(tau > 0) || !std::isfinite(tau)) {
        throw ConfigError("tau must be positive");
    }
    if (!(window > 0) || !std::isfinite(window)) {
        throw ConfigError("window W must be positive");
    }
    if (!std::isfinite(delta)) {
        throw ConfigError("delta must be finite");
    }
    if (!(histogram_bin > 0)) {
        throw ConfigError("histogram bin must be positive");
    }
}

std::int64_t discretize(double t, double tau) {
    return snapped_ceil(t / tau);
}

std::int64_t window_ticks(double window, double tau) {
    return std::max<std::int64_t>(1, snapped_ceil(window / tau));
}

std::vector<std::int64_t> tick_series(const sim::StationRecord &record, double tau, double shift) {
    std::vector<std::int64_t> out;
    out.reserve(record.events.size());
    if (record.discretized()) {
        double ratio = record.tick_duration / tau;
        bool same = std::abs(ratio - 1.0) < 1e-12;
        for (const auto &e : record.events) {
            if (same) {
                out.push_back(snapped_ceil(e.time - shift / tau));
            } else {
                out.push_back(discretize(e.time * record.tick_duration - shift, tau));
            }
        }
    } else {
        for (const auto &e : record.events) {
            out.push_back(discretize(e.time - shift, tau));
        }
    }
    return out;
}

CoincidenceTable::CoincidenceTable(std::size_t settings1, std::size_t settings2)
    : m1_(settings1), m2_(settings2), counts_(settings1 * settings2 * 4), events_(settings1 * settings2) {
}

std::uint64_t CoincidenceTable::coincidences(std::uint32_t m1, std::uint32_t m2) const {
    std::size_t base = (m1 * m2_ + m2) * 4;
    return counts_[base] + counts_[base + 1] + counts_[base + 2] + counts_[base + 3];
}

std::uint64_t CoincidenceTable::total_coincidences() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t CoincidenceTable::total_events() const {
    return std::accumulate(events_.begin(), events_.end(), std::uint64_t{0});
}

CoincidenceTable CoincidenceTable::transposed() const {
    CoincidenceTable t(m2_, m1_);
    t.window = window;
    t.tau = tau;
    t.window_ticks = window_ticks;
    t.delta = -delta;
    for (std::uint32_t a = 0; a < m1_; a++) {
        for (std::uint32_t b = 0; b < m2_; b++) {
            t.events_[b * m1_ + a] = events(a, b);
            for (int x : {1, -1}) {
                for (int y : {1, -1}) {
                    t.counts_[t.slot(b, a, y, x)] = count(a, b, x, y);
                }
            }
        }
    }
    return t;
}

CoincidenceTable &CoincidenceTable::operator+=(const CoincidenceTable &other) {
    if (other.m1_ != m1_ || other.m2_ != m2_ || other.window_ticks != window_ticks) {
        throw AnalysisError("cannot merge coincidence tables of different shape or window");
    }
    for (std::size_t i = 0; i < counts_.size(); i++) {
        counts_[i] += other.counts_[i];
    }
    for (std::size_t i = 0; i < events_.size(); i++) {
        events_[i] += other.events_[i];
    }
    return *this;
}

CoincidenceCounter::CoincidenceCounter(std::size_t settings1, std::size_t settings2, double tau,
                                       std::vector<double> windows, double delta)
    : tau_(tau), delta_(delta) {
    for (double w : windows) {
        AnalysisConfig{tau, w, delta, 1.0}.validate();
        CoincidenceTable t(settings1, settings2);
        t.window = w;
        t.tau = tau;
        t.window_ticks = window_ticks(w, tau);
        t.delta = delta;
        tables_.push_back(std::move(t));
    }
}

void CoincidenceCounter::add_ticks(const sim::DetectionEvent &e1, std::int64_t k1, const sim::DetectionEvent &e2,
                                   std::int64_t k2) {
    std::int64_t gap = k1 > k2 ? k1 - k2 : k2 - k1;
    for (auto &t : tables_) {
        t.record_event(e1.setting, e2.setting);
        if (gap < t.window_ticks) {
            t.record_coincidence(e1.setting, e2.setting, e1.outcome, e2.outcome);
        }
    }
}

CoincidenceTable count_coincidences(const sim::StationRecord &r1, const sim::StationRecord &r2,
                                    const AnalysisConfig &cfg) {
    cfg.validate();
    if (r1.events.size() != r2.events.size()) {
        throw AnalysisError("aligned analysis needs records of equal length (" + std::to_string(r1.events.size()) +
                            " vs " + std::to_string(r2.events.size()) + ")");
    }
    auto k1 = tick_series(r1, cfg.tau);
    auto k2 = tick_series(r2, cfg.tau, cfg.delta);
    CoincidenceCounter counter(r1.settings.size(), r2.settings.size(), cfg.tau, {cfg.window}, cfg.delta);
    for (std::size_t n = 0; n < k1.size(); n++) {
        const auto &e1 = r1.events[n];
        const auto &e2 = r2.events[n];
        if (e1.index != e2.index) {
            throw AnalysisError("records are not index-aligned at row " + std::to_string(n));
        }
        if (e1.setting >= r1.settings.size() || e2.setting >= r2.settings.size()) {
            throw AnalysisError("setting index out of range at row " + std::to_string(n));
        }
        counter.add_ticks(e1, k1[n], e2, k2[n]);
    }
    return counter.tables().front();
}

}  // namespace eprb::analysis
