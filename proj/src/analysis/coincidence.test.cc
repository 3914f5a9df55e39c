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

#include "eprb/core/error.h"
#include "eprb/sim/config.h"
#include "eprb/sim/experiment.h"
#include "gtest/gtest.h"

using namespace eprb;
using namespace eprb::analysis;

namespace {

sim::StationRecord record_of(int id, std::size_t settings, std::vector<sim::DetectionEvent> events) {
    sim::StationRecord r;
    r.station_id = id;
    for (std::size_t i = 0; i < settings; i++) {
        r.settings.push_back(UnitVector3::in_plane(0.1 * static_cast<double>(i)));
    }
    r.events = std::move(events);
    return r;
}

sim::ModelConfig small_run(std::uint64_t events) {
    sim::ModelConfig cfg;
    cfg.events = events;
    cfg.settings1 = sim::random_settings(cfg.kind, 3, 1, 1);
    cfg.settings2 = sim::random_settings(cfg.kind, 3, 1, 2);
    return cfg;
}

}  // namespace

TEST(discretize, ceiling) {
    EXPECT_EQ(discretize(0.0015, 0.001), 2);
    EXPECT_EQ(discretize(0.001, 0.001), 1);
    EXPECT_EQ(discretize(0.0, 0.001), 0);
    EXPECT_EQ(discretize(0.003, 0.001), 3);
    EXPECT_EQ(discretize(0.0030001, 0.001), 4);
    EXPECT_EQ(window_ticks(0.0005, 0.001), 1);
    EXPECT_EQ(window_ticks(0.002, 0.001), 2);
    EXPECT_EQ(window_ticks(0.0021, 0.001), 3);
}

TEST(analysis_config, validation) {
    AnalysisConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.tau = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = AnalysisConfig{};
    cfg.window = -1;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(count_coincidences, examples) {
    AnalysisConfig cfg;
    auto r1 = record_of(1, 1, {{0, 0.5, 0, 1}});
    auto r2 = record_of(2, 1, {{0, 0.5, 0, -1}});
    auto t = count_coincidences(r1, r2, cfg);
    EXPECT_EQ(t.count(0, 0, 1, -1), 1u);
    EXPECT_EQ(t.events(0, 0), 1u);

    cfg.window = 0.002;
    r1.events[0].time = 0.0;
    r2.events[0].time = 0.003;
    EXPECT_EQ(count_coincidences(r1, r2, cfg).coincidences(0, 0), 0u);
    r2.events[0].time = 0.002;
    EXPECT_EQ(count_coincidences(r1, r2, cfg).coincidences(0, 0), 0u);
    r2.events[0].time = 0.0015;
    EXPECT_EQ(count_coincidences(r1, r2, cfg).coincidences(0, 0), 0u);
    r2.events[0].time = 0.001;
    EXPECT_EQ(count_coincidences(r1, r2, cfg).coincidences(0, 0), 1u);
}

TEST(count_coincidences, delta_shift) {
    AnalysisConfig cfg;
    cfg.window = 0.001;
    auto r1 = record_of(1, 1, {{0, 0.2, 0, 1}});
    auto r2 = record_of(2, 1, {{0, 0.25, 0, 1}});
    EXPECT_EQ(count_coincidences(r1, r2, cfg).coincidences(0, 0), 0u);
    cfg.delta = 0.05;
    EXPECT_EQ(count_coincidences(r1, r2, cfg).coincidences(0, 0), 1u);
}

TEST(count_coincidences, rejects_bad_records) {
    AnalysisConfig cfg;
    auto r1 = record_of(1, 1, {{0, 0.5, 0, 1}, {1, 0.5, 0, 1}});
    auto r2 = record_of(2, 1, {{0, 0.5, 0, 1}});
    EXPECT_THROW(count_coincidences(r1, r2, cfg), AnalysisError);
    r2.events.push_back({2, 0.5, 0, 1});
    EXPECT_THROW(count_coincidences(r1, r2, cfg), AnalysisError);
    r2.events[1].index = 1;
    r2.events[1].setting = 4;
    EXPECT_THROW(count_coincidences(r1, r2, cfg), AnalysisError);
}

TEST(count_coincidences, wide_window_counts_everything) {
    auto [r1, r2] = sim::run_experiment(small_run(20000));
    AnalysisConfig cfg;
    cfg.window = 1.0 + cfg.tau;
    auto t = count_coincidences(r1, r2, cfg);
    EXPECT_EQ(t.total_coincidences(), 20000u);
    EXPECT_EQ(t.total_events(), 20000u);
}

TEST(count_coincidences, windows_are_nested) {
    auto [r1, r2] = sim::run_experiment(small_run(20000));
    std::uint64_t prev = 0;
    for (double w : {0.0005, 0.001, 0.01, 0.1, 0.5, 1.0}) {
        AnalysisConfig cfg;
        cfg.window = w;
        auto t = count_coincidences(r1, r2, cfg);
        for (std::uint32_t a = 0; a < 3; a++) {
            for (std::uint32_t b = 0; b < 3; b++) {
                EXPECT_LE(t.coincidences(a, b), t.events(a, b));
            }
        }
        EXPECT_GE(t.total_coincidences(), prev);
        prev = t.total_coincidences();
    }
}

TEST(count_coincidences, exchange_transposes) {
    auto [r1, r2] = sim::run_experiment(small_run(5000));
    AnalysisConfig cfg;
    cfg.window = 0.05;
    auto t = count_coincidences(r1, r2, cfg);
    auto swapped = count_coincidences(r2, r1, cfg);
    EXPECT_EQ(t.transposed(), swapped);
    EXPECT_EQ(swapped.count(2, 1, 1, -1), t.count(1, 2, -1, 1));
}

TEST(coincidence_counter, matches_batch_counting) {
    auto cfg = small_run(10000);
    auto [r1, r2] = sim::run_experiment(cfg);
    std::vector<double> windows{0.001, 0.01, 0.3};
    CoincidenceCounter counter(3, 3, 0.001, windows);
    sim::Experiment(cfg).run([&](const sim::DetectionEvent &a, const sim::DetectionEvent &b) { counter.add(a, b); });
    ASSERT_EQ(counter.tables().size(), 3u);
    for (std::size_t i = 0; i < windows.size(); i++) {
        AnalysisConfig ac;
        ac.window = windows[i];
        EXPECT_EQ(counter.tables()[i], count_coincidences(r1, r2, ac));
    }
}

TEST(coincidence_table, merge_by_addition) {
    auto cfg = small_run(4000);
    auto [r1, r2] = sim::run_experiment(cfg);
    AnalysisConfig ac;
    ac.window = 0.02;
    auto whole = count_coincidences(r1, r2, ac);
    auto h1 = r1;
    auto h2 = r2;
    auto t1 = r1;
    auto t2 = r2;
    h1.events.resize(1500);
    h2.events.resize(1500);
    t1.events.erase(t1.events.begin(), t1.events.begin() + 1500);
    t2.events.erase(t2.events.begin(), t2.events.begin() + 1500);
    auto merged = count_coincidences(h1, h2, ac);
    merged += count_coincidences(t1, t2, ac);
    EXPECT_EQ(merged, whole);
    CoincidenceTable other(2, 3);
    EXPECT_THROW(merged += other, AnalysisError);
}

TEST(tick_series, discretized_records) {
    sim::StationRecord r = record_of(1, 1, {{0, 3, 0, 1}, {1, 7, 0, -1}});
    r.tick_duration = 0.001;
    auto same = tick_series(r, 0.001);
    EXPECT_EQ(same, (std::vector<std::int64_t>{3, 7}));
    auto coarse = tick_series(r, 0.002);
    EXPECT_EQ(coarse, (std::vector<std::int64_t>{2, 4}));
}
