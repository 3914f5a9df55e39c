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

#include "eprb/sim/experiment.h"

#include "eprb/core/error.h"

namespace eprb::sim {

namespace {

RngStream stream_for(const ModelConfig &cfg, StreamRole role) {
    return RngStream(cfg.seed, cfg.stream_base + static_cast<std::uint64_t>(role));
}

}  // namespace

Source::Source(const ModelConfig &cfg, RngStream rng)
    : kind_(cfg.kind), case_(cfg.source_case), fixed1_(cfg.fixed1), fixed2_(cfg.fixed2), rng_(std::move(rng)) {
}

EmittedPair Source::emit() {
    if (case_ == SourceCase::fixed) {
        return {fixed1_, fixed2_};
    }
    UnitVector3 s = kind_ == ParticleKind::spin ? sample_uniform_sphere(rng_) : sample_uniform_circle(rng_);
    return {s, -s};
}

EmittedPair source_emit(const ModelConfig &cfg, RngStream &rng) {
    if (cfg.source_case == SourceCase::fixed) {
        return {cfg.fixed1, cfg.fixed2};
    }
    UnitVector3 s = cfg.kind == ParticleKind::spin ? sample_uniform_sphere(rng) : sample_uniform_circle(rng);
    return {s, -s};
}

Station::Station(int station_id, const ModelConfig &cfg, std::vector<UnitVector3> settings, RngStream rng)
    : id_(station_id),
      magnet_(cfg.magnet),
      d_(cfg.d),
      t0_(cfg.t0),
      scope_(cfg.dlm.scope),
      settings_(std::move(settings)),
      dlm_(cfg.dlm.scope == DlmScope::per_setting ? settings_.size() : 1, DlmState{cfg.dlm.u0, cfg.dlm.l}),
      rng_(std::move(rng)) {
}

DetectionEvent Station::detect(std::uint64_t index, const UnitVector3 &particle) {
    auto m = static_cast<std::uint32_t>(settings_.size() == 1 ? 0 : rng_.index(settings_.size()));
    const UnitVector3 &axis = settings_[m];

    std::int8_t x;
    switch (magnet_) {
        case MagnetKind::dlm: {
            DlmState &state = dlm_[scope_ == DlmScope::per_setting ? m : 0];
            DlmStep step = dlm_step(state, particle, axis);
            state = step.next;
            x = step.output.outcome;
            break;
        }
        case MagnetKind::pseudo_random:
            x = pseudo_random_step(particle, axis, rng_).outcome;
            break;
        case MagnetKind::threshold:
        default:
            x = threshold_step(particle, axis).outcome;
            break;
    }
    // The delay depends on the incoming particle, not the post-magnet spin.
    double t = time_tag(particle, axis, d_, t0_, rng_);
    return DetectionEvent{index, t, m, x};
}

Experiment::Experiment(const ModelConfig &cfg)
    : events_((cfg.validate(), cfg.events)),
      source_(cfg, stream_for(cfg, StreamRole::source)),
      station1_(1, cfg, cfg.settings1, stream_for(cfg, StreamRole::station1)),
      station2_(2, cfg, cfg.settings2, stream_for(cfg, StreamRole::station2)) {
}

std::pair<StationRecord, StationRecord> run_experiment(const ModelConfig &cfg) {
    Experiment experiment(cfg);
    StationRecord r1{1, cfg.kind, cfg.settings1, 0.0, {}};
    StationRecord r2{2, cfg.kind, cfg.settings2, 0.0, {}};
    r1.events.reserve(cfg.events);
    r2.events.reserve(cfg.events);
    experiment.run([&](const DetectionEvent &e1, const DetectionEvent &e2) {
        r1.events.push_back(e1);
        r2.events.push_back(e2);
    });
    return {std::move(r1), std::move(r2)};
}

}  // namespace eprb::sim
