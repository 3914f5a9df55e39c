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

#ifndef EPRB_SIM_EXPERIMENT_H
#define EPRB_SIM_EXPERIMENT_H

#include <cstdint>
#include <utility>
#include <vector>

#include "eprb/core/rng.h"
#include "eprb/sim/config.h"
#include "eprb/sim/magnet.h"
#include "eprb/sim/records.h"

namespace eprb::sim {

struct EmittedPair {
    UnitVector3 first;
    UnitVector3 second;
};

/// The particle source. Case I draws S uniformly (on the sphere for spins, on
/// the doubled-angle circle for photons) and sends S to station 1 and -S to
/// station 2; Case II sends the configured fixed directions every time.
class Source {
   public:
    Source(const ModelConfig &cfg, RngStream rng);

    EmittedPair emit();

   private:
    ParticleKind kind_;
    SourceCase case_;
    UnitVector3 fixed1_;
    UnitVector3 fixed2_;
    RngStream rng_;
};

/// Free-function form of Source::emit for one-off draws.
EmittedPair source_emit(const ModelConfig &cfg, RngStream &rng);

/// One observation station: setting selector, magnet and clock.
///
/// A station only ever sees its own settings, its own random stream and the
/// particle handed to detect(); nothing of the other station is reachable
/// from here.
class Station {
   public:
    Station(int station_id, const ModelConfig &cfg, std::vector<UnitVector3> settings, RngStream rng);

    DetectionEvent detect(std::uint64_t index, const UnitVector3 &particle);

    int id() const noexcept {
        return id_;
    }
    const std::vector<UnitVector3> &settings() const noexcept {
        return settings_;
    }

   private:
    int id_;
    MagnetKind magnet_;
    double d_;
    double t0_;
    DlmScope scope_;
    std::vector<UnitVector3> settings_;
    std::vector<DlmState> dlm_;
    RngStream rng_;
};

/// Event-by-event generator for one run. run() hands each (station 1, station 2)
/// event pair to a sink, so arbitrarily long runs can be analyzed without
/// materializing the records.
class Experiment {
   public:
    explicit Experiment(const ModelConfig &cfg);

    template <typename Sink>
    void run(Sink &&sink) {
        for (std::uint64_t n = 0; n < events_; n++) {
            auto pair = source_.emit();
            DetectionEvent e1 = station1_.detect(n, pair.first);
            DetectionEvent e2 = station2_.detect(n, pair.second);
            sink(e1, e2);
        }
    }

    const Station &station1() const noexcept {
        return station1_;
    }
    const Station &station2() const noexcept {
        return station2_;
    }

   private:
    std::uint64_t events_;
    Source source_;
    Station station1_;
    Station station2_;
};

/// Runs the configured experiment and returns both station records.
std::pair<StationRecord, StationRecord> run_experiment(const ModelConfig &cfg);

}  // namespace eprb::sim

#endif
