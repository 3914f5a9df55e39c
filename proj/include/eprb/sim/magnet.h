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

#ifndef EPRB_SIM_MAGNET_H
#define EPRB_SIM_MAGNET_H

#include <cstdint>

#include "eprb/core/rng.h"
#include "eprb/core/unit_vector.h"

namespace eprb::sim {

/// Internal state of a deterministic learning machine.
struct DlmState {
    double u = 0.0;
    double l = 0.999;
};

struct MagnetOutput {
    std::int8_t outcome;
    /// Spin after the magnet: outcome * a.
    UnitVector3 spin;
};

struct DlmStep {
    MagnetOutput output;
    DlmState next;
};

/// One event through a DLM. The branch is +1 when S.a >= l u (ties included),
/// and u relaxes towards the chosen outcome: u' = l u + (1 - l) x.
DlmStep dlm_step(const DlmState &state, const UnitVector3 &spin, const UnitVector3 &axis);

/// Outcome +1 iff r <= S.a with r uniform on [-1, 1). With doubled photon
/// vectors this is Malus' law, P(+1) = cos^2 of the polarizer angle.
MagnetOutput pseudo_random_step(const UnitVector3 &spin, const UnitVector3 &axis, RngStream &rng);

/// Outcome sign(S.a), ties to +1.
MagnetOutput threshold_step(const UnitVector3 &spin, const UnitVector3 &axis);

/// Time tag uniform on [0, T) with T = t0 |S x a|^d; t0 offset is zero.
double time_tag(const UnitVector3 &spin, const UnitVector3 &axis, double d, double t0, RngStream &rng);

/// Maximum delay T = t0 |S x a|^d.
double max_delay(const UnitVector3 &spin, const UnitVector3 &axis, double d, double t0);

}  // namespace eprb::sim

#endif
