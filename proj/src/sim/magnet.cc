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

#include "eprb/sim/magnet.h"

#include <cmath>

namespace eprb::sim {

DlmStep dlm_step(const DlmState &state, const UnitVector3 &spin, const UnitVector3 &axis) {
    double threshold = state.l * state.u;
    bool up = dot(spin, axis) >= threshold;
    std::int8_t x = up ? 1 : -1;
    DlmState next{threshold + (up ? 1.0 - state.l : state.l - 1.0), state.l};
    return {{x, up ? axis : -axis}, next};
}

MagnetOutput pseudo_random_step(const UnitVector3 &spin, const UnitVector3 &axis, RngStream &rng) {
    double r = rng.uniform(-1.0, 1.0);
    bool up = r <= dot(spin, axis);
    return {static_cast<std::int8_t>(up ? 1 : -1), up ? axis : -axis};
}

MagnetOutput threshold_step(const UnitVector3 &spin, const UnitVector3 &axis) {
    bool up = dot(spin, axis) >= 0.0;
    return {static_cast<std::int8_t>(up ? 1 : -1), up ? axis : -axis};
}

double max_delay(const UnitVector3 &spin, const UnitVector3 &axis, double d, double t0) {
    if (d == 0.0) {
        return t0;
    }
    return t0 * std::pow(cross_norm(spin, axis), d);
}

double time_tag(const UnitVector3 &spin, const UnitVector3 &axis, double d, double t0, RngStream &rng) {
    return max_delay(spin, axis, d, t0) * rng.uniform();
}

}  // namespace eprb::sim
