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

#include "eprb/core/rng.h"

#include <cmath>
#include <numbers>

namespace eprb {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream_id),
        static_cast<std::uint32_t>(stream_id >> 32),
    };
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {
}

UnitVector3 sample_uniform_sphere(RngStream &rng) {
    double phi = 2 * std::numbers::pi * rng.uniform();
    double cos_theta = rng.uniform(-1.0, 1.0);
    double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    return UnitVector3::normalized(sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta);
}

UnitVector3 sample_uniform_circle(RngStream &rng) {
    return UnitVector3::in_plane(2 * std::numbers::pi * rng.uniform());
}

}  // namespace eprb
