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

#ifndef EPRB_CORE_RNG_H
#define EPRB_CORE_RNG_H

#include <cstdint>
#include <limits>
#include <random>

#include "eprb/core/unit_vector.h"

namespace eprb {

/// Stream identifiers used by one simulation run. A sweep point p uses
/// stream_base = kStreamsPerRun * p so that no two runs share a stream.
enum class StreamRole : std::uint64_t {
    source = 0,
    station1 = 1,
    station2 = 2,
};
inline constexpr std::uint64_t kStreamsPerRun = 3;

/// A deterministic random stream keyed by (seed, stream_id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq from the four
/// 32-bit halves of the key; both are fully specified by the standard, and the
/// conversions below avoid the implementation-defined std distributions, so a
/// given key reproduces the same sequence bit for bit on every platform.
///
/// A stream is single-owner mutable state: move it between threads freely but
/// never share one concurrently.
class RngStream {
   public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t stream_id() const noexcept {
        return stream_id_;
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()() {
        return engine_();
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }
    /// Uniform integer in [0, n) by 128-bit multiply-shift; n must be > 0.
    std::uint64_t index(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

   private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// phi uniform on [0, 2pi), cos(theta) uniform on [-1, 1].
UnitVector3 sample_uniform_sphere(RngStream &rng);

/// Uniform direction on the unit circle of the xy-plane.
UnitVector3 sample_uniform_circle(RngStream &rng);

}  // namespace eprb

#endif
