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

#ifndef EPRB_ORACLE_ORACLE_H
#define EPRB_ORACLE_ORACLE_H

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "eprb/core/unit_vector.h"
#include "eprb/sim/records.h"

namespace eprb::oracle {

/// Single-particle response averaged over: x = sign(S.a), or the average
/// (1 + x S.a)/2 of the pseudo-random magnet.
enum class Response : std::uint8_t {
    deterministic,
    pseudo_random,
};

/// Coincidence weight used in the N -> infinity correlation.
enum class WeightKind : std::uint8_t {
    /// Leading order in W: 2W / max(T1, T2).
    vanishing_window,
    /// Continuous time tags, window W.
    continuum,
    /// Tags discretized with tick tau and window k = ceil(W / tau) ticks.
    discretized,
    /// Every pair counts (W >= T0).
    none,
};

/// Number of integer pairs (k1, k2), 1 <= ki <= Ki, with |k1 - k2| < k.
std::int64_t pair_count(std::int64_t k1_max, std::int64_t k2_max, std::int64_t k);

/// Probability that two tags uniform on [0, T1] and [0, T2] are closer than W.
double weight_w(double t1, double t2, double window);

/// C(K1, K2, k) / (K1 K2) with Ki = max(1, ceil(Ti / tau)), k = ceil(W / tau).
double discretized_density(double t1, double t2, double tau, double window);

struct OracleSpec {
    Response response = Response::deterministic;
    sim::ParticleKind kind = sim::ParticleKind::spin;
    double d = 3.0;
    WeightKind weight = WeightKind::vanishing_window;
    double window = 0.0;
    double tau = 0.001;
    /// Relative tolerance of each adaptive integral.
    double tolerance = 1e-8;

    void validate() const;
};

/// N -> infinity correlation for analyzers separated by theta (spin: angle
/// between a1 and a2; photon: angle between the polarizers). Throws
/// QuadratureError when the adaptive rule misses its tolerance.
double expectation_quadrature(const OracleSpec &spec, double theta);

/// Same, with the angle taken from two settings (photon settings in doubled form).
double expectation_quadrature(const OracleSpec &spec, const UnitVector3 &a1, const UnitVector3 &a2);

/// Whether closed_form_E knows (response, kind, d).
bool closed_form_supported(Response response, sim::ParticleKind kind, int d);

/// Elementary closed form of the vanishing-window correlation; absent for
/// combinations outside the catalog.
std::optional<double> closed_form_E(Response response, sim::ParticleKind kind, int d, double theta);

struct SPoint {
    double theta = 0.0;
    double s = 0.0;
};

struct SCurve {
    std::vector<SPoint> points;
    double max_s = 0.0;
    double theta_at_max = 0.0;
};

/// S(theta) = 3 E(theta) - E(3 theta), the CHSH function for settings with
/// a.c = b.c = b.d = cos(theta) and a.d = cos(3 theta).
SCurve s_curve(const std::function<double(double)> &e, std::span<const double> theta_grid);

SCurve s_curve(const OracleSpec &spec, std::span<const double> theta_grid);

/// n equispaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace eprb::oracle

#endif
