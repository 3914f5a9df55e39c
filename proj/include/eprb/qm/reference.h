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

#ifndef EPRB_QM_REFERENCE_H
#define EPRB_QM_REFERENCE_H

#include <cstdint>
#include <functional>

#include "eprb/core/unit_vector.h"

namespace eprb::qm {

/// Case I (singlet / entangled) or Case II (product state).
enum class QuantumCase : std::uint8_t {
    singlet,
    product,
};

struct Expectations {
    double e1 = 0.0;
    double e2 = 0.0;
    double e = 0.0;
};

/// P(x, y | a1, a2) = (1 - x y a1.a2) / 4.
double singlet_pair_probability(int x, int y, const UnitVector3 &a1, const UnitVector3 &a2);

/// P(x, y | a1, a2, S1, S2) = (1 + x a1.S1)/2 * (1 + y a2.S2)/2.
double product_pair_probability(int x, int y, const UnitVector3 &a1, const UnitVector3 &a2, const UnitVector3 &s1,
                                const UnitVector3 &s2);

/// (0, 0, -a1.a2).
Expectations singlet_expectations(const UnitVector3 &a1, const UnitVector3 &a2);

/// (a1.S1, a2.S2, (a1.S1)(a2.S2)).
Expectations product_expectations(const UnitVector3 &a1, const UnitVector3 &a2, const UnitVector3 &s1,
                                  const UnitVector3 &s2);

/// Photon polarization table. theta1, theta2 are the analyzer-to-polarization
/// angles of each photon and theta12 the analyzer-to-analyzer angle.
Expectations photon_expectations(QuantumCase c, double theta1, double theta2, double theta12);

using CorrelationFn = std::function<double(const UnitVector3 &, const UnitVector3 &)>;

/// S = E(a,c) - E(a,d) + E(b,c) + E(b,d).
double chsh(const CorrelationFn &e, const UnitVector3 &a, const UnitVector3 &b, const UnitVector3 &c,
            const UnitVector3 &d);

/// cos 3 theta - 3 cos theta.
double s_of_theta_singlet(double theta);

/// (1 + x sqrt(3) a.S) / 2, one factor of the sphere decomposition of the
/// singlet pair probability.
double appendix_factor(int x, const UnitVector3 &a, const UnitVector3 &s);

/// Integrates (1 + sqrt3 x a.S)/2 (1 - sqrt3 y b.S)/2 over the unit sphere
/// with normalized measure, using a Gauss-Legendre rule in cos(theta) with
/// quad_points nodes times a trapezoid rule in phi with 2 * quad_points
/// nodes. The result is checked against a rule of twice the size; a
/// difference above 1e-9 throws QuadratureError.
double appendix_decomposition_check(const UnitVector3 &a, const UnitVector3 &b, int x, int y, int quad_points = 16);

/// Largest value of appendix_factor(x, a, S) over the quadrature nodes and the
/// point S = x a.
double appendix_factor_max(int x, const UnitVector3 &a, int quad_points = 16);

/// Correlation as a function of two in-plane analyzer angles.
using PlanarCorrelationFn = std::function<double(double, double)>;

struct PlanarChsh {
    double value = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    /// Largest S seen on the grid before refinement.
    double grid_value = 0.0;
};

/// Maximum of S over four in-plane angles. A full grid with the given step
/// (degrees) is scanned, then the best point is refined by coordinate-wise
/// Brent searches.
PlanarChsh planar_chsh_max(const PlanarCorrelationFn &e, double step_degrees = 1.0, bool refine = true);

}  // namespace eprb::qm

#endif
