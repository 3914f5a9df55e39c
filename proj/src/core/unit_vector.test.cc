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

#include "eprb/core/unit_vector.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "eprb/core/error.h"
#include "eprb/core/rng.h"

using namespace eprb;

TEST(unit_vector, normalizes) {
    auto v = UnitVector3::normalized(3, 0, 4);
    EXPECT_DOUBLE_EQ(v.x(), 0.6);
    EXPECT_DOUBLE_EQ(v.z(), 0.8);
    EXPECT_NEAR(dot(v, v), 1.0, 1e-12);
}

TEST(unit_vector, zero_vector_is_an_error) {
    EXPECT_THROW(UnitVector3::normalized(0, 0, 0), ConfigError);
    EXPECT_THROW(UnitVector3::normalized(NAN, 0, 1), ConfigError);
}

TEST(unit_vector, dot_examples) {
    auto u = UnitVector3::normalized(1, 2, 3);
    EXPECT_NEAR(dot(u, u), 1.0, 1e-12);
    EXPECT_NEAR(dot(u, -u), -1.0, 1e-12);
    auto a = UnitVector3::normalized(1, 0, 0);
    auto b = UnitVector3::normalized(0, 1, 0);
    EXPECT_NEAR(dot(a, b), 0.0, 1e-12);
}

TEST(unit_vector, cross_norm_examples) {
    auto a = UnitVector3::normalized(1, 0, 0);
    auto b = UnitVector3::normalized(0, 0, 1);
    EXPECT_DOUBLE_EQ(cross_norm(a, b), 1.0);
    EXPECT_DOUBLE_EQ(cross_norm(a, a), 0.0);
    // u.v = 0.6 -> |u x v| = 0.8
    auto c = UnitVector3::normalized(0.6, 0.8, 0);
    EXPECT_NEAR(dot(a, c), 0.6, 1e-15);
    EXPECT_NEAR(cross_norm(a, c), 0.8, 1e-15);
}

TEST(unit_vector, pythagorean_identity_on_random_pairs) {
    RngStream rng(7, 0);
    for (int i = 0; i < 10000; i++) {
        auto u = sample_uniform_sphere(rng);
        auto v = sample_uniform_sphere(rng);
        double c = dot(u, v);
        double s = cross_norm(u, v);
        ASSERT_NEAR(c * c + s * s, 1.0, 1e-10);
        ASSERT_LE(std::abs(c), 1.0 + 1e-12);
    }
}

TEST(unit_vector, angle_between_is_accurate_near_zero) {
    auto a = UnitVector3::in_plane(0.0);
    auto b = UnitVector3::in_plane(1e-9);
    EXPECT_NEAR(angle_between(a, b), 1e-9, 1e-20);
    EXPECT_NEAR(angle_between(a, -a), std::numbers::pi, 1e-15);
}

TEST(polarization_angle, reduced_modulo_pi) {
    EXPECT_NEAR(PolarizationAngle(std::numbers::pi + 0.25).radians(), 0.25, 1e-15);
    EXPECT_NEAR(PolarizationAngle(-0.25).radians(), std::numbers::pi - 0.25, 1e-15);
    EXPECT_EQ(PolarizationAngle(std::numbers::pi).radians(), 0.0);
    EXPECT_NEAR(PolarizationAngle(0.1).orthogonal().radians(), 0.1 + std::numbers::pi / 2, 1e-15);
}

TEST(polarization_angle, doubled_form) {
    PolarizationAngle a(0.3);
    PolarizationAngle b(1.0);
    EXPECT_NEAR(dot(doubled(a), doubled(b)), std::cos(2 * (0.3 - 1.0)), 1e-14);
    // Orthogonal polarizations are antipodal.
    EXPECT_NEAR(dot(doubled(a), doubled(a.orthogonal())), -1.0, 1e-14);
    EXPECT_NEAR(polarization_of(doubled(b)).radians(), 1.0, 1e-14);
}
