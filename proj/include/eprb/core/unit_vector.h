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

#ifndef EPRB_CORE_UNIT_VECTOR_H
#define EPRB_CORE_UNIT_VECTOR_H

#include <array>
#include <numbers>

namespace eprb {

/// A direction in three dimensions. The norm is 1 to within 1e-12; the only
/// way to obtain one is through a normalizing factory, so a zero or non-finite
/// input is rejected with ConfigError instead of being patched up.
class UnitVector3 {
   public:
    /// The z axis.
    constexpr UnitVector3() = default;

    static UnitVector3 normalized(double x, double y, double z);
    /// Keeps the components bit for bit; they must already have unit norm
    /// (within 1e-12).
    static UnitVector3 from_unit_components(double x, double y, double z);
    /// (sin(theta) cos(phi), sin(theta) sin(phi), cos(theta)).
    static UnitVector3 from_spherical(double theta, double phi);
    /// Unit vector in the xy-plane at the given azimuth.
    static UnitVector3 in_plane(double angle);

    double x() const noexcept {
        return x_;
    }
    double y() const noexcept {
        return y_;
    }
    double z() const noexcept {
        return z_;
    }
    std::array<double, 3> components() const noexcept {
        return {x_, y_, z_};
    }

    UnitVector3 operator-() const noexcept {
        return UnitVector3(-x_, -y_, -z_);
    }
    bool operator==(const UnitVector3 &other) const noexcept = default;

   private:
    constexpr UnitVector3(double x, double y, double z) noexcept : x_(x), y_(y), z_(z) {
    }

    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 1.0;
};

double dot(const UnitVector3 &u, const UnitVector3 &v) noexcept;

/// |u x v| evaluated as sqrt(max(0, 1 - (u.v)^2)).
double cross_norm(const UnitVector3 &u, const UnitVector3 &v) noexcept;

/// Angle between two directions, in [0, pi].
double angle_between(const UnitVector3 &u, const UnitVector3 &v) noexcept;

/// Linear polarization direction. Polarization is only defined modulo pi, so
/// the stored angle is always reduced into [0, pi).
class PolarizationAngle {
   public:
    constexpr PolarizationAngle() = default;
    explicit PolarizationAngle(double radians);

    double radians() const noexcept {
        return angle_;
    }

    /// The orthogonal polarization (angle + pi/2, reduced).
    PolarizationAngle orthogonal() const;

    bool operator==(const PolarizationAngle &other) const noexcept = default;

   private:
    double angle_ = 0.0;
};

/// Maps a polarization angle xi onto the unit circle at azimuth 2 xi. Under this
/// map, orthogonal polarizations become antipodal vectors and
/// dot(doubled(a), doubled(b)) = cos 2(a - b), so the photon models reuse the
/// spin machinery restricted to a great circle.
UnitVector3 doubled(PolarizationAngle angle);

/// Inverse of doubled() for vectors in the xy-plane.
PolarizationAngle polarization_of(const UnitVector3 &v);

}  // namespace eprb

#endif
