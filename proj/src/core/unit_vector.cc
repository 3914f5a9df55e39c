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
#include <sstream>

#include "eprb/core/error.h"

namespace eprb {

UnitVector3 UnitVector3::normalized(double x, double y, double z) {
    double n = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(n) || n == 0.0) {
        std::ostringstream msg;
        msg << "cannot normalize vector (" << x << ", " << y << ", " << z << ")";
        throw ConfigError(msg.str());
    }
    return UnitVector3(x / n, y / n, z / n);
}

UnitVector3 UnitVector3::from_unit_components(double x, double y, double z) {
    double n = std::sqrt(x * x + y * y + z * z);
    if (!(std::abs(n - 1.0) <= 1e-12)) {
        std::ostringstream msg;
        msg << "(" << x << ", " << y << ", " << z << ") is not a unit vector";
        throw ConfigError(msg.str());
    }
    return UnitVector3(x, y, z);
}

UnitVector3 UnitVector3::from_spherical(double theta, double phi) {
    double s = std::sin(theta);
    return normalized(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
}

UnitVector3 UnitVector3::in_plane(double angle) {
    return normalized(std::cos(angle), std::sin(angle), 0.0);
}

double dot(const UnitVector3 &u, const UnitVector3 &v) noexcept {
    return u.x() * v.x() + u.y() * v.y() + u.z() * v.z();
}

double cross_norm(const UnitVector3 &u, const UnitVector3 &v) noexcept {
    double c = dot(u, v);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

double angle_between(const UnitVector3 &u, const UnitVector3 &v) noexcept {
    double cx = u.y() * v.z() - u.z() * v.y();
    double cy = u.z() * v.x() - u.x() * v.z();
    double cz = u.x() * v.y() - u.y() * v.x();
    return std::atan2(std::hypot(cx, cy, cz), dot(u, v));
}

PolarizationAngle::PolarizationAngle(double radians) {
    if (!std::isfinite(radians)) {
        throw ConfigError("polarization angle must be finite");
    }
    double r = std::fmod(radians, std::numbers::pi);
    if (r < 0) {
        r += std::numbers::pi;
    }
    if (r >= std::numbers::pi) {
        r = 0.0;
    }
    angle_ = r;
}

PolarizationAngle PolarizationAngle::orthogonal() const {
    return PolarizationAngle(angle_ + std::numbers::pi / 2);
}

UnitVector3 doubled(PolarizationAngle angle) {
    return UnitVector3::in_plane(2 * angle.radians());
}

PolarizationAngle polarization_of(const UnitVector3 &v) {
    return PolarizationAngle(0.5 * std::atan2(v.y(), v.x()));
}

}  // namespace eprb
