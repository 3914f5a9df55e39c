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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eprb/oracle/oracle.h"

namespace eprb::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

/// Polarizer angle folded onto [0, pi/2] (period pi, even).
double fold_photon(double theta) {
    return std::abs(std::remainder(theta, kPi));
}

std::optional<double> spin_deterministic(int d, double theta) {
    double c = std::cos(theta);
    switch (d) {
        case 0:
            return -1 + 2 * std::acos(std::clamp(c, -1.0, 1.0)) / kPi;
        case 3:
            return -c;
        case 5:
            return -(15 * c - 7 * c * c * c) / (11 - 3 * c * c);
        case 7:
            return -(6890 * c - 895 * std::cos(3 * theta) + 149 * std::cos(5 * theta)) /
                   (5774 + 280 * std::cos(2 * theta) + 90 * std::cos(4 * theta));
        default:
            return std::nullopt;
    }
}

std::optional<double> spin_pseudo_random(int d, double theta) {
    double c = std::cos(theta);
    switch (d) {
        case 0:
            return -c / 3;
        case 5: {
            double s = std::sin(theta);
            return -8 * c / (8 + 3 * s * s);
        }
        case 7:
            return -(2992 * c + 80 * std::cos(3 * theta)) /
                   (2887 + 140 * std::cos(2 * theta) + 45 * std::cos(4 * theta));
        case 9: {
            double c2 = c * c;
            return -(84026 * c + 8169 * std::cos(3 * theta) - 35 * std::cos(5 * theta)) /
                   (66393 + 21147 * std::cos(2 * theta) + 7770 * c2 * c2 - 3150 * c2 * c2 * c2);
        }
        default:
            return std::nullopt;
    }
}

std::optional<double> photon_deterministic(int d, double theta) {
    double t = fold_photon(theta);
    double c2 = std::cos(2 * t);
    switch (d) {
        case 0:
            return -1 + 2 * std::acos(std::clamp(c2, -1.0, 1.0)) / kPi;
        case 1: {
            double c = std::abs(std::cos(t));
            double s = std::abs(std::sin(t));
            if (s == 0 || c == 1) {
                return -1.0;
            }
            if (c == 0 || s == 1) {
                return 1.0;
            }
            double lc = std::log((1 + c) / (1 - c));
            double ls = std::log((1 + s) / (1 - s));
            return -(lc - ls) / (lc + ls);
        }
        case 2:
            return -c2;
        case 4:
            return -(3 * c2 - c2 * c2 * c2) / 2;
        default:
            return std::nullopt;
    }
}

std::optional<double> photon_pseudo_random(int d, double theta) {
    double t = fold_photon(theta);
    double c2 = std::cos(2 * t);
    double s2 = std::sin(2 * t);
    switch (d) {
        case 0:
            return -c2 / 2;
        case 2: {
            double log_term = s2 == 0 ? 0.0 : s2 * s2 / 2 * std::log(std::abs(std::tan(t)));
            return kPi / 4 * s2 * c2 - c2 + log_term;
        }
        case 4:
            return -c2;
        case 6:
            return -(43 * c2 + 5 * c2 * std::cos(4 * t)) / (38 + 10 * std::cos(4 * t));
        case 8:
            return -(53 * c2 + 7 * std::cos(6 * t)) / (39 + 21 * std::cos(4 * t));
        default:
            return std::nullopt;
    }
}

}  // namespace

bool closed_form_supported(Response response, sim::ParticleKind kind, int d) {
    return closed_form_E(response, kind, d, 0.5).has_value();
}

std::optional<double> closed_form_E(Response response, sim::ParticleKind kind, int d, double theta) {
    if (kind == sim::ParticleKind::spin) {
        return response == Response::deterministic ? spin_deterministic(d, theta) : spin_pseudo_random(d, theta);
    }
    return response == Response::deterministic ? photon_deterministic(d, theta) : photon_pseudo_random(d, theta);
}

}  // namespace eprb::oracle
