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

#include "eprb/analysis/coincidence.h"
#include "eprb/core/error.h"
#include "eprb/oracle/oracle.h"

namespace eprb::oracle {

std::int64_t pair_count(std::int64_t k1_max, std::int64_t k2_max, std::int64_t k) {
    if (k1_max < 1 || k2_max < 1 || k < 1) {
        throw ConfigError("pair_count needs K1, K2, k >= 1");
    }
    std::int64_t k0 = std::min({k1_max, k2_max, k});
    std::int64_t k12 = std::min(k1_max, k2_max);
    std::int64_t big = k12 - std::max<std::int64_t>(0, std::max(k1_max, k2_max) - k);
    return (2 * k0 - 1) * k12 - k0 * (k0 - 1) / 2 -
           std::max<std::int64_t>(0, (big - 1) * std::max<std::int64_t>(0, big) / 2) +
           std::max<std::int64_t>(0, k - k0) * k0 - std::max<std::int64_t>(0, k * k12 - k1_max * k2_max);
}

double weight_w(double t1, double t2, double window) {
    if (!(window > 0)) {
        return 0.0;
    }
    if (t1 <= 0 && t2 <= 0) {
        return 1.0;
    }
    if (t1 <= 0) {
        return std::min(1.0, window / t2);
    }
    if (t2 <= 0) {
        return std::min(1.0, window / t1);
    }
    double a = std::min(t1, t2);
    double b = std::max(t1, t2);
    double w = window;
    if (w >= b) {
        return 1.0;
    }
    double r;
    if (a + w <= b) {
        r = w <= a ? w * (2 - w / (2 * a)) / b : (w + a / 2) / b;
    } else {
        double up = (b - w) * (b - w);
        double down = w <= a ? (a - w) * (a - w) : 0.0;
        r = 1 - (up + down) / (2 * a * b);
    }
    return std::clamp(r, 0.0, 1.0);
}

double discretized_density(double t1, double t2, double tau, double window) {
    std::int64_t k1 = std::max<std::int64_t>(1, analysis::discretize(t1, tau));
    std::int64_t k2 = std::max<std::int64_t>(1, analysis::discretize(t2, tau));
    std::int64_t k = analysis::window_ticks(window, tau);
    return static_cast<double>(pair_count(k1, k2, k)) / (static_cast<double>(k1) * static_cast<double>(k2));
}

}  // namespace eprb::oracle
