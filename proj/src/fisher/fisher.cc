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

#include "eprb/fisher/fisher.h"

#include <cmath>
#include <numbers>
#include <string>

#include "eprb/core/error.h"
#include "eprb/core/rng.h"

namespace eprb::fisher {

namespace {

constexpr double kPi = std::numbers::pi;

double derivative(const AngleFn &f, double theta, double step) {
    return (f(theta + step) - f(theta - step)) / (2 * step);
}

}  // namespace

double fisher_single(const AngleFn &p, double theta, double step) {
    double v = p(theta);
    if (!(v > 0 && v < 1)) {
        throw DegenerateError("p(theta) = " + std::to_string(v) + " leaves no room for both outcomes");
    }
    double dp = derivative(p, theta, step);
    return dp * dp / (v * (1 - v));
}

double fisher_pair(const AngleFn &e, double theta, double step) {
    double v = e(theta);
    if (!(std::abs(v) < 1)) {
        throw DegenerateError("|E(theta)| = " + std::to_string(std::abs(v)) + " makes the pair law degenerate");
    }
    double de = derivative(e, theta, step);
    return de * de / (1 - v * v);
}

double fisher_variance(const std::function<double(double)> &info, std::span<const double> theta_grid) {
    if (theta_grid.empty()) {
        return 0.0;
    }
    double mean = 0;
    std::vector<double> values;
    values.reserve(theta_grid.size());
    for (double t : theta_grid) {
        values.push_back(info(t));
        mean += values.back();
    }
    mean /= static_cast<double>(values.size());
    double var = 0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    return var / static_cast<double>(values.size());
}

double DichotomicLaw::operator()(double theta) const {
    if (family == Family::single) {
        double c = std::cos(k * theta / 2 + b);
        return c * c;
    }
    return std::sin(k * theta + b);
}

double DichotomicLaw::information() const {
    return static_cast<double>(k) * k;
}

FisherMinimum minimize_over_family(Family family, double period, int k_max) {
    if (k_max < 1) {
        throw ConfigError("k_max must be at least 1");
    }
    if (!(period > 0)) {
        throw ConfigError("period must be positive");
    }
    // Interior grid: avoids the points where p hits 0 or 1 for small k.
    std::vector<double> grid;
    for (int i = 0; i < 64; i++) {
        grid.push_back(0.013 + 2 * kPi * (i + 0.37) / 64);
    }
    FisherMinimum out;
    bool found = false;
    for (int k = 1; k <= k_max; k++) {
        DichotomicLaw law{family, k, family == Family::single ? 0.0 : -kPi / 2};
        Candidate c;
        c.k = k;
        c.periodic = true;
        for (double t : grid) {
            if (std::abs(law(t + period) - law(t)) > 1e-9) {
                c.periodic = false;
            }
        }
        std::vector<double> info;
        for (double t : grid) {
            try {
                info.push_back(family == Family::single ? fisher_single(law, t) : fisher_pair(law, t));
            } catch (const DegenerateError &) {
            }
        }
        double mean = 0;
        for (double v : info) {
            mean += v;
        }
        mean /= static_cast<double>(info.size());
        double var = 0;
        for (double v : info) {
            var += (v - mean) * (v - mean);
        }
        c.information = mean;
        c.spread = var / static_cast<double>(info.size());
        out.candidates.push_back(c);
        if (c.periodic && (!found || c.information < out.information)) {
            out.law = law;
            out.information = c.information;
            found = true;
        }
    }
    if (!found) {
        throw ConfigError("no member with k <= " + std::to_string(k_max) + " has period " + std::to_string(period));
    }
    return out;
}

double log_likelihood_ratio(const AngleFn &p, double theta, double frequency, double eps) {
    double p0 = p(theta);
    double p1 = p(theta + eps);
    double l = 0;
    if (frequency > 0) {
        l += frequency * std::log(p1 / p0);
    }
    if (frequency < 1) {
        l += (1 - frequency) * std::log((1 - p1) / (1 - p0));
    }
    return l;
}

Curvature likelihood_curvature(const AngleFn &p, double theta, std::uint64_t n, std::uint64_t seed, double eps) {
    if (n == 0) {
        throw ConfigError("need at least one draw");
    }
    double p0 = p(theta);
    RngStream rng(seed, 0);
    Curvature out;
    out.n = n;
    for (std::uint64_t i = 0; i < n; i++) {
        out.m += rng.uniform() < p0;
    }
    double f = static_cast<double>(out.m) / static_cast<double>(n);
    double up = log_likelihood_ratio(p, theta, f, eps);
    double down = log_likelihood_ratio(p, theta, f, -eps);
    out.second_order = (up + down) / (2 * eps * eps);
    out.expected = -fisher_single(p, theta) / 2;
    return out;
}

}  // namespace eprb::fisher
