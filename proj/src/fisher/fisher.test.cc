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

#include "eprb/core/error.h"
#include "eprb/oracle/oracle.h"
#include "gtest/gtest.h"

using namespace eprb;
using namespace eprb::fisher;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(fisher_single, examples) {
    EXPECT_NEAR(fisher_single([](double t) { return std::pow(std::cos(t / 2), 2); }, kPi / 2), 1.0, 1e-8);
    EXPECT_NEAR(fisher_single([](double t) { return std::pow(std::cos(t), 2); }, kPi / 4), 4.0, 1e-8);
    EXPECT_EQ(fisher_single([](double) { return 0.3; }, 1.0), 0.0);
}

TEST(fisher_single, matches_analytic_form) {
    // p = cos^2 g with g = a theta + b has I_F = 4 a^2.
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        for (double b : {0.0, 0.2}) {
            for (double t : oracle::linear_grid(0.1, 1.3, 7)) {
                auto p = [&](double x) { return std::pow(std::cos(a * x + b), 2); };
                double v = p(t);
                if (v < 1e-3 || v > 1 - 1e-3) {
                    continue;
                }
                EXPECT_NEAR(fisher_single(p, t), 4 * a * a, 1e-6) << a << " " << b << " " << t;
            }
        }
    }
}

TEST(fisher_single, degenerate) {
    EXPECT_THROW(fisher_single([](double) { return 1.0; }, 0.3), DegenerateError);
    EXPECT_THROW(fisher_single([](double t) { return std::pow(std::cos(t / 2), 2); }, 0.0), DegenerateError);
}

TEST(fisher_pair, examples) {
    for (double t : oracle::linear_grid(0.1, kPi - 0.1, 11)) {
        EXPECT_NEAR(fisher_pair([](double x) { return -std::cos(x); }, t), 1.0, 1e-6);
    }
    for (double t : oracle::linear_grid(0.1, kPi / 2 - 0.1, 7)) {
        EXPECT_NEAR(fisher_pair([](double x) { return -std::cos(2 * x); }, t), 4.0, 1e-6);
    }
    EXPECT_EQ(fisher_pair([](double) { return 0.0; }, 0.7), 0.0);
    EXPECT_THROW(fisher_pair([](double x) { return -std::cos(x); }, 0.0), DegenerateError);
}

TEST(fisher_pair, constant_over_family) {
    auto grid = oracle::linear_grid(0.2, 1.2, 41);
    for (double c : {0.25, 1.0, 2.0}) {
        for (double b : {0.0, 0.4}) {
            auto e = [&](double x) { return std::sin(x * std::sqrt(c) + b); };
            double var = fisher_variance([&](double t) { return fisher_pair(e, t); }, grid);
            EXPECT_LT(var, 1e-10) << c << " " << b;
            EXPECT_NEAR(fisher_pair(e, 0.5), c, 1e-6);
        }
    }
}

TEST(fisher_pair, sawtooth_is_not_in_the_family) {
    // The d = 0 sawtooth has I_F that varies with theta.
    auto saw = [](double t) { return *oracle::closed_form_E(oracle::Response::deterministic, sim::ParticleKind::spin, 0, t); };
    auto grid = oracle::linear_grid(0.3, 2.8, 21);
    EXPECT_GT(fisher_variance([&](double t) { return fisher_pair(saw, t); }, grid), 1e-3);
}

TEST(minimize_over_family, spin_pair) {
    auto r = minimize_over_family(Family::pair, 2 * kPi);
    EXPECT_EQ(r.law.k, 1);
    EXPECT_NEAR(r.information, 1.0, 1e-6);
    EXPECT_NEAR(r.law(0.0), -1.0, 1e-15);
    for (double t : oracle::linear_grid(0, kPi, 13)) {
        EXPECT_NEAR(r.law(t), -std::cos(t), 1e-12);
    }
    ASSERT_EQ(r.candidates.size(), 8u);
    for (const auto &c : r.candidates) {
        EXPECT_NEAR(c.information, c.k * c.k, 1e-5);
        EXPECT_LT(c.spread, 1e-8);
        EXPECT_TRUE(c.periodic);
    }
}

TEST(minimize_over_family, single_magnet) {
    auto r = minimize_over_family(Family::single, 2 * kPi);
    EXPECT_EQ(r.law.k, 1);
    EXPECT_EQ(r.law.b, 0.0);
    for (double t : oracle::linear_grid(0, kPi, 13)) {
        EXPECT_NEAR(r.law(t), (1 + std::cos(t)) / 2, 1e-12);
    }
}

TEST(minimize_over_family, photon_period) {
    auto pair = minimize_over_family(Family::pair, kPi);
    EXPECT_EQ(pair.law.k, 2);
    EXPECT_NEAR(pair.information, 4.0, 1e-6);
    for (double t : oracle::linear_grid(0, kPi, 13)) {
        EXPECT_NEAR(pair.law(t), -std::cos(2 * t), 1e-12);
    }
    EXPECT_FALSE(pair.candidates[0].periodic);
    auto single = minimize_over_family(Family::single, kPi);
    EXPECT_EQ(single.law.k, 2);
    EXPECT_NEAR(single.law(0.3), std::pow(std::cos(0.3), 2), 1e-12);
    EXPECT_THROW(minimize_over_family(Family::pair, kPi, 1), ConfigError);
    EXPECT_THROW(minimize_over_family(Family::pair, kPi, 0), ConfigError);
}

TEST(likelihood, ratio_vanishes_at_zero_shift) {
    auto p = [](double t) { return std::pow(std::cos(t / 2), 2); };
    EXPECT_EQ(log_likelihood_ratio(p, 1.0, 0.3, 0.0), 0.0);
    EXPECT_LT(log_likelihood_ratio(p, 1.0, p(1.0), 0.01), 0.0);
}

TEST(likelihood, curvature_is_half_the_information) {
    auto p = [](double t) { return std::pow(std::cos(t / 2), 2); };
    for (double t : {0.7, 1.5, 2.2}) {
        auto c = likelihood_curvature(p, t, 10000, 17);
        EXPECT_EQ(c.n, 10000u);
        EXPECT_NEAR(c.expected, -0.5, 1e-8);
        EXPECT_NEAR(c.second_order / c.expected, 1.0, 0.1) << t;
    }
}
