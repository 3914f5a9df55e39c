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

#ifndef EPRB_FISHER_FISHER_H
#define EPRB_FISHER_FISHER_H

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace eprb::fisher {

using AngleFn = std::function<double(double)>;

/// Default central-difference step for derivatives in theta.
inline constexpr double kDerivativeStep = 1e-5;

/// I_F = p'^2 / (p (1 - p)) for a dichotomic outcome with P(+1 | theta) = p.
/// Throws DegenerateError when p(theta) is 0 or 1.
double fisher_single(const AngleFn &p, double theta, double step = kDerivativeStep);

/// I_F = E'^2 / (1 - E^2) for the pair law P(x, y | theta) = (1 + x y E) / 4.
/// Throws DegenerateError when |E(theta)| = 1.
double fisher_pair(const AngleFn &e, double theta, double step = kDerivativeStep);

/// Population variance of an information function over a theta grid.
double fisher_variance(const std::function<double(double)> &info, std::span<const double> theta_grid);

enum class Family : std::uint8_t {
    /// One magnet: p(theta) = cos^2(k theta / 2 + b).
    single,
    /// A pair: E(theta) = sin(k theta + b).
    pair,
};

/// One member of a family. For the single family the law is p(theta); for the
/// pair family it is E(theta).
struct DichotomicLaw {
    Family family = Family::single;
    int k = 1;
    double b = 0.0;

    double operator()(double theta) const;
    /// Exact I_F of the member, k^2.
    double information() const;
};

struct Candidate {
    int k = 0;
    /// I_F evaluated numerically on the grid (mean).
    double information = 0.0;
    /// Variance of I_F over the grid.
    double spread = 0.0;
    bool periodic = false;
};

struct FisherMinimum {
    DichotomicLaw law;
    double information = 0.0;
    /// Every k in [1, k_max] with its numerical I_F and period check.
    std::vector<Candidate> candidates;
};

/// Searches k = 1..k_max for the member with the smallest I_F whose law has
/// the given period. The phase is fixed by p(0) = 1 (single) or E(0) = -1
/// (pair).
FisherMinimum minimize_over_family(Family family, double period, int k_max = 8);

/// L / N = f ln(p(theta + eps) / p(theta)) + (1 - f) ln((1 - p(theta + eps)) / (1 - p(theta)))
/// for an observed frequency f = m / N of +1 outcomes.
double log_likelihood_ratio(const AngleFn &p, double theta, double frequency, double eps);

struct Curvature {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    /// Second-order coefficient of L / N in eps.
    double second_order = 0.0;
    /// -I_F / 2.
    double expected = 0.0;
};

/// Draws n Bernoulli outcomes from p(theta) and extracts the eps^2 coefficient
/// of the log-likelihood ratio by a symmetric difference with step eps.
Curvature likelihood_curvature(const AngleFn &p, double theta, std::uint64_t n, std::uint64_t seed,
                               double eps = 1e-3);

}  // namespace eprb::fisher

#endif
