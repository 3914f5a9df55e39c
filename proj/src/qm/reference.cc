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

#include "eprb/qm/reference.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "eprb/core/error.h"

namespace eprb::qm {

double singlet_pair_probability(int x, int y, const UnitVector3 &a1, const UnitVector3 &a2) {
    return (1.0 - x * y * dot(a1, a2)) / 4.0;
}

double product_pair_probability(int x, int y, const UnitVector3 &a1, const UnitVector3 &a2, const UnitVector3 &s1,
                                const UnitVector3 &s2) {
    return (1.0 + x * dot(a1, s1)) / 2.0 * (1.0 + y * dot(a2, s2)) / 2.0;
}

Expectations singlet_expectations(const UnitVector3 &a1, const UnitVector3 &a2) {
    return {0.0, 0.0, -dot(a1, a2)};
}

Expectations product_expectations(const UnitVector3 &a1, const UnitVector3 &a2, const UnitVector3 &s1,
                                  const UnitVector3 &s2) {
    double e1 = dot(a1, s1);
    double e2 = dot(a2, s2);
    return {e1, e2, e1 * e2};
}

Expectations photon_expectations(QuantumCase c, double theta1, double theta2, double theta12) {
    if (c == QuantumCase::singlet) {
        return {0.0, 0.0, -std::cos(2 * theta12)};
    }
    double e1 = std::cos(2 * theta1);
    double e2 = std::cos(2 * theta2);
    return {e1, e2, e1 * e2};
}

double chsh(const CorrelationFn &e, const UnitVector3 &a, const UnitVector3 &b, const UnitVector3 &c,
            const UnitVector3 &d) {
    return e(a, c) - e(a, d) + e(b, c) + e(b, d);
}

double s_of_theta_singlet(double theta) {
    return std::cos(3 * theta) - 3 * std::cos(theta);
}

double appendix_factor(int x, const UnitVector3 &a, const UnitVector3 &s) {
    return (1.0 + x * std::numbers::sqrt3 * dot(a, s)) / 2.0;
}

namespace {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
    GaussRule r;
    for (int i = 1; i <= n; i++) {
        double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; iter++) {
            double p = std::legendre(n, x);
            double q = std::legendre(n - 1, x);
            dp = n * (x * p - q) / (x * x - 1);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        double p = std::legendre(n, x);
        double q = std::legendre(n - 1, x);
        dp = n * (x * p - q) / (x * x - 1);
        r.nodes.push_back(x);
        r.weights.push_back(2.0 / ((1 - x * x) * dp * dp));
    }
    return r;
}

template <typename F>
double sphere_average(F f, int n) {
    GaussRule g = gauss_legendre(n);
    int m = 2 * n;
    double total = 0;
    for (int i = 0; i < n; i++) {
        double z = g.nodes[i];
        double s = std::sqrt(std::max(0.0, 1 - z * z));
        double ring = 0;
        for (int j = 0; j < m; j++) {
            double phi = 2 * std::numbers::pi * j / m;
            ring += f(UnitVector3::normalized(s * std::cos(phi), s * std::sin(phi), z));
        }
        total += g.weights[i] * ring / m;
    }
    return total / 2.0;
}

}  // namespace

double appendix_decomposition_check(const UnitVector3 &a, const UnitVector3 &b, int x, int y, int quad_points) {
    if (quad_points < 2) {
        throw ConfigError("appendix quadrature needs at least 2 points");
    }
    auto f = [&](const UnitVector3 &s) {
        return (1.0 + x * std::numbers::sqrt3 * dot(a, s)) / 2.0 * (1.0 - y * std::numbers::sqrt3 * dot(b, s)) /
               2.0;
    };
    double coarse = sphere_average(f, quad_points);
    double fine = sphere_average(f, 2 * quad_points);
    if (std::abs(fine - coarse) > 1e-9) {
        throw QuadratureError("appendix quadrature did not converge: " + std::to_string(std::abs(fine - coarse)));
    }
    return fine;
}

double appendix_factor_max(int x, const UnitVector3 &a, int quad_points) {
    double best = appendix_factor(x, a, x > 0 ? a : -a);
    GaussRule g = gauss_legendre(quad_points);
    int m = 2 * quad_points;
    for (double z : g.nodes) {
        double s = std::sqrt(std::max(0.0, 1 - z * z));
        for (int j = 0; j < m; j++) {
            double phi = 2 * std::numbers::pi * j / m;
            best = std::max(best, appendix_factor(x, a, UnitVector3::normalized(s * std::cos(phi), s * std::sin(phi), z)));
        }
    }
    return best;
}

PlanarChsh planar_chsh_max(const PlanarCorrelationFn &e, double step_degrees, bool refine) {
    if (!(step_degrees > 0) || step_degrees > 90) {
        throw ConfigError("grid step must be in (0, 90] degrees");
    }
    const auto r = static_cast<std::size_t>(std::llround(360.0 / step_degrees));
    const double h = 2 * std::numbers::pi / static_cast<double>(r);
    std::vector<double> table(r * r);
    for (std::size_t i = 0; i < r; i++) {
        for (std::size_t j = 0; j < r; j++) {
            table[i * r + j] = e(i * h, j * h);
        }
    }
    // For fixed (a, b) the c and d terms separate.
    PlanarChsh best;
    best.value = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < r; a++) {
        for (std::size_t b = 0; b < r; b++) {
            const double *ra = &table[a * r];
            const double *rb = &table[b * r];
            double best_c = -std::numeric_limits<double>::infinity();
            double best_d = best_c;
            std::size_t ic = 0;
            std::size_t id = 0;
            for (std::size_t c = 0; c < r; c++) {
                double sc = ra[c] + rb[c];
                double sd = rb[c] - ra[c];
                if (sc > best_c) {
                    best_c = sc;
                    ic = c;
                }
                if (sd > best_d) {
                    best_d = sd;
                    id = c;
                }
            }
            if (best_c + best_d > best.value) {
                best = {best_c + best_d, a * h, b * h, ic * h, id * h, 0.0};
            }
        }
    }
    best.grid_value = best.value;
    if (!refine) {
        return best;
    }
    std::array<double, 4> x{best.a, best.b, best.c, best.d};
    auto s_of = [&](const std::array<double, 4> &v) {
        return e(v[0], v[2]) - e(v[0], v[3]) + e(v[1], v[2]) + e(v[1], v[3]);
    };
    double value = s_of(x);
    for (int sweep = 0; sweep < 50; sweep++) {
        double before = value;
        for (int k = 0; k < 4; k++) {
            auto neg = [&](double t) {
                auto y = x;
                y[k] = t;
                return -s_of(y);
            };
            auto [t, f] = boost::math::tools::brent_find_minima(neg, x[k] - h, x[k] + h, 52);
            if (-f > value) {
                x[k] = t;
                value = -f;
            }
        }
        if (value - before < 1e-15) {
            break;
        }
    }
    best.value = value;
    best.a = x[0];
    best.b = x[1];
    best.c = x[2];
    best.d = x[3];
    return best;
}

}  // namespace eprb::qm
