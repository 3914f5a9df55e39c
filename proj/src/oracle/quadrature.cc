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
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "eprb/analysis/coincidence.h"
#include "eprb/core/error.h"
#include "eprb/oracle/oracle.h"

namespace eprb::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
/// Analyzers closer than this to parallel or antiparallel count as exactly so
/// when the vanishing-window normalization diverges there.
constexpr double kParallelSnap = 1e-12;
using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Integral {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

/// Right ends of the pieces of [lo, hi] cut at the given points. Cuts closer
/// than a relative 1e-12 are merged: a jump inside a sliver would otherwise
/// drive the adaptive rule to full depth.
std::vector<double> pieces(double lo, double hi, std::vector<double> breaks) {
    std::sort(breaks.begin(), breaks.end());
    const double eps = 1e-12 * (hi - lo);
    std::vector<double> ends;
    double prev = lo;
    for (double b : breaks) {
        if (b - prev > eps && hi - b > eps) {
            ends.push_back(b);
            prev = b;
        }
    }
    ends.push_back(hi);
    return ends;
}

/// Adaptive Gauss-Kronrod over [lo, hi] split at the given interior points.
template <typename F>
Integral integrate(F f, double lo, double hi, const std::vector<double> &breaks, double tol) {
    Integral out;
    double prev = lo;
    for (double b : pieces(lo, hi, breaks)) {
        double err = 0;
        double l1 = 0;
        out.value += GaussKronrod::integrate(f, prev, b, 18, tol, &err, &l1);
        out.error += err;
        out.l1 += l1;
        prev = b;
    }
    return out;
}

/// Tanh-sinh over [lo, hi] split at the given interior points; tolerates
/// integrable endpoint singularities.
template <typename F>
Integral integrate_singular(F f, double lo, double hi, const std::vector<double> &breaks, double tol) {
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    Integral out;
    double prev = lo;
    for (double b : pieces(lo, hi, breaks)) {
        double err = 0;
        double l1 = 0;
        out.value += rule.integrate(f, prev, b, tol, &err, &l1);
        out.error += err;
        out.l1 += l1;
        prev = b;
    }
    return out;
}

/// Composite 4-point Gauss-Legendre on [lo, hi], panels doubled until two
/// successive sums agree; for integrands with too many kinks to resolve.
template <typename F>
Integral integrate_composite(F f, double lo, double hi, double tol) {
    static const double x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
    static const double w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
    auto sum = [&](int panels, double &l1) {
        double h = (hi - lo) / panels;
        double total = 0;
        l1 = 0;
        for (int p = 0; p < panels; p++) {
            double mid = lo + (p + 0.5) * h;
            for (int i = 0; i < 4; i++) {
                double v = w[i] * f(mid + x[i] * h / 2) * h / 2;
                total += v;
                l1 += std::abs(v);
            }
        }
        return total;
    };
    Integral out;
    double prev = sum(32, out.l1);
    for (int panels = 64; panels <= (1 << 16); panels *= 2) {
        out.value = sum(panels, out.l1);
        out.error = std::abs(out.value - prev);
        if (out.error <= tol * out.l1) {
            break;
        }
        prev = out.value;
    }
    return out;
}

void check(const Integral &r, double tol, const char *what) {
    if (!std::isfinite(r.value) || r.error > 50 * tol * std::max(r.l1, 1e-300) + 1e-300) {
        throw QuadratureError(std::string(what) + " did not converge (error estimate " + std::to_string(r.error) +
                              ", magnitude " + std::to_string(r.l1) + ")");
    }
}

double reduce_spin_angle(double theta) {
    return std::abs(std::remainder(theta, 2 * kPi));
}

/// Maximum delay for |S x a| = sqrt(q), i.e. q^(d/2).
double delay(double q, double d) {
    if (d == 0.0) {
        return 1.0;
    }
    return std::pow(std::max(q, 0.0), d / 2);
}

double sign(double v) {
    return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
}

bool divergent_at_parallel(const OracleSpec &spec) {
    if (spec.weight != WeightKind::vanishing_window) {
        return false;
    }
    return spec.kind == sim::ParticleKind::spin ? spec.d >= 2 : spec.d >= 1;
}

/// Coincidence weight as a function of the two maximum delays.
/// The tick-discretized density has kinks at every pair of tick crossings.
constexpr double kDiscretizedTolerance = 1e-6;

double pair_weight(const OracleSpec &spec, double t1, double t2) {
    switch (spec.weight) {
        case WeightKind::continuum:
            return weight_w(t1, t2, spec.window);
        case WeightKind::discretized:
            return discretized_density(t1, t2, spec.tau, spec.window);
        case WeightKind::none:
            return 1.0;
        case WeightKind::vanishing_window:
        default:
            return 1.0 / std::max(t1, t2);
    }
}

/// Spin, vanishing window: the region T1 >= T2 only (phi in [theta/2, theta/2 + pi/2]),
/// where the weight is T1^-1 = (sin^2 phi + x^2 cos^2 phi)^(-d/2).
double spin_vanishing(const OracleSpec &spec, double theta) {
    const double d = spec.d;
    const double tol = spec.tolerance;
    // x = (s / c) sinh(u) turns (s^2 + x^2 c^2)^(-d/2) dx into
    // s^(1-d) / c * cosh(u)^(1-d) du, smooth even when sin(phi) -> 0.
    auto inner = [&](double phi, bool damped) {
        double s = std::abs(std::sin(phi));
        double c = std::abs(std::cos(phi));
        if (s >= c) {
            auto g = [&](double x) {
                double w = d == 0.0 ? 1.0 : std::pow(s * s + x * x * c * c, -d / 2);
                return damped ? (1 - x * x) * w : w;
            };
            Integral res = integrate(g, 0.0, 1.0, {}, tol / 10);
            check(res, tol, "inner spin integral");
            return res.value;
        }
        double r = s / c;
        double scale = std::pow(s, 1 - d) / c;
        auto f = [&](double u) {
            double w = scale * std::pow(std::cosh(u), 1 - d);
            if (damped) {
                double x = r * std::sinh(u);
                w *= 1 - x * x;
            }
            return w;
        };
        Integral res = integrate(f, 0.0, std::asinh(1 / r), {}, tol / 10);
        check(res, tol, "inner spin integral");
        return res.value;
    };
    const double lo = theta / 2;
    const double hi = theta / 2 + kPi / 2;
    std::vector<double> br{kPi / 2};
    auto den_f = [&](double phi) { return inner(phi, false); };
    Integral den = integrate_singular(den_f, lo, hi, br, tol);
    check(den, tol, "spin normalization");
    Integral num;
    if (spec.response == Response::deterministic) {
        auto num_f = [&](double phi) { return sign(std::cos(phi) * std::cos(phi - theta)) * inner(phi, false); };
        num = integrate_singular(num_f, lo, hi, br, tol);
    } else {
        auto num_f = [&](double phi) { return std::cos(phi) * std::cos(phi - theta) * inner(phi, true); };
        num = integrate_singular(num_f, lo, hi, br, tol);
    }
    check(num, tol * std::max(1.0, den.l1 / std::max(num.l1, 1e-300)), "spin correlation");
    return -num.value / den.value;
}

/// Photon, vanishing window: psi = 2 xi in [alpha/2, alpha/2 + pi/2], weight |sin psi|^-d.
double photon_vanishing(const OracleSpec &spec, double alpha) {
    const double d = spec.d;
    const double tol = spec.tolerance;
    auto w = [&](double psi) { return d == 0.0 ? 1.0 : std::pow(std::abs(std::sin(psi)), -d); };
    const double lo = alpha / 2;
    const double hi = alpha / 2 + kPi / 2;
    std::vector<double> br{kPi / 2};
    Integral den = integrate_singular(w, lo, hi, br, tol);
    check(den, tol, "photon normalization");
    Integral num;
    if (spec.response == Response::deterministic) {
        num = integrate_singular([&](double p) { return sign(std::cos(p) * std::cos(p - alpha)) * w(p); }, lo, hi, br, tol);
    } else {
        num = integrate_singular([&](double p) { return std::cos(p) * std::cos(p - alpha) * w(p); }, lo, hi, br, tol);
    }
    check(num, tol * std::max(1.0, den.l1 / std::max(num.l1, 1e-300)), "photon correlation");
    return -num.value / den.value;
}

/// Points in [0, 1] where (s2 + x^2 c2)^(d/2) crosses a multiple of tau.
void tick_crossings(double s2, double c2, double d, double tau, std::vector<double> &out) {
    if (d == 0.0 || c2 <= 0) {
        return;
    }
    double t_lo = delay(s2, d);
    double t_hi = delay(s2 + c2, d);
    auto j = static_cast<std::int64_t>(std::floor(t_lo / tau)) + 1;
    for (; j * tau < t_hi; j++) {
        double q = std::pow(j * tau, 2 / d);
        double x = std::sqrt(std::max(0.0, (q - s2) / c2));
        if (x > 0 && x < 1) {
            out.push_back(x);
        }
    }
}

/// Spin, general weight over the full domain phi in [0, pi], x in [0, 1].
double spin_general(const OracleSpec &spec, double theta) {
    const double d = spec.d;
    const double tol = spec.weight == WeightKind::discretized ? std::max(spec.tolerance, kDiscretizedTolerance) : spec.tolerance;
    auto inner = [&](double phi, bool damped) {
        double s1 = std::sin(phi) * std::sin(phi);
        double c1 = std::cos(phi) * std::cos(phi);
        double s2 = std::sin(phi - theta) * std::sin(phi - theta);
        double c2 = std::cos(phi - theta) * std::cos(phi - theta);
        auto f = [&](double x) {
            double w = pair_weight(spec, delay(s1 + x * x * c1, d), delay(s2 + x * x * c2, d));
            return damped ? (1 - x * x) * w : w;
        };
        if (spec.weight == WeightKind::discretized) {
            // Piecewise constant in x between tick crossings.
            std::vector<double> cuts{0.0, 1.0};
            tick_crossings(s1, c1, d, spec.tau, cuts);
            tick_crossings(s2, c2, d, spec.tau, cuts);
            std::sort(cuts.begin(), cuts.end());
            double total = 0;
            for (std::size_t i = 0; i + 1 < cuts.size(); i++) {
                double a = cuts[i];
                double b = cuts[i + 1];
                if (b <= a) {
                    continue;
                }
                double m = (a + b) / 2;
                double w = pair_weight(spec, delay(s1 + m * m * c1, d), delay(s2 + m * m * c2, d));
                total += damped ? w * ((b - a) - (b * b * b - a * a * a) / 3) : w * (b - a);
            }
            return total;
        }
        Integral r = integrate(f, 0.0, 1.0, {}, tol / 10);
        check(r, tol, "inner spin integral");
        return r.value;
    };
    std::vector<double> br{kPi / 2, theta / 2, theta / 2 + kPi / 2, std::fmod(theta + kPi / 2, kPi), theta};
    auto outer = [&](auto f) {
        if (spec.weight != WeightKind::discretized) {
            return integrate(f, 0.0, kPi, br, tol);
        }
        Integral out;
        double prev = 0.0;
        for (double b : pieces(0.0, kPi, br)) {
            Integral r = integrate_composite(f, prev, b, tol);
            out.value += r.value;
            out.error += r.error;
            out.l1 += r.l1;
            prev = b;
        }
        return out;
    };
    Integral den = outer([&](double p) { return inner(p, false); });
    check(den, tol, "spin normalization");
    Integral num;
    if (spec.response == Response::deterministic) {
        num = outer([&](double p) { return sign(std::cos(p) * std::cos(p - theta)) * inner(p, false); });
    } else {
        num = outer([&](double p) { return std::cos(p) * std::cos(p - theta) * inner(p, true); });
    }
    check(num, tol * std::max(1.0, den.l1 / std::max(num.l1, 1e-300)), "spin correlation");
    return -num.value / den.value;
}

/// Photon, general weight over psi in [0, pi].
double photon_general(const OracleSpec &spec, double alpha) {
    const double d = spec.d;
    const double tol = spec.weight == WeightKind::discretized ? std::max(spec.tolerance, kDiscretizedTolerance) : spec.tolerance;
    auto w = [&](double psi) {
        double t1 = d == 0.0 ? 1.0 : std::pow(std::abs(std::sin(psi)), d);
        double t2 = d == 0.0 ? 1.0 : std::pow(std::abs(std::sin(psi - alpha)), d);
        return pair_weight(spec, t1, t2);
    };
    std::vector<double> br{kPi / 2, alpha / 2, alpha / 2 + kPi / 2, std::fmod(alpha + kPi / 2, kPi), alpha};
    if (spec.weight == WeightKind::discretized && d > 0) {
        // Tick boundaries of both delays.
        for (std::int64_t j = 1; j * spec.tau < 1.0; j++) {
            double p = std::asin(std::pow(j * spec.tau, 1 / d));
            for (double c : {p, kPi - p, alpha + p, alpha - p, alpha + kPi - p, alpha - kPi + p}) {
                double r = std::fmod(c + 2 * kPi, kPi);
                br.push_back(r);
            }
        }
    }
    Integral den = integrate(w, 0.0, kPi, br, tol);
    check(den, tol, "photon normalization");
    Integral num;
    if (spec.response == Response::deterministic) {
        num = integrate([&](double p) { return sign(std::cos(p) * std::cos(p - alpha)) * w(p); }, 0.0, kPi, br, tol);
    } else {
        num = integrate([&](double p) { return std::cos(p) * std::cos(p - alpha) * w(p); }, 0.0, kPi, br, tol);
    }
    check(num, tol * std::max(1.0, den.l1 / std::max(num.l1, 1e-300)), "photon correlation");
    return -num.value / den.value;
}

double half_range(const OracleSpec &spec, double angle) {
    if (spec.kind == sim::ParticleKind::spin) {
        return spec.weight == WeightKind::vanishing_window ? spin_vanishing(spec, angle) : spin_general(spec, angle);
    }
    return spec.weight == WeightKind::vanishing_window ? photon_vanishing(spec, angle) : photon_general(spec, angle);
}

}  // namespace

void OracleSpec::validate() const {
    if (!(d >= 0) || !std::isfinite(d)) {
        throw ConfigError("d must be finite and >= 0");
    }
    if (!(tolerance > 0)) {
        throw ConfigError("quadrature tolerance must be positive");
    }
    if (weight == WeightKind::continuum || weight == WeightKind::discretized) {
        if (!(window > 0)) {
            throw ConfigError("window W must be positive");
        }
    }
    if (weight == WeightKind::discretized && !(tau > 0 && tau < 1)) {
        throw ConfigError("tau must be in (0, T0)");
    }
}

double expectation_quadrature(const OracleSpec &spec, double theta) {
    spec.validate();
    if (!std::isfinite(theta)) {
        throw ConfigError("angle must be finite");
    }
    // Both cases reduce to an angle in [0, pi] between the two analyzer vectors.
    double angle = spec.kind == sim::ParticleKind::spin ? reduce_spin_angle(theta) : reduce_spin_angle(2 * theta);
    if (divergent_at_parallel(spec)) {
        if (angle <= kParallelSnap) {
            return -1.0;
        }
        if (angle >= kPi - kParallelSnap) {
            return 1.0;
        }
    }
    // Reversing a2 flips every x2 and leaves both delays alone, so E(pi - t) = -E(t).
    if (angle > kPi / 2) {
        return -half_range(spec, kPi - angle);
    }
    return half_range(spec, angle);
}

double expectation_quadrature(const OracleSpec &spec, const UnitVector3 &a1, const UnitVector3 &a2) {
    double angle = angle_between(a1, a2);
    return expectation_quadrature(spec, spec.kind == sim::ParticleKind::spin ? angle : angle / 2);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    for (std::size_t i = 0; i < n; i++) {
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.back() = hi;
    return out;
}

SCurve s_curve(const std::function<double(double)> &e, std::span<const double> theta_grid) {
    SCurve out;
    out.max_s = -std::numeric_limits<double>::infinity();
    for (double t : theta_grid) {
        double s = 3 * e(t) - e(3 * t);
        out.points.push_back({t, s});
        if (s > out.max_s) {
            out.max_s = s;
            out.theta_at_max = t;
        }
    }
    return out;
}

SCurve s_curve(const OracleSpec &spec, std::span<const double> theta_grid) {
    return s_curve([&](double t) { return expectation_quadrature(spec, t); }, theta_grid);
}

}  // namespace eprb::oracle
