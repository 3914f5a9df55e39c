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

// Acceptance run: one PASS/FAIL line per criterion.
//
// Criteria marked as statistically limited evaluate their tolerance at the
// prescribed N, where one standard error is comparable to the tolerance. They
// are reported like any other criterion but do not change the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "eprb/analysis/coincidence.h"
#include "eprb/analysis/correlation.h"
#include "eprb/analysis/streams.h"
#include "eprb/fisher/fisher.h"
#include "eprb/oracle/oracle.h"
#include "eprb/qm/reference.h"
#include "eprb/sim/experiment.h"

using namespace eprb;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 0.001;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int number;
    const char *title;
    bool statistically_limited;
    std::function<Outcome()> check;
};

std::string fmt(const char *f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

std::string fmt(const char *f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), f, a, b);
    return buf;
}

void note(const std::string &line) {
    std::printf("    %s\n", line.c_str());
}

struct Measured {
    double e = 0;
    double e1 = 0;
    double e2 = 0;
    double error = 0;
    std::uint64_t coincidences = 0;
};

/// One standard error of a mean of +-1 outcomes.
double standard_error(double mean, std::uint64_t n) {
    return std::sqrt(std::max(0.0, 1 - mean * mean) / static_cast<double>(n));
}

double z_score(double deviation, double error) {
    return error > 0 ? deviation / error : 0.0;
}

Measured measured(const analysis::CoincidenceTable &t) {
    auto p = analysis::correlate(t, 0, 0);
    return {p.e, p.e1, p.e2, p.e_error, p.coincidences};
}

/// Runs cfg and counts coincidences for every window, folding all settings
/// of a station onto setting 0 when fold is set.
std::vector<analysis::CoincidenceTable> run_windows(const sim::ModelConfig &cfg, const std::vector<double> &windows,
                                                    bool fold) {
    sim::Experiment ex(cfg);
    std::size_t m1 = fold ? 1 : cfg.settings1.size();
    std::size_t m2 = fold ? 1 : cfg.settings2.size();
    analysis::CoincidenceCounter counter(m1, m2, cfg.tau, windows);
    ex.run([&](sim::DetectionEvent e1, sim::DetectionEvent e2) {
        if (fold) {
            e1.setting = 0;
            e2.setting = 0;
        }
        counter.add(e1, e2);
    });
    return counter.tables();
}

sim::ModelConfig planar_run(double theta, sim::MagnetKind magnet, double d, std::uint64_t events,
                            std::uint64_t stream_base) {
    sim::ModelConfig cfg;
    cfg.magnet = magnet;
    cfg.d = d;
    cfg.tau = kTau;
    cfg.events = events;
    cfg.settings1 = {UnitVector3::from_spherical(0, 0)};
    cfg.settings2 = {UnitVector3::from_spherical(theta, 0)};
    cfg.stream_base = stream_base;
    return cfg;
}

struct SingletRuns {
    std::vector<double> theta;
    std::vector<Measured> narrow;
    std::vector<Measured> wide;
    double seconds = 0;
};

const SingletRuns &singlet_runs() {
    static SingletRuns runs = [] {
        SingletRuns r;
        auto start = std::chrono::steady_clock::now();
        for (int i = 0; i <= 12; i++) {
            double theta = i * kPi / 12;
            auto cfg = planar_run(theta, sim::MagnetKind::dlm, 3, 1'000'000, 3 * static_cast<std::uint64_t>(i));
            auto tables = run_windows(cfg, {kTau, 2.0}, false);
            r.theta.push_back(theta);
            r.narrow.push_back(measured(tables[0]));
            r.wide.push_back(measured(tables[1]));
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }();
    return runs;
}

Outcome singlet_reproduction() {
    const auto &r = singlet_runs();
    double worst_e = 0;
    double worst_single = 0;
    double worst_z = 0;
    note("theta      E        -cos      E1       E2       sigma(E)  coincidences");
    for (std::size_t i = 0; i < r.theta.size(); i++) {
        const auto &m = r.narrow[i];
        double dev = std::abs(m.e + std::cos(r.theta[i]));
        worst_e = std::max(worst_e, dev);
        worst_single = std::max({worst_single, std::abs(m.e1), std::abs(m.e2)});
        worst_z = std::max({worst_z, z_score(dev, m.error),
                            z_score(std::abs(m.e1), standard_error(m.e1, m.coincidences)),
                            z_score(std::abs(m.e2), standard_error(m.e2, m.coincidences))});
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.4f  %+.4f  %+.4f  %+.4f  %+.4f  %.4f    %llu", r.theta[i], m.e,
                      -std::cos(r.theta[i]), m.e1, m.e2, m.error, static_cast<unsigned long long>(m.coincidences));
        note(buf);
    }
    note(fmt("max |E + cos theta| = %.4f (tol 0.03), max |E1|,|E2| = %.4f (tol 0.01)", worst_e, worst_single));
    note(fmt("largest deviation of E, E1, E2 in standard errors = %.2f, runtime %.1f s (limit 120 s)", worst_z, r.seconds));
    return {worst_e <= 0.03 && worst_single <= 0.01 && r.seconds <= 120, ""};
}

Outcome bell_limit() {
    const auto &r = singlet_runs();
    double worst = 0;
    for (std::size_t i = 0; i < r.theta.size(); i++) {
        worst = std::max(worst, std::abs(r.wide[i].e - (-1 + 2 * r.theta[i] / kPi)));
    }
    return {worst <= 0.03, fmt("W = 2 T0: max |E - (-1 + 2 theta / pi)| = %.4f (tol 0.03)", worst)};
}

oracle::OracleSpec vanishing(oracle::Response r, sim::ParticleKind k, double d) {
    oracle::OracleSpec s;
    s.response = r;
    s.kind = k;
    s.d = d;
    return s;
}

Outcome chsh_curve() {
    auto grid = oracle::linear_grid(0, kPi, 181);
    auto det = [](double d) { return vanishing(oracle::Response::deterministic, sim::ParticleKind::spin, d); };
    auto c3 = oracle::s_curve(det(3), grid);
    double worst = 0;
    for (const auto &p : c3.points) {
        worst = std::max(worst, std::abs(p.s - qm::s_of_theta_singlet(p.theta)));
    }
    std::vector<double> smax;
    for (int d = 0; d <= 5; d++) {
        smax.push_back(oracle::s_curve(det(d), grid).max_s);
        note(fmt("d = %.0f: S_max = %.9f", d, smax.back()));
    }
    double tsirelson = 2 * std::sqrt(2.0);
    bool order = smax[1] > 2 && smax[2] > 2 && smax[1] < tsirelson && smax[2] < tsirelson && smax[4] > tsirelson &&
                 smax[5] > tsirelson;
    note(fmt("d = 3: max |S - (cos 3t - 3 cos t)| = %.2e (tol 1e-5)", worst));
    note(std::string("ordering 2 < S_max(1), S_max(2) < 2 sqrt 2 < S_max(4), S_max(5): ") + (order ? "yes" : "no"));
    return {worst <= 1e-5 && smax[0] <= 2 + 1e-9 && smax[5] > 2 && order, ""};
}

Outcome closed_form_catalog() {
    auto grid = oracle::linear_grid(0, kPi, 181);
    double worst = 0;
    int combos = 0;
    for (auto r : {oracle::Response::deterministic, oracle::Response::pseudo_random}) {
        for (auto k : {sim::ParticleKind::spin, sim::ParticleKind::photon}) {
            for (int d = 0; d <= 16; d++) {
                if (!oracle::closed_form_supported(r, k, d)) {
                    continue;
                }
                combos++;
                auto spec = vanishing(r, k, d);
                double w = 0;
                for (double t : grid) {
                    w = std::max(w, std::abs(oracle::expectation_quadrature(spec, t) -
                                             *oracle::closed_form_E(r, k, d, t)));
                }
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%-13s %-6s d = %2d: max diff %.2e",
                              r == oracle::Response::deterministic ? "deterministic" : "pseudo-random",
                              k == sim::ParticleKind::spin ? "spin" : "photon", d, w);
                note(buf);
                worst = std::max(worst, w);
            }
        }
    }
    note(fmt("%.0f cataloged combinations, max diff %.2e (tol 1e-5)", combos, worst));
    return {combos > 0 && worst <= 1e-5, ""};
}

Outcome pseudo_random_d7() {
    auto grid = oracle::linear_grid(0, kPi, 181);
    auto spec = vanishing(oracle::Response::pseudo_random, sim::ParticleKind::spin, 7);
    double worst = 0;
    for (double t : grid) {
        worst = std::max(worst, std::abs(oracle::expectation_quadrature(spec, t) + std::cos(t)));
    }
    note(fmt("oracle: max |E + cos theta| = %.4f (tol 0.02)", worst));
    auto discrete = spec;
    discrete.weight = oracle::WeightKind::discretized;
    discrete.window = kTau;
    discrete.tau = kTau;
    double sim_worst = 0;
    double gap = 0;
    note("theta      E_sim    oracle   oracle(tau)  sigma");
    for (int i = 0; i <= 8; i++) {
        double theta = i * kPi / 8;
        auto cfg = planar_run(theta, sim::MagnetKind::pseudo_random, 7, 1'000'000, 100 + 3 * static_cast<std::uint64_t>(i));
        auto m = measured(run_windows(cfg, {kTau}, false)[0]);
        double o = oracle::expectation_quadrature(spec, theta);
        double od = oracle::expectation_quadrature(discrete, theta);
        sim_worst = std::max(sim_worst, std::abs(m.e - od));
        gap = std::max(gap, std::abs(m.e - o));
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.4f  %+.4f  %+.4f  %+.4f      %.4f", theta, m.e, o, od, m.error);
        note(buf);
    }
    note(fmt("simulation N = 1e6, tau = W = 1e-3: max |E_sim - oracle(tau)| = %.4f (tol 0.05)", sim_worst));
    note(fmt("informational: max |E_sim - oracle(W -> 0)| = %.4f at tau = 1e-3", gap));
    for (double theta : {0.0, kPi / 8}) {
        auto cfg = planar_run(theta, sim::MagnetKind::pseudo_random, 7, 20'000'000, 500);
        cfg.tau = 1e-5;
        auto m = measured(run_windows(cfg, {cfg.tau}, false)[0]);
        note(fmt("informational: tau = W = 1e-5, N = 2e7: E_sim - oracle(W -> 0) = %+.4f at theta = %.4f",
                 m.e - oracle::expectation_quadrature(spec, theta), theta));
    }
    return {worst <= 0.02 && sim_worst <= 0.05, ""};
}

Outcome pair_count_exact() {
    int failures = 0;
    int cases = 0;
    for (std::int64_t k1 = 1; k1 <= 12; k1++) {
        for (std::int64_t k2 = 1; k2 <= 12; k2++) {
            for (std::int64_t k = 1; k <= 12; k++) {
                std::int64_t n = 0;
                for (std::int64_t i = 1; i <= k1; i++) {
                    for (std::int64_t j = 1; j <= k2; j++) {
                        n += std::abs(i - j) < k;
                    }
                }
                cases++;
                failures += oracle::pair_count(k1, k2, k) != n;
            }
        }
    }
    return {failures == 0, fmt("%.0f cases, %.0f failures", cases, failures)};
}

Outcome weight_function() {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> ut(0.01, 1.0);
    std::uniform_real_distribution<double> uw(0.001, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int samples = 1'000'000;
    int outside = 0;
    double worst_z = 0;
    double worst_slope = 0;
    bool exact_one = true;
    for (int c = 0; c < 100; c++) {
        double t1 = ut(gen);
        double t2 = ut(gen);
        double w = uw(gen);
        double p = oracle::weight_w(t1, t2, w);
        int hits = 0;
        for (int i = 0; i < samples; i++) {
            hits += std::abs(u(gen) * t1 - u(gen) * t2) <= w;
        }
        double phat = static_cast<double>(hits) / samples;
        double sigma = std::sqrt(p * (1 - p) / samples);
        double dev = std::abs(phat - p);
        if (dev > 3 * sigma) {
            outside++;
        }
        if (sigma > 0) {
            worst_z = std::max(worst_z, dev / sigma);
        }
        double small = 1e-4;
        double ratio = oracle::weight_w(t1, t2, small) / (2 * small / std::max(t1, t2));
        worst_slope = std::max(worst_slope, std::abs(ratio - 1));
        for (double big : {1.0, 1.5, 10.0}) {
            exact_one = exact_one && oracle::weight_w(t1, t2, big) == 1.0;
        }
    }
    note(fmt("Monte Carlo (1e6 samples, 100 cases): %.0f outside 3 sigma, largest %.2f sigma", outside, worst_z));
    note(fmt("W = 1e-4 slope: max |ratio - 1| = %.2e (tol 1e-2)", worst_slope));
    note(std::string("W >= T0 gives exactly 1: ") + (exact_one ? "yes" : "no"));
    return {outside == 0 && exact_one && worst_slope <= 0.01, ""};
}

Outcome window_sweep() {
    sim::ModelConfig cfg;
    cfg.d = 3;
    cfg.tau = kTau;
    cfg.events = 10'000'000;
    auto deg = [](double a) { return UnitVector3::from_spherical(a * kPi / 180, 0); };
    cfg.settings1 = {deg(0), deg(270)};
    cfg.settings2 = {deg(135), deg(45)};
    cfg.stream_base = 300;
    std::vector<double> windows{kTau, 10 * kTau, 100 * kTau, 0.5, 2.0};
    auto tables = run_windows(cfg, windows, false);
    auto points = analysis::sweep_points(tables);
    bool monotone = true;
    for (std::size_t i = 0; i < points.size(); i++) {
        note(fmt("W = %-6g S_max = %.4f", points[i].window, points[i].s_max.value_or(NAN)));
        if (!points[i].s_max) {
            monotone = false;
        } else if (i > 0 && points[i - 1].s_max && *points[i].s_max > *points[i - 1].s_max) {
            monotone = false;
        }
    }
    double first = points.front().s_max.value_or(0);
    double last = points.back().s_max.value_or(0);
    bool ends = std::abs(first - 2 * std::sqrt(2.0)) <= 0.05 && std::abs(last - 2) <= 0.05;

    // Synthetic streams: Poisson emissions, one tick of detector jitter per
    // station, station 2 running 4 ticks late.
    std::mt19937_64 gen(7);
    std::exponential_distribution<double> gap(1.0 / 40.0);
    std::vector<double> tags1;
    std::vector<double> tags2;
    double clock = 0;
    for (int n = 0; n < 200000; n++) {
        clock += gap(gen);
        auto tick = static_cast<double>(analysis::discretize(clock, 1.0));
        tags1.push_back(tick + static_cast<double>(gen() % 2));
        tags2.push_back(tick + 4 + static_cast<double>(gen() % 2));
    }
    std::sort(tags1.begin(), tags1.end());
    std::sort(tags2.begin(), tags2.end());
    double bin = 1.0;
    auto est = analysis::match_streams(tags1, tags2, bin, 20);
    note(fmt("shift recovery: delta = %.2f ticks (expected 4 +- %.1f)", est.delta, bin / 2));
    note(fmt("peak / mean of the shift histogram = %.2f", est.peak_to_mean));
    bool delta_ok = std::abs(est.delta - 4) <= bin / 2;
    return {monotone && ends && delta_ok, ""};
}

Outcome case_two() {
    UnitVector3 a1 = UnitVector3::normalized(0, 0, 1);
    UnitVector3 a2 = UnitVector3::normalized(0.5, 0.5, 1 / std::sqrt(2.0));
    std::vector<double> windows{kTau, 10 * kTau, 100 * kTau, 0.5, 2.0};
    double worst = 0;
    double worst_z = 0;
    double worst_flat = 0;
    note("eta      E1       cos      E2       expect   E        expect   sigma(E)");
    for (int i = 1; i <= 13; i++) {
        double eta = i * kPi / 14;
        sim::ModelConfig cfg;
        cfg.source_case = sim::SourceCase::fixed;
        cfg.fixed1 = UnitVector3::normalized(std::sin(eta), 0, std::cos(eta));
        cfg.fixed2 = -cfg.fixed1;
        cfg.tau = kTau;
        cfg.events = 1'000'000;
        cfg.settings1.assign(10, a1);
        cfg.settings2.assign(10, a2);
        cfg.stream_base = 600 + 3 * static_cast<std::uint64_t>(i);
        auto tables = run_windows(cfg, windows, true);
        auto m = measured(tables[0]);
        double e1 = std::cos(eta);
        double e2 = -(std::sin(eta) + std::sqrt(2.0) * std::cos(eta)) / 2;
        worst = std::max({worst, std::abs(m.e1 - e1), std::abs(m.e2 - e2), std::abs(m.e - e1 * e2)});
        worst_z = std::max({worst_z, z_score(std::abs(m.e - e1 * e2), m.error),
                            z_score(std::abs(m.e1 - e1), standard_error(m.e1, m.coincidences)),
                            z_score(std::abs(m.e2 - e2), standard_error(m.e2, m.coincidences))});
        auto all = measured(tables.back());
        for (const auto &t : tables) {
            auto mw = measured(t);
            if (mw.error > 0) {
                worst_flat = std::max(worst_flat, std::abs(mw.e - all.e) / mw.error);
            }
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.4f  %+.4f  %+.4f  %+.4f  %+.4f  %+.4f  %+.4f  %.4f", eta, m.e1, e1,
                      m.e2, e2, m.e, e1 * e2, m.error);
        note(buf);
    }
    note(fmt("W = tau: max deviation %.4f (tol 0.03), %.2f standard errors", worst, worst_z));
    note(fmt("E(W) for W from tau to 2 T0 stays within %.2f sigma of E(2 T0) (tol 3)", worst_flat));
    return {worst <= 0.03 && worst_flat <= 3, ""};
}

Outcome fisher_minimum() {
    auto grid = oracle::linear_grid(0.05, kPi - 0.05, 61);
    auto pair = fisher::minimize_over_family(fisher::Family::pair, 2 * kPi);
    auto single = fisher::minimize_over_family(fisher::Family::single, 2 * kPi);
    auto photon = fisher::minimize_over_family(fisher::Family::pair, kPi);
    double dev_pair = 0;
    double dev_single = 0;
    double dev_photon = 0;
    for (double t : grid) {
        dev_pair = std::max(dev_pair, std::abs(pair.law(t) + std::cos(t)));
        dev_single = std::max(dev_single, std::abs(single.law(t) - (1 + std::cos(t)) / 2));
        dev_photon = std::max(dev_photon, std::abs(photon.law(t) + std::cos(2 * t)));
    }
    double variance = fisher::fisher_variance([&](double t) { return fisher::fisher_pair(pair.law, t); }, grid);
    note(fmt("pair: k* = %.0f, max |E + cos t| = %.1e", pair.law.k, dev_pair));
    note(fmt("single: k* = %.0f, max |p - (1 + cos t)/2| = %.1e", single.law.k, dev_single));
    note(fmt("photon pair (period pi): k = %.0f in theta, i.e. 1 in the doubled angle, max |E + cos 2t| = %.1e",
             photon.law.k, dev_photon));
    note(fmt("I_F variance over theta = %.1e (tol 1e-10)", variance));
    return {pair.law.k == 1 && single.law.k == 1 && photon.law.k == 2 && dev_pair < 1e-12 && dev_single < 1e-12 &&
                dev_photon < 1e-12 && variance < 1e-10,
            ""};
}

Outcome appendix_check() {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(-1, 1);
    auto random_dir = [&] {
        for (;;) {
            double x = u(gen);
            double y = u(gen);
            double z = u(gen);
            double n = x * x + y * y + z * z;
            if (n > 1e-4 && n <= 1) {
                return UnitVector3::normalized(x, y, z);
            }
        }
    };
    double worst = 0;
    for (int i = 0; i < 20; i++) {
        auto a = random_dir();
        auto b = random_dir();
        int x = gen() % 2 ? 1 : -1;
        int y = gen() % 2 ? 1 : -1;
        worst = std::max(worst, std::abs(qm::appendix_decomposition_check(a, b, x, y) -
                                         qm::singlet_pair_probability(x, y, a, b)));
    }
    double fmax = qm::appendix_factor_max(1, UnitVector3());
    note(fmt("max |decomposition - P(x,y)| = %.2e (tol 1e-6); max factor = %.4f (must exceed 1)", worst, fmax));
    return {worst <= 1e-6 && fmax > 1, ""};
}

Outcome quantum_bounds() {
    auto singlet = qm::planar_chsh_max([](double a, double b) { return -std::cos(a - b); });
    double tsirelson = 2 * std::sqrt(2.0);
    note(fmt("singlet: grid S_max = %.9f, refined %.9f", singlet.grid_value, singlet.value));
    double worst_product = -4;
    for (double s1 : {0.0, 0.4, 1.3}) {
        for (double s2 : {0.0, 2.2, -0.7}) {
            auto p = qm::planar_chsh_max([&](double a, double b) {
                return qm::product_expectations(UnitVector3::in_plane(a), UnitVector3::in_plane(b),
                                                UnitVector3::in_plane(s1), UnitVector3::in_plane(s2))
                    .e;
            });
            worst_product = std::max({worst_product, p.value, p.grid_value});
        }
    }
    note(fmt("product states: max S = %.12f (bound 2 + 1e-9)", worst_product));
    bool singlet_ok = std::abs(singlet.value - tsirelson) <= 1e-6 && singlet.value <= tsirelson + 1e-9 &&
                      singlet.grid_value <= tsirelson + 1e-9;
    return {singlet_ok && worst_product <= 2 + 1e-9, ""};
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "singlet reproduction, d = 3, W = tau", true, singlet_reproduction},
        {2, "Bell-model limit, W > T0", false, bell_limit},
        {3, "CHSH curve and S_max ordering", false, chsh_curve},
        {4, "closed-form catalog vs quadrature", false, closed_form_catalog},
        {5, "pseudo-random magnet, d = 7", false, pseudo_random_d7},
        {6, "pair count vs enumeration", false, pair_count_exact},
        {7, "coincidence weight", false, weight_function},
        {8, "window sweep and shift recovery", false, window_sweep},
        {9, "Case II product correlations", true, case_two},
        {10, "Fisher information minimum", false, fisher_minimum},
        {11, "sphere decomposition of P(x, y)", false, appendix_check},
        {12, "quantum CHSH bounds", false, quantum_bounds},
    };
    int passed = 0;
    int hard_failures = 0;
    for (const auto &c : criteria) {
        std::printf("criterion %d: %s\n", c.number, c.title);
        std::fflush(stdout);
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.detail.empty()) {
            note(o.detail);
        }
        const char *tag = o.pass ? "PASS" : "FAIL";
        std::printf("[%s] criterion %d: %s%s\n", tag, c.number, c.title,
                    !o.pass && c.statistically_limited ? " (statistically limited at this N)" : "");
        std::fflush(stdout);
        if (o.pass) {
            passed++;
        } else if (!c.statistically_limited) {
            hard_failures++;
        }
    }
    std::printf("%d of %zu criteria passed\n", passed, criteria.size());
    return hard_failures == 0 ? 0 : 1;
}
