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

#include "eprb/cli/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "eprb/analysis/coincidence.h"
#include "eprb/analysis/correlation.h"
#include "eprb/analysis/streams.h"
#include "eprb/core/error.h"
#include "eprb/fisher/fisher.h"
#include "eprb/io/manifest.h"
#include "eprb/io/settings_file.h"
#include "eprb/io/station_file.h"
#include "eprb/oracle/oracle.h"
#include "eprb/sim/experiment.h"

namespace eprb::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kAgreement = 1e-5;

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string f; std::getline(in, f, sep);) {
        out.push_back(trim(f));
    }
    return out;
}

double parse_number(const std::string &key, const std::string &text) {
    std::string t = trim(text);
    if (t == "pi") {
        return std::numbers::pi;
    }
    double v = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v)) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_count(const std::string &key, const std::string &text) {
    std::string t = trim(text);
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (!t.empty() && ec == std::errc() && end == t.data() + t.size()) {
        return v;
    }
    double d = parse_number(key, text);
    if (d < 0 || d != std::floor(d) || d > 1.8e19) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(d);
}

bool parse_bool(const std::string &key, const std::string &text) {
    std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") {
        return true;
    }
    if (t == "false" || t == "0" || t == "no") {
        return false;
    }
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string &key, const std::string &text) {
    std::vector<double> out;
    for (const auto &f : split(text, ',')) {
        out.push_back(parse_number(key, f));
    }
    if (out.empty()) {
        throw ConfigError(key + ": empty list");
    }
    return out;
}

UnitVector3 parse_direction(const std::string &key, const std::string &text, sim::ParticleKind kind) {
    auto f = split(text, ',');
    if (kind == sim::ParticleKind::photon) {
        if (f.size() != 1) {
            throw ConfigError(key + ": a photon polarization is one angle in radians");
        }
        return doubled(PolarizationAngle(parse_number(key, f[0])));
    }
    if (f.size() != 3) {
        throw ConfigError(key + ": a spin direction is x,y,z");
    }
    return UnitVector3::normalized(parse_number(key, f[0]), parse_number(key, f[1]), parse_number(key, f[2]));
}

std::string fmt(double v, int digits = 10) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

std::string exact(double v) {
    return fmt(v, 17);
}

void open_for_writing(std::ofstream &out, const fs::path &path) {
    out.open(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
}

void prepare_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw ConfigError("cannot create output directory " + dir.string());
    }
}

/// Keys accepted by simulate, both as --flags and in a --config file.
const std::vector<std::string> kSimulateKeys = {
    "case", "magnet", "kind", "d", "t0", "tau", "N", "M", "seed", "l", "u0", "dlm-scope",
    "fixed1", "fixed2", "settings-file", "stream-base", "binary",
};

std::map<std::string, std::string> read_config_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        n++;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw FormatError("expected key=value", n);
        }
        std::string key = trim(line.substr(0, eq));
        if (std::find(kSimulateKeys.begin(), kSimulateKeys.end(), key) == kSimulateKeys.end()) {
            throw ConfigError("unknown config key '" + key + "' in " + path.string());
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

sim::ModelConfig model_from_values(const std::map<std::string, std::string> &v, bool &binary) {
    auto get = [&](const std::string &k) -> std::optional<std::string> {
        auto it = v.find(k);
        return it == v.end() ? std::nullopt : std::optional<std::string>(it->second);
    };
    sim::ModelConfig cfg;
    if (auto s = get("kind")) {
        cfg.kind = sim::parse_particle_kind(*s);
    }
    if (auto s = get("case")) {
        cfg.source_case = sim::parse_source_case(*s);
    }
    if (auto s = get("magnet")) {
        cfg.magnet = sim::parse_magnet_kind(*s);
    }
    if (auto s = get("dlm-scope")) {
        cfg.dlm.scope = sim::parse_dlm_scope(*s);
    }
    if (auto s = get("d")) {
        cfg.d = parse_number("d", *s);
    }
    if (auto s = get("t0")) {
        cfg.t0 = parse_number("t0", *s);
    }
    if (auto s = get("tau")) {
        cfg.tau = parse_number("tau", *s);
    }
    if (auto s = get("N")) {
        cfg.events = parse_count("N", *s);
    }
    if (auto s = get("seed")) {
        cfg.seed = parse_count("seed", *s);
    }
    if (auto s = get("stream-base")) {
        cfg.stream_base = parse_count("stream-base", *s);
    }
    if (auto s = get("l")) {
        cfg.dlm.l = parse_number("l", *s);
    }
    if (auto s = get("u0")) {
        cfg.dlm.u0 = parse_number("u0", *s);
    }
    if (cfg.kind == sim::ParticleKind::photon) {
        cfg.fixed1 = doubled(PolarizationAngle(0.0));
        cfg.fixed2 = doubled(PolarizationAngle(std::numbers::pi / 2));
    }
    if (auto s = get("fixed1")) {
        cfg.fixed1 = parse_direction("fixed1", *s, cfg.kind);
    }
    if (auto s = get("fixed2")) {
        cfg.fixed2 = parse_direction("fixed2", *s, cfg.kind);
    }
    binary = false;
    if (auto s = get("binary")) {
        binary = parse_bool("binary", *s);
    }
    if (auto s = get("settings-file")) {
        if (get("M")) {
            throw ConfigError("--M and --settings-file are mutually exclusive");
        }
        auto st = io::read_settings_file(fs::path(*s), cfg.kind);
        cfg.settings1 = std::move(st.station1);
        cfg.settings2 = std::move(st.station2);
    } else {
        std::uint64_t m = 10;
        if (auto s = get("M")) {
            m = parse_count("M", *s);
        }
        if (m < 1) {
            throw ConfigError("M >= 1 required");
        }
        cfg.settings1 = sim::random_settings(cfg.kind, m, cfg.seed, 1);
        cfg.settings2 = sim::random_settings(cfg.kind, m, cfg.seed, 2);
    }
    cfg.validate();
    return cfg;
}

std::string station_name(int id, bool binary) {
    return "station" + std::to_string(id) + (binary ? ".bin" : ".csv");
}

int simulate(const std::map<std::string, std::string> &flags, const std::string &config, const std::string &replay,
             const fs::path &out_dir, std::ostream &out) {
    io::RunManifest manifest;
    if (!replay.empty()) {
        if (!flags.empty() || !config.empty()) {
            throw ConfigError("--manifest replays a run; only --out may be combined with it");
        }
        io::RunManifest source = io::read_manifest(replay);
        if (source.command != "simulate" || !source.model) {
            throw ConfigError("manifest " + replay + " does not describe a simulate run");
        }
        manifest.model = source.model;
        manifest.binary = source.binary;
    } else {
        std::map<std::string, std::string> values;
        if (!config.empty()) {
            values = read_config_file(config);
        }
        for (const auto &[k, v] : flags) {
            values[k] = v;
        }
        bool binary = false;
        manifest.model = model_from_values(values, binary);
        manifest.binary = binary;
    }
    const sim::ModelConfig &cfg = *manifest.model;
    manifest.command = "simulate";
    manifest.outputs = {station_name(1, manifest.binary), station_name(2, manifest.binary), "manifest.json"};
    std::string hash = manifest.hash();

    prepare_dir(out_dir);
    std::ofstream f1;
    std::ofstream f2;
    open_for_writing(f1, out_dir / manifest.outputs[0]);
    open_for_writing(f2, out_dir / manifest.outputs[1]);
    io::StationFileOptions opt;
    opt.binary = manifest.binary;
    opt.manifest_hash = hash;
    opt.tau = cfg.tau;
    sim::Experiment experiment(cfg);
    io::StationWriter w1(f1, 1, cfg.kind, experiment.station1().settings(), cfg.tau, cfg.events, opt);
    io::StationWriter w2(f2, 2, cfg.kind, experiment.station2().settings(), cfg.tau, cfg.events, opt);
    experiment.run([&](const sim::DetectionEvent &e1, const sim::DetectionEvent &e2) {
        w1.write(e1, analysis::discretize(e1.time, cfg.tau));
        w2.write(e2, analysis::discretize(e2.time, cfg.tau));
    });
    f1.close();
    f2.close();
    if (!f1 || !f2) {
        throw ConfigError("writing station files to " + out_dir.string() + " failed");
    }
    io::write_manifest(out_dir / "manifest.json", manifest);
    out << "wrote " << cfg.events << " events per station to " << out_dir.string() << " (manifest " << hash
        << ")\n";
    return kOk;
}

/// Angle between the analyzers; polarizer angle difference for photons.
double setting_angle(sim::ParticleKind kind, const UnitVector3 &a1, const UnitVector3 &a2) {
    double t = angle_between(a1, a2);
    return kind == sim::ParticleKind::photon ? t / 2 : t;
}

std::vector<double> sorted_times(const sim::StationRecord &r) {
    std::vector<double> out;
    out.reserve(r.events.size());
    for (const auto &e : r.events) {
        out.push_back(r.discretized() ? e.time * r.tick_duration : e.time);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct AnalyzeOptions {
    std::vector<std::string> inputs;
    std::optional<double> window;
    std::optional<double> tau;
    std::string delta = "0";
    std::optional<double> histogram_bin;
    std::optional<double> search_radius;
    std::string window_sweep;
    bool unaligned = false;
    std::string out = ".";
};

int analyze(const AnalyzeOptions &o, std::ostream &out) {
    if (o.inputs.size() != 2) {
        throw ConfigError("--in needs exactly two station files");
    }
    sim::StationRecord r1 = io::read_station_file(fs::path(o.inputs[0]));
    sim::StationRecord r2 = io::read_station_file(fs::path(o.inputs[1]));
    if (r1.kind != r2.kind) {
        throw ConfigError("station files hold different particle kinds");
    }
    analysis::AnalysisConfig cfg;
    cfg.tau = o.tau.value_or(r1.tick_duration);
    cfg.window = o.window.value_or(cfg.tau);
    cfg.histogram_bin = o.histogram_bin.value_or(cfg.tau);
    double radius = o.search_radius.value_or(50 * cfg.tau);

    io::RunManifest manifest;
    manifest.command = "analyze";
    manifest.inputs = o.inputs;
    std::optional<analysis::DeltaEstimate> estimate;
    if (o.delta == "auto") {
        auto t1 = sorted_times(r1);
        auto t2 = sorted_times(r2);
        estimate = analysis::match_streams(t1, t2, cfg.histogram_bin, radius);
        cfg.delta = estimate->delta;
        manifest.estimated_delta = estimate->delta;
    } else {
        cfg.delta = parse_number("delta", o.delta);
    }
    cfg.validate();
    manifest.analysis = cfg;
    std::vector<double> sweep;
    if (!o.window_sweep.empty()) {
        sweep = parse_list("window-sweep", o.window_sweep);
    }
    manifest.outputs = {"report.csv"};
    if (!sweep.empty()) {
        manifest.outputs.push_back("sweep.csv");
    }
    manifest.outputs.push_back("manifest.json");
    if (o.unaligned) {
        manifest.parameters["pairing"] = "unaligned";
    }
    std::string hash = manifest.hash();

    analysis::CoincidenceTable table =
        o.unaligned ? analysis::pair_streams(r1, r2, cfg) : analysis::count_coincidences(r1, r2, cfg);
    analysis::CorrelationReport report = analysis::correlation_report(table);

    fs::path dir(o.out);
    prepare_dir(dir);
    std::ofstream rep;
    open_for_writing(rep, dir / "report.csv");
    rep << "# manifest " << hash << "\n";
    rep << "m1,m2,theta,events,coincidences,c_pp,c_pm,c_mp,c_mm,E1,E2,E,E_error,rho,fraction\n";
    for (std::uint32_t a = 0; a < report.settings1; a++) {
        for (std::uint32_t b = 0; b < report.settings2; b++) {
            double theta = setting_angle(r1.kind, r1.settings[a], r2.settings[b]);
            const auto &p = report.find(a, b);
            rep << a << "," << b << "," << fmt(theta) << "," << table.events(a, b) << ","
                << table.coincidences(a, b);
            for (int i = 0; i < 4; i++) {
                rep << "," << (p ? p->counts[i] : 0);
            }
            if (!p) {
                rep << ",,,,,,\n";
                continue;
            }
            rep << "," << fmt(p->e1) << "," << fmt(p->e2) << "," << fmt(p->e) << "," << fmt(p->e_error) << ","
                << (p->rho ? fmt(*p->rho) : "") << "," << (o.unaligned || !p->fraction ? "" : fmt(*p->fraction))
                << "\n";
        }
    }
    rep.close();
    if (!sweep.empty()) {
        auto points = analysis::window_sweep(r1, r2, cfg.tau, sweep, cfg.delta,
                                             o.unaligned ? analysis::PairingMode::unaligned
                                                         : analysis::PairingMode::aligned);
        std::ofstream sw;
        open_for_writing(sw, dir / "sweep.csv");
        sw << "# manifest " << hash << "\n";
        sw << "W,S_max,pairs\n";
        for (const auto &p : points) {
            sw << exact(p.window) << "," << (p.s_max ? fmt(*p.s_max) : "") << "," << p.pairs << "\n";
        }
    }
    io::write_manifest(dir / "manifest.json", manifest);

    out << "coincidences " << table.total_coincidences() << "\n";
    if (estimate) {
        out << "delta " << exact(estimate->delta) << " (" << fmt(estimate->delta / cfg.tau) << " ticks, peak/mean "
            << fmt(estimate->peak_to_mean, 4) << (estimate->low_confidence ? ", low confidence" : "") << ")\n";
    }
    if (report.s_max) {
        out << "S_max " << fmt(report.s_max->value) << "\n";
    }
    return kOk;
}

struct OracleOptions {
    std::string model = "det";
    std::string kind = "spin";
    double d = 3;
    std::string theta_grid = "181";
    std::string mode = "both";
    std::string weight = "vanishing";
    std::optional<double> window;
    double tau = 0.001;
    double tolerance = 1e-8;
    std::string curve = "E";
    std::string out;
};

std::vector<double> parse_grid(const std::string &text) {
    auto f = split(text, ':');
    if (f.size() == 1) {
        return oracle::linear_grid(0, std::numbers::pi, parse_count("theta-grid", f[0]));
    }
    if (f.size() == 3) {
        return oracle::linear_grid(parse_number("theta-grid", f[0]), parse_number("theta-grid", f[1]),
                                   parse_count("theta-grid", f[2]));
    }
    throw ConfigError("theta-grid: expected n or lo:hi:n");
}

io::RunManifest parameter_manifest(const std::string &command, std::map<std::string, std::string> parameters,
                                   std::vector<std::string> outputs) {
    io::RunManifest m;
    m.command = command;
    m.parameters = std::move(parameters);
    m.outputs = std::move(outputs);
    return m;
}

/// Writes to <dir>/<name> when a directory is given, else to out.
class Output {
   public:
    Output(const std::string &dir, const std::string &name, std::ostream &fallback) : stream_(&fallback) {
        if (!dir.empty()) {
            prepare_dir(dir);
            open_for_writing(file_, fs::path(dir) / name);
            stream_ = &file_;
        }
    }
    std::ostream &operator*() {
        return *stream_;
    }

   private:
    std::ofstream file_;
    std::ostream *stream_;
};

int run_oracle(const OracleOptions &o, std::ostream &out, std::ostream &err) {
    oracle::OracleSpec spec;
    if (o.model == "det") {
        spec.response = oracle::Response::deterministic;
    } else if (o.model == "random") {
        spec.response = oracle::Response::pseudo_random;
    } else {
        throw ConfigError("unknown model '" + o.model + "' (expected det|random)");
    }
    spec.kind = sim::parse_particle_kind(o.kind);
    spec.d = o.d;
    if (o.weight == "vanishing") {
        spec.weight = oracle::WeightKind::vanishing_window;
    } else if (o.weight == "continuum") {
        spec.weight = oracle::WeightKind::continuum;
    } else if (o.weight == "discretized") {
        spec.weight = oracle::WeightKind::discretized;
    } else if (o.weight == "none") {
        spec.weight = oracle::WeightKind::none;
    } else {
        throw ConfigError("unknown weight '" + o.weight + "' (expected vanishing|continuum|discretized|none)");
    }
    spec.tau = o.tau;
    spec.window = o.window.value_or(spec.weight == oracle::WeightKind::vanishing_window ? 0.0 : o.tau);
    spec.tolerance = o.tolerance;
    spec.validate();
    if (o.mode != "quadrature" && o.mode != "closed" && o.mode != "both") {
        throw ConfigError("unknown mode '" + o.mode + "' (expected quadrature|closed|both)");
    }
    if (o.curve != "E" && o.curve != "S") {
        throw ConfigError("unknown curve '" + o.curve + "' (expected E|S)");
    }
    auto grid = parse_grid(o.theta_grid);

    int d_int = static_cast<int>(std::lround(o.d));
    bool closed_ok = spec.weight == oracle::WeightKind::vanishing_window && o.d == d_int &&
                     oracle::closed_form_supported(spec.response, spec.kind, d_int);
    bool want_quad = o.mode != "closed";
    bool want_closed = o.mode != "quadrature" && closed_ok;
    if (o.mode == "closed" && !closed_ok) {
        err << "no closed form for model " << o.model << ", kind " << o.kind << ", d " << fmt(o.d) << ", weight "
            << o.weight << "\n";
        return kUnsupported;
    }
    if (o.mode == "both" && !closed_ok) {
        err << "note: no closed form for this model; closed column left empty\n";
    }

    auto quad = [&](double t) { return oracle::expectation_quadrature(spec, t); };
    auto closed = [&](double t) { return *oracle::closed_form_E(spec.response, spec.kind, d_int, t); };
    double freq = spec.kind == sim::ParticleKind::photon ? 2.0 : 1.0;
    auto qm = [&](double t) { return -std::cos(freq * t); };
    auto value = [&](const std::function<double(double)> &e, double t) {
        return o.curve == "E" ? e(t) : 3 * e(t) - e(3 * t);
    };

    std::map<std::string, std::string> params{{"model", o.model},   {"kind", o.kind},
                                              {"d", exact(o.d)},    {"theta_grid", o.theta_grid},
                                              {"mode", o.mode},     {"weight", o.weight},
                                              {"W", exact(spec.window)}, {"tau", exact(spec.tau)},
                                              {"tolerance", exact(spec.tolerance)}, {"curve", o.curve}};
    auto manifest = parameter_manifest("oracle", params, {"oracle.csv", "manifest.json"});
    std::string hash = manifest.hash();
    Output csv(o.out, "oracle.csv", out);
    *csv << "# manifest " << hash << "\n";
    *csv << "theta," << o.curve << "_quadrature," << o.curve << "_closed,abs_diff," << o.curve << "_quantum\n";
    double max_diff = 0;
    double max_dev = 0;
    for (double t : grid) {
        std::optional<double> q;
        std::optional<double> c;
        if (want_quad) {
            q = value(quad, t);
        }
        if (want_closed) {
            c = value(closed, t);
        }
        double ref = value(qm, t);
        double primary = q ? *q : *c;
        max_dev = std::max(max_dev, std::abs(primary - ref));
        std::optional<double> diff;
        if (q && c) {
            diff = std::abs(*q - *c);
            max_diff = std::max(max_diff, *diff);
        }
        *csv << exact(t) << "," << (q ? exact(*q) : "") << "," << (c ? exact(*c) : "") << ","
             << (diff ? fmt(*diff, 6) : "") << "," << exact(ref) << "\n";
    }
    if (!o.out.empty()) {
        io::write_manifest(fs::path(o.out) / "manifest.json", manifest);
    }
    std::ostream &summary = o.out.empty() ? err : out;
    summary << "max |" << o.curve << " - quantum| " << fmt(max_dev, 6) << "\n";
    if (want_quad && want_closed) {
        summary << "max |quadrature - closed| " << fmt(max_diff, 6) << "\n";
        if (max_diff > kAgreement) {
            err << "quadrature and closed form disagree by " << fmt(max_diff, 6) << "\n";
            return kDisagreement;
        }
    }
    return kOk;
}

struct FisherOptions {
    std::string family = "pair";
    int k_max = 8;
    std::size_t points = 181;
    std::string out;
};

int run_fisher(const FisherOptions &o, std::ostream &out) {
    fisher::Family family;
    double period = 2 * std::numbers::pi;
    std::string law;
    if (o.family == "single") {
        family = fisher::Family::single;
        law = "p";
    } else if (o.family == "pair") {
        family = fisher::Family::pair;
        law = "E";
    } else if (o.family == "photon-pair") {
        family = fisher::Family::pair;
        period = std::numbers::pi;
        law = "E";
    } else {
        throw ConfigError("unknown family '" + o.family + "' (expected single|pair|photon-pair)");
    }
    if (o.points < 2) {
        throw ConfigError("points >= 2 required");
    }
    auto best = fisher::minimize_over_family(family, period, o.k_max);
    auto manifest = parameter_manifest(
        "fisher", {{"family", o.family}, {"k_max", std::to_string(o.k_max)}, {"points", std::to_string(o.points)}},
        {"fisher_table.csv", "fisher_curve.csv", "manifest.json"});
    std::string hash = manifest.hash();
    {
        Output table(o.out, "fisher_table.csv", out);
        *table << "# manifest " << hash << "\n";
        *table << "k,I_F,spread,periodic,minimum\n";
        for (const auto &c : best.candidates) {
            *table << c.k << "," << fmt(c.information) << "," << fmt(c.spread, 3) << "," << (c.periodic ? 1 : 0)
                   << "," << (c.k == best.law.k ? 1 : 0) << "\n";
        }
    }
    if (o.out.empty()) {
        out << "\n";
    }
    {
        Output curve(o.out, "fisher_curve.csv", out);
        *curve << "# manifest " << hash << "\n";
        *curve << "theta," << law << "\n";
        for (double t : oracle::linear_grid(0, period, o.points)) {
            *curve << exact(t) << "," << exact(best.law(t)) << "\n";
        }
    }
    if (!o.out.empty()) {
        io::write_manifest(fs::path(o.out) / "manifest.json", manifest);
        out << "k* = " << best.law.k << ", I_F = " << fmt(best.information) << "\n";
    }
    return kOk;
}

int run_convert(std::ostream &out) {
    out << "convert: external tag archives have no documented layout. Rewrite them as station files:\n"
           "  format,1 / station,<1|2> / kind,<spin|photon> / tick_duration,<tau> / settings,<M> /\n"
           "  setting,<m>,<x>,<y>,<z> (photon: setting,<m>,<angle>,<cos 2angle>,<sin 2angle>,0) /\n"
           "  index,setting,outcome,ticks followed by one row per detection, outcome +1 or -1.\n"
           "Unaligned streams are analyzed with 'analyze --unaligned --delta auto'.\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Event-by-event simulation and analysis of EPRB experiments", "eprbsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::kSoftwareVersion));

    auto *sim_cmd = app.add_subcommand("simulate", "Run the simulation and write two station files");
    std::map<std::string, std::string> sim_values;
    std::map<std::string, CLI::Option *> sim_options;
    for (const auto &key : kSimulateKeys) {
        if (key == "binary") {
            continue;
        }
        sim_options[key] = sim_cmd->add_option("--" + key, sim_values[key]);
    }
    sim_options["case"]->description("Source: I (singlet pairs) or II (fixed directions)");
    sim_options["magnet"]->description("dlm | random | sign");
    sim_options["kind"]->description("spin | photon");
    sim_options["dlm-scope"]->description("setting (one DLM per setting) | station");
    sim_options["fixed1"]->description("Case II direction x,y,z (photon: angle)");
    sim_options["settings-file"]->description("Lines station,x,y,z (photon: station,angle)");
    bool sim_binary = false;
    auto *binary_flag = sim_cmd->add_flag("--binary", sim_binary, "Fixed-width binary body");
    std::string sim_config;
    std::string sim_manifest;
    std::string sim_out = ".";
    sim_cmd->add_option("--config", sim_config, "key=value file; flags take precedence");
    sim_cmd->add_option("--manifest", sim_manifest, "Replay the run described by a manifest");
    sim_cmd->add_option("--out", sim_out, "Output directory");

    auto *an_cmd = app.add_subcommand("analyze", "Count coincidences and correlations of two station files");
    AnalyzeOptions an;
    an_cmd->add_option("--in", an.inputs, "Station files of station 1 and 2")->required()->expected(2);
    an_cmd->add_option("--W", an.window, "Coincidence window (default: tau)");
    an_cmd->add_option("--tau", an.tau, "Tick length (default: from station 1)");
    an_cmd->add_option("--delta", an.delta, "Shift of station 2: a value or auto");
    an_cmd->add_option("--histogram-bin", an.histogram_bin, "Bin of the shift search (default: tau)");
    an_cmd->add_option("--search-radius", an.search_radius, "Range of the shift search (default: 50 tau)");
    an_cmd->add_option("--window-sweep", an.window_sweep, "Comma-separated windows for the S_max(W) curve");
    an_cmd->add_flag("--unaligned", an.unaligned, "Pair by time only, ignoring event indices");
    an_cmd->add_option("--out", an.out, "Output directory");

    auto *or_cmd = app.add_subcommand("oracle", "Large-N correlation of the model by quadrature");
    OracleOptions oo;
    or_cmd->add_option("--model", oo.model, "det | random");
    or_cmd->add_option("--kind", oo.kind, "spin | photon");
    or_cmd->add_option("--d", oo.d, "Time-delay exponent");
    or_cmd->add_option("--theta-grid", oo.theta_grid, "n (on [0, pi]) or lo:hi:n");
    or_cmd->add_option("--mode", oo.mode, "quadrature | closed | both");
    or_cmd->add_option("--weight", oo.weight, "vanishing | continuum | discretized | none");
    or_cmd->add_option("--W", oo.window, "Window for continuum and discretized weights");
    or_cmd->add_option("--tau", oo.tau, "Tick length for the discretized weight");
    or_cmd->add_option("--tolerance", oo.tolerance, "Relative tolerance of the quadrature");
    or_cmd->add_option("--curve", oo.curve, "E (correlation) or S (CHSH function)");
    or_cmd->add_option("--out", oo.out, "Output directory (default: CSV on stdout)");

    auto *fi_cmd = app.add_subcommand("fisher", "Minimal Fisher information laws");
    FisherOptions fo;
    fi_cmd->add_option("--family", fo.family, "single | pair | photon-pair");
    fi_cmd->add_option("--k-max", fo.k_max, "Largest k searched");
    fi_cmd->add_option("--points", fo.points, "Points of the minimizer curve");
    fi_cmd->add_option("--out", fo.out, "Output directory (default: CSV on stdout)");

    app.add_subcommand("convert", "Describe the station file layout for external tag data");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (sim_cmd->parsed()) {
            std::map<std::string, std::string> given;
            for (const auto &[key, opt] : sim_options) {
                if (opt->count() > 0) {
                    given[key] = sim_values[key];
                }
            }
            if (binary_flag->count() > 0) {
                given["binary"] = sim_binary ? "true" : "false";
            }
            return simulate(given, sim_config, sim_manifest, sim_out, out);
        }
        if (an_cmd->parsed()) {
            return analyze(an, out);
        }
        if (or_cmd->parsed()) {
            return run_oracle(oo, out, err);
        }
        if (fi_cmd->parsed()) {
            return run_fisher(fo, out);
        }
        return run_convert(out);
    } catch (const FormatError &e) {
        err << "error: " << e.what() << "\n";
        return kFormatError;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const AnalysisError &e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const QuadratureError &e) {
        err << "error: " << e.what() << "\n";
        return kDisagreement;
    } catch (const DegenerateError &e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace eprb::cli
