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

#include "eprb/io/station_file.h"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "eprb/analysis/coincidence.h"
#include "eprb/core/error.h"
#include "eprb/sim/config.h"

namespace eprb::io {

namespace {

constexpr int kFormatVersion = 1;
constexpr std::size_t kBinaryRow = 8 + 2 + 1 + 8;

std::string exact(double v) {
    std::ostringstream s;
    s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return s.str();
}

template <typename T>
void put_le(char *dst, T value) {
    auto bits = static_cast<std::make_unsigned_t<T>>(value);
    for (std::size_t i = 0; i < sizeof(T); i++) {
        dst[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    }
}

template <typename T>
T get_le(const char *src) {
    std::make_unsigned_t<T> bits = 0;
    for (std::size_t i = 0; i < sizeof(T); i++) {
        bits |= static_cast<std::make_unsigned_t<T>>(static_cast<unsigned char>(src[i])) << (8 * i);
    }
    return static_cast<T>(bits);
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream s(line);
    while (std::getline(s, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string &text, std::size_t line) {
    double v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
        throw FormatError("expected a number, got '" + text + "'", line);
    }
    return v;
}

template <typename T>
T parse_int(const std::string &text, std::size_t line) {
    T v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw FormatError("expected an integer, got '" + text + "'", line);
    }
    return v;
}

class LineReader {
   public:
    explicit LineReader(std::istream &in) : in_(in) {
    }

    /// Next line that is neither empty nor a comment.
    bool next(std::string &line) {
        while (std::getline(in_, line)) {
            number_++;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty() && line[0] != '#') {
                return true;
            }
        }
        return false;
    }

    std::size_t number() const {
        return number_;
    }

    std::istream &stream() {
        return in_;
    }

   private:
    std::istream &in_;
    std::size_t number_ = 0;
};

std::vector<std::string> expect_key(LineReader &r, const char *key, std::size_t fields) {
    std::string line;
    if (!r.next(line)) {
        throw FormatError(std::string("missing '") + key + "' header line", r.number() + 1);
    }
    auto f = split(line);
    if (f.empty() || f[0] != key) {
        throw FormatError(std::string("expected '") + key + "' header line, got '" + line + "'", r.number());
    }
    if (fields != 0 && f.size() != fields) {
        throw FormatError(std::string("'") + key + "' line needs " + std::to_string(fields - 1) + " values",
                          r.number());
    }
    return f;
}

std::int64_t tick_of(const sim::StationRecord &record, const sim::DetectionEvent &e, double tau) {
    if (record.discretized()) {
        return static_cast<std::int64_t>(e.time);
    }
    return analysis::discretize(e.time, tau);
}

}  // namespace

sim::StationRecord discretized_copy(const sim::StationRecord &record, double tau) {
    if (record.discretized()) {
        return record;
    }
    sim::StationRecord out = record;
    out.tick_duration = tau;
    for (auto &e : out.events) {
        e.time = static_cast<double>(analysis::discretize(e.time, tau));
    }
    return out;
}

StationWriter::StationWriter(std::ostream &out, int station_id, sim::ParticleKind kind,
                             const std::vector<UnitVector3> &settings, double tick_duration, std::uint64_t rows,
                             const StationFileOptions &options)
    : out_(out), binary_(options.binary) {
    if (!(tick_duration > 0) || !std::isfinite(tick_duration)) {
        throw ConfigError("tick duration must be positive");
    }
    out << "# eprbsim station record\n";
    if (!options.manifest_hash.empty()) {
        out << "# manifest " << options.manifest_hash << "\n";
    }
    out << "format," << kFormatVersion << "\n";
    out << "station," << station_id << "\n";
    out << "kind," << sim::to_string(kind) << "\n";
    out << "tick_duration," << exact(tick_duration) << "\n";
    out << "settings," << settings.size() << "\n";
    for (std::size_t m = 0; m < settings.size(); m++) {
        const auto &a = settings[m];
        out << "setting," << m << ",";
        if (kind == sim::ParticleKind::photon) {
            out << exact(polarization_of(a).radians()) << ",";
        }
        out << exact(a.x()) << "," << exact(a.y()) << "," << exact(a.z()) << "\n";
    }
    if (binary_) {
        out << "binary," << rows << "\n";
    } else {
        out << "index,setting,outcome,ticks\n";
    }
}

void StationWriter::write(const sim::DetectionEvent &e, std::int64_t ticks) {
    if (ticks < 0) {
        throw ConfigError("negative time tag at event " + std::to_string(e.index));
    }
    if (!binary_) {
        line_.clear();
        char buf[24];
        auto field = [&](auto v) {
            auto r = std::to_chars(buf, buf + sizeof(buf), v);
            line_.append(buf, r.ptr);
        };
        field(e.index);
        line_ += ',';
        field(e.setting);
        line_ += ',';
        field(static_cast<int>(e.outcome));
        line_ += ',';
        field(ticks);
        line_ += '\n';
        out_ << line_;
        return;
    }
    if (e.setting > std::numeric_limits<std::uint16_t>::max()) {
        throw ConfigError("setting index does not fit the binary format");
    }
    std::array<char, kBinaryRow> row{};
    put_le<std::uint64_t>(row.data(), e.index);
    put_le<std::uint16_t>(row.data() + 8, static_cast<std::uint16_t>(e.setting));
    put_le<std::int8_t>(row.data() + 10, e.outcome);
    put_le<std::uint64_t>(row.data() + 11, static_cast<std::uint64_t>(ticks));
    out_.write(row.data(), row.size());
}

void write_station_file(std::ostream &out, const sim::StationRecord &record, const StationFileOptions &options) {
    double tick = record.discretized() ? record.tick_duration : options.tau;
    StationWriter w(out, record.station_id, record.kind, record.settings, tick, record.events.size(), options);
    for (const auto &e : record.events) {
        w.write(e, tick_of(record, e, tick));
    }
}

void write_station_file(const std::filesystem::path &path, const sim::StationRecord &record,
                        const StationFileOptions &options) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    write_station_file(out, record, options);
    if (!out) {
        throw ConfigError("write to " + path.string() + " failed");
    }
}

sim::StationRecord read_station_file(std::istream &in) {
    LineReader r(in);
    sim::StationRecord rec;
    auto f = expect_key(r, "format", 2);
    if (parse_int<int>(f[1], r.number()) != kFormatVersion) {
        throw FormatError("unsupported format version " + f[1], r.number());
    }
    f = expect_key(r, "station", 2);
    rec.station_id = parse_int<int>(f[1], r.number());
    if (rec.station_id != 1 && rec.station_id != 2) {
        throw FormatError("station must be 1 or 2", r.number());
    }
    f = expect_key(r, "kind", 2);
    try {
        rec.kind = sim::parse_particle_kind(f[1]);
    } catch (const ConfigError &e) {
        throw FormatError(e.what(), r.number());
    }
    f = expect_key(r, "tick_duration", 2);
    rec.tick_duration = parse_double(f[1], r.number());
    if (!(rec.tick_duration > 0)) {
        throw FormatError("tick_duration must be positive", r.number());
    }
    f = expect_key(r, "settings", 2);
    auto m = parse_int<std::size_t>(f[1], r.number());
    if (m == 0) {
        throw FormatError("at least one setting is required", r.number());
    }
    bool photon = rec.kind == sim::ParticleKind::photon;
    for (std::size_t i = 0; i < m; i++) {
        f = expect_key(r, "setting", photon ? 6 : 5);
        if (parse_int<std::size_t>(f[1], r.number()) != i) {
            throw FormatError("settings must be listed in order", r.number());
        }
        std::size_t c = photon ? 3 : 2;
        try {
            auto v = UnitVector3::from_unit_components(parse_double(f[c], r.number()),
                                                       parse_double(f[c + 1], r.number()),
                                                       parse_double(f[c + 2], r.number()));
            if (photon) {
                auto a = doubled(PolarizationAngle(parse_double(f[2], r.number())));
                if (std::abs(a.x() - v.x()) > 1e-9 || std::abs(a.y() - v.y()) > 1e-9 || v.z() != 0.0) {
                    throw FormatError("polarizer angle does not match its doubled form", r.number());
                }
            }
            rec.settings.push_back(v);
        } catch (const ConfigError &e) {
            throw FormatError(e.what(), r.number());
        }
    }
    std::string line;
    if (!r.next(line)) {
        throw FormatError("missing column line", r.number() + 1);
    }
    auto check_event = [&](const sim::DetectionEvent &e, std::size_t at) {
        if (e.outcome != 1 && e.outcome != -1) {
            throw FormatError("outcome must be +1 or -1", at);
        }
        if (e.setting >= m) {
            throw FormatError("setting index " + std::to_string(e.setting) + " out of range", at);
        }
        if (!rec.events.empty() && e.index <= rec.events.back().index) {
            throw FormatError("rows must be sorted by event index", at);
        }
    };
    if (line == "index,setting,outcome,ticks") {
        while (r.next(line)) {
            f = split(line);
            if (f.size() != 4) {
                throw FormatError("expected 4 columns, got " + std::to_string(f.size()), r.number());
            }
            sim::DetectionEvent e;
            e.index = parse_int<std::uint64_t>(f[0], r.number());
            e.setting = parse_int<std::uint32_t>(f[1], r.number());
            e.outcome = static_cast<std::int8_t>(parse_int<int>(f[2], r.number()));
            auto k = parse_int<std::int64_t>(f[3], r.number());
            if (k < 0) {
                throw FormatError("time tag must be >= 0", r.number());
            }
            e.time = static_cast<double>(k);
            check_event(e, r.number());
            rec.events.push_back(e);
        }
        return rec;
    }
    f = split(line);
    if (f.size() != 2 || f[0] != "binary") {
        throw FormatError("expected column line 'index,setting,outcome,ticks' or 'binary,<rows>'", r.number());
    }
    auto rows = parse_int<std::uint64_t>(f[1], r.number());
    std::array<char, kBinaryRow> row{};
    for (std::uint64_t i = 0; i < rows; i++) {
        if (!r.stream().read(row.data(), row.size())) {
            throw FormatError("binary body ends after " + std::to_string(i) + " of " + std::to_string(rows) +
                                  " rows",
                              r.number());
        }
        sim::DetectionEvent e;
        e.index = get_le<std::uint64_t>(row.data());
        e.setting = get_le<std::uint16_t>(row.data() + 8);
        e.outcome = get_le<std::int8_t>(row.data() + 10);
        e.time = static_cast<double>(get_le<std::uint64_t>(row.data() + 11));
        check_event(e, r.number());
        rec.events.push_back(e);
    }
    return rec;
}

sim::StationRecord read_station_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string(), 0);
    }
    return read_station_file(in);
}

std::string manifest_hash_of(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    while (std::getline(in, line) && !line.empty() && line[0] == '#') {
        const std::string key = "# manifest ";
        if (line.rfind(key, 0) == 0) {
            return line.substr(key.size());
        }
    }
    return {};
}

}  // namespace eprb::io
