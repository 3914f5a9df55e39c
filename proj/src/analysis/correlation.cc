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

#include "eprb/analysis/correlation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "eprb/core/error.h"

namespace eprb::analysis {

PairCorrelation correlate(const CoincidenceTable &table, std::uint32_t m1, std::uint32_t m2) {
    if (m1 >= table.settings1() || m2 >= table.settings2()) {
        throw AnalysisError("setting pair (" + std::to_string(m1) + ", " + std::to_string(m2) + ") out of range");
    }
    PairCorrelation p;
    p.setting1 = m1;
    p.setting2 = m2;
    p.counts = {table.count(m1, m2, 1, 1), table.count(m1, m2, 1, -1), table.count(m1, m2, -1, 1),
                table.count(m1, m2, -1, -1)};
    p.coincidences = p.counts[0] + p.counts[1] + p.counts[2] + p.counts[3];
    p.events = table.events(m1, m2);
    if (p.coincidences == 0) {
        throw AnalysisError("no coincidences for setting pair (" + std::to_string(m1) + ", " + std::to_string(m2) +
                            ")");
    }
    auto pp = static_cast<__int128>(p.counts[0]);
    auto pm = static_cast<__int128>(p.counts[1]);
    auto mp = static_cast<__int128>(p.counts[2]);
    auto mm = static_cast<__int128>(p.counts[3]);
    __int128 n = p.coincidences;
    __int128 sx = pp + pm - mp - mm;
    __int128 sy = pp + mp - pm - mm;
    __int128 sxy = pp + mm - pm - mp;
    double dn = static_cast<double>(n);
    p.e1 = static_cast<double>(sx) / dn;
    p.e2 = static_cast<double>(sy) / dn;
    p.e = static_cast<double>(sxy) / dn;

    __int128 var1 = n * n - sx * sx;
    __int128 var2 = n * n - sy * sy;
    if (var1 > 0 && var2 > 0) {
        double num = static_cast<double>(n * sxy - sx * sy);
        double r = num / (std::sqrt(static_cast<double>(var1)) * std::sqrt(static_cast<double>(var2)));
        p.rho = std::clamp(r, -1.0, 1.0);
    }
    if (p.events > 0) {
        p.fraction = dn / static_cast<double>(p.events);
    }
    p.e_error = std::sqrt(std::max(0.0, 1 - p.e * p.e) / dn);
    return p;
}

const std::optional<PairCorrelation> &CorrelationReport::find(std::uint32_t m1, std::uint32_t m2) const {
    if (m1 >= settings1 || m2 >= settings2) {
        throw AnalysisError("setting pair (" + std::to_string(m1) + ", " + std::to_string(m2) + ") out of range");
    }
    return pairs[m1 * settings2 + m2];
}

const PairCorrelation &CorrelationReport::at(std::uint32_t m1, std::uint32_t m2) const {
    const auto &p = find(m1, m2);
    if (!p) {
        throw AnalysisError("no coincidences for setting pair (" + std::to_string(m1) + ", " + std::to_string(m2) +
                            ")");
    }
    return *p;
}

CorrelationReport correlation_report(const CoincidenceTable &table) {
    CorrelationReport r;
    r.settings1 = table.settings1();
    r.settings2 = table.settings2();
    r.window = table.window;
    r.tau = table.tau;
    r.pairs.resize(r.settings1 * r.settings2);
    for (std::uint32_t a = 0; a < r.settings1; a++) {
        for (std::uint32_t b = 0; b < r.settings2; b++) {
            if (table.coincidences(a, b) > 0) {
                r.pairs[a * r.settings2 + b] = correlate(table, a, b);
            }
        }
    }
    r.s_max = s_max(r);
    return r;
}

double chsh_value(double e_ac, double e_ad, double e_bc, double e_bd) {
    return e_ac - e_ad + e_bc + e_bd;
}

double chsh_from_reports(const CorrelationReport &report, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                         std::uint32_t d) {
    return chsh_value(report.at(a, c).e, report.at(a, d).e, report.at(b, c).e, report.at(b, d).e);
}

std::optional<ChshValue> s_max(const CorrelationReport &report) {
    const std::size_t m1 = report.settings1;
    const std::size_t m2 = report.settings2;
    std::vector<double> e(m1 * m2, 0.0);
    std::vector<char> ok(m1 * m2, 0);
    for (std::size_t i = 0; i < e.size(); i++) {
        if (report.pairs[i]) {
            e[i] = report.pairs[i]->e;
            ok[i] = 1;
        }
    }
    std::optional<ChshValue> best;
    for (std::uint32_t a = 0; a < m1; a++) {
        for (std::uint32_t b = 0; b < m1; b++) {
            for (std::uint32_t c = 0; c < m2; c++) {
                if (!ok[a * m2 + c] || !ok[b * m2 + c]) {
                    continue;
                }
                for (std::uint32_t d = 0; d < m2; d++) {
                    if (!ok[a * m2 + d] || !ok[b * m2 + d]) {
                        continue;
                    }
                    double s = chsh_value(e[a * m2 + c], e[a * m2 + d], e[b * m2 + c], e[b * m2 + d]);
                    if (!best || s > best->value) {
                        best = ChshValue{s, a, b, c, d};
                    }
                }
            }
        }
    }
    return best;
}

double bell_inequality_check(double e_ab, double e_ac, double e_bc) {
    return std::abs(e_ab - e_ac) + e_bc;
}

}  // namespace eprb::analysis
