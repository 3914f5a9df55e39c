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

#ifndef EPRB_ANALYSIS_CORRELATION_H
#define EPRB_ANALYSIS_CORRELATION_H

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "eprb/analysis/coincidence.h"

namespace eprb::analysis {

struct PairCorrelation {
    std::uint32_t setting1 = 0;
    std::uint32_t setting2 = 0;
    /// C++, C+-, C-+, C--.
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t coincidences = 0;
    std::uint64_t events = 0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e = 0.0;
    /// Absent when either outcome series has zero variance.
    std::optional<double> rho;
    /// Coincidences per emitted pair; absent for unaligned streams where the
    /// number of emitted pairs is unknown.
    std::optional<double> fraction;
    /// One standard error of e, sqrt((1 - e^2) / coincidences).
    double e_error = 0.0;
};

/// Throws AnalysisError when the pair has no coincidences.
PairCorrelation correlate(const CoincidenceTable &table, std::uint32_t m1, std::uint32_t m2);

struct ChshValue {
    double value = 0.0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t c = 0;
    std::uint32_t d = 0;
};

struct CorrelationReport {
    std::size_t settings1 = 0;
    std::size_t settings2 = 0;
    double window = 0.0;
    double tau = 0.0;
    /// Indexed by m1 * settings2 + m2; empty pairs are absent.
    std::vector<std::optional<PairCorrelation>> pairs;
    /// Maximum of S over all quadruples with complete data.
    std::optional<ChshValue> s_max;

    const std::optional<PairCorrelation> &find(std::uint32_t m1, std::uint32_t m2) const;
    /// Throws AnalysisError for a missing pair.
    const PairCorrelation &at(std::uint32_t m1, std::uint32_t m2) const;
};

CorrelationReport correlation_report(const CoincidenceTable &table);

/// S = E(a,c) - E(a,d) + E(b,c) + E(b,d), with a, b station-1 settings and
/// c, d station-2 settings. Throws AnalysisError for a missing pair.
double chsh_from_reports(const CorrelationReport &report, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                         std::uint32_t d);

/// S from the four correlations in the order E(a,c), E(a,d), E(b,c), E(b,d).
double chsh_value(double e_ac, double e_ad, double e_bc, double e_bd);

/// Exhaustive scan over all (a, b, c, d). Absent when no quadruple is complete.
std::optional<ChshValue> s_max(const CorrelationReport &report);

/// |E(a,b) - E(a,c)| + E(b,c); local models keep this at or below 1.
double bell_inequality_check(double e_ab, double e_ac, double e_bc);

}  // namespace eprb::analysis

#endif
