// Copyright 2026 The qnnts Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Forecast error statistics: MSE, standard deviation of the squared errors
 * (SESD), mean prediction/target ratio (MR) and its standard deviation (SDR).
 * Standard deviations are population (divide by n).
 */
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnnts {

enum class MetricSpace { Scaled, Original };

[[nodiscard]] std::string_view to_string(MetricSpace s);
[[nodiscard]] MetricSpace metric_space_from_string(std::string_view s);

/// Targets with |y| at or below this are left out of the ratio statistics.
inline constexpr double kRatioEpsilon = 1e-9;

struct EvalReport {
    double mse = 0.0;
    double sesd = 0.0;
    double mr = 0.0;
    double sdr = 0.0;
    std::size_t n = 0;
    /// Pairs excluded from mr/sdr because the target was ~0.
    std::size_t ratio_excluded = 0;
    MetricSpace space = MetricSpace::Scaled;
};

/// ArgumentError on empty or mismatched input; DataError when every target
/// is within kRatioEpsilon of zero.
[[nodiscard]] EvalReport evaluate(std::span<const double> predictions,
                                  std::span<const double> targets,
                                  MetricSpace space = MetricSpace::Scaled);

struct ReportRow {
    std::string signal_id;
    std::string model;
    EvalReport report;
};

/// `signal_id,model,mse,sesd,mr,sdr` with 5 decimals, then (if non-empty) a
/// blank line and `signal_id,metric,best_model`. MR is best closest to 1, the
/// others lowest; ties go to the earlier row.
[[nodiscard]] std::string report_table(std::span<const ReportRow> rows);

} // namespace qnnts
