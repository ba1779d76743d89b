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
 * JSON documents for models, datasets and evaluation reports. Every document
 * carries "schema_version" and "kind"; readers reject anything else with a
 * DataError. See docs/FORMATS.md.
 */
#pragma once

#include "qnnts/bilstm.hpp"
#include "qnnts/dataset.hpp"
#include "qnnts/metrics.hpp"
#include "qnnts/pqc.hpp"
#include "qnnts/signal.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace qnnts {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

[[nodiscard]] json read_json(const std::filesystem::path &path);
/// Two-space indented, trailing newline, parent directories created.
void write_json(const std::filesystem::path &path, const json &doc);

/// Checks schema_version and kind; returns the document for chaining.
const json &expect_kind(const json &doc, std::string_view kind);

[[nodiscard]] json to_document(const PqcModel &model, const json &config = {});
[[nodiscard]] PqcModel qnn_from_json(const json &doc);

[[nodiscard]] json to_document(const BilstmModel &model, const json &config = {});
[[nodiscard]] BilstmModel bilstm_from_json(const json &doc);

[[nodiscard]] json to_document(const WindowedDataset &ds, const json &config = {});
[[nodiscard]] WindowedDataset dataset_from_json(const json &doc);

/// Custom synthesis recipe; omitted fields keep SignalSpec defaults.
[[nodiscard]] json to_document(const SignalSpec &spec);
[[nodiscard]] SignalSpec signal_spec_from_json(const json &doc);

struct LabelledReport {
    std::string signal_id;
    std::string model;
    EvalReport report;
};

[[nodiscard]] json to_document(const LabelledReport &r, const json &config = {});
[[nodiscard]] LabelledReport report_from_json(const json &doc);

} // namespace qnnts
