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

#include "qnnts/persist.hpp"

#include "qnnts/csv.hpp"
#include "qnnts/error.hpp"

#include <fstream>
#include <sstream>

namespace qnnts {
namespace {

template <typename T>
T field(const json &doc, const char *key, std::string_view kind) {
    if (!doc.contains(key)) {
        throw DataError(std::string(kind) + " document is missing '" + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception &e) {
        throw DataError(std::string(kind) + " field '" + key + "': " + e.what());
    }
}

json window_json(const Window &w) { return {{"x", w.input}, {"y", w.target}}; }

std::vector<Window> windows_from(const json &arr, std::size_t len) {
    if (!arr.is_array()) {
        throw DataError("dataset windows must be an array");
    }
    std::vector<Window> out;
    out.reserve(arr.size());
    for (const auto &w : arr) {
        Window win{field<std::vector<double>>(w, "x", "window"),
                   field<double>(w, "y", "window")};
        if (win.input.size() != len) {
            throw DataError("dataset window has " +
                            std::to_string(win.input.size()) +
                            " inputs, expected " + std::to_string(len));
        }
        out.push_back(std::move(win));
    }
    return out;
}

json cell_json(const LstmCell &c) {
    return {{"w", c.w}, {"u", c.u}, {"b", c.b}};
}

} // namespace

json read_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path &path, const json &doc) {
    csv::write_text(path, doc.dump(2) + "\n");
}

const json &expect_kind(const json &doc, std::string_view kind) {
    if (!doc.is_object()) {
        throw DataError("expected a JSON object");
    }
    const int version = field<int>(doc, "schema_version", kind);
    if (version != kSchemaVersion) {
        throw DataError("unsupported schema_version " + std::to_string(version) +
                        " (expected " + std::to_string(kSchemaVersion) + ")");
    }
    const auto actual = field<std::string>(doc, "kind", kind);
    if (actual != kind) {
        throw DataError("expected a '" + std::string(kind) + "' document, got '" +
                        actual + "'");
    }
    return doc;
}

json to_document(const PqcModel &model, const json &config) {
    json layers = json::array();
    for (GateKind k : model.topology.layers) {
        layers.push_back(std::string(to_string(k)));
    }
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "qnn"},
             {"n_inputs", model.topology.n_inputs},
             {"layers", layers},
             {"params", model.params},
             {"seed", model.seed}};
    if (!config.is_null()) {
        doc["config"] = config;
    }
    return doc;
}

PqcModel qnn_from_json(const json &doc) {
    expect_kind(doc, "qnn");
    PqcTopology topo;
    topo.n_inputs = field<std::size_t>(doc, "n_inputs", "qnn");
    topo.layers.clear();
    try {
        for (const auto &name : field<std::vector<std::string>>(doc, "layers", "qnn")) {
            topo.layers.push_back(gate_kind_from_string(name));
        }
        topo.validate();
    } catch (const std::exception &e) {
        throw DataError(std::string("qnn layers: ") + e.what());
    }
    PqcModel m(topo);
    m.params = field<std::vector<double>>(doc, "params", "qnn");
    if (m.params.size() != topo.param_count()) {
        throw DataError("qnn params has " + std::to_string(m.params.size()) +
                        " entries, expected " +
                        std::to_string(topo.param_count()));
    }
    m.seed = field<std::uint64_t>(doc, "seed", "qnn");
    return m;
}

json to_document(const BilstmModel &model, const json &config) {
    json layers = json::array();
    for (std::size_t l = 0; l < 4; ++l) {
        const LayerShape &s = model.layers()[l];
        layers.push_back({{"name", s.name},
                          {"input_dim", s.fwd.input_dim},
                          {"hidden_dim", s.fwd.hidden_dim},
                          {"activation", to_string(s.fwd.activation)},
                          {"return_sequences", s.return_sequences},
                          {"forward", cell_json(model.cell(l, 0))},
                          {"backward", cell_json(model.cell(l, 1))}});
    }
    const auto &z = model.sizes();
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "bilstm"},
             {"units", {{"seq", z.seq}, {"sin", z.sin}, {"one", z.one}, {"two", z.two}}},
             {"parameter_count", model.parameter_count()},
             {"seed", model.seed},
             {"layers", layers}};
    if (!config.is_null()) {
        doc["config"] = config;
    }
    return doc;
}

BilstmModel bilstm_from_json(const json &doc) {
    expect_kind(doc, "bilstm");
    const json units = field<json>(doc, "units", "bilstm");
    BilstmSizes z{field<std::size_t>(units, "seq", "bilstm units"),
                  field<std::size_t>(units, "sin", "bilstm units"),
                  field<std::size_t>(units, "one", "bilstm units"),
                  field<std::size_t>(units, "two", "bilstm units")};
    BilstmModel m(z);
    m.seed = field<std::uint64_t>(doc, "seed", "bilstm");
    const json layers = field<json>(doc, "layers", "bilstm");
    if (!layers.is_array() || layers.size() != 4) {
        throw DataError("bilstm document needs exactly 4 layers");
    }
    for (std::size_t l = 0; l < 4; ++l) {
        const LayerShape &s = m.layers()[l];
        const json &lj = layers[l];
        if (field<std::size_t>(lj, "input_dim", "bilstm layer") != s.fwd.input_dim ||
            field<std::size_t>(lj, "hidden_dim", "bilstm layer") != s.fwd.hidden_dim) {
            throw DataError("bilstm layer " + std::string(s.name) +
                            " shape does not match units");
        }
        for (std::size_t d = 0; d < 2; ++d) {
            const CellShape &c = d == 0 ? s.fwd : s.bwd;
            const json cj = field<json>(lj, d == 0 ? "forward" : "backward",
                                        "bilstm layer");
            std::size_t at = c.offset;
            for (const char *key : {"w", "u", "b"}) {
                const auto v = field<std::vector<double>>(cj, key, "bilstm cell");
                const std::size_t h = c.hidden_dim;
                const std::size_t want = key[0] == 'w'   ? 4 * h * c.input_dim
                                         : key[0] == 'u' ? 4 * h * h
                                                         : 4 * h;
                if (v.size() != want) {
                    throw DataError("bilstm " + std::string(s.name) + " '" + key +
                                    "' has wrong length");
                }
                std::copy(v.begin(), v.end(), m.params.begin() +
                                                  static_cast<std::ptrdiff_t>(at));
                at += want;
            }
        }
    }
    return m;
}

json to_document(const WindowedDataset &ds, const json &config) {
    auto arr = [](const std::vector<Window> &ws) {
        json a = json::array();
        for (const auto &w : ws) {
            a.push_back(window_json(w));
        }
        return a;
    };
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "dataset"},
             {"scaler",
              {{"min", ds.scaler.data_min},
               {"max", ds.scaler.data_max},
               {"lo", ds.scaler.range_lo},
               {"hi", ds.scaler.range_hi}}},
             {"window_len", ds.window_len},
             {"horizon", ds.horizon},
             {"stride", ds.stride},
             {"split_index", ds.split_index},
             {"series_length", ds.series_length},
             {"train", arr(ds.train)},
             {"validation", arr(ds.validation)},
             {"test", arr(ds.test)}};
    if (!config.is_null()) {
        doc["config"] = config;
    }
    return doc;
}

WindowedDataset dataset_from_json(const json &doc) {
    expect_kind(doc, "dataset");
    WindowedDataset ds;
    const json sc = field<json>(doc, "scaler", "dataset");
    ds.scaler = {field<double>(sc, "min", "scaler"), field<double>(sc, "max", "scaler"),
                 field<double>(sc, "lo", "scaler"), field<double>(sc, "hi", "scaler")};
    if (!(ds.scaler.data_max > ds.scaler.data_min)) {
        throw DataError("scaler max must exceed min");
    }
    ds.window_len = field<std::size_t>(doc, "window_len", "dataset");
    ds.horizon = field<std::size_t>(doc, "horizon", "dataset");
    ds.stride = field<std::size_t>(doc, "stride", "dataset");
    ds.split_index = field<std::size_t>(doc, "split_index", "dataset");
    ds.series_length = field<std::size_t>(doc, "series_length", "dataset");
    ds.train = windows_from(field<json>(doc, "train", "dataset"), ds.window_len);
    ds.validation = doc.contains("validation")
                        ? windows_from(doc.at("validation"), ds.window_len)
                        : std::vector<Window>{};
    ds.test = windows_from(field<json>(doc, "test", "dataset"), ds.window_len);
    return ds;
}

json to_document(const SignalSpec &spec) {
    json comps = json::array();
    for (const auto &c : spec.components) {
        comps.push_back(
            {{"amplitude", c.amplitude}, {"frequency", c.frequency}, {"phase", c.phase}});
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "signal_spec"},
            {"components", comps},
            {"linear_gradient", spec.linear_gradient},
            {"quadratic_gradient", spec.quadratic_gradient},
            {"noise_coefficient", spec.noise_coefficient},
            {"n_points", spec.n_points},
            {"seed", spec.seed},
            {"snap_to_grid", spec.snap_to_grid}};
}

SignalSpec signal_spec_from_json(const json &doc) {
    expect_kind(doc, "signal_spec");
    SignalSpec spec;
    for (const auto &c : field<json>(doc, "components", "signal_spec")) {
        spec.components.push_back({field<double>(c, "amplitude", "component"),
                                    field<double>(c, "frequency", "component"),
                                    c.value("phase", 0.0)});
    }
    spec.linear_gradient = doc.value("linear_gradient", 0.0);
    spec.quadratic_gradient = doc.value("quadratic_gradient", 0.0);
    spec.noise_coefficient = doc.value("noise_coefficient", 0.0);
    spec.n_points = doc.value("n_points", std::size_t{10000});
    spec.seed = doc.value("seed", std::uint64_t{1});
    spec.snap_to_grid = doc.value("snap_to_grid", true);
    try {
        spec.validate();
    } catch (const ArgumentError &e) {
        throw DataError(std::string("signal_spec: ") + e.what());
    }
    return spec;
}

json to_document(const LabelledReport &r, const json &config) {
    const EvalReport &e = r.report;
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "eval_report"},
             {"signal_id", r.signal_id},
             {"model", r.model},
             {"mse", e.mse},
             {"sesd", e.sesd},
             {"mr", e.mr},
             {"sdr", e.sdr},
             {"n", e.n},
             {"ratio_excluded", e.ratio_excluded},
             {"space", to_string(e.space)}};
    if (!config.is_null()) {
        doc["config"] = config;
    }
    return doc;
}

LabelledReport report_from_json(const json &doc) {
    expect_kind(doc, "eval_report");
    LabelledReport r;
    r.signal_id = field<std::string>(doc, "signal_id", "eval_report");
    r.model = field<std::string>(doc, "model", "eval_report");
    EvalReport &e = r.report;
    e.mse = field<double>(doc, "mse", "eval_report");
    e.sesd = field<double>(doc, "sesd", "eval_report");
    e.mr = field<double>(doc, "mr", "eval_report");
    e.sdr = field<double>(doc, "sdr", "eval_report");
    e.n = field<std::size_t>(doc, "n", "eval_report");
    e.ratio_excluded = field<std::size_t>(doc, "ratio_excluded", "eval_report");
    try {
        e.space = metric_space_from_string(field<std::string>(doc, "space", "eval_report"));
    } catch (const ArgumentError &ex) {
        throw DataError(ex.what());
    }
    return r;
}

} // namespace qnnts
