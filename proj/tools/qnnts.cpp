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

// qnnts: command-line front end. Every command writes files only; CSV
// outputs get a `<out>.meta.json` sidecar with the effective configuration,
// JSON outputs embed it under "config".

#include "qnnts/bilstm.hpp"
#include "qnnts/csv.hpp"
#include "qnnts/error.hpp"
#include "qnnts/kernels.hpp"
#include "qnnts/metrics.hpp"
#include "qnnts/persist.hpp"
#include "qnnts/signal.hpp"
#include "qnnts/training.hpp"
#include "qnnts/wavelet.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qnnts;

namespace {

constexpr const char *kVersion = "0.1.0";

enum Exit { kOk = 0, kDataFailure = 1, kUsage = 2 };

void write_meta(const fs::path &out, const std::string &command, const json &config) {
    write_json(fs::path(out.string() + ".meta.json"),
               json{{"schema_version", kSchemaVersion},
                    {"kind", "meta"},
                    {"command", command},
                    {"qnnts_version", kVersion},
                    {"config", config}});
}

struct InputOptions {
    std::string path;
    std::string column = "value";
    bool percent_change = false;

    void add(CLI::App *app) {
        app->add_option("--in", path, "Input CSV")->required();
        app->add_option("--column", column,
                        "Column to read (series files use 'value', price files 'close')");
        app->add_flag("--percent-change", percent_change,
                      "Convert the column to percentage changes first (prices)");
    }
    [[nodiscard]] std::vector<double> load() const {
        std::vector<double> v;
        if (percent_change) {
            v = percent_change_of(load_prices(path, column));
        } else if (column == "value") {
            v = csv::read_series(path);
        } else {
            const auto t = csv::read(path);
            const auto col = t.find_column(column);
            if (!col) {
                throw DataError(path + ": missing '" + column + "' column");
            }
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                if (*col >= t.rows[r].size()) {
                    throw DataError(path + ": short row", r + 1);
                }
                v.push_back(csv::parse_double(t.rows[r][*col], r + 1));
            }
        }
        return v;
    }
    [[nodiscard]] json config() const {
        return {{"in", path}, {"column", column}, {"percent_change", percent_change}};
    }
    static std::vector<double> percent_change_of(const std::vector<double> &p) {
        return qnnts::percent_change(p).values;
    }
};

// ---- synth ---------------------------------------------------------------

struct SynthOptions {
    std::string id;
    std::string spec_path;
    std::uint64_t seed = 0;
    std::size_t points = 10000;
    std::string out;
};

void run_synth(const SynthOptions &o) {
    SignalSpec spec;
    if (!o.spec_path.empty()) {
        spec = signal_spec_from_json(read_json(o.spec_path));
        spec.seed = o.seed;
    } else {
        spec = preset(o.id, o.seed, o.points);
    }
    const Series s = synthesize(spec);
    csv::write_text(o.out, csv::series_text(s.values));
    json cfg = to_document(spec);
    cfg.erase("schema_version");
    cfg.erase("kind");
    cfg["signal_id"] = o.id.empty() ? "custom" : o.id;
    write_meta(o.out, "synth", cfg);
    std::cout << "wrote " << s.values.size() << " samples to " << o.out << "\n";
}

// ---- analyze -------------------------------------------------------------

struct PeriodogramOptions {
    InputOptions input;
    double threshold = 50.0;
    std::string out;
    std::string spectrum;
};

void run_periodogram(const PeriodogramOptions &o) {
    const auto x = o.input.load();
    const auto p = periodogram(x);
    const auto peaks = extract_peaks(p, o.threshold);
    std::string text = "frequency,amplitude,power\n";
    for (const auto &c : peaks) {
        text += csv::format_double(c.frequency) + "," + csv::format_double(c.amplitude) +
                "," + csv::format_double(c.amplitude * c.amplitude) + "\n";
    }
    json cfg = o.input.config();
    cfg["threshold"] = o.threshold;
    cfg["n_used"] = p.n;
    cfg["truncated_last_point"] = p.truncated;
    csv::write_text(o.out, text);
    write_meta(o.out, "analyze periodogram", cfg);
    if (!o.spectrum.empty()) {
        std::string spec = "frequency,power\n";
        for (std::size_t k = 0; k < p.power.size(); ++k) {
            spec += csv::format_double(p.frequencies[k]) + "," +
                    csv::format_double(p.power[k]) + "\n";
        }
        csv::write_text(o.spectrum, spec);
        write_meta(o.spectrum, "analyze periodogram", cfg);
    }
    std::cout << peaks.size() << " peaks above " << o.threshold << " written to "
              << o.out << "\n";
}

struct CwtOptions {
    InputOptions input;
    std::size_t noct = 12;
    std::size_t nvoc = 12;
    double alpha = 2.0;
    std::string out;
};

void run_cwt(const CwtOptions &o) {
    const auto x = o.input.load();
    const auto r = cwt(x, o.noct, o.nvoc, o.alpha);
    std::string text = "scale,u,coefficient\n";
    text.reserve(r.coefficients.size() * 40);
    for (std::size_t si = 0; si < r.scales.size(); ++si) {
        const std::string s = csv::format_double(r.scales[si]);
        for (std::size_t u = 0; u < r.n; ++u) {
            text += s;
            text += ',';
            text += std::to_string(u);
            text += ',';
            text += csv::format_double(r.at(si, u));
            text += '\n';
        }
    }
    json cfg = o.input.config();
    cfg["noct"] = o.noct;
    cfg["nvoc"] = o.nvoc;
    cfg["alpha"] = o.alpha;
    cfg["boundary"] = "zero padding";
    cfg["edge_margin"] = r.edge_margin;
    csv::write_text(o.out, text);
    write_meta(o.out, "analyze cwt", cfg);
    std::cout << r.scales.size() << " scales x " << r.n << " shifts written to " << o.out
              << "\n";
}

// ---- prepare -------------------------------------------------------------

struct PrepareOptions {
    InputOptions input;
    WindowConfig window;
    std::string out;
};

void run_prepare(const PrepareOptions &o) {
    const auto x = o.input.load();
    const auto ds = partition_and_window(x, o.window);
    json cfg = o.input.config();
    cfg["window_len"] = o.window.window_len;
    cfg["horizon"] = o.window.horizon;
    cfg["stride"] = o.window.effective_stride();
    cfg["range_lo"] = o.window.range_lo;
    cfg["range_hi"] = o.window.range_hi;
    cfg["validation_fraction"] = o.window.validation_fraction;
    write_json(o.out, to_document(ds, cfg));
    std::cout << ds.train.size() << " train / " << ds.validation.size()
              << " validation / " << ds.test.size() << " test windows written to "
              << o.out << "\n";
}

// ---- train ---------------------------------------------------------------

struct TrainOptions {
    std::string data;
    std::string out;
    std::string loss;
    std::uint64_t seed = 0;
    TrainConfig train;
    std::string optimizer = "adam";
    std::string engine = "branch";
    std::vector<std::size_t> units{32, 8, 1, 1};
    bool quiet = false;

    TrainOptions() { train.batch_size = 32; }

    void add(CLI::App *app, bool qnn) {
        app->add_option("--data", data, "Dataset JSON from `prepare`")->required();
        app->add_option("--out", out, "Model JSON to write")->required();
        app->add_option("--loss", loss, "Per-epoch loss CSV (default <out>.loss.csv)");
        app->add_option("--seed", seed, "Seeds initialisation and batch order")
            ->required();
        app->add_option("--epochs", train.epochs, "Training epochs")->capture_default_str();
        app->add_option("--lr", train.optimizer.lr, "Learning rate")->capture_default_str();
        app->add_option("--batch-size", train.batch_size, "Mini-batch size, 0 = full batch")
            ->capture_default_str();
        app->add_option("--clip", train.clip_norm, "Gradient max-norm, 0 = off")
            ->capture_default_str();
        app->add_option("--threads", train.threads, "Worker threads, 0 = all cores");
        app->add_option("--optimizer", optimizer, "adam or sgd")->capture_default_str();
        app->add_flag("--quiet", quiet, "No per-epoch progress on stderr");
        if (qnn) {
            app->add_option("--engine", engine, "Gradient engine: branch or statevector")
                ->capture_default_str();
        } else {
            app->add_option("--units", units, "Units per direction: seq,sin,one,two")
                ->delimiter(',')
                ->expected(4);
        }
    }

    [[nodiscard]] json config(bool qnn) const {
        json c{{"data", data},
               {"seed", seed},
               {"epochs", train.epochs},
               {"lr", train.optimizer.lr},
               {"beta1", train.optimizer.beta1},
               {"beta2", train.optimizer.beta2},
               {"eps", train.optimizer.eps},
               {"optimizer", optimizer},
               {"batch_size", train.batch_size},
               {"clip_norm", train.clip_norm},
               {"loss", "mse"}};
        if (qnn) {
            c["engine"] = engine;
        } else {
            c["units"] = units;
        }
        return c;
    }

    [[nodiscard]] TrainConfig resolved() const {
        TrainConfig t = train;
        t.seed = seed;
        t.optimizer.kind = optimizer_from_string(optimizer);
        t.engine = gradient_engine_from_string(engine);
        return t;
    }

    [[nodiscard]] EpochCallback progress() const {
        if (quiet) {
            return {};
        }
        const std::size_t every = std::max<std::size_t>(1, train.epochs / 20);
        const std::size_t total = train.epochs;
        return [every, total](std::size_t e, double l) {
            if ((e + 1) % every == 0 || e + 1 == total) {
                std::fprintf(stderr, "epoch %zu/%zu loss %.6g\n", e + 1, total, l);
            }
        };
    }

    void write_loss(const std::vector<double> &history, const json &cfg) const {
        const std::string path = loss.empty() ? out + ".loss.csv" : loss;
        std::string text = "epoch,loss\n";
        for (std::size_t e = 0; e < history.size(); ++e) {
            text += std::to_string(e) + "," + csv::format_double(history[e]) + "\n";
        }
        csv::write_text(path, text);
        write_meta(path, "train", cfg);
    }
};

void run_train_qnn(const TrainOptions &o) {
    const auto ds = dataset_from_json(read_json(o.data));
    const TrainConfig cfg = o.resolved();
    PqcTopology topo;
    topo.n_inputs = ds.window_len;
    topo.validate();
    const auto init = PqcModel::initialized(topo, o.seed);
    const auto r = train_qnn(init, ds.train, cfg, o.progress());
    const json c = o.config(true);
    write_json(o.out, to_document(r.model, c));
    o.write_loss(r.loss_history, c);
    std::cout << "qnn: " << topo.param_count() << " parameters, final loss "
              << (r.loss_history.empty() ? 0.0 : r.loss_history.back()) << "\n";
}

void run_train_bilstm(const TrainOptions &o) {
    const auto ds = dataset_from_json(read_json(o.data));
    const TrainConfig cfg = o.resolved();
    const BilstmSizes sizes{o.units.at(0), o.units.at(1), o.units.at(2), o.units.at(3)};
    const auto init = BilstmModel::initialized(sizes, o.seed);
    const auto r = train_bilstm(init, ds.train, cfg, o.progress());
    const json c = o.config(false);
    write_json(o.out, to_document(r.model, c));
    o.write_loss(r.loss_history, c);
    std::cout << "bilstm: " << init.parameter_count() << " parameters (reference "
              << kReportedParameterCount << "), final loss "
              << (r.loss_history.empty() ? 0.0 : r.loss_history.back()) << "\n";
}

// ---- evaluate ------------------------------------------------------------

struct EvaluateOptions {
    std::string model;
    std::string data;
    std::string out;
    std::string signal_id = "custom";
    std::string tag;
    std::string space = "scaled";
    std::string predictions;
};

void run_evaluate(const EvaluateOptions &o) {
    const json mdoc = read_json(o.model);
    const auto ds = dataset_from_json(read_json(o.data));
    if (ds.test.empty()) {
        throw DataError(o.data + ": dataset has no test windows");
    }
    const std::string kind = mdoc.value("kind", "");
    std::vector<double> pred;
    std::string tag = o.tag;
    if (kind == "qnn") {
        pred = predict_all(qnn_from_json(mdoc), ds.test);
        tag = tag.empty() ? "QNN" : tag;
    } else if (kind == "bilstm") {
        pred = predict_all(bilstm_from_json(mdoc), ds.test);
        tag = tag.empty() ? "BiLSTM" : tag;
    } else {
        throw DataError(o.model + ": not a qnn or bilstm model document");
    }
    std::vector<double> target;
    for (const auto &w : ds.test) {
        target.push_back(w.target);
    }
    const MetricSpace space = metric_space_from_string(o.space);
    if (space == MetricSpace::Original) {
        for (double &v : pred) {
            v = ds.scaler.inverse(v);
        }
        for (double &v : target) {
            v = ds.scaler.inverse(v);
        }
    }
    const LabelledReport rep{o.signal_id, tag, evaluate(pred, target, space)};
    const json cfg{{"model", o.model}, {"data", o.data}, {"space", o.space}};
    write_json(o.out, to_document(rep, cfg));
    if (!o.predictions.empty()) {
        std::string text = "index,target,prediction\n";
        for (std::size_t i = 0; i < pred.size(); ++i) {
            text += std::to_string(i) + "," + csv::format_double(target[i]) + "," +
                    csv::format_double(pred[i]) + "\n";
        }
        csv::write_text(o.predictions, text);
        write_meta(o.predictions, "evaluate", cfg);
    }
    std::cout << o.signal_id << " " << tag << " mse " << rep.report.mse << " sesd "
              << rep.report.sesd << " mr " << rep.report.mr << " sdr " << rep.report.sdr
              << "\n";
}

// ---- report --------------------------------------------------------------

struct ReportOptions {
    std::string dir;
    std::string out;
};

void run_report(const ReportOptions &o) {
    if (!fs::is_directory(o.dir)) {
        throw DataError(o.dir + ": not a directory");
    }
    std::vector<fs::path> files;
    for (const auto &e : fs::recursive_directory_iterator(o.dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<ReportRow> rows;
    for (const auto &f : files) {
        const json doc = read_json(f);
        if (!doc.is_object() || doc.value("kind", "") != "eval_report") {
            continue;
        }
        try {
            auto r = report_from_json(doc);
            rows.push_back({r.signal_id, r.model, r.report});
        } catch (const DataError &e) {
            throw DataError(f.string() + ": " + e.what());
        }
    }
    const auto &ids = preset_ids();
    auto rank = [&](const std::string &id) {
        return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) -
                                        ids.begin());
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const auto &a, const auto &b) {
        return std::tuple(rank(a.signal_id), a.signal_id, a.model) <
               std::tuple(rank(b.signal_id), b.signal_id, b.model);
    });
    csv::write_text(o.out, report_table(rows));
    write_meta(o.out, "report", json{{"dir", o.dir}, {"runs", rows.size()}});
    std::cout << rows.size() << " runs tabulated in " << o.out << "\n";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qnnts: circuit and BiLSTM forecasting benchmarks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    std::string kernel_choice = "auto";
    app.add_option("--kernels", kernel_choice, "Inner-loop kernels: auto, scalar, avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    SynthOptions synth;
    auto *c_synth = app.add_subcommand("synth", "Synthesize a benchmark signal");
    c_synth->add_option("signal_id", synth.id, "F, L or Q followed by noise level 0, 2, 5, 8 or 10");
    c_synth->add_option("--spec", synth.spec_path, "Custom signal_spec JSON");
    c_synth->add_option("--seed", synth.seed, "Noise seed")->required();
    c_synth->add_option("--points", synth.points, "Number of samples")
        ->capture_default_str();
    c_synth->add_option("--out", synth.out, "Series CSV to write")->required();

    auto *c_analyze = app.add_subcommand("analyze", "Spectral analysis of a series");
    c_analyze->require_subcommand(1);
    PeriodogramOptions pg;
    auto *c_pg = c_analyze->add_subcommand("periodogram", "Periodogram peaks");
    pg.input.add(c_pg);
    c_pg->add_option("--threshold", pg.threshold, "Minimum squared amplitude")
        ->capture_default_str();
    c_pg->add_option("--out", pg.out, "Peaks CSV")->required();
    c_pg->add_option("--spectrum", pg.spectrum, "Optional full spectrum CSV");
    CwtOptions cw;
    auto *c_cwt = c_analyze->add_subcommand("cwt", "Continuous wavelet transform");
    cw.input.add(c_cwt);
    c_cwt->add_option("--noct", cw.noct, "Octaves")->capture_default_str();
    c_cwt->add_option("--nvoc", cw.nvoc, "Voices per octave")->capture_default_str();
    c_cwt->add_option("--alpha", cw.alpha, "Smallest scale")->capture_default_str();
    c_cwt->add_option("--out", cw.out, "Long-form CSV")->required();

    PrepareOptions prep;
    auto *c_prep = app.add_subcommand("prepare", "Split, scale and window a series");
    prep.input.add(c_prep);
    c_prep->add_option("--out", prep.out, "Dataset JSON")->required();
    c_prep->add_option("--window", prep.window.window_len)->capture_default_str();
    c_prep->add_option("--horizon", prep.window.horizon)->capture_default_str();
    c_prep->add_option("--stride", prep.window.stride,
                       "0 = window + horizon (non-overlapping)")
        ->capture_default_str();
    c_prep->add_option("--lo", prep.window.range_lo)->capture_default_str();
    c_prep->add_option("--hi", prep.window.range_hi)->capture_default_str();
    c_prep->add_option("--validation", prep.window.validation_fraction,
                       "Fraction of train windows held out")
        ->capture_default_str();

    auto *c_train = app.add_subcommand("train", "Train a model");
    c_train->require_subcommand(1);
    TrainOptions tq;
    auto *c_tq = c_train->add_subcommand("qnn", "Parameterised circuit");
    tq.add(c_tq, true);
    TrainOptions tb;
    auto *c_tb = c_train->add_subcommand("bilstm", "BiLSTM baseline");
    tb.add(c_tb, false);

    EvaluateOptions ev;
    auto *c_eval = app.add_subcommand("evaluate", "Test-set metrics for a model");
    c_eval->add_option("--model", ev.model)->required();
    c_eval->add_option("--data", ev.data)->required();
    c_eval->add_option("--out", ev.out, "Report JSON")->required();
    c_eval->add_option("--signal-id", ev.signal_id)->capture_default_str();
    c_eval->add_option("--tag", ev.tag, "Model label (default QNN / BiLSTM)");
    c_eval->add_option("--space", ev.space, "scaled or original")
        ->check(CLI::IsMember({"scaled", "original"}))
        ->capture_default_str();
    c_eval->add_option("--predictions", ev.predictions, "Optional per-window CSV");

    ReportOptions rep;
    auto *c_rep = app.add_subcommand("report", "Tabulate a directory of reports");
    c_rep->add_option("--dir", rep.dir)->required();
    c_rep->add_option("--out", rep.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (kernel_choice == "scalar") {
            kernels::select(kernels::Backend::Scalar);
        } else if (kernel_choice == "avx2" && !kernels::select(kernels::Backend::Avx2)) {
            throw ConfigError("AVX2 kernels are not available here");
        }

        if (c_synth->parsed()) {
            if (synth.id.empty() == synth.spec_path.empty()) {
                throw ArgumentError("synth needs exactly one of signal_id or --spec");
            }
            run_synth(synth);
        } else if (c_pg->parsed()) {
            run_periodogram(pg);
        } else if (c_cwt->parsed()) {
            run_cwt(cw);
        } else if (c_prep->parsed()) {
            run_prepare(prep);
        } else if (c_tq->parsed()) {
            run_train_qnn(tq);
        } else if (c_tb->parsed()) {
            run_train_bilstm(tb);
        } else if (c_eval->parsed()) {
            run_evaluate(ev);
        } else if (c_rep->parsed()) {
            run_report(rep);
        }
    } catch (const ArgumentError &e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataFailure;
    }
    return kOk;
}
