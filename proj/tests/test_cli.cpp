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

#include "qnnts/csv.hpp"
#include "qnnts/persist.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("qnnts_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    [[nodiscard]] std::string operator/(const std::string &name) const {
        return (dir / name).string();
    }
    static int &counter() {
        static int c = 0;
        return c;
    }
};

int run(const std::string &args) {
    const std::string cmd = std::string(QNNTS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t data_rows(const std::string &path) {
    return qnnts::csv::read(path).rows.size();
}

} // namespace

TEST_CASE("synth is deterministic and sized", "[cli]") {
    Scratch s;
    REQUIRE(run("synth Q5 --seed 3 --out " + (s / "a.csv")) == 0);
    REQUIRE(run("synth Q5 --seed 3 --out " + (s / "b.csv")) == 0);
    CHECK(slurp(s / "a.csv") == slurp(s / "b.csv"));
    CHECK(slurp(s / "a.csv.meta.json") == slurp(s / "b.csv.meta.json"));
    CHECK(data_rows(s / "a.csv") == 10000);

    REQUIRE(run("synth Q5 --seed 4 --out " + (s / "c.csv")) == 0);
    CHECK(slurp(s / "a.csv") != slurp(s / "c.csv"));

    REQUIRE(run("synth F0 --seed 1 --points 500 --out " + (s / "d.csv")) == 0);
    CHECK(data_rows(s / "d.csv") == 500);
}

TEST_CASE("synth rejects bad input", "[cli]") {
    Scratch s;
    CHECK(run("synth Z9 --seed 1 --out " + (s / "z.csv")) == 2);
    CHECK_FALSE(fs::exists(s / "z.csv"));
    CHECK(run("synth F0 --out " + (s / "z.csv")) == 2);
    CHECK(run("synth --seed 1 --out " + (s / "z.csv")) == 2);
    CHECK(run("frobnicate") == 2);
}

TEST_CASE("synth from a custom spec", "[cli]") {
    Scratch s;
    std::ofstream(s / "spec.json") << R"({"schema_version":1,"kind":"signal_spec",
        "components":[{"amplitude":2.0,"frequency":0.125,"phase":0.0}],
        "n_points":64})";
    REQUIRE(run("synth --spec " + (s / "spec.json") + " --seed 1 --out " + (s / "x.csv")) ==
            0);
    const auto v = qnnts::csv::read_series(s / "x.csv");
    REQUIRE(v.size() == 64);
    CHECK(v[2] == Catch::Approx(2.0).margin(1e-12));

    std::ofstream(s / "bad.json") << R"({"schema_version":1,"kind":"dataset"})";
    CHECK(run("synth --spec " + (s / "bad.json") + " --seed 1 --out " + (s / "y.csv")) == 1);
}

TEST_CASE("periodogram recovers the F0 components", "[cli]") {
    Scratch s;
    REQUIRE(run("synth F0 --seed 1 --out " + (s / "f0.csv")) == 0);
    REQUIRE(run("analyze periodogram --in " + (s / "f0.csv") + " --out " + (s / "p.csv") +
                " --spectrum " + (s / "spec.csv")) == 0);
    const auto t = qnnts::csv::read(s / "p.csv");
    CHECK(t.header == std::vector<std::string>{"frequency", "amplitude", "power"});
    CHECK(t.rows.size() == 13);
    CHECK(data_rows(s / "spec.csv") == 5001);
}

TEST_CASE("cwt writes one row per scale and shift", "[cli]") {
    Scratch s;
    REQUIRE(run("synth L2 --seed 1 --points 64 --out " + (s / "l3.csv")) == 0);
    REQUIRE(run("analyze cwt --in " + (s / "l3.csv") + " --out " + (s / "w.csv")) == 0);
    const auto t = qnnts::csv::read(s / "w.csv");
    CHECK(t.header == std::vector<std::string>{"scale", "u", "coefficient"});
    CHECK(t.rows.size() == 144 * 64);
    const auto meta = qnnts::read_json(s / "w.csv.meta.json");
    CHECK(meta.at("config").at("noct") == 12);
}

TEST_CASE("missing or malformed input fails cleanly", "[cli]") {
    Scratch s;
    CHECK(run("analyze periodogram --in " + (s / "nope.csv") + " --out " + (s / "p.csv")) ==
          1);
    std::ofstream(s / "bad.csv") << "t,value\n0,1\n1,oops\n";
    CHECK(run("prepare --in " + (s / "bad.csv") + " --out " + (s / "d.json")) == 1);
    CHECK_FALSE(fs::exists(s / "d.json"));
}

TEST_CASE("prepare, train, evaluate and report", "[cli]") {
    Scratch s;
    REQUIRE(run("synth F0 --seed 1 --out " + (s / "f0.csv")) == 0);
    REQUIRE(run("prepare --in " + (s / "f0.csv") + " --out " + (s / "ds.json")) == 0);
    const auto ds = qnnts::read_json(s / "ds.json");
    CHECK(ds.at("kind") == "dataset");
    CHECK(ds.at("train").size() == 441);
    CHECK(ds.at("test").size() == 147);

    // Zero epochs: the saved model is exactly the seeded initialisation.
    REQUIRE(run("train qnn --data " + (s / "ds.json") + " --out " + (s / "q.json") +
                " --seed 7 --epochs 0") == 0);
    REQUIRE(run("train qnn --data " + (s / "ds.json") + " --out " + (s / "q2.json") +
                " --seed 7 --epochs 0") == 0);
    CHECK(slurp(s / "q.json") == slurp(s / "q2.json"));
    const auto q = qnnts::qnn_from_json(qnnts::read_json(s / "q.json"));
    const auto init = qnnts::PqcModel::initialized(q.topology, 7);
    CHECK(q.params == init.params);

    REQUIRE(run("train bilstm --data " + (s / "ds.json") + " --out " + (s / "b.json") +
                " --seed 2 --epochs 2 --units 4,2,1,1 --quiet") == 0);
    CHECK(data_rows(s / "b.json.loss.csv") == 2);
    CHECK(qnnts::read_json(s / "b.json").at("parameter_count") == 496);

    fs::create_directories(s.dir / "runs");
    REQUIRE(run("evaluate --model " + (s / "q.json") + " --data " + (s / "ds.json") +
                " --signal-id F0 --out " + (s / "runs/q.json") + " --predictions " +
                (s / "pred.csv")) == 0);
    REQUIRE(run("evaluate --model " + (s / "b.json") + " --data " + (s / "ds.json") +
                " --signal-id F0 --out " + (s / "runs/b.json")) == 0);
    CHECK(data_rows(s / "pred.csv") == 147);
    const auto rep = qnnts::report_from_json(qnnts::read_json(s / "runs/q.json"));
    CHECK(rep.model == "QNN");
    CHECK(rep.report.n == 147);

    REQUIRE(run("report --dir " + (s / "runs") + " --out " + (s / "table.csv")) == 0);
    const std::string table = slurp(s / "table.csv");
    CHECK(table.rfind("signal_id,model,mse,sesd,mr,sdr\nF0,BiLSTM,", 0) == 0);
    CHECK(table.find("\nsignal_id,metric,best_model\n") != std::string::npos);
}

TEST_CASE("wrong document kinds are rejected", "[cli]") {
    Scratch s;
    REQUIRE(run("synth F0 --seed 1 --out " + (s / "f0.csv")) == 0);
    REQUIRE(run("prepare --in " + (s / "f0.csv") + " --out " + (s / "ds.json")) == 0);
    CHECK(run("evaluate --model " + (s / "ds.json") + " --data " + (s / "ds.json") +
              " --out " + (s / "r.json")) == 1);
    CHECK(run("train qnn --data " + (s / "f0.csv") + " --out " + (s / "q.json") +
              " --seed 1 --epochs 0") == 1);
    std::ofstream(s / "future.json") << R"({"schema_version":99,"kind":"dataset"})";
    CHECK(run("train qnn --data " + (s / "future.json") + " --out " + (s / "q.json") +
              " --seed 1 --epochs 0") == 1);
}
