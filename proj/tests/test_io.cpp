#include "sweetspot/io/config.hpp"
#include "sweetspot/io/serialize.hpp"
#include "sweetspot/io/svg.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace sweetspot;
using namespace sweetspot::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("sweetspot_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

/// Run the CLI, capturing stdout and stderr; returns the exit code.
int run_cli(const std::string& args, const fs::path& dir, std::string* out = nullptr, std::string* err = nullptr,
            const std::string& env = "")
{
    const fs::path o = dir / "stdout.txt";
    const fs::path e = dir / "stderr.txt";
    const std::string cmd = env + " \"" SWEETSPOT_CLI "\" " + args + " > \"" + o.string() + "\" 2> \"" + e.string() + "\"";
    const int status = std::system(cmd.c_str());
    if (out) *out = read_text_file(o.string());
    if (err) *err = read_text_file(e.string());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmallSweep = R"({"sweep": {"grid_points": 24}, "mc": {"n_samples": 40, "seed": 3}})";

} // namespace

TEST(Csv, NumberFormatting)
{
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_double(1e-20), "1e-20");
    EXPECT_EQ(parse_double("+2.5"), 2.5);
    EXPECT_EQ(parse_double("1e3"), 1000.0);
    EXPECT_THROW(parse_double("1.2x"), FormatError);
    EXPECT_THROW(parse_double(""), FormatError);
    for (double v : {3.14159265358979, 1e-7, 123456.789}) {
        EXPECT_NEAR(parse_double(format_double(v)), v, 1e-11 * std::abs(v));
    }
}

TEST(Csv, RoundTripWithComments)
{
    std::ostringstream os;
    write_csv(os, {"abc", 9}, {"x", "y"}, {{"1", "2"}, {"3", "4"}}, {"note"});
    EXPECT_EQ(os.str().find('\r'), std::string::npos);
    std::istringstream is(os.str());
    const CsvTable t = read_csv(is);
    ASSERT_EQ(t.comments.size(), 2u);
    EXPECT_NE(t.comments[0].find("config_hash=abc seed=9"), std::string::npos);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(t.numbers("y"), (std::vector<double>{2.0, 4.0}));
}

TEST(Csv, ErrorsNameRowAndColumn)
{
    std::istringstream ragged("a,b\n1,2\n3\n");
    try {
        read_csv(ragged);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
    }
    std::istringstream bad("a,b\n1,2\n3,oops\n");
    const CsvTable t = read_csv(bad);
    try {
        (void)t.numbers("b");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("row 2, column 'b'"), std::string::npos);
    }
    EXPECT_THROW((void)t.column("c"), FormatError);
    std::istringstream empty("# only a comment\n");
    EXPECT_THROW(read_csv(empty), FormatError);
}

TEST(Tables, SweepCsvRoundTrip)
{
    SweepResult res;
    res.points = {{1.0, 0.5, 0.01}, {2.0, 0.25, 0.02}};
    std::istringstream is(sweep_csv(res, {}));
    const SweepCurve c = read_sweep_csv(read_csv(is));
    EXPECT_EQ(c.couplings, (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(c.infidelity, (std::vector<double>{0.5, 0.25}));
    EXPECT_EQ(c.stderr_values, (std::vector<double>{0.01, 0.02}));

    std::istringstream unordered("j_over_lambda0,infidelity_mean\n2,0.1\n1,0.2\n");
    EXPECT_THROW(read_sweep_csv(read_csv(unordered)), FormatError);
}

TEST(Tables, DatasetCsvRoundTrip)
{
    DatasetSpec spec;
    const std::vector<DatasetRow> rows{{4, 3.0, 0.01, 12.5, 0.02, false, {30.0, 70.0}, 17},
                                       {6, 5.5, 0.1, 100.0, 0.3, true, {}, 18}};
    const std::string text = dataset_csv(rows, spec, {});
    std::istringstream is(text);
    const CsvTable t = read_csv(is);
    EXPECT_EQ(t.columns, kDatasetColumns);
    EXPECT_EQ(t.rows[0][t.column("secondary_minima")], "30;70");
    EXPECT_EQ(t.rows[1][t.column("boundary_flag")], "true");
    EXPECT_EQ(t.rows[1][t.column("n_samples")], "1500");
    const auto labeled = read_dataset_csv(t);
    ASSERT_EQ(labeled.size(), 2u);
    EXPECT_EQ(labeled[1].inputs, (std::array<double, 3>{6.0, 5.5, 0.1}));
    EXPECT_EQ(labeled[0].targets, (std::array<double, 2>{12.5, 0.02}));
    EXPECT_TRUE(parse_bool("true"));
    EXPECT_THROW(parse_bool("yes"), FormatError);
}

TEST(Config, DefaultsAndOverrides)
{
    const RunConfig def = parse_config("{}");
    EXPECT_EQ(def.L, 4u);
    EXPECT_EQ(def.n_samples, 1500u);
    EXPECT_EQ(def.grid.points, 120u);
    EXPECT_EQ(def.mode.kind, EvolutionKind::QuasiStaticFactored);
    EXPECT_EQ(def.dataset.row_count(), 144u);

    const RunConfig c = parse_config(R"({"device": {"L": 6, "sigmaK": 0.02}, "state": {"kind": "ghz"},
                                         "trotter": {"mode": "trotter", "N": 8}})");
    EXPECT_EQ(c.L, 6u);
    EXPECT_EQ(c.device.sigmaK, 0.02);
    EXPECT_EQ(c.state, InitialStateKind::GHZ);
    EXPECT_EQ(c.mode.kind, EvolutionKind::Trotterized);
    EXPECT_EQ(c.mode.substeps, 8u);
    EXPECT_EQ(c.scenario().n_qubits, 6u);
    EXPECT_NE(c.hash(), def.hash());
    EXPECT_EQ(parse_config("{}").hash(), def.hash());
}

TEST(Config, StrictRejections)
{
    auto message = [](const std::string& text) {
        try {
            (void)parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message(R"({"device": {"Lq": 4}})").find("device.Lq: unknown key"), std::string::npos);
    EXPECT_NE(message(R"({"device": {"L": "four"}})").find("device.L: expected integer, got string"),
              std::string::npos);
    EXPECT_NE(message(R"({"mc": {"n_samples": 1.5}})").find("mc.n_samples"), std::string::npos);
    EXPECT_NE(message(R"({"circuit": {"kind": "qft"}})").find("circuit.kind"), std::string::npos);
    EXPECT_NE(message(R"({"circuit": {"kind": "replay"}})").find("circuit.replay_path"), std::string::npos);
    EXPECT_NE(message(R"({"sweep": {"window_lo": 200.0}})").find("sweep.window_lo"), std::string::npos);
    EXPECT_NE(message(R"({"device": {"L": 2}})").find("device.L"), std::string::npos);
    EXPECT_NE(message("{\n  \"device\": {\"L\": 4,}\n}").find("line 2"), std::string::npos);
    // Integers are accepted where numbers are expected.
    EXPECT_EQ(parse_config(R"({"device": {"sigmaK": 0}})").device.sigmaK, 0.0);
}

TEST(Config, SeedOverrideReachesEveryStage)
{
    RunConfig c = parse_config("{}");
    const std::string before = c.hash();
    c.override_seed(99);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.dataset.master_seed, 99u);
    EXPECT_EQ(c.ml.seed, 99u);
    EXPECT_NE(c.hash(), before);
}

TEST(Svg, WellFormedLogPlot)
{
    const auto x = log_grid(1.0, 1000.0, 30);
    std::vector<double> y;
    for (double v : x) y.push_back(1.0 / (1.0 + v));
    const std::string svg = svg_log_plot(x, y, {10.0, 100.0, "demo"});
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find("demo"), std::string::npos);
    EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(Serialize, CheckpointRoundTrip)
{
    ml::Regressor reg;
    reg.model = ml::init_model(5);
    reg.inputs = {RealVector::Constant(3, 1.5), RealVector::Constant(3, 2.0)};
    reg.targets = {RealVector::Constant(2, -0.5), RealVector::Constant(2, 0.25)};
    reg.trained = true;
    reg.seed = 5;
    const Json j = Json::parse(checkpoint_json(reg).dump());
    const ml::Regressor back = regressor_from_json(j);
    ml::Matrix x(2, 3);
    x << 4, 3, 0.01, 8, 20, 0.1;
    EXPECT_EQ(back.predict(x), reg.predict(x));

    Json broken = j;
    broken["parameters"].erase(0);
    EXPECT_THROW(regressor_from_json(broken), FormatError);
    broken = j;
    broken["format"] = "other";
    EXPECT_THROW(regressor_from_json(broken), FormatError);
}

TEST(Serialize, SequenceRoundTrip)
{
    auto rng = SeededRng::for_stream(1, {});
    const GateSequence seq = random_sequence(2, 3.0, 3, rng);
    const GateSequence back = sequence_from_json(Json::parse(sequence_json(seq).dump()));
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back.coupling, 3.0);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(max_abs(back.unitaries[k] - seq.unitaries[k]), 0.0);

    Json bad = sequence_json(seq);
    bad["unitaries"][1]["re"][0] = 5.0;
    EXPECT_THROW(sequence_from_json(bad), FormatError);
}

TEST(Cli, SweepIsByteIdenticalAcrossRunsAndWorkers)
{
    const fs::path dir = scratch_dir("sweep");
    write_text_file((dir / "cfg.json").string(), kSmallSweep);
    const std::string cfg = "--config \"" + (dir / "cfg.json").string() + "\"";
    ASSERT_EQ(run_cli("sweep " + cfg + " --out \"" + (dir / "a").string() + "\"", dir), 0);
    ASSERT_EQ(run_cli("sweep " + cfg + " --svg off --out \"" + (dir / "b").string() + "\"", dir, nullptr, nullptr,
                      "SWEETSPOT_WORKERS=3"),
              0);
    const std::string a = read_text_file((dir / "a" / "sweep.csv").string());
    EXPECT_EQ(a, read_text_file((dir / "b" / "sweep.csv").string()));
    EXPECT_TRUE(fs::exists(dir / "a" / "sweep.svg"));
    EXPECT_FALSE(fs::exists(dir / "b" / "sweep.svg"));
    EXPECT_NE(a.find("seed=3"), std::string::npos);

    std::istringstream is(a);
    const SweepCurve c = read_sweep_csv(read_csv(is));
    EXPECT_EQ(c.couplings.size(), 24u);
    for (double v : c.infidelity) {
        EXPECT_GE(v, -1e-10);
        EXPECT_LE(v, 1.0);
    }

    ASSERT_EQ(run_cli("sweep " + cfg + " --seed 4 --svg off --out \"" + (dir / "c").string() + "\"", dir), 0);
    const std::string c4 = read_text_file((dir / "c" / "sweep.csv").string());
    EXPECT_NE(c4.find("seed=4"), std::string::npos);
    EXPECT_NE(c4, a);
}

TEST(Cli, ConfigErrorsExitNonzeroWithFieldPath)
{
    const fs::path dir = scratch_dir("badcfg");
    write_text_file((dir / "bad.json").string(), R"({"device": {"L": "four"}})");
    std::string err;
    EXPECT_EQ(run_cli("sweep --config \"" + (dir / "bad.json").string() + "\" --out \"" + dir.string() + "\"", dir,
                      nullptr, &err),
              1);
    EXPECT_NE(err.find("device.L"), std::string::npos);
    EXPECT_NE(run_cli("nosuchcommand", dir), 0);
    EXPECT_NE(run_cli("sweep --config /nonexistent/cfg.json", dir), 0);
}

TEST(Cli, SweetspotOnVShapedCurve)
{
    const fs::path dir = scratch_dir("vshape");
    SweepResult res;
    for (double j : log_grid(1.0, 1000.0, 61)) res.points.push_back({j, std::abs(std::log10(j / 30.0)), 0.0});
    write_text_file((dir / "v.csv").string(), sweep_csv(res, {}));
    std::string out;
    ASSERT_EQ(run_cli("sweetspot \"" + (dir / "v.csv").string() + "\" --out \"" + dir.string() + "\"", dir, &out), 0);
    const double j_star = std::stod(out.substr(0, out.find(',')));
    EXPECT_LE(std::abs(std::log10(j_star / 30.0)), 0.05);
    EXPECT_NE(out.find(",false"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "sweetspot.csv"));

    // A window that excludes the grid is a usage error.
    EXPECT_EQ(run_cli("sweetspot \"" + (dir / "v.csv").string() + "\" --window-lo 2000 --window-hi 3000 --out \"" +
                          dir.string() + "\"",
                      dir),
              1);
}

TEST(Cli, AnalyticNoiselessGhzIsUnity)
{
    const fs::path dir = scratch_dir("analytic");
    write_text_file((dir / "cfg.json").string(), R"({"analytic": {"sigma": 0.0}, "sweep": {"grid_points": 30}})");
    ASSERT_EQ(run_cli("analytic --config \"" + (dir / "cfg.json").string() + "\" --out \"" + dir.string() + "\"", dir),
              0);
    const CsvTable t = read_csv_file((dir / "analytic.csv").string());
    for (double f : t.numbers("fidelity_ghz")) EXPECT_EQ(f, 1.0);
    const auto up = t.numbers("fidelity_updown");
    EXPECT_LT(*std::min_element(up.begin(), up.end()), 0.5);
}

TEST(Cli, DatasetTrainPredictPipeline)
{
    const fs::path dir = scratch_dir("pipeline");
    write_text_file((dir / "cfg.json").string(), R"({
  "sweep": {"grid_points": 30},
  "dataset": {"L_values": [4], "lambdaK_points": 3, "sigma_ratio_points": 4, "n_samples": 30},
  "ml": {"epochs": 25}
})");
    const std::string cfg = "--config \"" + (dir / "cfg.json").string() + "\" --out \"" + dir.string() + "\"";
    ASSERT_EQ(run_cli("dataset " + cfg, dir), 0);
    const std::string first = read_text_file((dir / "dataset.csv").string());
    const CsvTable t = read_csv_file((dir / "dataset.csv").string());
    EXPECT_EQ(t.rows.size(), 12u);
    ASSERT_EQ(run_cli("dataset " + cfg, dir), 0);
    EXPECT_EQ(read_text_file((dir / "dataset.csv").string()), first);

    ASSERT_EQ(run_cli("train " + cfg + " --dataset \"" + (dir / "dataset.csv").string() + "\"", dir), 0);
    const CsvTable hist = read_csv_file((dir / "history.csv").string());
    EXPECT_EQ(hist.rows.size(), 25u);
    const Json model = Json::parse(read_text_file((dir / "model.json").string()));
    EXPECT_EQ(model["format"], "sweetspot-mlp");
    EXPECT_EQ(model["config"]["ml"]["epochs"], 25);

    std::string out;
    ASSERT_EQ(run_cli("predict --model \"" + (dir / "model.json").string() + "\" --L 4 --lambdaK 10 --sigma-ratio 0.05",
                      dir, &out),
              0);
    std::istringstream is(out);
    double j = 0.0, f = 0.0;
    is >> j >> f;
    EXPECT_TRUE(is);
    EXPECT_GT(j, 0.0);
    EXPECT_TRUE(std::isfinite(f));
}
