// sweetspot: sweeps, sweet-spot extraction, datasets and the regressor.

#include "sweetspot/io/serialize.hpp"
#include "sweetspot/io/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace sweetspot;

namespace {

struct Common {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
};

io::RunConfig load(const Common& c)
{
    io::RunConfig cfg = c.config_path.empty() ? io::config_from_json(io::Json::object()) : io::load_config(c.config_path);
    if (c.seed) cfg.override_seed(*c.seed);
    return cfg;
}

std::string out_path(const Common& c, const std::string& name)
{
    fs::create_directories(c.out_dir);
    return (fs::path(c.out_dir) / name).string();
}

void report(const char* what, std::size_t done, std::size_t total)
{
    std::cerr << "\r" << what << " " << done << "/" << total << (done == total ? "\n" : "") << std::flush;
}

void add_common(CLI::App* app, Common& c, bool with_seed = true)
{
    app->add_option("--config", c.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app->add_option("--out", c.out_dir, "output directory");
    if (with_seed) app->add_option("--seed", c.seed, "master seed (overrides the config)");
}

int cmd_sweep(const Common& c, bool svg)
{
    io::RunConfig cfg = load(c);
    SweepScenario scn = cfg.scenario();
    if (cfg.circuit.kind == CircuitKind::Replay) {
        scn.circuit.replay = io::sequence_from_json(io::Json::parse(io::read_text_file(cfg.replay_path)));
    }
    const SweepResult res = run_sweep(scn, [](std::size_t d, std::size_t n) { report("sweep", d, n); });
    const std::string csv = out_path(c, "sweep.csv");
    io::write_text_file(csv, io::sweep_csv(res, cfg.provenance(cfg.seed)));
    std::cout << csv << "\n";
    if (svg) {
        io::PlotOptions opt{cfg.window_lo, cfg.window_hi};
        opt.title = "L=" + std::to_string(cfg.L) + " " + std::string(to_string(cfg.state)) + " " +
                    std::string(to_string(cfg.circuit.kind));
        const std::string path = out_path(c, "sweep.svg");
        io::write_text_file(path, io::svg_log_plot(res.couplings(), res.infidelities(), opt));
        std::cout << path << "\n";
    }
    return 0;
}

int cmd_sweetspot(const Common& c, const std::string& input, std::optional<double> lo, std::optional<double> hi)
{
    const io::RunConfig cfg = load(c);
    const io::SweepCurve curve = io::read_sweep_csv(io::read_csv_file(input));
    const SweetSpot spot =
        find_sweet_spot(curve.couplings, curve.infidelity, lo.value_or(cfg.window_lo), hi.value_or(cfg.window_hi));
    const std::string text = io::sweetspot_csv(spot, cfg.provenance(cfg.seed));
    const std::string path = out_path(c, "sweetspot.csv");
    io::write_text_file(path, text);
    std::cout << io::format_double(spot.j_star) << "," << io::format_double(spot.infidelity_star) << ","
              << io::format_bool(spot.boundary) << "\n";
    return 0;
}

int cmd_dataset(const Common& c)
{
    const io::RunConfig cfg = load(c);
    const auto rows = generate_dataset(cfg.dataset, [](std::size_t d, std::size_t n) { report("dataset", d, n); });
    const std::string path = out_path(c, "dataset.csv");
    io::write_text_file(path, io::dataset_csv(rows, cfg.dataset, cfg.provenance(cfg.dataset.master_seed)));
    std::cout << path << "\n";
    return 0;
}

int cmd_train(const Common& c, const std::string& dataset)
{
    const io::RunConfig cfg = load(c);
    const auto rows = io::read_dataset_csv(io::read_csv_file(dataset));
    const ml::TrainResult res = ml::train(rows, cfg.ml);
    const std::string model = out_path(c, "model.json");
    io::write_text_file(model, io::checkpoint_json(res.regressor, cfg.doc).dump(2) + "\n");
    const std::string hist = out_path(c, "history.csv");
    io::write_text_file(hist, io::history_csv(res.history, cfg.provenance(cfg.ml.seed)));
    const auto& last = res.history.back();
    std::cerr << "epoch " << last.epoch << ": val_mse " << last.val_mse << ", r2_jstar " << last.r2_jstar
              << ", r2_infid " << last.r2_infid << "\n";
    std::cout << model << "\n" << hist << "\n";
    return 0;
}

int cmd_predict(const std::string& model, double L, double lambdaK, double sigma_ratio)
{
    const ml::Regressor reg = io::regressor_from_json(io::Json::parse(io::read_text_file(model)));
    ml::Matrix x(1, 3);
    x << L, lambdaK, sigma_ratio;
    const ml::Matrix y = reg.predict(x);
    std::cout << io::format_double(y(0, 0)) << " " << io::format_double(y(0, 1)) << "\n";
    return 0;
}

int cmd_analytic(const Common& c)
{
    const io::RunConfig cfg = load(c);
    const std::string path = out_path(c, "analytic.csv");
    io::write_text_file(path, io::analytic_csv(cfg.grid.values(), cfg.analytic, cfg.provenance(cfg.seed)));
    std::cout << path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Noise sweet spots of SWAP circuits on a ring of coupled qubits"};
    app.set_version_flag("--version", io::kVersion);
    app.require_subcommand(1);

    Common common;
    std::string svg = "on";
    auto* sweep = app.add_subcommand("sweep", "mean infidelity versus J/lambda0");
    add_common(sweep, common);
    sweep->add_option("--svg", svg, "also write sweep.svg")->check(CLI::IsMember({"on", "off"}));

    std::string input;
    std::optional<double> lo, hi;
    auto* spot = app.add_subcommand("sweetspot", "windowed minimum of a sweep CSV");
    add_common(spot, common, false);
    spot->add_option("input", input, "sweep CSV")->required()->check(CLI::ExistingFile);
    spot->add_option("--window-lo", lo, "window lower bound in J/lambda0");
    spot->add_option("--window-hi", hi, "window upper bound in J/lambda0");

    auto* dataset = app.add_subcommand("dataset", "sweet-spot dataset over (L, lambdaK, sigmaK)");
    add_common(dataset, common);

    std::string dataset_csv;
    auto* train = app.add_subcommand("train", "fit the regressor to a dataset CSV");
    add_common(train, common);
    train->add_option("--dataset", dataset_csv, "dataset CSV")->required()->check(CLI::ExistingFile);

    std::string model;
    double L = 4, lambdaK = 10, sigma_ratio = 0.05;
    auto* predict = app.add_subcommand("predict", "predict (J*/lambda0, 1-F*) from a checkpoint");
    predict->add_option("--model", model, "checkpoint JSON")->required()->check(CLI::ExistingFile);
    predict->add_option("--L", L, "qubit count")->required();
    predict->add_option("--lambdaK", lambdaK, "lambda_K / lambda0")->required();
    predict->add_option("--sigma-ratio", sigma_ratio, "sigma_K / lambda_K")->required();

    auto* analytic = app.add_subcommand("analytic", "two-qubit closed-form fidelity curves");
    add_common(analytic, common, false);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*sweep) return cmd_sweep(common, svg == "on");
        if (*spot) return cmd_sweetspot(common, input, lo, hi);
        if (*dataset) return cmd_dataset(common);
        if (*train) return cmd_train(common, dataset_csv);
        if (*predict) return cmd_predict(model, L, lambdaK, sigma_ratio);
        if (*analytic) return cmd_analytic(common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
