#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "adkit/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw adkit::ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw adkit::ConfigError("invalid JSON in " + path + ": " + e.what());
    }
}

void print_catalog() {
    for (const auto& e : adkit::experiment_registry()) {
        std::cout << e.name << "\n  " << e.description << "\n  columns: ";
        for (std::size_t i = 0; i < e.columns.size(); ++i) std::cout << (i ? "," : "") << e.columns[i];
        std::cout << "\n  default trials: " << e.default_trials << "\n  parameters: " << e.defaults.dump() << "\n";
    }
}

fs::path sibling(const fs::path& csv, const std::string& suffix, const std::string& ext) {
    return csv.parent_path() / (csv.stem().string() + suffix + ext);
}

int run(const std::string& name, const std::string& config_path, std::optional<std::uint64_t> seed,
        std::optional<int> trials, std::string out_path, bool do_check, bool serial) {
    const json config = read_config(config_path);
    if (name.empty()) throw adkit::ConfigError("no experiment given");

    adkit::RunOptions opt;
    opt.exec = serial ? adkit::Exec::Serial : adkit::Exec::Parallel;
    if (seed) {
        opt.seed = *seed;
    } else if (config.contains("seed")) {
        if (!config.at("seed").is_number_unsigned()) throw adkit::ConfigError("'seed' must be a non-negative integer");
        opt.seed = config.at("seed").get<std::uint64_t>();
    }
    opt.trials = trials;
    if (out_path.empty()) out_path = config.value("output", name + ".csv");

    const auto t0 = std::chrono::steady_clock::now();
    const adkit::ExperimentOutput res = adkit::run_experiment(name, config, opt);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path csv(out_path);
    if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
    {
        std::ofstream f(csv);
        if (!f) throw std::runtime_error("cannot write " + csv.string());
        adkit::write_csv(f, res.table);
    }
    json extra_files = json::object();
    for (const auto& [key, table] : res.extra) {
        const fs::path p = sibling(csv, "_" + key, ".csv");
        std::ofstream f(p);
        adkit::write_csv(f, table);
        extra_files[key] = p.filename().string();
    }

    json checks = json::array();
    bool all_pass = true;
    for (const auto& c : res.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all_pass = all_pass && c.pass;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
    json meta = {{"experiment", name},
                 {"toolkit_version", adkit::kToolkitVersion},
                 {"config", config},
                 {"seed", opt.seed},
                 {"trials", res.summary.at("trials")},
                 {"parameters", res.summary.at("parameters")},
                 {"wall_time_s", wall},
                 {"columns", res.table.columns},
                 {"rows", res.table.rows.size()},
                 {"extra_tables", extra_files},
                 {"checks", checks},
                 {"summary", res.summary}};
    meta["summary"].erase("parameters");
    meta["summary"].erase("trials");
    std::ofstream(sibling(csv, "", ".json")) << meta.dump(2) << "\n";
    std::cout << "wrote " << csv.string() << " (" << res.table.rows.size() << " rows, " << wall << " s)\n";
    return do_check && !all_pass ? kExitCheck : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic-diversity experiment toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", adkit::kToolkitVersion);

    auto* list = app.add_subcommand("list", "List registered experiments with their parameter schemas");
    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config");
    std::string name, config, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool check = false, serial = false;
    run_cmd->add_option("experiment", name, "Experiment name")->required();
    run_cmd->add_option("--config", config, "JSON config file")->required();
    run_cmd->add_option("--seed", seed, "Override the config seed");
    run_cmd->add_option("--trials", trials, "Override the trial count");
    run_cmd->add_option("--out", out, "Output CSV path (JSON sidecar written alongside)");
    run_cmd->add_flag("--check", check, "Exit with status 3 when any acceptance check fails");
    run_cmd->add_flag("--serial", serial, "Use the serial reference path instead of OpenMP");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (list->parsed()) {
        print_catalog();
        return kExitOk;
    }
    try {
        return run(name, config, seed, trials, out, check, serial);
    } catch (const adkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
