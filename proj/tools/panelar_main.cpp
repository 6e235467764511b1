#include <CLI11.hpp>

#include <string>
#include <vector>

#include <panelar/panelar.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Panel AR(1) Monte Carlo laboratory"};
    app.require_subcommand(0, 1);

    std::string config_path, out, emit, seed;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--set", sets, "parameter override as dotted.path=value (repeatable)");
    app.add_option("--out", out, "output path (overrides config output_path)");
    app.add_option("--emit", emit, "comma-separated formats: json,csv_stats,csv_quantiles");
    app.add_option("--seed", seed, "master seed (overrides parameters.seed)");

    for (const char* name : {"simulate", "mc", "berry-esseen", "variance-curve", "infer", "wiener"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    std::string command;
    for (const CLI::App* sub : app.get_subcommands()) command = sub->get_name();

    return panelar::run(config_path, sets, command, out, emit, seed);
}
