#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kinfront/commands.hpp"
#include "kinfront/config.hpp"

namespace {

struct Invocation {
    std::string config;
    std::string out;
    std::string param;
    std::string observed;
    unsigned jobs = 0;
};

}  // namespace

int main(int argc, char** argv) {
    using namespace kinfront;

    CLI::App app{"kinfront: kinetic front solver for diffusant uptake"};
    app.require_subcommand(1);

    Invocation inv;
    auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", inv.config, "configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", inv.out, "output directory (default: out)");
        return sub;
    };
    add("run", "integrate to t_end and write timeseries.csv");
    CLI::App* sweep = add("sweep", "run once per a0 value, in parallel");
    sweep->add_option("--param", inv.param, "a0=v1,v2,...")->required();
    sweep->add_option("--jobs", inv.jobs, "worker threads (0: all cores)");
    add("converge", "temporal and spatial observed orders");
    add("growth", "long-run front growth and power-law tail fit");
    CLI::App* calibrate = add("calibrate", "fit a0 to observed front positions");
    calibrate->add_option("--observed", inv.observed, "CSV of t,s samples")->required()->check(CLI::ExistingFile);
    add("check", "invariant checks on a single run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid_config;
    }

    RunManifest manifest;
    try {
        manifest = load_config(inv.config);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return exit_invalid_config;
    }
    manifest.command = parse_command(app.get_subcommands().front()->get_name());
    if (!inv.out.empty()) manifest.output_dir = inv.out;

    CommandOptions options;
    options.jobs = inv.jobs;
    options.observed_path = inv.observed;
    if (!inv.param.empty()) {
        try {
            options.sweep = parse_sweep_param(inv.param);
        } catch (const std::invalid_argument& e) {
            std::cerr << e.what() << "\n";
            return exit_invalid_config;
        }
    }
    return execute(manifest, options, std::cout, std::cerr);
}
