#include <CLI11.hpp>
#include <iostream>

#include "aoi/cli.hpp"
#include "aoi/figures.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Age of Information distributions for M_t/G/1/1 queues with probabilistic preemption"};
    app.require_subcommand(1);

    aoi::ExperimentSpec spec;
    std::uint64_t seed = 0;
    std::size_t replications = 0, grid_n = 0;
    double etol = 0.0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* cfg = sub->add_option("--config", spec.config_path, "JSON config file")->check(CLI::ExistingFile);
        if (needs_config) cfg->required();
        sub->add_option("--out", spec.out_path, "output file (stdout when omitted)");
        sub->add_option("--format", spec.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "simulation seed");
        sub->add_option("--replications", replications, "simulation replications")->check(CLI::PositiveNumber);
        sub->add_option("--grid-n", grid_n, "time-varying solver intervals over the horizon");
        sub->add_option("--etol", etol, "Picard residual tolerance")->check(CLI::PositiveNumber);
    };

    struct Command {
        const char* name;
        const char* help;
        bool needs_config;
    };
    const Command commands[] = {
        {"solve-tv", "AoI CDF at finite times under a time-varying rate", true},
        {"solve-stationary", "stationary AoI CDF and PDF", true},
        {"simulate", "Monte-Carlo AoI CDF", true},
        {"optimize", "minimal-cost piecewise-constant sampling plan", true},
        {"reproduce-figure", "analytic and simulated data for a figure preset", false},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, c.needs_config);
        if (std::string(c.name) == "reproduce-figure")
            sub->add_option("--figure", spec.figure, "preset id")->required()->check(CLI::IsMember(aoi::figure_ids()));
        sub->callback([&spec, name = std::string(c.name)] { spec.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : aoi::kExitConfig;
    }

    for (auto* sub : app.get_subcommands()) {
        if (sub->count("--seed")) spec.seed = seed;
        if (sub->count("--replications")) spec.replications = replications;
        if (sub->count("--grid-n")) spec.grid_n = grid_n;
        if (sub->count("--etol")) spec.etol = etol;
    }
    return aoi::run_experiment(spec, std::cout, std::cerr);
}
