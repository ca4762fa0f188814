#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "aoi/table.hpp"

namespace aoi {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitInfeasible = 4,
};

struct ExperimentSpec {
    std::string command;  // solve-tv, solve-stationary, simulate, optimize, reproduce-figure
    std::string config_path;
    std::string out_path;  // empty writes to the given stream
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replications;
    std::optional<std::size_t> grid_n;
    std::optional<double> etol;
    std::string figure;
};

// Runs one command. Results go to spec.out_path or `out`; failures are
// reported as a JSON error record on `err`. Returns the process exit code.
int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

// Computes the result table without writing it; throws on failure.
Table execute(const ExperimentSpec& spec);

}  // namespace aoi
