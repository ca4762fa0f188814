#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aoi/table.hpp"
#include "aoi/tv_solver.hpp"

namespace aoi {

struct FigureOptions {
    std::uint64_t seed = 1;
    std::optional<std::size_t> replications;  // preset default when unset
    SolverSettings solver;
};

const std::vector<std::string>& figure_ids();

// Analytic and simulated columns side by side for one preset.
Table reproduce_figure(const std::string& id, const FigureOptions& options = {});

}  // namespace aoi
