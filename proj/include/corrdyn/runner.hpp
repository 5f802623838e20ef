#pragma once

#include <filesystem>
#include <vector>

#include "corrdyn/config.hpp"
#include "corrdyn/correlators.hpp"
#include "corrdyn/density.hpp"

namespace corrdyn {

/// Initial correlators of a config. Product and explicit-correlator states
/// are built directly and have no site cap; the others go through a dense
/// state vector.
CorrelatorVector initial_correlators(const RunConfig& cfg);

/// Runs `tasks` in order, writing fixed-name files under `out_dir` (created
/// if missing). Returns the written paths in order.
std::vector<std::filesystem::path> run_tasks(const RunConfig& cfg, const std::vector<Task>& tasks,
                                             const std::filesystem::path& out_dir);

/// run_tasks with the config's own task list.
std::vector<std::filesystem::path> run(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace corrdyn
