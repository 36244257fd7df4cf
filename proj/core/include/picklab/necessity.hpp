#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "picklab/report.hpp"

namespace picklab {

// One sampled Schur datum pushed through a criterion.
struct NecessityTrial {
    double min_eigenvalue = 0.0;
    double tail_bound = 0.0;
    double margin = 0.0;  // min_eigenvalue + tail_bound
};

struct NecessityResult {
    std::string setting;
    std::vector<NecessityTrial> trials;
    double worst_margin = 0.0;
    bool passed = false;  // worst_margin >= -slack
};

inline constexpr double kNecessitySlack = 1e-8;

// Settings use the CLI names, e.g. "disk.ltoa", "ball.nc_ltoa", "quiver.qltoa".
const std::vector<std::string>& necessity_settings();

// Seed of trial t: a fixed mix of (seed, t) so every trial is reproducible alone.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

NecessityTrial necessity_trial(const std::string& setting, std::uint64_t seed, const SeriesOptions& opt = {});
NecessityResult run_necessity(const std::string& setting, int trials, std::uint64_t seed, const SeriesOptions& opt = {});

}  // namespace picklab
