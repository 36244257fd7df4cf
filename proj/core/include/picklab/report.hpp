#pragma once

#include <cstddef>
#include <vector>

#include "picklab/matcore.hpp"

namespace picklab {

enum class PickMethod { closed_form, stein_solve, truncated_series, lyapunov_solve };

const char* method_name(PickMethod m);

// Controls for geometric path/word sums. The series is cut at the first level
// whose certified remainder is below tail_tol * (1 + scale of the level-0 data).
struct SeriesOptions {
    double tail_tol = 1e-13;
    int max_level = 100'000;
    std::size_t budget = kDefaultWorkBudget;  // matrix products per dataset
};

struct FeasibilityReport {
    Mat pick;
    PsdVerdict verdict;
    PickMethod method = PickMethod::closed_form;
    double tail_bound = 0.0;  // operator-norm bound on pick - exact Pick matrix
    int levels = 0;           // last summed level for truncated series
    std::vector<Eigen::Index> block_sizes;
};

// Hermitizes, takes the verdict, and widens an automatic tolerance by the tail.
FeasibilityReport make_report(Mat pick, PickMethod method, double tail_bound, Tolerance tol,
                              std::vector<Eigen::Index> block_sizes = {}, int levels = 0);

// Dense assembly of a square block matrix from blocks[i][j].
Mat assemble_blocks(const std::vector<std::vector<Mat>>& blocks);

// Smallest L >= 0 with c * rho^(L+1) / (1 - rho) <= tol. Throws BudgetError if
// L exceeds max_level or L * work_per_level exceeds the budget.
struct LevelPlan {
    int levels = 0;
    double tail = 0.0;
};
LevelPlan plan_levels(double rho, double c, const SeriesOptions& opt, std::size_t work_per_level, const char* what);

}  // namespace picklab
