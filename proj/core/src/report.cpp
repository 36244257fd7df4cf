#include "picklab/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace picklab {

const char* method_name(PickMethod m)
{
    switch (m) {
    case PickMethod::closed_form: return "closed_form";
    case PickMethod::stein_solve: return "stein_solve";
    case PickMethod::truncated_series: return "truncated_series";
    case PickMethod::lyapunov_solve: return "lyapunov_solve";
    }
    return "unknown";
}

FeasibilityReport make_report(Mat pick, PickMethod method, double tail_bound, Tolerance tol,
                              std::vector<Eigen::Index> block_sizes, int levels)
{
    FeasibilityReport r;
    r.pick = hermitize(pick);
    r.method = method;
    r.tail_bound = tail_bound;
    r.levels = levels;
    r.block_sizes = std::move(block_sizes);
    if (tol.automatic) tol = Tolerance::fixed(auto_tolerance(r.pick) + tail_bound);
    r.verdict = is_psd(r.pick, tol);
    return r;
}

Mat assemble_blocks(const std::vector<std::vector<Mat>>& blocks)
{
    const std::size_t n = blocks.size();
    std::vector<Eigen::Index> rows(n), cols(n);
    Eigen::Index tr = 0, tc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (blocks[i].size() != n) throw Error(Errc::shape, "assemble_blocks: ragged block matrix");
        rows[i] = blocks[i][0].rows();
        cols[i] = blocks[0][i].cols();
        tr += rows[i];
        tc += cols[i];
    }
    Mat m(tr, tc);
    Eigen::Index r0 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Index c0 = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const Mat& b = blocks[i][j];
            if (b.rows() != rows[i] || b.cols() != cols[j]) throw Error(Errc::shape, "assemble_blocks: block shape mismatch");
            m.block(r0, c0, rows[i], cols[j]) = b;
            c0 += cols[j];
        }
        r0 += rows[i];
    }
    return m;
}

LevelPlan plan_levels(double rho, double c, const SeriesOptions& opt, std::size_t work_per_level, const char* what)
{
    if (!(rho < 1.0)) {
        std::ostringstream os;
        os << what << ": contraction factor " << rho << " >= 1";
        throw Error(Errc::domain, os.str());
    }
    if (rho == 0.0 || c == 0.0) return {0, 0.0};
    const double target = opt.tail_tol * (1.0 + c);
    auto tail_at = [&](int l) { return c * std::pow(rho, l + 1) / (1.0 - rho); };
    // solve c rho^(L+1)/(1-rho) <= target for L, then fix up rounding
    double est = std::log(target * (1.0 - rho) / c) / std::log(rho) - 1.0;
    int l = est <= 0.0 ? 0 : static_cast<int>(std::min(est, 1e9));
    while (l > 0 && tail_at(l - 1) <= target) --l;
    while (tail_at(l) > target && l < std::numeric_limits<int>::max() / 2) ++l;
    const std::size_t cap_by_budget = work_per_level == 0 ? std::numeric_limits<std::size_t>::max() : opt.budget / work_per_level;
    const int cap = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(opt.max_level), cap_by_budget));
    if (l > cap) {
        std::ostringstream os;
        os << what << ": reaching tail " << target << " needs " << l << " levels, budget allows " << cap;
        throw BudgetError(os.str(), tail_at(std::max(cap, 0)));
    }
    return {l, tail_at(l)};
}

}  // namespace picklab
