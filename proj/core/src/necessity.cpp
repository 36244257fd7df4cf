#include "picklab/necessity.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

#include "picklab/ball_np.hpp"
#include "picklab/disk_np.hpp"
#include "picklab/oracle.hpp"
#include "picklab/quiver_np.hpp"

namespace picklab {

namespace {

constexpr int kNodes = 3;
constexpr double kRadius = 0.8;

NecessityTrial from_report(const FeasibilityReport& r)
{
    return {r.verdict.min_eigenvalue, r.tail_bound, r.verdict.min_eigenvalue + r.tail_bound};
}

// Alternate between a matrix polynomial and a scalar Blaschke product.
SchurSample disk_sample(Rng& rng, std::uint64_t seed)
{
    if (rng() % 2 == 0) return sample_blaschke(3, seed);
    return sample_contractive_poly(2, 3, 4, PolyKind{}, seed);
}

std::vector<Mat> spectral_points(Rng& rng, Eigen::Index n)
{
    std::vector<Mat> z;
    for (int i = 0; i < kNodes; ++i) z.push_back(random_with_spectral_radius(rng, n, kRadius));
    return z;
}

NecessityTrial disk_scalar_points(Rng& rng, std::uint64_t seed, DiskVariant v)
{
    const Eigen::Index c = 2;
    const SchurSample s = disk_sample(rng, seed);
    std::vector<cplx> lambda;
    std::vector<Mat> a, b;
    for (int i = 0; i < kNodes; ++i) {
        lambda.push_back(random_in_disk(rng, 0.9));
        const Mat si = eval_point(s, lambda.back());
        if (v == DiskVariant::fov) {
            b.push_back(si);
        } else if (v == DiskVariant::lt) {
            a.push_back(random_matrix(rng, c, s.rows));
            b.push_back(a.back() * si);
        } else {
            a.push_back(random_matrix(rng, s.cols, c));
            b.push_back(si * a.back());
        }
    }
    if (v == DiskVariant::fov) return from_report(pick_fov(lambda, b));
    if (v == DiskVariant::lt) return from_report(pick_lt(lambda, a, b));
    return from_report(pick_rt(lambda, a, b));
}

NecessityTrial disk_operator_points(Rng& rng, std::uint64_t seed, DiskVariant v)
{
    const SchurSample s = disk_sample(rng, seed);
    const Eigen::Index n = 3;
    const std::vector<Mat> t = spectral_points(rng, n);
    std::vector<Mat> a, b;
    for (const auto& ti : t) {
        if (v == DiskVariant::ltoa) {
            a.push_back(random_matrix(rng, n, s.rows));
            b.push_back(eval_ltoa(s, a.back(), ti));
        } else {
            a.push_back(random_matrix(rng, s.cols, n));
            b.push_back(eval_rtoa(s, a.back(), ti));
        }
    }
    if (v == DiskVariant::ltoa) return from_report(pick_ltoa(t, a, b));
    return from_report(pick_rtoa(t, a, b));
}

NecessityTrial disk_rd(Rng& rng, std::uint64_t seed, DiskVariant v)
{
    const SchurSample s = sample_blaschke(3, seed);
    const Eigen::Index n = 3, c = 2;
    const std::vector<Mat> z = spectral_points(rng, n);
    std::vector<Mat> a, b;
    for (const auto& zi : z) {
        const Mat sz = eval_tensor(s, zi);
        if (v == DiskVariant::frd) {
            a.push_back(sz);
        } else if (v == DiskVariant::ltrd) {
            a.push_back(random_matrix(rng, c, n));
            b.push_back(a.back() * sz);
        } else {
            a.push_back(random_matrix(rng, n, c));
            b.push_back(sz * a.back());
        }
    }
    if (v == DiskVariant::frd) return from_report(pick_frd(z, a, static_cast<int>(n)));
    if (v == DiskVariant::ltrd) return from_report(pick_ltrd(z, a, b, static_cast<int>(c)));
    return from_report(pick_rtrd(z, a, b, static_cast<int>(c)));
}

SchurSample ball_sample(std::uint64_t seed, Eigen::Index p, Eigen::Index q)
{
    PolyKind k;
    k.kind = SampleKind::ball;
    k.d = 2;
    return sample_contractive_poly(p, q, 3, k, seed);
}

NecessityTrial ball_points(Rng& rng, std::uint64_t seed, bool values_only)
{
    const SchurSample s = ball_sample(seed, 2, 2);
    std::vector<BallPoint> lambda;
    std::vector<Mat> x, y;
    for (int i = 0; i < kNodes; ++i) {
        BallPoint l{random_in_disk(rng, 0.6), random_in_disk(rng, 0.6)};
        OperatorTuple t;
        for (cplx lk : l) t.z.push_back(lk * Mat::Identity(s.rows, s.rows));
        const Mat si = eval_ball_ltoa(s, Mat::Identity(s.rows, s.rows), t, false);
        lambda.push_back(l);
        x.push_back(values_only ? Mat(Mat::Identity(s.rows, s.rows)) : random_matrix(rng, 2, s.rows));
        y.push_back(x.back() * si);
    }
    if (values_only) return from_report(pick_da_fov(lambda, y));
    return from_report(pick_da_lt(lambda, x, y));
}

NecessityTrial ball_ltoa(Rng& rng, std::uint64_t seed, bool commuting, const SeriesOptions& opt)
{
    const SchurSample s = ball_sample(seed, 2, 2);
    const Eigen::Index n = 3;
    std::vector<OperatorTuple> z;
    std::vector<Mat> x, y;
    for (int i = 0; i < kNodes; ++i) {
        z.push_back(commuting ? random_commuting_tuple(rng, 2, n, kRadius) : random_tuple(rng, 2, n, kRadius));
        x.push_back(random_matrix(rng, n, s.rows));
        y.push_back(eval_ball_ltoa(s, x.back(), z.back(), true));
    }
    if (!commuting) return from_report(pick_nc_ltoa(z, x, y, opt));
    BallOptions bo;
    bo.series = opt;
    return from_report(pick_da_ltoa(z, x, y, bo));
}

NecessityTrial ball_rd(Rng& rng, std::uint64_t seed, bool star, const SeriesOptions& opt)
{
    const SchurSample s = ball_sample(seed, 1, 1);
    const Eigen::Index n = 3;
    std::vector<OperatorTuple> z;
    std::vector<Mat> w;
    for (int i = 0; i < kNodes; ++i) {
        z.push_back(random_tuple(rng, 2, n, kRadius));
        // sum_g s_g Z^{g^T} for the plain problem, sum_g s_g Z^g for the starred one
        Mat wi = Mat::Zero(n, n);
        for (const auto& [g, m] : s.words) wi += m(0, 0) * word_power(z.back(), g, !star);
        w.push_back(std::move(wi));
    }
    if (star) return from_report(pick_nc_frd_star(z, w, static_cast<int>(n), opt));
    return from_report(pick_nc_frd(z, w, static_cast<int>(n), opt));
}

SchurSample quiver_sample(std::uint64_t seed, const Quiver& g, GradedSpace out, GradedSpace in)
{
    PolyKind k;
    k.kind = SampleKind::quiver;
    k.quiver = g;
    k.out_dims = std::move(out);
    k.in_dims = std::move(in);
    return sample_contractive_poly(1, 1, 3, k, seed);
}

NecessityTrial quiver_qltt(Rng& rng, std::uint64_t seed, const SeriesOptions& opt)
{
    QlttData d;
    d.g = two_vertex_example();
    d.zdims = {{2, 1}};
    d.ydims = {{1, 2}};
    d.udims = {{2, 1}};
    const SchurSample s = quiver_sample(seed, d.g, d.ydims, d.udims);
    const Eigen::Index qt = d.ydims.dims[0] * d.zdims.dims[0] + d.ydims.dims[1] * d.zdims.dims[1];
    for (int i = 0; i < kNodes; ++i) {
        d.z.push_back(random_quiver_point(rng, d.g, d.zdims, PointKind::tensor, kRadius));
        d.x.push_back(random_matrix(rng, 2, qt));
        d.y.push_back(d.x.back() * eval_quiver_tensor(s, d.zdims, d.z.back()));
    }
    const QlttReport r = pick_qltt(d, opt);
    NecessityTrial t{std::numeric_limits<double>::infinity(), 0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t v = 0; v < r.per_vertex.size(); ++v) {
        if (!r.vertex_present[v]) continue;
        const NecessityTrial tv = from_report(r.per_vertex[v]);
        if (tv.margin < t.margin) t = tv;
    }
    return t;
}

NecessityTrial quiver_qltrd(Rng& rng, std::uint64_t seed, const SeriesOptions& opt)
{
    QltrdData d;
    d.g = two_vertex_example();
    d.zdims = {{2, 1}};
    d.kappa = 2;
    const SchurSample s = quiver_sample(seed, d.g, {{1, 1}}, {{1, 1}});
    for (int i = 0; i < kNodes; ++i) {
        d.z.push_back(random_quiver_point(rng, d.g, d.zdims, PointKind::tensor, kRadius));
        d.x.push_back(random_matrix(rng, 2, d.zdims.total()));
        d.y.push_back(d.x.back() * eval_quiver_tensor(s, d.zdims, d.z.back()));
    }
    return from_report(pick_qltrd(d, opt));
}

Mat block_diagonal(Rng& rng, const GradedSpace& rows, const GradedSpace& cols)
{
    Mat m = Mat::Zero(rows.total(), cols.total());
    for (std::size_t v = 0; v < rows.dims.size(); ++v) {
        const int iv = static_cast<int>(v);
        m.block(rows.offset(iv), cols.offset(iv), rows.dim(iv), cols.dim(iv)) = random_matrix(rng, rows.dim(iv), cols.dim(iv));
    }
    return m;
}

NecessityTrial quiver_qltoa(Rng& rng, std::uint64_t seed, const SeriesOptions& opt)
{
    QltoaData d;
    d.g = two_vertex_example();
    d.xdims = {{2, 2}};
    d.ydims = {{1, 2}};
    d.udims = {{2, 1}};
    const SchurSample s = quiver_sample(seed, d.g, d.ydims, d.udims);
    for (int i = 0; i < kNodes; ++i) {
        d.t.push_back(random_quiver_point(rng, d.g, d.xdims, PointKind::operator_argument, kRadius));
        d.x.push_back(block_diagonal(rng, d.xdims, d.ydims));
        d.y.push_back(eval_quiver_ltoa(s, d.xdims, d.x.back(), d.t.back()));
    }
    return from_report(pick_qltoa(d, opt));
}

using TrialFn = std::function<NecessityTrial(Rng&, std::uint64_t, const SeriesOptions&)>;

const std::map<std::string, TrialFn>& registry()
{
    static const std::map<std::string, TrialFn> r = {
        {"disk.fov", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_scalar_points(g, s, DiskVariant::fov); }},
        {"disk.lt", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_scalar_points(g, s, DiskVariant::lt); }},
        {"disk.rt", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_scalar_points(g, s, DiskVariant::rt); }},
        {"disk.ltoa", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_operator_points(g, s, DiskVariant::ltoa); }},
        {"disk.rtoa", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_operator_points(g, s, DiskVariant::rtoa); }},
        {"disk.frd", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_rd(g, s, DiskVariant::frd); }},
        {"disk.ltrd", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_rd(g, s, DiskVariant::ltrd); }},
        {"disk.rtrd", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return disk_rd(g, s, DiskVariant::rtrd); }},
        {"ball.da_fov", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return ball_points(g, s, true); }},
        {"ball.da_lt", [](Rng& g, std::uint64_t s, const SeriesOptions&) { return ball_points(g, s, false); }},
        {"ball.nc_ltoa", [](Rng& g, std::uint64_t s, const SeriesOptions& o) { return ball_ltoa(g, s, false, o); }},
        {"ball.da_ltoa", [](Rng& g, std::uint64_t s, const SeriesOptions& o) { return ball_ltoa(g, s, true, o); }},
        {"ball.nc_frd", [](Rng& g, std::uint64_t s, const SeriesOptions& o) { return ball_rd(g, s, false, o); }},
        {"ball.nc_frd_star", [](Rng& g, std::uint64_t s, const SeriesOptions& o) { return ball_rd(g, s, true, o); }},
        {"quiver.qltt", quiver_qltt},
        {"quiver.qltrd", quiver_qltrd},
        {"quiver.qltoa", quiver_qltoa},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& necessity_settings()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, f] : registry()) v.push_back(k);
        return v;
    }();
    return names;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial)
{
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

NecessityTrial necessity_trial(const std::string& setting, std::uint64_t seed, const SeriesOptions& opt)
{
    const auto& r = registry();
    const auto it = r.find(setting);
    if (it == r.end()) throw Error(Errc::argument, "unknown necessity setting '" + setting + "'");
    Rng rng(seed);
    return it->second(rng, seed, opt);
}

NecessityResult run_necessity(const std::string& setting, int trials, std::uint64_t seed, const SeriesOptions& opt)
{
    if (trials <= 0) throw Error(Errc::argument, "run_necessity: trials must be positive");
    NecessityResult res;
    res.setting = setting;
    res.worst_margin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        res.trials.push_back(necessity_trial(setting, trial_seed(seed, t), opt));
        res.worst_margin = std::min(res.worst_margin, res.trials.back().margin);
    }
    res.passed = res.worst_margin >= -kNecessitySlack;
    return res;
}

}  // namespace picklab
