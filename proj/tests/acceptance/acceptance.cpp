// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "picklab/agler_np.hpp"
#include "picklab/ball_np.hpp"
#include "picklab/cp_toolkit.hpp"
#include "picklab/disk_np.hpp"
#include "picklab/necessity.hpp"
#include "picklab/oracle.hpp"
#include "picklab/quiver_np.hpp"
#include "commands.hpp"
#include "schema.hpp"

using namespace picklab;
using nlohmann::json;
using oracle_ref::max_abs;

namespace {

// Collects failed sub-checks of one criterion.
struct Tally {
    std::vector<std::string> failures;
    std::ostringstream info;

    void check(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mat unit(Eigen::Index n, Eigen::Index a, Eigen::Index b)
{
    Mat e = Mat::Zero(n, n);
    e(a, b) = 1.0;
    return e;
}

Mat scalar(cplx v) { return Mat::Constant(1, 1, v); }

std::vector<Mat> adjoints(const std::vector<Mat>& v)
{
    std::vector<Mat> out;
    for (const auto& m : v) out.push_back(m.adjoint());
    return out;
}

Mat block_diag(const Mat& a, const Mat& b)
{
    Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

Mat power(const Mat& a, int l)
{
    Mat r = Mat::Identity(a.rows(), a.cols());
    for (int k = 0; k < l; ++k) r = r * a;
    return r;
}

// ---------------------------------------------------------------------------

void necessity(Tally& t)
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 1e300;
    for (const auto& s : necessity_settings()) {
        const NecessityResult r = run_necessity(s, 20, 2024);
        t.check(r.trials.size() == 20, s + ": trial count");
        for (const auto& tr : r.trials)
            t.check(tr.min_eigenvalue >= -(tr.tail_bound + kNecessitySlack), s + ": min eigenvalue below -(tail + 1e-8)");
        worst = std::min(worst, r.worst_margin);
    }
    const double secs = seconds_since(t0);
    t.check(secs < 60.0, "runtime over 60 s");
    t.info << necessity_settings().size() << " settings x 20 trials, worst margin " << worst << ", " << secs << " s";
}

// Block ((i,a),(j,b)) of the RTRD Pick matrix by direct summation.
Mat rd_direct(const std::vector<Mat>& z, const std::vector<Mat>& u, const std::vector<Mat>& v, int kappa)
{
    const Eigen::Index m = z[0].rows();
    const auto n = static_cast<Eigen::Index>(z.size());
    Mat p(n * kappa * m, n * kappa * m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (int a = 0; a < kappa; ++a)
                for (int b = 0; b < kappa; ++b) {
                    const Mat e = unit(u[0].cols(), a, b);
                    const Mat q = u[i] * e * u[j].adjoint() - v[i] * e * v[j].adjoint();
                    p.block((i * kappa + a) * m, (j * kappa + b) * m, m, m) = oracle_ref::stein_series(z[i], q, z[j], 600);
                }
    return p;
}

void reductions(Tally& t)
{
    constexpr double tol = 1e-12;
    Rng rng(7001);
    double worst = 0.0;
    auto agree = [&](double err, const std::string& what) {
        worst = std::max(worst, err);
        t.check(err <= tol, what);
    };
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cplx> lam, clam;
        std::vector<Mat> w, x, y, id, tpts;
        for (int i = 0; i < 3; ++i) {
            lam.push_back(random_in_disk(rng, 0.9));
            clam.push_back(std::conj(lam.back()));
            w.push_back(random_matrix(rng, 2, 3));
            x.push_back(random_matrix(rng, 2, 2));
            y.push_back(random_matrix(rng, 2, 3));
            id.push_back(Mat::Identity(2, 2));
            tpts.push_back(lam.back() * Mat::Identity(2, 2));
        }
        const FeasibilityReport lt = pick_lt(lam, x, y);
        agree(max_abs(pick_fov(lam, w).pick - pick_lt(lam, id, w).pick), "FOV = LT with X = I");
        agree(max_abs(pick_ltoa(tpts, x, y).pick - lt.pick), "LT = LTOA at T = lambda I");
        agree(max_abs(pick_rt(clam, adjoints(x), adjoints(y)).pick - lt.pick), "sharp duality LT <-> RT");

        std::vector<Mat> t2, xs, ys;
        for (int i = 0; i < 3; ++i) {
            // norm below one so the point also lies in the unit ball
            const Mat m = random_matrix(rng, 2, 2);
            t2.push_back(0.8 * m / operator_norm(m));
            xs.push_back(random_matrix(rng, 2, 2));
            ys.push_back(random_matrix(rng, 2, 1));
        }
        const FeasibilityReport lo = pick_ltoa(t2, xs, ys);
        agree(max_abs(pick_rtoa(adjoints(t2), adjoints(xs), adjoints(ys)).pick - lo.pick), "sharp duality LTOA <-> RTOA");

        // RD variants against their basis expansion, summed directly
        std::vector<Mat> zs, ws, u, v, xr, yr, idz;
        for (int i = 0; i < 2; ++i) {
            zs.push_back(random_with_spectral_radius(rng, 3, 0.7));
            ws.push_back(random_matrix(rng, 3, 3));
            u.push_back(random_matrix(rng, 3, 2));
            v.push_back(random_matrix(rng, 3, 2));
            xr.push_back(random_matrix(rng, 2, 3));
            yr.push_back(random_matrix(rng, 2, 3));
            idz.push_back(Mat::Identity(3, 3));
        }
        agree(max_abs(pick_frd(zs, ws, 3).pick - rd_direct(zs, idz, ws, 3)), "FRD expansion");
        agree(max_abs(pick_rtrd(zs, u, v, 2).pick - rd_direct(zs, u, v, 2)), "RTRD expansion");
        agree(max_abs(pick_ltrd(zs, xr, yr, 2).pick - rd_direct(adjoints(zs), adjoints(xr), adjoints(yr), 2)), "LTRD expansion");

        // ball with d = 1
        std::vector<OperatorTuple> z1;
        std::vector<BallPoint> pts;
        for (int i = 0; i < 3; ++i) {
            z1.push_back(OperatorTuple{{t2[static_cast<std::size_t>(i)]}});
            pts.push_back({lam[static_cast<std::size_t>(i)]});
        }
        agree(max_abs(pick_da_fov(pts, w).pick - pick_fov(lam, w).pick), "d = 1 ball FOV = disk");
        agree(max_abs(pick_da_lt(pts, x, y).pick - lt.pick), "d = 1 ball LT = disk");
        agree(max_abs(pick_nc_ltoa(z1, xs, ys).pick - lo.pick), "d = 1 ball LTOA = disk");
        agree(max_abs(pick_da_ltoa(z1, xs, ys).pick - lo.pick), "d = 1 commutative LTOA = disk");

        // single-vertex quiver with two loops
        QltoaData q;
        q.g = single_vertex_loops(2);
        q.xdims = GradedSpace{{3}};
        q.ydims = GradedSpace{{2}};
        q.udims = GradedSpace{{1}};
        std::vector<OperatorTuple> zt;
        for (int i = 0; i < 2; ++i) {
            zt.push_back(random_tuple(rng, 2, 3, 0.6));
            q.t.push_back(QuiverPoint{PointKind::operator_argument, zt.back().z});
            q.x.push_back(random_matrix(rng, 3, 2));
            q.y.push_back(random_matrix(rng, 3, 1));
        }
        agree(max_abs(pick_qltoa(q).pick - pick_nc_ltoa(zt, q.x, q.y).pick), "single-vertex QLTOA = ball");
    }
    t.info << "max deviation " << worst;
}

void stein(Tally& t)
{
    Rng rng(7003);
    double worst_s = 0.0, worst_l = 0.0, worst_tail = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 1 + trial % 8, m = 1 + (trial * 3) % 8;
        const Mat a = random_with_spectral_radius(rng, n, std::uniform_real_distribution<double>(0.1, 0.95)(rng));
        const Mat b = random_with_spectral_radius(rng, m, std::uniform_real_distribution<double>(0.1, 0.95)(rng));
        const Mat q = random_matrix(rng, n, m);
        const Mat p = solve_stein(a, q, b);
        const double rs = operator_norm(p - a * p * b.adjoint() - q) / operator_norm(q);
        worst_s = std::max(worst_s, rs);
        t.check(rs <= 1e-12, "Stein residual");

        // the truncated series misses A^L P B^{*L}, bounded by ||A^L|| ||P|| ||B^L||
        const int l = 40;
        const double tail = operator_norm(power(a, l)) * operator_norm(p) * operator_norm(power(b, l));
        const double gap = operator_norm(p - oracle_ref::stein_series(a, q, b, l));
        worst_tail = std::max(worst_tail, gap - tail);
        t.check(gap <= tail * (1 + 1e-9) + 1e-12 * operator_norm(p), "series outside the certified tail");

        Mat z = random_matrix(rng, n, n);
        z += (spectral_radius(z) + std::uniform_real_distribution<double>(0.05, 1.0)(rng)) * Mat::Identity(n, n);
        const Mat ql = random_matrix(rng, n, n);
        const Mat pl = solve_lyapunov_rhp(z, ql);
        const double rl = operator_norm(pl * z.adjoint() + z * pl - ql) / operator_norm(ql);
        worst_l = std::max(worst_l, rl);
        t.check(rl <= 1e-10, "Lyapunov residual");
    }
    t.info << "100 instances, worst Stein residual " << worst_s << "||Q||, worst Lyapunov " << worst_l
           << "||Q||, worst tail excess " << worst_tail;
}

void golden(Tally& t)
{
    const FeasibilityReport f = pick_fov({0.0, 0.5}, {scalar(0.0), scalar(0.5)});
    t.check(max_abs(f.pick - Mat::Ones(2, 2)) <= 1e-10 && std::abs(f.verdict.min_eigenvalue) <= 1e-10 && f.verdict.is_psd,
            "disk feasible instance");
    const FeasibilityReport g = pick_fov({0.0, 0.5}, {scalar(0.0), scalar(1.0)});
    Mat e(2, 2);
    e << 1, 1, 1, 0;
    t.check(max_abs(g.pick - e) <= 1e-10 && std::abs(g.verdict.min_eigenvalue - (1 - std::sqrt(5.0)) / 2) <= 1e-10 &&
                !g.verdict.is_psd,
            "disk infeasible instance");

    const FeasibilityReport lp = nevanlinna_rd_check(scalar(1.0), scalar(1.0), 1);
    const FeasibilityReport ln = nevanlinna_rd_check(scalar(1.0), scalar(-1.0), 1);
    t.check(std::abs(lp.pick(0, 0) - 1.0) <= 1e-10 && lp.verdict.is_psd, "Lyapunov w = 1");
    t.check(std::abs(ln.pick(0, 0) + 1.0) <= 1e-10 && !ln.verdict.is_psd, "Lyapunov w = -1");

    const Quiver q = two_vertex_example();
    std::set<std::string> names;
    for (const auto& p : paths_up_to(q, 2)) names.insert(path_name(q, p));
    t.check(names == std::set<std::string>{"a", "b", "alpha", "beta", "alpha.alpha", "beta.alpha"} &&
                paths_up_to(q, 2).size() == 6,
            "two-vertex path set");

    // two-vertex QLTOA against the displayed block-diagonal pair
    Rng rng(7005);
    QltoaData d;
    d.g = q;
    d.xdims = GradedSpace{{2, 2}};
    d.ydims = GradedSpace{{2, 1}};
    d.udims = GradedSpace{{1, 2}};
    const int n = 3;
    std::vector<Mat> xa, xb, ya, yb;
    for (int i = 0; i < n; ++i) {
        d.t.push_back(random_quiver_point(rng, q, d.xdims, PointKind::operator_argument, 0.8));
        xa.push_back(random_matrix(rng, 2, 2));
        xb.push_back(random_matrix(rng, 2, 1));
        ya.push_back(random_matrix(rng, 2, 1));
        yb.push_back(random_matrix(rng, 2, 2));
        d.x.push_back(block_diag(xa.back(), xb.back()));
        d.y.push_back(block_diag(ya.back(), yb.back()));
    }
    const FeasibilityReport r = pick_qltoa(d);
    const Mat pm = permute_symmetric(r.pick, vertex_grouping(n, d.xdims));
    const Eigen::Index s = n * 2;
    Mat p1(s, s), p2(s, s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Mat& ta_i = d.t[static_cast<std::size_t>(i)].blocks[0];
            const Mat& ta_j = d.t[static_cast<std::size_t>(j)].blocks[0];
            const Mat& tb_i = d.t[static_cast<std::size_t>(i)].blocks[1];
            const Mat& tb_j = d.t[static_cast<std::size_t>(j)].blocks[1];
            const Mat inner = xa[i] * xa[j].adjoint() + tb_i * xb[i] * xb[j].adjoint() * tb_j.adjoint() -
                              ya[i] * ya[j].adjoint() - tb_i * yb[i] * yb[j].adjoint() * tb_j.adjoint();
            p1.block(2 * i, 2 * j, 2, 2) = oracle_ref::stein_series(ta_i, inner, ta_j, 600);
            p2.block(2 * i, 2 * j, 2, 2) = xb[i] * xb[j].adjoint() - yb[i] * yb[j].adjoint();
        }
    const double e1 = max_abs(pm.topLeftCorner(s, s) - p1), e2 = max_abs(pm.bottomRightCorner(s, s) - p2);
    const double off = std::max(max_abs(pm.topRightCorner(s, s)), max_abs(pm.bottomLeftCorner(s, s)));
    t.check(e1 <= 1e-10 && e2 <= 1e-10, "QLTOA diagonal blocks");
    t.check(off == 0.0, "QLTOA off-diagonal blocks not exactly zero");
    t.info << "QLTOA block errors " << e1 << ", " << e2 << ", off-diagonal " << off;
}

AglerProblem scalar_problem(std::vector<std::vector<cplx>> lambda, std::vector<cplx> f)
{
    AglerProblem p;
    p.variant = AglerVariant::scalar_points;
    p.d = static_cast<int>(lambda.front().size());
    p.lambda = std::move(lambda);
    p.f = std::move(f);
    return p;
}

AglerProblem problem_from_fixture(const std::string& name)
{
    std::ifstream in(std::string(PICKLAB_FIXTURES) + "/" + name + ".json");
    const json doc = json::parse(in);
    std::vector<std::vector<cplx>> lam;
    for (const auto& pt : doc["payload"]["lambda"]) {
        lam.emplace_back();
        for (const auto& c : pt) lam.back().emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    std::vector<cplx> f;
    for (const auto& c : doc["payload"]["f"]) f.emplace_back(c[0].get<double>(), c[1].get<double>());
    return scalar_problem(lam, f);
}

void agler(Tally& t)
{
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(7007);
    int agree = 0, feasible = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<cplx>> lam;
        std::vector<cplx> lv, f;
        const SchurSample b = sample_blaschke(2, 7100 + static_cast<std::uint64_t>(trial));
        const int n = 2 + trial % 3;
        for (int i = 0; i < n; ++i) {
            lv.push_back(random_in_disk(rng, 0.8));
            lam.push_back({lv.back()});
            f.push_back(trial % 2 ? 0.9 * eval_point(b, lv.back())(0, 0) : random_in_disk(rng, 1.0));
        }
        std::vector<Mat> w;
        for (auto v : f) w.push_back(scalar(v));
        const bool disk_ok = pick_fov(lv, w).verdict.min_eigenvalue >= -1e-6;
        const AglerReport r = solve_feasibility(scalar_problem(lam, f));
        const bool ok = r.status == AglerStatus::feasible_with_certificate;
        agree += ok == disk_ok;
        feasible += ok;
    }
    t.check(agree == 50, "d = 1 verdicts disagree with the disk criterion");

    const AglerReport a = solve_feasibility(problem_from_fixture("polydisk_agler_feasible"));
    t.check(a.status == AglerStatus::feasible_with_certificate && a.certificate && a.certificate->residual_norm <= 1e-6 &&
                a.iterations <= 10000,
            "feasible fixture");
    const AglerReport b = solve_feasibility(problem_from_fixture("polydisk_agler_infeasible"));
    t.check(b.status == AglerStatus::infeasible_evidence && b.gap_estimate >= 1e-3, "infeasible fixture");
    const double secs = seconds_since(t0);
    t.check(secs < 120.0, "runtime over 120 s");
    t.info << agree << "/50 d = 1 agree (" << feasible << " feasible); fixture iterations " << a.iterations
           << " residual " << (a.certificate ? a.certificate->residual_norm : -1.0) << "; infeasible gap " << b.gap_estimate
           << "; " << secs << " s";
}

void choi(Tally& t)
{
    const CpVerdict tr = cp_check(transpose_map(2));
    t.check(!tr.is_cp && std::abs(tr.choi_min_eig + 1.0) <= 1e-12, "transpose map");
    t.check(cp_check(identity_map(2)).is_cp && cp_check(identity_map(4)).is_cp, "identity map");
    Rng rng(7009);
    for (int k = 0; k < 5; ++k) t.check(cp_check(conjugation_map(random_matrix(rng, 3, 2 + k % 3))).is_cp, "V A V^* map");

    int agree = 0;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Mat> z, x, y;
        for (int i = 0; i < 3; ++i) {
            z.push_back(random_with_spectral_radius(rng, 2, 0.6));
            x.push_back(random_matrix(rng, 2, 2));
            y.push_back(trial % 3 == 2 ? random_matrix(rng, 2, 2) : Mat((trial % 3) * 0.5 * x.back()));
        }
        agree += cp_check(build_phi_disk(z, x, y)).is_cp == cp_check(build_phi_star_disk(z, x, y)).is_cp;
    }
    t.check(agree == 30, "phi / phi_star verdicts disagree");

    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        QlttData d;
        d.g = two_vertex_example();
        d.zdims = GradedSpace{{2, 1}};
        d.ydims = GradedSpace{{1, 2}};
        d.udims = GradedSpace{{1, 1}};
        for (int i = 0; i < 2; ++i) {
            d.z.push_back(random_quiver_point(rng, d.g, d.zdims, PointKind::tensor, 0.4));
            d.x.push_back(random_matrix(rng, 2, 4));
            d.y.push_back(0.5 * random_matrix(rng, 2, 3));
        }
        const QlttReport rep = pick_qltt(d);
        const Mat c = choi_matrix(build_phi_bar_quiver(d));
        const auto p = quiver_choi_permutation(2, d.zdims, 2);
        const std::set<Eigen::Index> keep(p.begin(), p.end());
        t.check(keep.size() == p.size(), "permutation repeats an index");
        const Mat pc = c(p, p);
        Eigen::Index off = 0;
        for (const auto& pv : rep.per_vertex) {
            const Eigen::Index s = pv.pick.rows();
            worst = std::max(worst, max_abs(pc.block(off, off, s, s) - pv.pick));
            t.check(max_abs(pc.block(off, 0, s, off)) == 0.0, "Choi(phi_bar) couples two vertices");
            off += s;
        }
        t.check(off == pc.rows(), "vertex blocks do not fill the permuted Choi matrix");
        for (Eigen::Index r = 0; r < c.rows(); ++r)
            if (!keep.count(r)) t.check(c.row(r).cwiseAbs().maxCoeff() == 0.0, "Choi(phi_bar) row outside the permutation");
    }
    t.check(worst <= 1e-12, "Choi(phi_bar) vertex blocks");
    t.info << "transpose min eig " << tr.choi_min_eig << "; " << agree << "/30 dual verdicts agree; Choi(phi_bar) block error "
           << worst;
}

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + PICKLAB_TOOL + "' " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fx(const std::string& name) { return "'" + std::string(PICKLAB_FIXTURES) + "/" + name + ".json'"; }

std::string strip_timings(const std::string& text)
{
    json d = json::parse(text, nullptr, false);
    if (d.is_discarded()) return "<unparsable>";
    if (d.is_object()) d.erase("timings");
    return d.dump(2);
}

std::string command_for(const std::string& stem)
{
    if (stem.rfind("polydisk", 0) == 0) return "agler";
    if (stem.rfind("cp_", 0) == 0) return "cpcheck";
    return "check";
}

void interface_checks(Tally& t)
{
    namespace fs = std::filesystem;
    using picklab::cli::embedded_schema;
    using picklab::cli::validate;
    std::set<int> codes;
    int fixtures = 0;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(PICKLAB_FIXTURES)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        const std::string stem = path.stem().string();
        const std::string args = command_for(stem) + " " + fx(stem);
        const Run a = run(args), b = run(args);
        codes.insert(a.code);
        ++fixtures;
        t.check(a.code == b.code && strip_timings(a.out) == strip_timings(b.out), stem + ": runs differ");
        const json out = json::parse(a.out, nullptr, false);
        t.check(!out.is_discarded() && !validate(out, embedded_schema("report")), stem + ": output fails the report schema");

        std::ifstream in(path);
        const json req = json::parse(in, nullptr, false);
        if (stem == "malformed") {
            t.check(req.is_discarded() && a.code == 65, "malformed fixture");
            continue;
        }
        t.check(!validate(req, embedded_schema("request")), stem + ": request fails its schema");
        const std::string setting = picklab::cli::canonical_setting(req["setting"].get<std::string>());
        if (setting.empty()) {
            t.check(a.code == 64, "unknown setting exit code");
            continue;
        }
        const bool payload_ok = !validate(req["payload"], embedded_schema("payloads"), "#/$defs/" + setting);
        t.check(payload_ok == (stem != "schema_violation"), stem + ": payload schema verdict");
        // a compact re-serialization gives the same answer
        const fs::path tmp = fs::temp_directory_path() / ("picklab_acc_" + stem + ".json");
        std::ofstream(tmp) << req.dump();
        const Run c = run(command_for(stem) + " '" + tmp.string() + "'");
        fs::remove(tmp);
        json oa = json::parse(a.out), oc = json::parse(c.out);
        for (auto* o : {&oa, &oc}) {
            o->erase("timings");
            o->erase("provenance");
        }
        t.check(c.code == a.code && oa == oc, stem + ": round trip changed the result");
    }

    const Run budget = run("check " + fx("ball_nc_ltoa"), "PICKLAB_BUDGET=3");
    codes.insert(budget.code);
    t.check(budget.code == 2, "budget exhaustion exit code");
    t.check(run("frobnicate").code == 64 && run("check " + fx("disk_lt") + " --tol x").code == 64, "usage exit codes");
    t.check(run("check /nonexistent/request.json").code == 65, "unreadable input exit code");
    t.check(codes == std::set<int>{0, 1, 2, 64, 65}, "not every exit code was exercised");

    for (const std::string& args : std::vector<std::string>{"sample --kind quiver --degree 2 --seed 11", "sample --kind ball --seed 11",
                                   "necessity disk.ltoa --trials 3 --seed 5"}) {
        const Run a = run(args), b = run(args);
        t.check(a.code == 0 && strip_timings(a.out) == strip_timings(b.out), args + ": runs differ");
        const json d = json::parse(a.out, nullptr, false);
        const char* schema = args.rfind("sample", 0) == 0 ? "sample" : "necessity";
        t.check(!d.is_discarded() && !validate(d, embedded_schema(schema)), args + ": output fails its schema");
    }
    t.info << fixtures << " fixtures, exit codes exercised:";
    for (int c : codes) t.info << " " << c;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
        {"necessity suites", necessity},
        {"reduction identities", reductions},
        {"Stein/Lyapunov solver", stein},
        {"hand-checked fixtures", golden},
        {"Agler solver", agler},
        {"Choi machinery", choi},
        {"determinism and interface", interface_checks},
    };
    int failed = 0;
    int k = 0;
    for (const auto& [name, body] : criteria) {
        ++k;
        Tally t;
        try {
            body(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = t.failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k << ": " << name << " (" << t.info.str() << ")\n";
        std::set<std::string> seen;
        for (const auto& f : t.failures)
            if (seen.insert(f).second) std::cout << "    " << f << "\n";
        std::cout.flush();
    }
    return failed == 0 ? 0 : 1;
}
