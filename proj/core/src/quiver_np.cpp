#include "picklab/quiver_np.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace picklab {

namespace {

using Blocks = std::vector<Mat>;  // one matrix per vertex

std::size_t uz(int v) { return static_cast<std::size_t>(v); }

void check_grading(const Quiver& g, const GradedSpace& s, const char* what)
{
    if (static_cast<int>(s.dims.size()) != g.vertex_count())
        throw Error(Errc::shape, std::string(what) + ": grading must list one dimension per vertex");
    for (int v : s.dims)
        if (v < 0) throw Error(Errc::shape, std::string(what) + ": negative vertex dimension");
}

double member_norm(const Quiver& g, const GradedSpace& dims, const QuiverPoint& p, PointKind kind, std::size_t i,
                   const char* what)
{
    if (p.kind != kind) throw Error(Errc::argument, std::string(what) + ": point " + std::to_string(i) + " has the wrong kind");
    Membership m = disk_membership(g, dims, p);
    if (!m.member) {
        std::ostringstream os;
        os << what << ": point " << i << " is outside the generalized disk (row norm " << m.worst << ")";
        throw Error(Errc::domain, os.str());
    }
    return m.worst;
}

// Sum over levels 0..levels of B_{n+1}(w) = sum_{r(a)=w} Z_a B_n(s(a)) Z'_a^*.
Blocks forward_sum(const Quiver& g, const QuiverPoint& zi, const QuiverPoint& zj, Blocks b, int levels)
{
    Blocks acc = b;
    for (int n = 1; n <= levels; ++n) {
        Blocks next(b.size());
        for (std::size_t w = 0; w < b.size(); ++w) next[w] = Mat::Zero(b[w].rows(), b[w].cols());
        for (int a = 0; a < g.arrow_count(); ++a) {
            const Arrow& ar = g.arrows[uz(a)];
            const Mat& za = zi.blocks[uz(a)];
            if (za.size() == 0 || b[uz(ar.src)].size() == 0) continue;
            next[uz(ar.rng)] += za * b[uz(ar.src)] * zj.blocks[uz(a)].adjoint();
        }
        b = std::move(next);
        for (std::size_t w = 0; w < b.size(); ++w) acc[w] += b[w];
    }
    return acc;
}

// Sum over levels of C_{n+1}(u) = sum_{s(a)=u} Z_a^* C_n(r(a)) Z'_a.
Blocks backward_sum(const Quiver& g, const QuiverPoint& zi, const QuiverPoint& zj, Blocks c, int levels)
{
    Blocks acc = c;
    for (int n = 1; n <= levels; ++n) {
        Blocks next(c.size());
        for (std::size_t u = 0; u < c.size(); ++u) next[u] = Mat::Zero(c[u].rows(), c[u].cols());
        for (int a = 0; a < g.arrow_count(); ++a) {
            const Arrow& ar = g.arrows[uz(a)];
            const Mat& za = zi.blocks[uz(a)];
            if (za.size() == 0 || c[uz(ar.rng)].size() == 0) continue;
            next[uz(ar.src)] += za.adjoint() * c[uz(ar.rng)] * zj.blocks[uz(a)];
        }
        c = std::move(next);
        for (std::size_t u = 0; u < c.size(); ++u) acc[u] += c[u];
    }
    return acc;
}

// Operator-argument recursion A_{n+1}(v) = sum_{s(a)=v} T_a A_n(r(a)) T'_a^*.
Blocks oa_sum(const Quiver& g, const QuiverPoint& ti, const QuiverPoint& tj, Blocks a0, int levels)
{
    Blocks acc = a0, cur = std::move(a0);
    for (int n = 1; n <= levels; ++n) {
        Blocks next(cur.size());
        for (std::size_t v = 0; v < cur.size(); ++v) next[v] = Mat::Zero(cur[v].rows(), cur[v].cols());
        for (int a = 0; a < g.arrow_count(); ++a) {
            const Arrow& ar = g.arrows[uz(a)];
            const Mat& ta = ti.blocks[uz(a)];
            if (ta.size() == 0 || cur[uz(ar.rng)].size() == 0) continue;
            next[uz(ar.src)] += ta * cur[uz(ar.rng)] * tj.blocks[uz(a)].adjoint();
        }
        cur = std::move(next);
        for (std::size_t v = 0; v < cur.size(); ++v) acc[v] += cur[v];
    }
    return acc;
}

// offsets of (+)_v E_v (x) Z_v
std::vector<Eigen::Index> tensor_offsets(const GradedSpace& e, const GradedSpace& z)
{
    std::vector<Eigen::Index> off(e.dims.size() + 1, 0);
    for (std::size_t v = 0; v < e.dims.size(); ++v)
        off[v + 1] = off[v] + static_cast<Eigen::Index>(e.dims[v]) * z.dims[v];
    return off;
}

// sum_w sum_e A[:, (w, e, .)] B(w) C[:, (w, e, .)]^*
Mat graded_sandwich(const Mat& a, const Mat& c, const GradedSpace& e, const GradedSpace& z, const Blocks& b)
{
    const auto off = tensor_offsets(e, z);
    Mat r = Mat::Zero(a.rows(), c.rows());
    for (std::size_t w = 0; w < b.size(); ++w) {
        const Eigen::Index zw = z.dims[w];
        if (zw == 0) continue;
        for (int k = 0; k < e.dims[w]; ++k) {
            const Eigen::Index col = off[w] + k * zw;
            r += a.middleCols(col, zw) * b[w] * c.middleCols(col, zw).adjoint();
        }
    }
    return r;
}

}  // namespace

void validate_qltt(const QlttData& d)
{
    d.g.validate();
    check_grading(d.g, d.zdims, "pick_qltt");
    check_grading(d.g, d.ydims, "pick_qltt");
    check_grading(d.g, d.udims, "pick_qltt");
    if (d.z.empty()) throw Error(Errc::shape, "pick_qltt: no interpolation nodes");
    if (d.x.size() != d.z.size() || d.y.size() != d.z.size()) throw Error(Errc::shape, "pick_qltt: data lists differ in length");
    const Eigen::Index qtot = tensor_offsets(d.ydims, d.zdims).back();
    const Eigen::Index rtot = tensor_offsets(d.udims, d.zdims).back();
    const Eigen::Index c = d.x.front().rows();
    for (std::size_t i = 0; i < d.z.size(); ++i) {
        member_norm(d.g, d.zdims, d.z[i], PointKind::tensor, i, "pick_qltt");
        if (d.x[i].rows() != c || d.y[i].rows() != c) throw Error(Errc::shape, "pick_qltt: X_i and Y_i must share the space C");
        if (d.x[i].cols() != qtot) throw Error(Errc::shape, "pick_qltt: X_i must act on (+)_v Y_v (x) Z_v");
        if (d.y[i].cols() != rtot) throw Error(Errc::shape, "pick_qltt: Y_i must act on (+)_v U_v (x) Z_v");
    }
}

QlttPlan plan_qltt(const QlttData& d, std::size_t recursions, const SeriesOptions& opt)
{
    double r = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t i = 0; i < d.z.size(); ++i) {
        r = std::max(r, disk_membership(d.g, d.zdims, d.z[i]).worst);
        nx = std::max(nx, operator_norm(d.x[i]));
        ny = std::max(ny, operator_norm(d.y[i]));
    }
    const double c = nx * nx + ny * ny;
    const LevelPlan p = plan_levels(r * r, c, opt, recursions * static_cast<std::size_t>(d.g.arrow_count()) * 2,
                                    "pick_qltt");
    QlttPlan q;
    q.levels = p.levels;
    q.rho = r * r;
    q.tail_per_unit = q.rho == 0.0 ? 0.0 : std::pow(q.rho, p.levels + 1) / (1.0 - q.rho);
    return q;
}

Mat qltt_kernel(const QlttData& d, std::size_t i, std::size_t j, const Mat& b, int levels)
{
    const int nv = d.g.vertex_count();
    if (b.rows() != d.zdims.total() || b.cols() != d.zdims.total())
        throw Error(Errc::shape, "qltt_kernel: B must act on Z");
    Blocks b0(uz(nv));
    for (int v = 0; v < nv; ++v) b0[uz(v)] = b.block(d.zdims.offset(v), d.zdims.offset(v), d.zdims.dim(v), d.zdims.dim(v));
    const Blocks s = forward_sum(d.g, d.z[i], d.z[j], std::move(b0), levels);
    return graded_sandwich(d.x[i], d.x[j], d.ydims, d.zdims, s) - graded_sandwich(d.y[i], d.y[j], d.udims, d.zdims, s);
}

QlttReport pick_qltt(const QlttData& d, const SeriesOptions& opt, Tolerance tol)
{
    validate_qltt(d);
    const std::size_t n = d.z.size();
    const Eigen::Index c = d.x.front().rows();
    std::size_t recursions = 0;
    for (int v : d.zdims.dims) recursions += n * n * static_cast<std::size_t>(v) * static_cast<std::size_t>(v);
    const QlttPlan plan = plan_qltt(d, recursions, opt);

    std::vector<double> nx(n), ny(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        nx[i] = operator_norm(d.x[i]);
        ny[i] = operator_norm(d.y[i]);
        r[i] = disk_membership(d.g, d.zdims, d.z[i]).worst;
    }

    QlttReport rep;
    rep.levels = plan.levels;
    rep.feasible = true;
    const Eigen::Index ztot = d.zdims.total();
    double tail_all = 0.0;
    for (int v = 0; v < d.g.vertex_count(); ++v) {
        const int kv = d.zdims.dim(v);
        rep.vertex_present.push_back(kv > 0);
        if (kv == 0) {
            rep.per_vertex.emplace_back();
            continue;
        }
        const Eigen::Index sz = static_cast<Eigen::Index>(n) * kv * c;
        Mat p(sz, sz);
        double tail2 = 0.0;
        const Eigen::Index ov = d.zdims.offset(v);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double rho = r[i] * r[j];
                const double t = rho == 0.0 ? 0.0 : std::pow(rho, plan.levels + 1) / (1.0 - rho) * (nx[i] * nx[j] + ny[i] * ny[j]);
                for (int a = 0; a < kv; ++a)
                    for (int b = 0; b < kv; ++b) {
                        Mat e = Mat::Zero(ztot, ztot);
                        e(ov + a, ov + b) = 1.0;
                        const Eigen::Index row = (static_cast<Eigen::Index>(i) * kv + a) * c;
                        const Eigen::Index col = (static_cast<Eigen::Index>(j) * kv + b) * c;
                        p.block(row, col, c, c) = qltt_kernel(d, i, j, e, plan.levels);
                        tail2 += t * t;
                    }
            }
        FeasibilityReport fr = make_report(std::move(p), PickMethod::truncated_series, std::sqrt(tail2), tol,
                                           std::vector<Eigen::Index>(static_cast<std::size_t>(n) * kv, c), plan.levels);
        rep.feasible = rep.feasible && fr.verdict.is_psd;
        tail_all = std::max(tail_all, fr.tail_bound);
        rep.per_vertex.push_back(std::move(fr));
    }
    rep.tail_bound = tail_all;
    return rep;
}

FeasibilityReport pick_qltrd(const QltrdData& d, const SeriesOptions& opt, Tolerance tol)
{
    d.g.validate();
    check_grading(d.g, d.zdims, "pick_qltrd");
    const std::size_t n = d.z.size();
    if (n == 0) throw Error(Errc::shape, "pick_qltrd: no interpolation nodes");
    if (d.x.size() != n || d.y.size() != n) throw Error(Errc::shape, "pick_qltrd: data lists differ in length");
    if (d.kappa <= 0) throw Error(Errc::argument, "pick_qltrd: kappa must be positive");
    const Eigen::Index ztot = d.zdims.total();
    const Eigen::Index cdim = d.x.front().rows();
    if (d.kappa > cdim) throw Error(Errc::argument, "pick_qltrd: kappa exceeds the basis dimension");
    std::vector<double> r(n);
    double rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = member_norm(d.g, d.zdims, d.z[i], PointKind::tensor, i, "pick_qltrd");
        rmax = std::max(rmax, r[i]);
        if (d.x[i].rows() != cdim || d.y[i].rows() != cdim || d.x[i].cols() != ztot || d.y[i].cols() != ztot)
            throw Error(Errc::shape, "pick_qltrd: X_i and Y_i must map Z into a common C");
    }
    const int k = d.kappa;
    // per entry, the level-0 data has trace norm at most ||X_i^* e|| ||X_j^* e'|| + ||Y_i^* e|| ||Y_j^* e'||
    double cmax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (int a = 0; a < k; ++a)
            cmax = std::max(cmax, d.x[i].row(a).squaredNorm() + d.y[i].row(a).squaredNorm());
    const std::size_t recursions = n * n * static_cast<std::size_t>(k * k);
    const LevelPlan plan = plan_levels(rmax * rmax, cmax, opt, recursions * static_cast<std::size_t>(d.g.arrow_count()) * 2,
                                       "pick_qltrd");

    const int nv = d.g.vertex_count();
    const Eigen::Index sz = static_cast<Eigen::Index>(n) * k * ztot;
    Mat p = Mat::Zero(sz, sz);
    double tail2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    const Mat m = d.x[i].row(a).adjoint() * d.x[j].row(b) - d.y[i].row(a).adjoint() * d.y[j].row(b);
                    Blocks c0(uz(nv));
                    for (int u = 0; u < nv; ++u)
                        c0[uz(u)] = m.block(d.zdims.offset(u), d.zdims.offset(u), d.zdims.dim(u), d.zdims.dim(u));
                    const Blocks s = backward_sum(d.g, d.z[i], d.z[j], std::move(c0), plan.levels);
                    const Eigen::Index row = (static_cast<Eigen::Index>(i) * k + a) * ztot;
                    const Eigen::Index col = (static_cast<Eigen::Index>(j) * k + b) * ztot;
                    for (int u = 0; u < nv; ++u)
                        p.block(row + d.zdims.offset(u), col + d.zdims.offset(u), d.zdims.dim(u), d.zdims.dim(u)) = s[uz(u)];
                    const double rho = r[i] * r[j];
                    const double c = d.x[i].row(a).norm() * d.x[j].row(b).norm() + d.y[i].row(a).norm() * d.y[j].row(b).norm();
                    const double t = rho == 0.0 ? 0.0 : std::pow(rho, plan.levels + 1) / (1.0 - rho) * c;
                    tail2 += t * t;
                }
    return make_report(std::move(p), PickMethod::truncated_series, std::sqrt(tail2), tol,
                       std::vector<Eigen::Index>(n * static_cast<std::size_t>(k), ztot), plan.levels);
}

namespace {

void require_block_diagonal(const Mat& m, const GradedSpace& rows, const GradedSpace& cols, const char* what)
{
    for (std::size_t v = 0; v < rows.dims.size(); ++v)
        for (std::size_t w = 0; w < cols.dims.size(); ++w) {
            if (v == w) continue;
            const auto blk = m.block(rows.offset(static_cast<int>(v)), cols.offset(static_cast<int>(w)), rows.dims[v], cols.dims[w]);
            if (blk.size() > 0 && blk.cwiseAbs().maxCoeff() != 0.0)
                throw Error(Errc::shape, std::string(what) + " is not block diagonal over the vertices");
        }
}

}  // namespace

FeasibilityReport pick_qltoa(const QltoaData& d, const SeriesOptions& opt, Tolerance tol)
{
    d.g.validate();
    check_grading(d.g, d.xdims, "pick_qltoa");
    check_grading(d.g, d.ydims, "pick_qltoa");
    check_grading(d.g, d.udims, "pick_qltoa");
    const std::size_t n = d.t.size();
    if (n == 0) throw Error(Errc::shape, "pick_qltoa: no interpolation nodes");
    if (d.x.size() != n || d.y.size() != n) throw Error(Errc::shape, "pick_qltoa: data lists differ in length");
    const Eigen::Index xt = d.xdims.total();
    std::vector<double> r(n);
    double rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = member_norm(d.g, d.xdims, d.t[i], PointKind::operator_argument, i, "pick_qltoa");
        rmax = std::max(rmax, r[i]);
        if (d.x[i].rows() != xt || d.x[i].cols() != d.ydims.total())
            throw Error(Errc::shape, "pick_qltoa: X^(i) must map Y into X");
        if (d.y[i].rows() != xt || d.y[i].cols() != d.udims.total())
            throw Error(Errc::shape, "pick_qltoa: Y^(i) must map U into X");
        require_block_diagonal(d.x[i], d.xdims, d.ydims, "pick_qltoa: X^(i)");
        require_block_diagonal(d.y[i], d.xdims, d.udims, "pick_qltoa: Y^(i)");
    }
    const int nv = d.g.vertex_count();
    auto level0 = [&](std::size_t i, std::size_t j) {
        Blocks a(uz(nv));
        for (int v = 0; v < nv; ++v) {
            const auto xi = d.x[i].block(d.xdims.offset(v), d.ydims.offset(v), d.xdims.dim(v), d.ydims.dim(v));
            const auto xj = d.x[j].block(d.xdims.offset(v), d.ydims.offset(v), d.xdims.dim(v), d.ydims.dim(v));
            const auto yi = d.y[i].block(d.xdims.offset(v), d.udims.offset(v), d.xdims.dim(v), d.udims.dim(v));
            const auto yj = d.y[j].block(d.xdims.offset(v), d.udims.offset(v), d.xdims.dim(v), d.udims.dim(v));
            a[uz(v)] = xi * xj.adjoint() - yi * yj.adjoint();
        }
        return a;
    };
    auto max_norm = [](const Blocks& b) {
        double m = 0.0;
        for (const auto& x : b) m = std::max(m, operator_norm(x));
        return m;
    };
    double cmax = 0.0;
    std::vector<std::vector<Blocks>> a0(n, std::vector<Blocks>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            a0[i][j] = level0(i, j);
            cmax = std::max(cmax, max_norm(a0[i][j]));
        }
    const std::size_t blocks = n * (n + 1) / 2;
    const LevelPlan plan = plan_levels(rmax * rmax, cmax, opt, blocks * static_cast<std::size_t>(d.g.arrow_count()) * 2,
                                       "pick_qltoa");
    std::vector<std::vector<Mat>> out(n, std::vector<Mat>(n));
    double tail2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double c = max_norm(a0[i][j]);
            const Blocks s = oa_sum(d.g, d.t[i], d.t[j], std::move(a0[i][j]), plan.levels);
            Mat blk = Mat::Zero(xt, xt);
            for (int v = 0; v < nv; ++v)
                blk.block(d.xdims.offset(v), d.xdims.offset(v), d.xdims.dim(v), d.xdims.dim(v)) = s[uz(v)];
            const double rho = r[i] * r[j];
            const double t = rho == 0.0 ? 0.0 : std::pow(rho, plan.levels + 1) / (1.0 - rho) * c;
            tail2 += (i == j ? 1.0 : 2.0) * t * t;
            out[i][j] = std::move(blk);
            if (j != i) out[j][i] = out[i][j].adjoint();
        }
    return make_report(assemble_blocks(out), PickMethod::truncated_series, std::sqrt(tail2), tol,
                       std::vector<Eigen::Index>(n, xt), plan.levels);
}

std::vector<Eigen::Index> vertex_grouping(std::size_t n, const GradedSpace& dims)
{
    std::vector<Eigen::Index> p;
    const Eigen::Index tot = dims.total();
    for (std::size_t v = 0; v < dims.dims.size(); ++v)
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < dims.dims[v]; ++k)
                p.push_back(static_cast<Eigen::Index>(i) * tot + dims.offset(static_cast<int>(v)) + k);
    return p;
}

Mat permute_symmetric(const Mat& m, const std::vector<Eigen::Index>& p)
{
    const Eigen::Index n = static_cast<Eigen::Index>(p.size());
    if (m.rows() != n || m.cols() != n) throw Error(Errc::shape, "permute_symmetric: size mismatch");
    Mat r(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) r(a, b) = m(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]);
    return r;
}

ConstMultResult constant_multiplier_check(const std::vector<Mat>& x, const std::vector<Mat>& y, int kappa,
                                          Tolerance tol)
{
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) throw Error(Errc::shape, "constant_multiplier_check: data lists are empty or differ in length");
    if (kappa <= 0) throw Error(Errc::argument, "constant_multiplier_check: kappa must be positive");
    const Eigen::Index kd = x.front().rows(), hd = x.front().cols();
    if (kappa > hd) throw Error(Errc::argument, "constant_multiplier_check: kappa exceeds the basis dimension");
    for (std::size_t i = 0; i < n; ++i)
        if (x[i].rows() != kd || x[i].cols() != hd || y[i].rows() != kd || y[i].cols() != hd)
            throw Error(Errc::shape, "constant_multiplier_check: X_i and Y_i must share one shape");
    const Eigen::Index sz = static_cast<Eigen::Index>(n) * kappa * kd;
    Mat p(sz, sz);
    for (std::size_t i = 0; i < n; ++i)
        for (int a = 0; a < kappa; ++a)
            for (std::size_t j = 0; j < n; ++j)
                for (int b = 0; b < kappa; ++b)
                    p.block((static_cast<Eigen::Index>(i) * kappa + a) * kd, (static_cast<Eigen::Index>(j) * kappa + b) * kd, kd, kd) =
                        x[i].col(a) * x[j].col(b).adjoint() - y[i].col(a) * y[j].col(b).adjoint();
    // rank-one form: stack X = col_i X_i, then col_{i'} X e_i'
    Vec cx(sz), cy(sz);
    for (int a = 0; a < kappa; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            const Eigen::Index off = (static_cast<Eigen::Index>(a) * static_cast<Eigen::Index>(n) + static_cast<Eigen::Index>(i)) * kd;
            cx.segment(off, kd) = x[i].col(a);
            cy.segment(off, kd) = y[i].col(a);
        }
    ConstMultResult res;
    res.rank_one_form = cx * cx.adjoint() - cy * cy.adjoint();
    res.xy = make_report(std::move(p), PickMethod::closed_form, 0.0, tol, std::vector<Eigen::Index>(n * static_cast<std::size_t>(kappa), kd));
    if (res.xy.verdict.is_psd) {
        const double nx = cx.squaredNorm();
        const cplx delta = nx == 0.0 ? cplx(0.0) : cx.dot(cy) / nx;  // dot conjugates the first argument
        const double scale = std::max({1.0, cx.norm(), cy.norm()});
        const double slack = std::sqrt(std::max(res.xy.verdict.tolerance_used, 0.0)) + 1e-12;
        if (std::abs(delta) <= 1.0 + slack && (delta * cx - cy).norm() <= slack * scale) res.delta = delta;
    }
    return res;
}

double two_vertex_toeplitz_norm(const std::vector<Mat>& v, const std::vector<Mat>& w, const Mat& b0, int l)
{
    if (l < 0) throw Error(Errc::argument, "two_vertex_toeplitz_norm: negative truncation");
    const Eigen::Index da = v.empty() ? (w.empty() ? b0.rows() : w.front().cols()) : v.front().rows();
    const Eigen::Index db = b0.rows();
    if (b0.cols() != db) throw Error(Errc::shape, "two_vertex_toeplitz_norm: B0 must be square");
    for (const auto& m : v)
        if (m.rows() != da || m.cols() != da) throw Error(Errc::shape, "two_vertex_toeplitz_norm: V_n must act on A");
    for (const auto& m : w)
        if (m.rows() != db || m.cols() != da) throw Error(Errc::shape, "two_vertex_toeplitz_norm: W_n must map A into B");
    const Eigen::Index blocks = l + 1;
    Mat t = Mat::Zero(blocks * (da + db), blocks * (da + db));
    const Eigen::Index boff = blocks * da;
    for (Eigen::Index i = 0; i < blocks; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const std::size_t k = static_cast<std::size_t>(i - j);
            if (k < v.size()) t.block(i * da, j * da, da, da) = v[k];
            if (k < w.size()) t.block(boff + i * db, j * da, db, da) = w[k];
        }
        t.block(boff + i * db, boff + i * db, db, db) = b0;
    }
    return operator_norm(t);
}

}  // namespace picklab
