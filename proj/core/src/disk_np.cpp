#include "picklab/disk_np.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace picklab {

const char* variant_name(DiskVariant v)
{
    switch (v) {
    case DiskVariant::fov: return "fov";
    case DiskVariant::lt: return "lt";
    case DiskVariant::rt: return "rt";
    case DiskVariant::ltoa: return "ltoa";
    case DiskVariant::rtoa: return "rtoa";
    case DiskVariant::frd: return "frd";
    case DiskVariant::ltrd: return "ltrd";
    case DiskVariant::rtrd: return "rtrd";
    }
    return "unknown";
}

namespace {

void check_points(const std::vector<cplx>& lambda)
{
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (!(std::abs(lambda[i]) < 1.0)) {
            std::ostringstream os;
            os << "point " << i << " = " << lambda[i] << " is not in the open unit disk";
            throw Error(Errc::domain, os.str());
        }
}

void check_operator_points(const std::vector<Mat>& t)
{
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].rows() != t[i].cols()) throw Error(Errc::shape, "operator point " + std::to_string(i) + " is not square");
        const double r = spectral_radius(t[i]);
        if (!(r < 1.0)) {
            std::ostringstream os;
            os << "operator point " << i << " has spectral radius " << r << " >= 1";
            throw Error(Errc::domain, os.str());
        }
    }
}

void check_counts(std::size_t n, std::size_t a, std::size_t b, const char* what)
{
    if (n == 0) throw Error(Errc::shape, std::string(what) + ": no interpolation nodes");
    if (a != n || b != n) throw Error(Errc::shape, std::string(what) + ": data lists differ in length");
}

std::vector<Eigen::Index> sizes_of(const std::vector<Mat>& m, bool rows)
{
    std::vector<Eigen::Index> s;
    for (const auto& x : m) s.push_back(rows ? x.rows() : x.cols());
    return s;
}

}  // namespace

FeasibilityReport pick_fov(const std::vector<cplx>& lambda, const std::vector<Mat>& w, Tolerance tol)
{
    check_counts(lambda.size(), w.size(), w.size(), "pick_fov");
    check_points(lambda);
    const Eigen::Index p = w.front().rows(), q = w.front().cols();
    for (const auto& m : w)
        if (m.rows() != p || m.cols() != q) throw Error(Errc::shape, "pick_fov: values must share one shape");
    std::vector<Mat> id(w.size(), Mat::Identity(p, p));
    FeasibilityReport r = pick_lt(lambda, id, w, tol);
    return r;
}

FeasibilityReport pick_lt(const std::vector<cplx>& lambda, const std::vector<Mat>& x, const std::vector<Mat>& y,
                          Tolerance tol)
{
    const std::size_t n = lambda.size();
    check_counts(n, x.size(), y.size(), "pick_lt");
    check_points(lambda);
    const Eigen::Index c = x.front().rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].rows() != c || y[i].rows() != c) throw Error(Errc::shape, "pick_lt: X_i and Y_i must share the row space");
        if (x[i].cols() != x.front().cols() || y[i].cols() != y.front().cols())
            throw Error(Errc::shape, "pick_lt: X_i (resp. Y_i) must share one shape");
    }
    Mat p(static_cast<Eigen::Index>(n) * c, static_cast<Eigen::Index>(n) * c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx den = 1.0 - lambda[i] * std::conj(lambda[j]);
            p.block(static_cast<Eigen::Index>(i) * c, static_cast<Eigen::Index>(j) * c, c, c) =
                (x[i] * x[j].adjoint() - y[i] * y[j].adjoint()) / den;
        }
    return make_report(std::move(p), PickMethod::closed_form, 0.0, tol, std::vector<Eigen::Index>(n, c));
}

FeasibilityReport pick_rt(const std::vector<cplx>& lambda, const std::vector<Mat>& u, const std::vector<Mat>& v,
                          Tolerance tol)
{
    const std::size_t n = lambda.size();
    check_counts(n, u.size(), v.size(), "pick_rt");
    check_points(lambda);
    const Eigen::Index c = u.front().cols();
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i].cols() != c || v[i].cols() != c) throw Error(Errc::shape, "pick_rt: U_i and V_i must share the column space");
        if (u[i].rows() != u.front().rows() || v[i].rows() != v.front().rows())
            throw Error(Errc::shape, "pick_rt: U_i (resp. V_i) must share one shape");
    }
    Mat p(static_cast<Eigen::Index>(n) * c, static_cast<Eigen::Index>(n) * c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx den = 1.0 - std::conj(lambda[i]) * lambda[j];
            p.block(static_cast<Eigen::Index>(i) * c, static_cast<Eigen::Index>(j) * c, c, c) =
                (u[i].adjoint() * u[j] - v[i].adjoint() * v[j]) / den;
        }
    return make_report(std::move(p), PickMethod::closed_form, 0.0, tol, std::vector<Eigen::Index>(n, c));
}

namespace {

// Shared driver: block(i,j) = stein(L_i, Q_ij, R_j) where P - L P R^* = Q.
FeasibilityReport stein_pick(const std::vector<Mat>& left, const std::vector<Mat>& right,
                             const std::function<Mat(std::size_t, std::size_t)>& q, Tolerance tol)
{
    const std::size_t n = left.size();
    std::vector<std::vector<Mat>> blocks(n, std::vector<Mat>(n));
    double tail2 = 0.0;
    bool series = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            SteinSolution s = solve_stein_ex(left[i], q(i, j), right[j]);
            if (s.method == SteinMethod::doubling) series = true;
            tail2 += (i == j ? 1.0 : 2.0) * s.tail_bound * s.tail_bound;
            blocks[i][j] = std::move(s.p);
            if (j != i) blocks[j][i] = blocks[i][j].adjoint();
        }
    std::vector<Eigen::Index> bs;
    for (const auto& m : left) bs.push_back(m.rows());
    return make_report(assemble_blocks(blocks), series ? PickMethod::truncated_series : PickMethod::stein_solve,
                       std::sqrt(tail2), tol, std::move(bs));
}

}  // namespace

FeasibilityReport pick_ltoa(const std::vector<Mat>& t, const std::vector<Mat>& x, const std::vector<Mat>& y,
                            Tolerance tol)
{
    const std::size_t n = t.size();
    check_counts(n, x.size(), y.size(), "pick_ltoa");
    check_operator_points(t);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].rows() != t[i].rows() || y[i].rows() != t[i].rows())
            throw Error(Errc::shape, "pick_ltoa: X_i and Y_i must map into the space of T_i");
        if (x[i].cols() != x.front().cols() || y[i].cols() != y.front().cols())
            throw Error(Errc::shape, "pick_ltoa: X_i (resp. Y_i) must share one column space");
    }
    return stein_pick(t, t, [&](std::size_t i, std::size_t j) -> Mat {
        return x[i] * x[j].adjoint() - y[i] * y[j].adjoint();
    }, tol);
}

FeasibilityReport pick_rtoa(const std::vector<Mat>& a, const std::vector<Mat>& u, const std::vector<Mat>& v,
                            Tolerance tol)
{
    const std::size_t n = a.size();
    check_counts(n, u.size(), v.size(), "pick_rtoa");
    check_operator_points(a);
    std::vector<Mat> adj;
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i].cols() != a[i].rows() || v[i].cols() != a[i].rows())
            throw Error(Errc::shape, "pick_rtoa: U_i and V_i must act on the space of A_i");
        if (u[i].rows() != u.front().rows() || v[i].rows() != v.front().rows())
            throw Error(Errc::shape, "pick_rtoa: U_i (resp. V_i) must share one row space");
        adj.push_back(a[i].adjoint());
    }
    return stein_pick(adj, adj, [&](std::size_t i, std::size_t j) -> Mat {
        return u[i].adjoint() * u[j] - v[i].adjoint() * v[j];
    }, tol);
}

DiskDataset expand_rd_to_ltoa(const DiskDataset& rd)
{
    if (rd.kappa <= 0) throw Error(Errc::argument, "expand_rd_to_ltoa: kappa must be positive");
    const std::size_t n = rd.points.size();
    DiskDataset out;
    const int k = rd.kappa;
    switch (rd.variant) {
    case DiskVariant::frd:
    case DiskVariant::rtrd: {
        check_counts(n, rd.a.size(), rd.variant == DiskVariant::frd ? rd.a.size() : rd.b.size(), "expand_rd_to_ltoa");
        out.variant = DiskVariant::ltoa;
        for (std::size_t i = 0; i < n; ++i) {
            const Mat& z = rd.points[i];
            // FRD is RTRD with U_i = I
            const Mat u = rd.variant == DiskVariant::frd ? Mat::Identity(z.rows(), z.rows()) : rd.a[i];
            const Mat& v = rd.variant == DiskVariant::frd ? rd.a[i] : rd.b[i];
            if (u.rows() != z.rows() || v.rows() != z.rows() || u.cols() != v.cols())
                throw Error(Errc::shape, "expand_rd_to_ltoa: U_i, V_i must map C into the space of Z_i");
            if (k > u.cols()) throw Error(Errc::argument, "expand_rd_to_ltoa: kappa exceeds the basis dimension");
            for (int c = 0; c < k; ++c) {
                out.points.push_back(z);
                out.a.push_back(u.col(c));
                out.b.push_back(v.col(c));
            }
        }
        break;
    }
    case DiskVariant::ltrd: {
        check_counts(n, rd.a.size(), rd.b.size(), "expand_rd_to_ltoa");
        out.variant = DiskVariant::rtoa;
        for (std::size_t i = 0; i < n; ++i) {
            const Mat& z = rd.points[i];
            const Mat& x = rd.a[i];
            const Mat& y = rd.b[i];
            if (x.cols() != z.rows() || y.cols() != z.rows() || x.rows() != y.rows())
                throw Error(Errc::shape, "expand_rd_to_ltoa: X_i, Y_i must map the space of Z_i into C");
            if (k > x.rows()) throw Error(Errc::argument, "expand_rd_to_ltoa: kappa exceeds the basis dimension");
            for (int c = 0; c < k; ++c) {
                out.points.push_back(z);
                out.a.push_back(x.row(c));
                out.b.push_back(y.row(c));
            }
        }
        break;
    }
    default:
        throw Error(Errc::argument, std::string("expand_rd_to_ltoa: not an RD variant: ") + variant_name(rd.variant));
    }
    return out;
}

FeasibilityReport pick_frd(const std::vector<Mat>& z, const std::vector<Mat>& w, int kappa, Tolerance tol)
{
    DiskDataset d{DiskVariant::frd, {}, z, w, {}, kappa};
    return check_disk(d, tol);
}

FeasibilityReport pick_ltrd(const std::vector<Mat>& z, const std::vector<Mat>& x, const std::vector<Mat>& y, int kappa,
                            Tolerance tol)
{
    DiskDataset d{DiskVariant::ltrd, {}, z, x, y, kappa};
    return check_disk(d, tol);
}

FeasibilityReport pick_rtrd(const std::vector<Mat>& z, const std::vector<Mat>& u, const std::vector<Mat>& v, int kappa,
                            Tolerance tol)
{
    DiskDataset d{DiskVariant::rtrd, {}, z, u, v, kappa};
    return check_disk(d, tol);
}

FeasibilityReport nevanlinna_rd_check(const Mat& z, const Mat& w, int kappa, Tolerance tol)
{
    if (z.rows() != z.cols()) throw Error(Errc::shape, "nevanlinna_rd_check: Z must be square");
    if (w.rows() != z.rows() || w.cols() != z.cols()) throw Error(Errc::shape, "nevanlinna_rd_check: W must match Z");
    if (kappa <= 0) throw Error(Errc::argument, "nevanlinna_rd_check: kappa must be positive");
    if (kappa > z.rows()) throw Error(Errc::argument, "nevanlinna_rd_check: kappa exceeds the basis dimension");
    if (z.rows() > 0) {
        Eigen::ComplexEigenSolver<Mat> es(z, false);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
            if (!(es.eigenvalues()(k).real() > 0.0)) {
                std::ostringstream os;
                os << "nevanlinna_rd_check: eigenvalue " << es.eigenvalues()(k) << " is not in the open right half-plane";
                throw Error(Errc::domain, os.str());
            }
    }
    const Eigen::Index m = z.rows();
    std::vector<std::vector<Mat>> blocks(static_cast<std::size_t>(kappa), std::vector<Mat>(static_cast<std::size_t>(kappa)));
    for (int a = 0; a < kappa; ++a)
        for (int b = a; b < kappa; ++b) {
            Mat e = Mat::Zero(m, m);
            e(a, b) = 1.0;
            const Mat q = e * w.adjoint() + w * e;
            blocks[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = solve_lyapunov_rhp(z, q);
            if (b != a)
                blocks[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
                    blocks[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].adjoint();
        }
    return make_report(assemble_blocks(blocks), PickMethod::lyapunov_solve, 0.0, tol,
                       std::vector<Eigen::Index>(static_cast<std::size_t>(kappa), m));
}

FeasibilityReport check_disk(const DiskDataset& d, Tolerance tol)
{
    switch (d.variant) {
    case DiskVariant::fov: return pick_fov(d.lambda, d.a, tol);
    case DiskVariant::lt: return pick_lt(d.lambda, d.a, d.b, tol);
    case DiskVariant::rt: return pick_rt(d.lambda, d.a, d.b, tol);
    case DiskVariant::ltoa: return pick_ltoa(d.points, d.a, d.b, tol);
    case DiskVariant::rtoa: return pick_rtoa(d.points, d.a, d.b, tol);
    case DiskVariant::frd:
    case DiskVariant::ltrd:
    case DiskVariant::rtrd: {
        if (d.points.empty()) throw Error(Errc::shape, "check_disk: no interpolation nodes");
        check_operator_points(d.points);
        DiskDataset e = expand_rd_to_ltoa(d);
        return check_disk(e, tol);
    }
    }
    throw Error(Errc::argument, "check_disk: unknown variant");
}

}  // namespace picklab
